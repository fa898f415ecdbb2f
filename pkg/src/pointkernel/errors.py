"""Exception hierarchy.

Every error raised by the package derives from :class:`PointKernelError`,
which itself is a :class:`ValueError` so callers that only care about bad
input can catch the builtin.
"""


class PointKernelError(ValueError):
    """Base class for all pointkernel errors."""


class NotConnected(PointKernelError):
    """The interaction lies in the separated stratum and has no connected form."""


class NotSeparated(PointKernelError):
    """The interaction lies in the connected stratum and has no separated form."""


class NotRepresentable(PointKernelError):
    """A self-adjoint extension that no jump-average triple can generate."""


class InvalidWavenumber(PointKernelError):
    pass


class InvalidOrder(PointKernelError):
    pass


class SingularSystem(PointKernelError):
    pass


class InvalidTimeOrder(PointKernelError):
    pass


class OnBoundary(PointKernelError):
    """A spatial argument sits exactly on the interaction point."""


class AlternationViolated(PointKernelError):
    """A Born term mixes direct and mirror kernels."""


class QuadratureFailure(PointKernelError):
    pass


class ExtrapolationUnstable(PointKernelError):
    pass
