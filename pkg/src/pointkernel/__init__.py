"""pointkernel: one-dimensional quantum point interactions.

Jump-average boundary conditions, conversions to connected and separated
self-adjoint extensions, exact S-matrices, the delta-prime propagator and its
Born series, plus numerical oracles that check every closed form.
"""
from ._backend import BACKEND
from .born import (
    BornSeries,
    QuadrantKernelState,
    born_partial_sum,
    born_series,
    born_step,
    born_step_oracle,
    closed_form_state,
)
from .convert import (
    ConnectedSAE,
    RobinPair,
    SeparatedSAE,
    from_connected,
    from_separated,
    to_connected,
    to_separated,
)
from .core import (
    BoundaryData,
    KurasovParams,
    PointInteraction,
    check_jump_average,
    determinant,
    from_kurasov,
    parity,
    to_kurasov,
)
from .errors import *  # noqa: F401,F403
from .propagator import (
    TimeAxis,
    delta_prime_propagator,
    free_kernel,
    propagator_boundary_data,
)
from .scatter import (
    Direction,
    ScatteringMatrix,
    SuperSingularSpec,
    check_griffiths_form,
    scattering,
    solve_stationary,
    super_singular_interaction,
    transmission_probability,
)

__version__ = "0.1.0"
