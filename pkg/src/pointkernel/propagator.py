"""Free and delta-prime propagators in real and imaginary time.

Units: hbar = 1, m = 1/2, so the free kernel is
``(4 pi i tau)^(-1/2) exp(-(y - x)^2 / (4 i tau))`` with tau = t - s, and the
rotation t -> -i t turns it into the heat kernel of ``u_t = u_yy``.

The delta-prime propagator adds, per quadrant (sign x, sign y), a multiple of
the free kernel from the source (direct) or from its mirror image at -x:

    ==========  ================  =====================
    quadrant    direct            mirror
    ==========  ================  =====================
    x>0, y>0    1                 +4c / (4 + c^2)
    x>0, y<0    1 - 2c^2/(4+c^2)  0
    x<0, y>0    1 - 2c^2/(4+c^2)  0
    x<0, y<0    1                 -4c / (4 + c^2)
    ==========  ================  =====================
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._backend import kernels
from .core import BoundaryData
from .errors import InvalidTimeOrder, OnBoundary

__all__ = [
    "TimeAxis",
    "SpaceTimePoint",
    "QUADRANTS",
    "quadrant_index",
    "quadrant_coefficients",
    "free_kernel",
    "free_kernel_dy",
    "delta_prime_propagator",
    "delta_prime_grid",
    "propagator_boundary_data",
]

# (sign of source x, sign of field point y)
QUADRANTS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


class TimeAxis(str, Enum):
    REAL = "real-time"
    IMAGINARY = "imaginary-time"


@dataclass(frozen=True)
class SpaceTimePoint:
    position: float
    time: float

    def __post_init__(self):
        if not (math.isfinite(self.position) and math.isfinite(self.time)):
            raise ValueError("space-time point must be finite")


def _tau(t, s):
    tau = t - s
    if not tau > 0:
        raise InvalidTimeOrder(f"need t > s, got t = {t!r}, s = {s!r}")
    return tau


def _kernel(z, tau, axis):
    if TimeAxis(axis) is TimeAxis.IMAGINARY:
        return complex(kernels.heat_kernel(z, tau))
    return complex(kernels.free_kernel(z, tau))


def _kernel_dz(z, tau, axis):
    if TimeAxis(axis) is TimeAxis.IMAGINARY:
        return complex(kernels.heat_kernel_dz(z, tau))
    return complex(kernels.free_kernel_dz(z, tau))


def free_kernel(y, t, x, s, axis=TimeAxis.REAL) -> complex:
    """Free propagator from (x, s) to (y, t).

    The real-time square root is taken on the principal branch, i.e.
    ``sqrt(4 pi i tau) = sqrt(4 pi tau) exp(i pi / 4)``.
    """
    return _kernel(y - x, _tau(t, s), axis)


def free_kernel_dy(y, t, x, s, axis=TimeAxis.REAL) -> complex:
    """``d/dy`` of :func:`free_kernel`."""
    return _kernel_dz(y - x, _tau(t, s), axis)


def quadrant_index(x, y) -> int:
    if x == 0 or y == 0:
        raise OnBoundary(f"propagator is undefined on the interaction point (x = {x!r}, y = {y!r})")
    return QUADRANTS.index((1 if x > 0 else -1, 1 if y > 0 else -1))


def quadrant_coefficients(c):
    """Direct and mirror coefficients of the delta-prime propagator.

    Returns two 4-tuples ordered as :data:`QUADRANTS`. Works with any
    numeric type supporting field arithmetic (floats, Fractions, sympy).
    """
    mirror = 4 * c / (4 + c * c)
    cross = 1 - 2 * c * c / (4 + c * c)
    return (1, cross, cross, 1), (mirror, 0, 0, -mirror)


def delta_prime_propagator(c, y, t, x, s, axis=TimeAxis.REAL) -> complex:
    tau = _tau(t, s)
    q = quadrant_index(x, y)
    direct, mirror = quadrant_coefficients(float(c))
    out = direct[q] * _kernel(y - x, tau, axis)
    if mirror[q]:
        out += mirror[q] * _kernel(y + x, tau, axis)
    return out


def delta_prime_grid(c, ys, xs, t, s=0.0, axis=TimeAxis.REAL) -> np.ndarray:
    """Propagator on the grid ``ys x xs``; shape ``(len(ys), len(xs))``."""
    tau = _tau(t, s)
    ys = np.asarray(ys, dtype=float).ravel()
    xs = np.asarray(xs, dtype=float).ravel()
    if np.any(ys == 0) or np.any(xs == 0):
        raise OnBoundary("grid contains the interaction point x = 0 or y = 0")
    return kernels.delta_prime_grid(float(c), ys, xs, tau, TimeAxis(axis) is TimeAxis.IMAGINARY)


def propagator_boundary_data(c, t, x, s, axis=TimeAxis.REAL) -> BoundaryData:
    """Analytic one-sided limits y -> 0± of the propagator and its y-derivative."""
    tau = _tau(t, s)
    if x == 0:
        raise OnBoundary("source point must not sit on the interaction")
    direct, mirror = quadrant_coefficients(float(c))
    k_direct, k_mirror = _kernel(-x, tau, axis), _kernel(x, tau, axis)
    dk_direct, dk_mirror = _kernel_dz(-x, tau, axis), _kernel_dz(x, tau, axis)
    qp = quadrant_index(x, 1.0)
    qm = quadrant_index(x, -1.0)
    return BoundaryData(
        value_plus=direct[qp] * k_direct + mirror[qp] * k_mirror,
        value_minus=direct[qm] * k_direct + mirror[qm] * k_mirror,
        deriv_plus=direct[qp] * dk_direct + mirror[qp] * dk_mirror,
        deriv_minus=direct[qm] * dk_direct + mirror[qm] * dk_mirror,
    )
