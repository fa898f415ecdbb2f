"""Point-interaction parameters, parity, and the jump-average predicate.

A point interaction at the origin is fixed by a triple ``(c1, c2, c3)`` with
``c1, c3`` real and ``c2`` complex. It acts on a wavefunction through the
jump-average boundary conditions

    [u']  = c1 {u} - conj(c2) {u'}
    [u]   = c2 {u} + c3 {u'}

where ``[u] = u(0+) - u(0-)`` and ``{u} = (u(0+) + u(0-)) / 2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "PointInteraction",
    "BoundaryData",
    "KurasovParams",
    "JumpAverageReport",
    "determinant",
    "parity",
    "check_jump_average",
    "from_kurasov",
    "to_kurasov",
]


@dataclass(frozen=True)
class PointInteraction:
    """Jump-average couplings of a point interaction.

    ``c1`` couples to the delta, ``c2`` to the odd delta-prime pair and
    ``c3`` to the derivative-sandwiched delta.
    """

    c1: float = 0.0
    c2: complex = 0j
    c3: float = 0.0

    def __post_init__(self):
        c1, c3 = float(self.c1), float(self.c3)
        c2 = complex(self.c2)
        if not (math.isfinite(c1) and math.isfinite(c3)):
            raise ValueError(f"c1 and c3 must be finite reals, got {self.c1!r}, {self.c3!r}")
        if not (math.isfinite(c2.real) and math.isfinite(c2.imag)):
            raise ValueError(f"c2 must be finite, got {self.c2!r}")
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)
        object.__setattr__(self, "c3", c3)

    @property
    def matrix(self):
        """The 2x2 connection matrix mapping averages to jumps."""
        return ((complex(self.c1), -self.c2.conjugate()), (self.c2, complex(self.c3)))

    @property
    def max_abs(self) -> float:
        return max(abs(self.c1), abs(self.c2), abs(self.c3))


@dataclass(frozen=True)
class BoundaryData:
    """One-sided values and derivatives of a function at the origin."""

    value_plus: complex
    value_minus: complex
    deriv_plus: complex
    deriv_minus: complex

    @property
    def value_jump(self) -> complex:
        return self.value_plus - self.value_minus

    @property
    def value_avg(self) -> complex:
        return (self.value_plus + self.value_minus) / 2

    @property
    def deriv_jump(self) -> complex:
        return self.deriv_plus - self.deriv_minus

    @property
    def deriv_avg(self) -> complex:
        return (self.deriv_plus + self.deriv_minus) / 2

    def scaled(self, factor: complex) -> BoundaryData:
        return BoundaryData(
            factor * self.value_plus,
            factor * self.value_minus,
            factor * self.deriv_plus,
            factor * self.deriv_minus,
        )

    @classmethod
    def from_jump_average(cls, value_jump, value_avg, deriv_jump, deriv_avg) -> BoundaryData:
        return cls(
            value_avg + value_jump / 2,
            value_avg - value_jump / 2,
            deriv_avg + deriv_jump / 2,
            deriv_avg - deriv_jump / 2,
        )


@dataclass(frozen=True)
class KurasovParams:
    """The four real parameters X1..X4 of Kurasov's operator."""

    X1: float
    X2: float
    X3: float
    X4: float


@dataclass(frozen=True)
class JumpAverageReport:
    """Outcome of :func:`check_jump_average`; truthy iff both residuals pass."""

    ok: bool
    deriv_residual: float
    value_residual: float

    def __bool__(self):
        return bool(self.ok)


def determinant(pi: PointInteraction) -> float:
    """Return ``c1*c3 + |c2|**2``, the (real) determinant of the connection matrix."""
    c2 = pi.c2
    return pi.c1 * pi.c3 + (c2.real * c2.real + c2.imag * c2.imag)


def parity(pi: PointInteraction) -> PointInteraction:
    """Image of ``pi`` under x -> -x: c1 and c3 are even, c2 is odd."""
    return PointInteraction(pi.c1, -pi.c2, pi.c3)


def check_jump_average(bd: BoundaryData, pi: PointInteraction, tol: float = 1e-12) -> JumpAverageReport:
    """Test whether ``bd`` satisfies the jump-average conditions of ``pi``.

    Residuals are absolute; normalise ``bd`` beforehand if a relative test
    is wanted.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    u_avg, du_avg = bd.value_avg, bd.deriv_avg
    deriv_res = abs(bd.deriv_jump - (pi.c1 * u_avg - pi.c2.conjugate() * du_avg))
    value_res = abs(bd.value_jump - (pi.c2 * u_avg + pi.c3 * du_avg))
    return JumpAverageReport(deriv_res <= tol and value_res <= tol, deriv_res, value_res)


def from_kurasov(x: KurasovParams) -> PointInteraction:
    return PointInteraction(x.X1, complex(x.X2, x.X3), -x.X4)


def to_kurasov(pi: PointInteraction) -> KurasovParams:
    return KurasovParams(pi.c1, pi.c2.real, pi.c2.imag, -pi.c3)
