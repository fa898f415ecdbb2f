"""Born series for the delta-prime propagator.

Every term of the series is a per-quadrant combination of the free kernel
from the source (direct) and from its mirror image (mirror), so one step of
the recursion is a linear map on eight coefficients.

Derivation of the step, in imaginary time with ``G`` the heat kernel. A state
with coefficients ``d[sx, sy]``, ``m[sx, sy]`` has, at the origin,

    {psi}  = A(sx) G(x, Th - S),         A = (1/2) sum_sy (d + m)
    {psi'} = sx B(sx) h(Th),             B = (1/2) sum_sy (d - m)

with ``h(Th) = |x| / (2 (Th - S)) G(x, Th - S)`` (half the first-passage
density). Collapsing the delta-prime by ``int delta' u = -{u'(0)}`` and using
the first-passage convolution
``int h_y(T - Th) G(x, Th - S) dTh = (1/2) G(|x| + |y|, T - S)`` gives

    next[sx, sy] = -(c/2) (sy A(sx) + sx B(sx)) G(|x| + |y|, T - S).

``G(|x| + |y|)`` is the mirror kernel when x and y share a side and the direct
kernel otherwise. The map is identical in real time.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from ._backend import kernels
from .errors import AlternationViolated, InvalidTimeOrder, OnBoundary, QuadratureFailure
from .propagator import QUADRANTS, TimeAxis, free_kernel, quadrant_coefficients, quadrant_index

__all__ = [
    "QuadrantKernelState",
    "BornSeries",
    "SeriesDivergenceWarning",
    "FREE_STATE",
    "born_step",
    "born_step_matrix",
    "born_terms",
    "born_partial_sum",
    "born_series",
    "closed_form_state",
    "evaluate_state",
    "born_step_oracle",
]


class SeriesDivergenceWarning(RuntimeWarning):
    """The Born series does not converge for |c| >= 2."""


@dataclass(frozen=True)
class QuadrantKernelState:
    """Direct and mirror kernel coefficients, ordered as ``QUADRANTS``.

    Entries may be floats, Fractions or sympy expressions.
    """

    direct: tuple
    mirror: tuple

    def __post_init__(self):
        if len(self.direct) != 4 or len(self.mirror) != 4:
            raise ValueError("need exactly four direct and four mirror coefficients")
        object.__setattr__(self, "direct", tuple(self.direct))
        object.__setattr__(self, "mirror", tuple(self.mirror))

    @classmethod
    def from_vector(cls, v) -> QuadrantKernelState:
        v = list(v)
        return cls(tuple(v[:4]), tuple(v[4:]))

    def as_vector(self) -> np.ndarray:
        return np.array([float(a) for a in self.direct + self.mirror])

    def __add__(self, other):
        return QuadrantKernelState(
            tuple(a + b for a, b in zip(self.direct, other.direct)),
            tuple(a + b for a, b in zip(self.mirror, other.mirror)),
        )

    def scale(self, factor) -> QuadrantKernelState:
        return QuadrantKernelState(
            tuple(factor * a for a in self.direct), tuple(factor * a for a in self.mirror)
        )

    @property
    def is_pure_direct(self) -> bool:
        return all(_is_zero(a) for a in self.mirror)

    @property
    def is_pure_mirror(self) -> bool:
        return all(_is_zero(a) for a in self.direct)

    def max_abs(self) -> float:
        return max(abs(float(a)) for a in self.direct + self.mirror)


def _is_zero(a) -> bool:
    try:
        return a == 0 or bool(getattr(a, "is_zero", False))
    except TypeError:
        return False


FREE_STATE = QuadrantKernelState((1, 1, 1, 1), (0, 0, 0, 0))


def born_step(prev: QuadrantKernelState, c) -> QuadrantKernelState:
    """Apply one Born iteration ``psi_i = c int int psi_0 delta' psi_{i-1}``."""
    if not (prev.is_pure_direct or prev.is_pure_mirror):
        raise AlternationViolated(f"Born term mixes direct and mirror kernels: {prev}")
    direct = [0 * c] * 4
    mirror = [0 * c] * 4
    for sx in (1, -1):
        qp, qm = QUADRANTS.index((sx, 1)), QUADRANTS.index((sx, -1))
        # twice the averages; c is multiplied in before dividing so exact
        # coefficient types (Fraction, sympy) stay exact
        a2 = prev.direct[qp] + prev.mirror[qp] + prev.direct[qm] + prev.mirror[qm]
        b2 = prev.direct[qp] - prev.mirror[qp] + prev.direct[qm] - prev.mirror[qm]
        for sy in (1, -1):
            q = QUADRANTS.index((sx, sy))
            coeff = -(c * (sy * a2 + sx * b2)) / 4
            if sx == sy:
                mirror[q] = coeff
            else:
                direct[q] = coeff
    return QuadrantKernelState(tuple(direct), tuple(mirror))


def born_step_matrix(c: float) -> np.ndarray:
    """The step as an 8x8 real matrix acting on ``direct + mirror``.

    Built from the full linear map (no alternation check), so it can be
    applied to any coefficient vector.
    """
    M = np.zeros((8, 8))
    for j in range(8):
        e = [0.0] * 8
        e[j] = 1.0
        prev = QuadrantKernelState.from_vector(e)
        # basis vectors are pure by construction
        M[:, j] = born_step(prev, float(c)).as_vector()
    return M


def born_terms(c, n_terms: int) -> list[QuadrantKernelState]:
    """``[psi_1, ..., psi_n]`` computed strictly sequentially."""
    terms = []
    state = FREE_STATE
    for _ in range(n_terms):
        state = born_step(state, c)
        terms.append(state)
    return terms


def closed_form_state(c) -> QuadrantKernelState:
    direct, mirror = quadrant_coefficients(c)
    return QuadrantKernelState(direct, mirror)


@dataclass
class BornSeries:
    c: float
    terms: list = field(default_factory=list)

    def __post_init__(self):
        try:
            c = float(self.c)
        except TypeError:
            return  # symbolic coupling: nothing numeric to assert
        if len(self.terms) >= 2 and c != 0:
            ratio = abs(c) / 2
            for i, term in enumerate(self.terms, start=1):
                expected = abs(c) ** i / 2 ** (i - 1)
                if not math.isclose(term.max_abs(), expected, rel_tol=1e-12, abs_tol=1e-300):
                    raise AssertionError(
                        f"Born term {i} has magnitude {term.max_abs()}, expected {expected} (ratio {ratio})"
                    )

    @property
    def converges(self) -> bool:
        return abs(float(self.c)) < 2

    def partial_sum(self, n: int | None = None) -> QuadrantKernelState:
        n = len(self.terms) if n is None else n
        total = FREE_STATE
        for i, term in enumerate(self.terms[:n], start=1):
            total = total + term.scale((-1) ** i)
        return total

    def error(self, n: int | None = None) -> float:
        """Max coefficient distance between the n-term partial sum and the closed form."""
        diff = self.partial_sum(n).as_vector() - closed_form_state(float(self.c)).as_vector()
        return float(np.max(np.abs(diff)))

    def error_bound(self, n: int) -> float:
        """Geometric tail bound ``4 (|c|/2)^(n+1)``; infinite when divergent."""
        return 4 * (abs(float(self.c)) / 2) ** (n + 1) if self.converges else math.inf


def born_series(c, n_terms: int) -> BornSeries:
    return BornSeries(c, born_terms(c, n_terms))


def born_partial_sum(c, n_terms: int) -> QuadrantKernelState:
    """``psi_0 + sum_{i=1}^{n} (-1)^i psi_i`` as one coefficient state.

    For |c| >= 2 the partial sums do not converge; a
    :class:`SeriesDivergenceWarning` is issued and the truncated sum is
    returned as is.
    """
    if n_terms < 0:
        raise ValueError(f"n_terms must be >= 0, got {n_terms!r}")
    if n_terms > 0 and abs(float(c)) >= 2:
        warnings.warn(
            f"Born series diverges for |c| = {abs(float(c))} >= 2; use the closed form",
            SeriesDivergenceWarning,
            stacklevel=2,
        )
    return born_series(c, n_terms).partial_sum()


def evaluate_state(state: QuadrantKernelState, y, t, x, s, axis=TimeAxis.REAL) -> complex:
    """Evaluate a coefficient state as a function of (y, t | x, s)."""
    q = quadrant_index(x, y)
    out = 0j
    d, m = float(state.direct[q]), float(state.mirror[q])
    if d:
        out += d * free_kernel(y, t, x, s, axis)
    if m:
        out += m * free_kernel(y, t, -x, s, axis)
    return out


def _origin_limits(state: QuadrantKernelState, x, tau):
    """One-sided value and y-derivative of an imaginary-time state at y = 0±."""
    out = {}
    G = kernels.heat_kernel
    dG = kernels.heat_kernel_dz
    for sy in (1, -1):
        q = QUADRANTS.index((1 if x > 0 else -1, sy))
        d, m = float(state.direct[q]), float(state.mirror[q])
        out[sy] = (d * G(-x, tau) + m * G(x, tau), d * dG(-x, tau) + m * dG(x, tau))
    return out


def born_step_oracle(prev: QuadrantKernelState, c, probe, epsabs: float = 1e-9) -> float:
    """Evaluate one Born step at a single point by time quadrature.

    ``probe = (y, T, x, S)`` on the imaginary-time axis. The spatial integral
    is collapsed with ``int delta' u = -{u'(0)}``; what remains is

        -c int_S^T [ dG(y - a, T - Th)/da |_{a=0} {prev(0, Th)}
                     + G(y, T - Th) {prev'(0, Th)} ] dTh

    with the origin averages evaluated directly from ``prev``'s kernels.
    """
    y, T, x, S = (float(v) for v in probe)
    if y == 0 or x == 0:
        raise OnBoundary("oracle probes must avoid the interaction point")
    if not T > S:
        raise InvalidTimeOrder(f"need T > S, got T = {T}, S = {S}")
    c = float(c)
    if c == 0:
        return 0.0
    G = kernels.heat_kernel
    dG = kernels.heat_kernel_dz

    def integrand(th):
        lim = _origin_limits(prev, x, th - S)
        avg = (lim[1][0] + lim[-1][0]) / 2
        avg_d = (lim[1][1] + lim[-1][1]) / 2
        # d/da G(y - a, .) = -G_z(y - a, .)
        return -dG(y, T - th) * avg + G(y, T - th) * avg_d

    val, err = integrate.quad(integrand, S, T, epsabs=epsabs, epsrel=1e-10, limit=200)
    if not err <= max(epsabs, 1e-10 * abs(val)) * 10:
        raise QuadratureFailure(f"quadrature error estimate {err} exceeds tolerance {epsabs}")
    return -c * val
