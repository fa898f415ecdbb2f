"""Conversions between jump-average triples and self-adjoint-extension forms.

Connected form::

    (u'(0+), u(0+))^T = exp(i theta) A (u'(0-), u(0-))^T,   det A = 1

Separated form, one Robin condition per side, stored projectively as
``p * u'(0±) = q * u(0±)`` so Dirichlet is ``(0, 1)`` and Neumann ``(1, 0)``.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass

from .core import PointInteraction, determinant
from .errors import NotConnected, NotRepresentable, NotSeparated

__all__ = [
    "DEGENERACY_EPS",
    "ConnectedSAE",
    "RobinPair",
    "SeparatedSAE",
    "DIRICHLET",
    "NEUMANN",
    "in_separated_stratum",
    "separated_cases",
    "to_connected",
    "from_connected",
    "to_separated",
    "from_separated",
]

DEGENERACY_EPS = 1e-9
_UNIMODULAR_TOL = 1e-12
_CHART_AGREEMENT_TOL = 1e-10


@dataclass(frozen=True)
class ConnectedSAE:
    theta: float
    a11: float
    a12: float
    a21: float
    a22: float

    def __post_init__(self):
        det = self.a11 * self.a22 - self.a12 * self.a21
        if abs(det - 1.0) > _UNIMODULAR_TOL * max(1.0, abs(self.a11 * self.a22), abs(self.a12 * self.a21)):
            raise ValueError(f"connected matrix must be unimodular, det = {det!r}")

    @property
    def matrix(self):
        return ((self.a11, self.a12), (self.a21, self.a22))

    def apply(self, deriv_minus: complex, value_minus: complex):
        """Map ``(u'(0-), u(0-))`` to ``(u'(0+), u(0+))``."""
        phase = complex(math.cos(self.theta), math.sin(self.theta))
        return (
            phase * (self.a11 * deriv_minus + self.a12 * value_minus),
            phase * (self.a21 * deriv_minus + self.a22 * value_minus),
        )


@dataclass(frozen=True)
class RobinPair:
    """Projective Robin condition ``p u' = q u``, normalised to p**2 + q**2 = 1."""

    p: float
    q: float

    def __post_init__(self):
        p, q = float(self.p), float(self.q)
        norm = math.hypot(p, q)
        if not norm > 0 or not math.isfinite(norm):
            raise ValueError("Robin pair must be finite and not both zero")
        p, q = p / norm, q / norm
        if p < 0 or (p == 0 and q < 0):
            p, q = -p, -q
        # -0.0 would break equality with the canonical Dirichlet/Neumann pairs
        object.__setattr__(self, "p", p + 0.0)
        object.__setattr__(self, "q", q + 0.0)

    @property
    def b(self) -> float:
        """Coefficient of ``u' = b u``; infinite for Dirichlet."""
        return math.inf if self.p == 0 else self.q / self.p

    @property
    def b_tilde(self) -> float:
        """Coefficient of ``u = b~ u'``; infinite for Neumann."""
        return math.inf if self.q == 0 else self.p / self.q

    @property
    def is_dirichlet(self) -> bool:
        return self.p == 0

    @property
    def is_neumann(self) -> bool:
        return self.q == 0

    @classmethod
    def from_b(cls, b: float) -> RobinPair:
        return cls(0.0, 1.0) if math.isinf(b) else cls(1.0, b)

    @classmethod
    def from_b_tilde(cls, bt: float) -> RobinPair:
        return cls(1.0, 0.0) if math.isinf(bt) else cls(bt, 1.0)

    def cross(self, other: RobinPair) -> float:
        return self.p * other.q - self.q * other.p


DIRICHLET = RobinPair(0.0, 1.0)
NEUMANN = RobinPair(1.0, 0.0)


@dataclass(frozen=True)
class SeparatedSAE:
    side_plus: RobinPair
    side_minus: RobinPair


def _connected_radius_sq(pi: PointInteraction) -> float:
    return (determinant(pi) / 4 - 1) ** 2 + pi.c2.imag ** 2


def in_separated_stratum(pi: PointInteraction) -> bool:
    """True when ``D = 4`` and ``Im c2 = 0`` up to the degeneracy threshold.

    This predicate alone decides which of :func:`to_connected` and
    :func:`to_separated` succeeds, so the two always partition the space.
    """
    scale = 1.0 + pi.max_abs ** 2
    return _connected_radius_sq(pi) <= DEGENERACY_EPS ** 2 * scale


def to_connected(pi: PointInteraction) -> ConnectedSAE:
    if in_separated_stratum(pi):
        raise NotConnected(
            f"{pi} has D = 4 and real c2: its boundary conditions are separated, not connected"
        )
    D = determinant(pi)
    im_c2 = pi.c2.imag
    re_c2 = pi.c2.real
    r = math.sqrt(_connected_radius_sq(pi))
    theta = math.atan2(im_c2, 1 - D / 4)
    if theta <= -math.pi:
        theta += 2 * math.pi
    a11 = (D / 4 + 1 - re_c2) / r
    a12 = pi.c1 / r
    a21 = pi.c3 / r
    a22 = (D / 4 + 1 + re_c2) / r
    # near the separated stratum r is small and cancellation spoils det A = 1;
    # project back onto the unimodular surface
    det = a11 * a22 - a12 * a21
    if not det > 0:
        raise NotConnected(f"{pi} is numerically indistinguishable from a separated interaction")
    scale = 1 / math.sqrt(det)
    return ConnectedSAE(theta, a11 * scale, a12 * scale, a21 * scale, a22 * scale)


def from_connected(conn: ConnectedSAE) -> PointInteraction:
    delta = conn.a11 + conn.a22 + 2 * math.cos(conn.theta)
    scale = 1.0 + max(abs(conn.a11), abs(conn.a22))
    if abs(delta) <= DEGENERACY_EPS * scale:
        raise NotRepresentable(
            f"a11 + a22 + 2 cos(theta) = {delta!r}: this extension cannot be generated by a point potential"
        )
    return PointInteraction(
        4 * conn.a12 / delta,
        2 * complex(conn.a22 - conn.a11, 2 * math.sin(conn.theta)) / delta,
        4 * conn.a21 / delta,
    )


def separated_cases(pi: PointInteraction) -> list[int]:
    """Which of the three separated cases (c1 != 0, c3 != 0, both zero) apply."""
    tiny = DEGENERACY_EPS * (1.0 + pi.max_abs)
    cases = []
    if abs(pi.c1) > tiny:
        cases.append(1)
    if abs(pi.c3) > tiny:
        cases.append(2)
    return cases or [3]


def _pick_pair(candidate_1, candidate_2, defect: float) -> RobinPair:
    """Keep the larger-norm chart candidate and check the other agrees.

    The unnormalised cross product of the two candidates is exactly
    ``4 - D``, so on the threshold band the normalised charts may differ by
    up to ``|4 - D| / (n1 n2)``; ``defect`` bounds that numerator.
    """
    n1 = math.hypot(*candidate_1)
    n2 = math.hypot(*candidate_2)
    best, other = (candidate_1, candidate_2) if n1 >= n2 else (candidate_2, candidate_1)
    pair = RobinPair(*best)
    n_other = math.hypot(*other)
    if n_other > DEGENERACY_EPS * max(n1, n2):
        # both charts are defined here; they must describe the same condition
        alt = RobinPair(*other)
        if abs(pair.cross(alt)) > _CHART_AGREEMENT_TOL + defect / (n1 * n2):
            raise AssertionError(f"separated charts disagree: {pair} vs {alt}")
    return pair


def to_separated(pi: PointInteraction) -> SeparatedSAE:
    """Separated (Robin) form of an interaction with ``D = 4`` and real ``c2``.

    The c1-chart gives ``u(0±) = (c2 ± 2)/c1 u'(0±)`` and the c3-chart gives
    ``u'(0±) = (±2 - c2)/c3 u(0±)``. Both are evaluated projectively, the
    better-conditioned one is kept and the other is checked against it.
    """
    if not in_separated_stratum(pi):
        raise NotSeparated(f"{pi} is not in the separated stratum (needs D = 4 and real c2)")
    c1, c2, c3 = pi.c1, pi.c2.real, pi.c3
    # |4 - D| plus the rounding of the products that form it
    defect = abs(4 - determinant(pi)) + 8 * sys.float_info.epsilon * (4 + c2 * c2 + abs(c1 * c3))
    plus = _pick_pair((c2 + 2, c1), (c3, 2 - c2), defect)
    minus = _pick_pair((c2 - 2, c1), (c3, -2 - c2), defect)
    return SeparatedSAE(plus, minus)


def from_separated(sep: SeparatedSAE) -> PointInteraction:
    """Inverse of :func:`to_separated`.

    With ``W = p+ q- - p- q+`` the two textbook charts collapse to
    ``c1 = 4 q+ q- / W``, ``c2 = 2 (p+ q- + p- q+) / W``,
    ``c3 = -4 p+ p- / W``, which never divides by an infinite coefficient.
    """
    sp, sm = sep.side_plus, sep.side_minus
    w = sp.p * sm.q - sm.p * sp.q
    if abs(w) <= DEGENERACY_EPS:
        raise NotRepresentable(
            "identical Robin conditions on both sides cannot be generated by a point potential"
        )
    return PointInteraction(
        4 * sp.q * sm.q / w,
        2 * (sp.p * sm.q + sm.p * sp.q) / w,
        -4 * sp.p * sm.p / w,
    )
