"""Numerical evidence for the closed forms.

All oracles run in imaginary time, where kernels are real Gaussians and the
time integrals are smooth. Rotation table (t = -i T):

    ============================  ===================================
    real time                     imaginary time
    ============================  ===================================
    psi_0 (free kernel)           G, the heat kernel of u_T = u_yy
    -i dtau                       -dTh
    -c i int dtau (...)           -c int dTh (...)
    (-i d/dt)                     (+d/dT)
    ============================  ===================================
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate
from scipy.special import eval_hermite

from ._backend import kernels
from .core import BoundaryData, JumpAverageReport, PointInteraction, check_jump_average
from .errors import ExtrapolationUnstable, InvalidTimeOrder, OnBoundary, QuadratureFailure
from .propagator import TimeAxis, delta_prime_propagator, propagator_boundary_data

__all__ = [
    "JumpProbe",
    "richardson_limit",
    "heat_kernel_dy",
    "LayerJumpReport",
    "layer_jump_check",
    "integral_equation_residual",
    "FDBoundaryReport",
    "fd_boundary_check",
    "default_residual_probes",
]

QUAD_EPSABS = 1e-9


@dataclass(frozen=True)
class JumpProbe:
    """Offsets from the origin used for one-sided Richardson extrapolation."""

    epsilon_ladder: tuple = tuple(1e-2 * 0.5 ** j for j in range(6))
    richardson_order: int = 4

    def __post_init__(self):
        ladder = tuple(float(e) for e in self.epsilon_ladder)
        if not all(e > 0 for e in ladder):
            raise ValueError("ladder offsets must be positive")
        if any(b >= a for a, b in zip(ladder, ladder[1:])):
            raise ValueError("ladder must be strictly decreasing")
        if self.richardson_order < 2:
            raise ValueError("richardson_order must be >= 2")
        if len(ladder) < self.richardson_order + 2:
            # derivative quotients use one rung fewer than the values
            raise ValueError("ladder needs at least richardson_order + 2 rungs")
        object.__setattr__(self, "epsilon_ladder", ladder)

    @classmethod
    def geometric(cls, eps0=1e-2, ratio=0.5, rungs=6, order=4) -> JumpProbe:
        return cls(tuple(eps0 * ratio ** j for j in range(rungs)), order)


def richardson_limit(values, ladder, order: int):
    """Extrapolate ``values[j] ~ f(ladder[j])`` to ``ladder -> 0``.

    Assumes an expansion in integer powers of the offset and eliminates
    ``order`` of them using the finest ``order + 1`` rungs (Neville
    tableau evaluated at zero). Returns ``(limit, error_estimate)``; the
    estimate is the change from the order-1 extrapolant.
    """
    h = np.asarray(ladder, dtype=float)
    v = np.asarray(values)
    if len(h) != len(v) or len(h) < order + 1:
        raise ValueError("need at least order + 1 samples")
    table = [v.astype(complex if np.iscomplexobj(v) else float)]
    for m in range(1, order + 1):
        prev = table[-1]
        nxt = (h[m:] * prev[:-1] - h[:-m] * prev[1:]) / (h[m:] - h[:-m])
        table.append(nxt)
    limit = table[order][-1]
    err = abs(limit - table[order - 1][-1])
    if not (np.isfinite(limit) and np.isfinite(err)):
        raise ExtrapolationUnstable("Richardson table produced non-finite values")
    # cross-check with the coarser window; wildly different values mean the
    # ladder is too aggressive for double precision
    if len(table[order]) > 1:
        spread = abs(table[order][-1] - table[order][-2])
        if spread > 1e-3 * (1 + abs(limit)):
            raise ExtrapolationUnstable(
                f"extrapolants disagree by {spread:.3g}; ladder too coarse or too fine"
            )
    return limit, float(err)


def heat_kernel_dy(y: float, u: float, order: int) -> float:
    """``d^order/dy^order`` of the heat kernel ``G(y, u)`` via Hermite polynomials."""
    w = y / (2 * math.sqrt(u))
    return (
        (-1 / (2 * math.sqrt(u))) ** order
        * eval_hermite(order, w)
        * math.exp(-w * w)
        / math.sqrt(4 * math.pi * u)
    )


def _layer_derivative(g, order, y, t, s, epsabs):
    """``f^(order)(y)`` for the rotated layer potential ``f = -int_s^t G(y, t - th) g(th) dth``."""
    span = t - s
    # integrate in r = log(u), u = t - th; below u ~ y^2/2000 the kernel is < e^-500
    r_lo = math.log(min(y * y / 2000, span * 1e-3))
    r_hi = math.log(span)

    def integrand(r):
        u = math.exp(r)
        return heat_kernel_dy(y, u, order) * g(t - u) * u

    breaks = [math.log(y * y * f) for f in (0.01, 0.1, 1.0, 10.0) if math.log(y * y * f) < r_hi]
    # the integrand peaks at ~|y|^(1-order) and cancels down to O(1); judge the
    # quadrature error against that peak scale
    scale = max(1.0, abs(y) ** (1 - order))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(integrand, r_lo, r_hi, points=breaks or None,
                                  epsabs=epsabs * 1e-3, epsrel=1e-13, limit=400)
    if not err <= epsabs * scale:
        raise QuadratureFailure(f"layer quadrature error {err:.3g} at y = {y}, order {order}")
    return -val


@dataclass
class LayerJumpReport:
    ok: bool
    tol: float
    jumps: dict = field(default_factory=dict)       # order -> extrapolated jump
    expected: dict = field(default_factory=dict)    # order -> target value
    residuals: dict = field(default_factory=dict)   # order -> |jump - expected|
    extrapolation_error: dict = field(default_factory=dict)

    def __bool__(self):
        return bool(self.ok)


def _density_derivative(g, m, t):
    if m == 0:
        return float(g(t))
    if hasattr(g, "deriv"):
        return float(g.deriv(m)(t))
    raise TypeError("density must provide .deriv(m) for analytic time derivatives (e.g. numpy Polynomial)")


def layer_jump_check(g, k_max: int, t: float, s: float, probe: JumpProbe | None = None,
                     tol: float = 1e-6, epsabs: float = QUAD_EPSABS) -> LayerJumpReport:
    """Jumps of the single-layer potential and its y-derivatives at the origin.

    Checks ``[f^(k)] = 0`` for even k and ``[f^(k)] = (d/dT)^((k-1)/2) g(T)``
    for odd k. ``g`` must be callable and expose ``deriv(m)``, as
    :class:`numpy.polynomial.Polynomial` does.
    """
    if not t > s:
        raise InvalidTimeOrder(f"need t > s, got t = {t}, s = {s}")
    probe = probe or JumpProbe()
    report = LayerJumpReport(ok=True, tol=tol)
    for k in range(k_max + 1):
        sides = {}
        err_total = 0.0
        for sign in (1, -1):
            vals = [_layer_derivative(g, k, sign * eps, t, s, epsabs) for eps in probe.epsilon_ladder]
            sides[sign], err = richardson_limit(vals, probe.epsilon_ladder, probe.richardson_order)
            err_total += err
        jump = sides[1] - sides[-1]
        expected = 0.0 if k % 2 == 0 else _density_derivative(g, (k - 1) // 2, t)
        report.jumps[k] = jump
        report.expected[k] = expected
        report.residuals[k] = abs(jump - expected)
        report.extrapolation_error[k] = err_total
        report.ok = bool(report.ok and report.residuals[k] <= tol)
    return report


def default_residual_probes(T: float = 1.0, S: float = 0.0):
    """Every (y, x) pair with y, x in {+-0.5, +-1, +-2}: the 3x3 magnitude grid in all four quadrants."""
    pts = (-2.0, -1.0, -0.5, 0.5, 1.0, 2.0)
    return [(y, T, x, S) for y in pts for x in pts]


def integral_equation_residual(c: float, probes, epsabs: float = QUAD_EPSABS, details: bool = False):
    """Max residual of the rotated delta-prime integral equation.

    LHS is the closed-form imaginary-time propagator p. RHS is

        G(y - x) + c int_S^T [ -G_z(y, T - Th) {p(0, Th)} + G(y, T - Th) {p'(0, Th)} ] dTh

    with the origin averages from :func:`propagator_boundary_data`.
    """
    axis = TimeAxis.IMAGINARY
    G = kernels.heat_kernel
    dG = kernels.heat_kernel_dz
    rows = []
    for y, T, x, S in probes:
        if y == 0 or x == 0:
            raise OnBoundary("residual probes must avoid the interaction point")
        if not T > S:
            raise InvalidTimeOrder(f"need T > S, got T = {T}, S = {S}")
        lhs = delta_prime_propagator(c, y, T, x, S, axis).real
        rhs = G(y - x, T - S)
        if c != 0:
            def integrand(th):
                bd = propagator_boundary_data(c, th, x, S, axis)
                return -dG(y, T - th) * bd.value_avg.real + G(y, T - th) * bd.deriv_avg.real

            val, err = integrate.quad(integrand, S, T, epsabs=epsabs, epsrel=1e-10, limit=200)
            if not err <= 10 * max(epsabs, 1e-10 * abs(val)):
                raise QuadratureFailure(f"residual quadrature error {err:.3g} at probe {(y, T, x, S)}")
            rhs += c * val
        rows.append(((y, T, x, S), lhs, rhs, abs(lhs - rhs)))
    worst = max((r[3] for r in rows), default=0.0)
    return (worst, rows) if details else worst


@dataclass
class FDBoundaryReport:
    ok: bool
    extrapolated: BoundaryData
    analytic: BoundaryData
    max_deviation: float
    extrapolation_error: float
    jump_average: JumpAverageReport

    def __bool__(self):
        return bool(self.ok)


def fd_boundary_check(c: float, t: float, x: float, probe: JumpProbe | None = None, s: float = 0.0,
                      axis=TimeAxis.IMAGINARY, tol: float = 1e-8) -> FDBoundaryReport:
    """Reconstruct one-sided boundary data of the propagator from off-origin samples.

    Values are Richardson-extrapolated from ``p(±eps_j)``; derivatives from
    the one-sided difference quotients between consecutive rungs.
    """
    if not t > s:
        raise InvalidTimeOrder(f"need t > s, got t = {t}, s = {s}")
    if x == 0:
        raise OnBoundary("source point must not sit on the interaction")
    probe = probe or JumpProbe()
    ladder = np.array(probe.epsilon_ladder)
    order = probe.richardson_order
    limits = {}
    err_total = 0.0
    for sign in (1, -1):
        vals = np.array([delta_prime_propagator(c, sign * e, t, x, s, axis) for e in ladder])
        value, err_v = richardson_limit(vals, ladder, order)
        quotients = (vals[:-1] - vals[1:]) / (sign * (ladder[:-1] - ladder[1:]))
        # for a geometric ladder quotient j expands in powers of eps_j
        deriv, err_d = richardson_limit(quotients, ladder[:-1], order)
        limits[sign] = (complex(value), complex(deriv))
        err_total += err_v + err_d
    bd = BoundaryData(limits[1][0], limits[-1][0], limits[1][1], limits[-1][1])
    analytic = propagator_boundary_data(c, t, x, s, axis)
    dev = max(
        abs(bd.value_plus - analytic.value_plus),
        abs(bd.value_minus - analytic.value_minus),
        abs(bd.deriv_plus - analytic.deriv_plus),
        abs(bd.deriv_minus - analytic.deriv_minus),
    )
    ja = check_jump_average(bd, PointInteraction(0.0, float(c), 0.0), tol)
    return FDBoundaryReport(bool(dev <= tol and ja.ok), bd, analytic, dev, err_total, ja)
