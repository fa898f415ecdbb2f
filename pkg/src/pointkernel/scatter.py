"""Scattering by a point interaction.

Closed-form S-matrix for any jump-average triple, an independent oracle that
solves the plane-wave matching problem as a 2x2 linear system, and the
energy-dependent triples induced by the n-th derivative of the delta.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._backend import kernels
from .core import BoundaryData, PointInteraction, determinant
from .errors import InvalidOrder, InvalidWavenumber, SingularSystem

__all__ = [
    "ScatteringMatrix",
    "SuperSingularSpec",
    "Direction",
    "GriffithsReport",
    "scattering",
    "scattering_sweep",
    "transmission_probability",
    "solve_stationary",
    "super_singular_interaction",
    "check_griffiths_form",
    "plane_wave_derivatives",
]


@dataclass(frozen=True)
class ScatteringMatrix:
    k: float
    t_plus: complex
    t_minus: complex
    r_plus: complex
    r_minus: complex

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.t_plus, self.r_minus], [self.r_plus, self.t_minus]])

    def unitarity_defect(self) -> float:
        """Max-entry norm of ``S S^dagger - I``."""
        S = self.matrix
        return float(np.max(np.abs(S @ S.conj().T - np.eye(2))))

    @property
    def transmission(self) -> float:
        return abs(self.t_plus) ** 2


@dataclass(frozen=True)
class SuperSingularSpec:
    """The potential ``c * delta^(n)(x)``."""

    n: int
    c: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InvalidOrder(f"derivative order must be an integer >= 1, got {self.n!r}")
        if not math.isfinite(self.c):
            raise ValueError(f"coupling must be finite, got {self.c!r}")


class Direction(str, Enum):
    LEFT_INCOMING = "left-incoming"
    RIGHT_INCOMING = "right-incoming"


def _check_k(k):
    if not k > 0:
        raise InvalidWavenumber(f"wavenumber must be positive, got {k!r}")


def scattering(pi: PointInteraction, k: float) -> ScatteringMatrix:
    _check_k(k)
    D = determinant(pi)
    den = complex(1 + D / 4, 0.5 * (pi.c1 / k - k * pi.c3))
    rsum = 0.5j * (pi.c1 / k + k * pi.c3)
    return ScatteringMatrix(
        k=k,
        t_plus=complex(1 - D / 4, pi.c2.imag) / den,
        t_minus=complex(1 - D / 4, -pi.c2.imag) / den,
        r_plus=(-pi.c2.real - rsum) / den,
        r_minus=(pi.c2.real - rsum) / den,
    )


def scattering_sweep(pi: PointInteraction, ks) -> np.ndarray:
    """Closed-form coefficients on an array of wavenumbers.

    Returns a complex array of shape ``(4, len(ks))`` with rows
    ``t_plus, t_minus, r_plus, r_minus``.
    """
    ks = np.asarray(ks, dtype=float).ravel()
    if ks.size and not np.all(ks > 0):
        raise InvalidWavenumber("all wavenumbers must be positive")
    return kernels.scattering_sweep(pi.c1, pi.c2.real, pi.c2.imag, pi.c3, ks)


def transmission_probability(pi: PointInteraction, k: float) -> float:
    _check_k(k)
    D = determinant(pi)
    c2 = pi.c2
    num = (1 - D / 4) ** 2 + c2.imag ** 2
    return num / ((1 - D / 4) ** 2 + abs(c2) ** 2 + 0.25 * (pi.c1 / k + k * pi.c3) ** 2)


def solve_stationary(pi: PointInteraction, k: float, direction=Direction.LEFT_INCOMING):
    """Match a plane-wave ansatz to the jump-average conditions.

    Left-incoming: ``e^{ikx} + R e^{-ikx}`` for x < 0 and ``T e^{ikx}`` for
    x > 0; right-incoming is the mirror image. Returns ``(T, R, bd)``.
    """
    _check_k(k)
    direction = Direction(direction)
    ik = 1j * k
    # each one-sided quantity is affine in (T, R): [coef_T, coef_R, const]
    if direction is Direction.LEFT_INCOMING:
        u_plus = np.array([1, 0, 0], dtype=complex)
        u_minus = np.array([0, 1, 1], dtype=complex)
        d_plus = np.array([ik, 0, 0], dtype=complex)
        d_minus = np.array([0, -ik, ik], dtype=complex)
    else:
        u_plus = np.array([0, 1, 1], dtype=complex)
        u_minus = np.array([1, 0, 0], dtype=complex)
        d_plus = np.array([0, ik, -ik], dtype=complex)
        d_minus = np.array([-ik, 0, 0], dtype=complex)

    u_avg, d_avg = (u_plus + u_minus) / 2, (d_plus + d_minus) / 2
    eq1 = (d_plus - d_minus) - pi.c1 * u_avg + pi.c2.conjugate() * d_avg
    eq2 = (u_plus - u_minus) - pi.c2 * u_avg - pi.c3 * d_avg
    M = np.array([eq1[:2], eq2[:2]])
    rhs = -np.array([eq1[2], eq2[2]])
    if not np.all(np.isfinite(M)) or np.linalg.cond(M) > 1e14:
        raise SingularSystem(f"matching system is singular for {pi} at k = {k}")
    T, R = np.linalg.solve(M, rhs)
    z = np.array([T, R, 1.0])
    bd = BoundaryData(*(complex(q @ z) for q in (u_plus, u_minus, d_plus, d_minus)))
    return complex(T), complex(R), bd


def _i_power(m: int) -> tuple[int, int]:
    """``1j**m`` as an exact (real, imag) pair of integers."""
    return ((1, 0), (0, 1), (-1, 0), (0, -1))[m % 4]


def _real_power(k: float, m: int) -> float:
    """``(i k)**m`` for even ``m``, asserted real."""
    re, im = _i_power(m)
    assert im == 0, f"(ik)^{m} is not real"
    return re * k ** m


def super_singular_interaction(spec: SuperSingularSpec, k: float) -> PointInteraction:
    """Energy-dependent jump-average triple generated by ``c * delta^(n)``.

    Even n: ``c1 = c 2^(n-1) (ik)^n``, ``c3 = -c 2^(n-1) (ik)^(n-2)``.
    Odd n: ``c2 = c (2ik)^(n-1)``. Powers of ``i`` come from an exact sign
    table, so the triple is real by construction.
    """
    _check_k(k)
    n, c = spec.n, spec.c
    if n % 2 == 0:
        scale = c * 2.0 ** (n - 1)
        return PointInteraction(scale * _real_power(k, n), 0.0, -scale * _real_power(k, n - 2))
    return PointInteraction(0.0, c * 2.0 ** (n - 1) * _real_power(k, n - 1), 0.0)


def plane_wave_derivatives(T: complex, R: complex, k: float, order: int, direction=Direction.LEFT_INCOMING):
    """One-sided derivatives ``psi^(order)(0±)`` of a stationary scattering state."""
    ik = 1j * k
    if Direction(direction) is Direction.LEFT_INCOMING:
        return T * ik ** order, ik ** order + R * (-ik) ** order
    return ik ** order * R + (-ik) ** order, T * (-ik) ** order


@dataclass(frozen=True)
class GriffithsReport:
    ok: bool
    deriv_residual: float
    value_residual: float

    def __bool__(self):
        return bool(self.ok)


def check_griffiths_form(spec: SuperSingularSpec, k: float, tol: float = 1e-10) -> GriffithsReport:
    """Check the higher-derivative boundary conditions on both scattering states.

    For the triple from :func:`super_singular_interaction` the stationary
    states must satisfy::

        [psi']  = c 2^(n-1) (-1)^n     {psi^(n)}
        [psi]   = c 2^(n-1) (-1)^(n-1) {psi^(n-1)}

    Residuals are relative to ``1 + |rhs|``.
    """
    _check_k(k)
    n, c = spec.n, spec.c
    pi = super_singular_interaction(spec, k)
    factor = c * 2.0 ** (n - 1)
    worst_d = worst_v = 0.0
    for direction in Direction:
        T, R, _ = solve_stationary(pi, k, direction)
        p0, m0 = plane_wave_derivatives(T, R, k, 0, direction)
        p1, m1 = plane_wave_derivatives(T, R, k, 1, direction)
        pn, mn = plane_wave_derivatives(T, R, k, n, direction)
        pn1, mn1 = plane_wave_derivatives(T, R, k, n - 1, direction)
        rhs_d = factor * (-1) ** n * (pn + mn) / 2
        rhs_v = factor * (-1) ** (n - 1) * (pn1 + mn1) / 2
        worst_d = max(worst_d, abs((p1 - m1) - rhs_d) / (1 + abs(rhs_d)))
        worst_v = max(worst_v, abs((p0 - m0) - rhs_v) / (1 + abs(rhs_v)))
    return GriffithsReport(worst_d <= tol and worst_v <= tol, worst_d, worst_v)
