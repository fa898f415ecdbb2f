"""Verification suites behind ``pointkernel verify``."""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass

import numpy as np
from numpy.polynomial import Polynomial

from .core import PointInteraction, check_jump_average
from .propagator import TimeAxis, propagator_boundary_data
from .scatter import Direction, scattering, solve_stationary
from .verify import default_residual_probes, fd_boundary_check, integral_equation_residual, layer_jump_check


@dataclass
class CheckResult:
    suite: str
    name: str
    ok: bool
    value: float
    tol: float
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.suite}/{self.name}: {self.value:.3e} (tol {self.tol:.1e}, {self.seconds:.2f}s)"

    def as_dict(self):
        return asdict(self)


def _timed(suite, name, tol, fn):
    t0 = time.perf_counter()
    value = float(fn())
    return CheckResult(suite, name, value <= tol, value, tol, time.perf_counter() - t0)


def suite_jumps(seed, tol=None):
    tol = 1e-6 if tol is None else tol
    out = []
    for label, g in (("g=1", Polynomial([1.0])), ("g=tau-s", Polynomial([0.0, 1.0]))):
        out.append(_timed("jumps", label, tol,
                          lambda g=g: max(layer_jump_check(g, 3, 1.0, 0.0, tol=tol).residuals.values())))
    return out


def suite_residual(seed, tol=None):
    tol = 1e-6 if tol is None else tol
    probes = default_residual_probes()
    return [_timed("residual", f"c={c}", tol, lambda c=c: integral_equation_residual(c, probes))
            for c in (0.5, 1.0, 2.0, -2.0)]


def random_interactions(rng, n, bound=50.0):
    c1 = rng.uniform(-bound, bound, n)
    c3 = rng.uniform(-bound, bound, n)
    r = bound * np.sqrt(rng.uniform(0, 1, n))
    phi = rng.uniform(0, 2 * np.pi, n)
    return [PointInteraction(a, complex(rr * np.cos(p), rr * np.sin(p)), b)
            for a, b, rr, p in zip(c1, c3, r, phi)]


def oracle_deviation(pi, k) -> float:
    S = scattering(pi, k)
    tp, rp, _ = solve_stationary(pi, k, Direction.LEFT_INCOMING)
    tm, rm, _ = solve_stationary(pi, k, Direction.RIGHT_INCOMING)
    return max(abs(tp - S.t_plus), abs(rp - S.r_plus), abs(tm - S.t_minus), abs(rm - S.r_minus))


def suite_scatter_oracle(seed, tol=None):
    rng = np.random.default_rng(seed)
    pis = random_interactions(rng, 1000)
    ks = 20.0 * (1.0 - rng.uniform(0, 1, 1000))
    tol_o = 1e-10 if tol is None else tol
    tol_u = 1e-12 if tol is None else tol
    return [
        _timed("scatter-oracle", "stationary-vs-closed-form", tol_o,
               lambda: max(oracle_deviation(p, k) for p, k in zip(pis, ks))),
        _timed("scatter-oracle", "unitarity", tol_u,
               lambda: max(scattering(p, k).unitarity_defect() for p, k in zip(pis, ks))),
    ]


def suite_bc(seed, tol=None):
    rng = np.random.default_rng(seed)
    tol_a = 1e-12 if tol is None else tol
    tol_fd = 1e-8 if tol is None else tol

    def analytic():
        worst = 0.0
        for _ in range(100):
            c = rng.uniform(-5, 5)
            x = rng.choice([-1, 1]) * rng.uniform(0.2, 3)
            t = rng.uniform(0.2, 3)
            bd = propagator_boundary_data(c, t, x, 0.0, TimeAxis.IMAGINARY)
            rep = check_jump_average(bd, PointInteraction(0, c, 0), 1.0)
            worst = max(worst, rep.deriv_residual, rep.value_residual)
        return worst

    out = [_timed("bc", "analytic-jump-average", tol_a, analytic)]
    for c in (1.0, -2.0, 2.0):
        out.append(_timed("bc", f"finite-difference c={c}", tol_fd,
                          lambda c=c: fd_boundary_check(c, 1.0, 1.0, tol=tol_fd).max_deviation))
    return out


SUITES = {
    "jumps": suite_jumps,
    "residual": suite_residual,
    "scatter-oracle": suite_scatter_oracle,
    "bc": suite_bc,
}


def run_suites(names, seed=42, tol=None):
    results = []
    for name in names:
        results.extend(SUITES[name](seed, tol))
    return results
