import math

import numpy as np
import pytest
import sympy as sp
from numpy.polynomial import Polynomial

from pointkernel.errors import ExtrapolationUnstable, InvalidTimeOrder, OnBoundary
from pointkernel.propagator import TimeAxis
from pointkernel.verify import (
    JumpProbe,
    default_residual_probes,
    fd_boundary_check,
    heat_kernel_dy,
    integral_equation_residual,
    layer_jump_check,
    richardson_limit,
)


def test_jump_probe_validation():
    with pytest.raises(ValueError):
        JumpProbe((1e-2, 2e-2, 1e-3, 1e-4, 1e-5, 1e-6))
    with pytest.raises(ValueError):
        JumpProbe((1e-2, 0.0), 2)
    with pytest.raises(ValueError):
        JumpProbe((1e-2, 1e-3, 1e-4), 1)
    with pytest.raises(ValueError):
        JumpProbe((1e-2, 1e-3, 1e-4), 4)
    probe = JumpProbe.geometric()
    assert probe.epsilon_ladder == JumpProbe().epsilon_ladder
    assert len(probe.epsilon_ladder) == 6 and probe.epsilon_ladder[0] == 1e-2


def test_richardson_exact_for_polynomials():
    ladder = np.array([0.1 * 0.5 ** j for j in range(6)])
    values = 2.0 + 3 * ladder - ladder ** 2 + 0.5 * ladder ** 4
    limit, err = richardson_limit(values, ladder, 4)
    assert limit == pytest.approx(2.0, abs=1e-12)
    assert err < 1e-8  # change from the order-3 extrapolant, which still carries the eps^4 term


def test_richardson_on_smooth_function():
    ladder = np.array([1e-2 * 0.5 ** j for j in range(6)])
    limit, _ = richardson_limit(np.exp(ladder), ladder, 4)
    assert limit == pytest.approx(1.0, abs=1e-13)


def test_richardson_order_improves_accuracy():
    ladder = np.array([0.2 * 0.5 ** j for j in range(7)])
    values = np.cos(ladder) + np.sin(ladder)
    errs = [abs(richardson_limit(values, ladder, m)[0] - 1) for m in (1, 2, 3, 4)]
    assert errs == sorted(errs, reverse=True)


def test_richardson_detects_unstable_ladder():
    ladder = np.array([1e-2 * 0.5 ** j for j in range(6)])
    with pytest.raises(ExtrapolationUnstable):
        richardson_limit(np.sin(1 / ladder), ladder, 4)
    with pytest.raises(ExtrapolationUnstable):
        richardson_limit([1.0, np.nan, 1.0, 1.0, 1.0], ladder[:5], 4)


@pytest.mark.parametrize("order", range(5))
def test_heat_kernel_derivatives_against_sympy(order):
    y, u = sp.symbols("y u", positive=True)
    G = sp.exp(-y ** 2 / (4 * u)) / sp.sqrt(4 * sp.pi * u)
    exact = sp.lambdify((y, u), sp.diff(G, y, order))
    for yv, uv in [(0.3, 0.5), (1.7, 2.0), (0.05, 0.01)]:
        assert heat_kernel_dy(yv, uv, order) == pytest.approx(exact(yv, uv), rel=1e-12)
    assert heat_kernel_dy(-0.4, 0.3, order) == pytest.approx((-1) ** order * heat_kernel_dy(0.4, 0.3, order))


def test_layer_jump_constant_density():
    rep = layer_jump_check(Polynomial([1.0]), 2, 1.0, 0.0)
    assert rep
    assert rep.expected == {0: 0.0, 1: 1.0, 2: 0.0}
    assert rep.jumps[1] == pytest.approx(1.0, abs=1e-6)


def test_layer_jump_linear_density_third_derivative():
    rep = layer_jump_check(Polynomial([0.0, 1.0]), 3, 1.0, 0.0)
    assert rep
    assert rep.expected[3] == 1.0
    assert rep.jumps[3] == pytest.approx(1.0, abs=1e-6)
    # the first-derivative jump is the density itself at the final time
    assert rep.jumps[1] == pytest.approx(1.0, abs=1e-6)


def test_layer_jump_quadratic_density():
    g = Polynomial([0.5, -1.0, 2.0])  # 0.5 - th + 2 th^2
    rep = layer_jump_check(g, 3, 0.8, 0.0)
    assert rep
    assert rep.expected[1] == pytest.approx(g(0.8))
    assert rep.expected[3] == pytest.approx(g.deriv()(0.8))


def test_layer_jump_zero_density():
    rep = layer_jump_check(Polynomial([0.0]), 3, 1.0, 0.0)
    assert rep and all(v == 0 for v in rep.jumps.values())


def test_layer_jump_rejects_bad_times():
    with pytest.raises(InvalidTimeOrder):
        layer_jump_check(Polynomial([1.0]), 1, 0.0, 1.0)


def test_layer_jump_requires_derivatives():
    with pytest.raises(TypeError):
        layer_jump_check(lambda t: t, 3, 1.0, 0.0)


def test_default_probes():
    probes = default_residual_probes()
    assert len(probes) == 36
    assert all(abs(y) >= 0.5 and abs(x) >= 0.5 and T == 1.0 and S == 0.0 for y, T, x, S in probes)


def test_residual_zero_coupling_exact():
    assert integral_equation_residual(0.0, default_residual_probes()) == 0.0


@pytest.mark.parametrize("c", [0.5, 1.0, -1.3])
def test_residual_small_grid(c):
    probes = [(0.5, 1.0, 1.0, 0.0), (-1.0, 1.0, 2.0, 0.0), (-2.0, 1.5, -0.5, 0.2)]
    assert integral_equation_residual(c, probes) <= 1e-6


def test_residual_detects_wrong_propagator(monkeypatch):
    import pointkernel.verify as v

    real = v.delta_prime_propagator
    monkeypatch.setattr(v, "delta_prime_propagator", lambda c, *a: 1.01 * real(c, *a))
    assert integral_equation_residual(1.0, [(0.5, 1.0, 1.0, 0.0)]) > 1e-4


@pytest.mark.parametrize("c", [2.0, -2.0])
def test_residual_cross_side_vanishes(c):
    probes = [(-1.0, 1.0, 0.5, 0.0), (2.0, 1.0, -1.0, 0.0)]
    worst, rows = integral_equation_residual(c, probes, details=True)
    assert worst <= 1e-6
    for _, lhs, rhs, _ in rows:
        assert lhs == 0 and abs(rhs) <= 1e-6


def test_residual_rejects_boundary_probe():
    with pytest.raises(OnBoundary):
        integral_equation_residual(1.0, [(0.0, 1.0, 1.0, 0.0)])


@pytest.mark.parametrize("axis", list(TimeAxis))
@pytest.mark.parametrize("c,x", [(1.0, 1.0), (0.3, -0.7), (-2.0, 1.0), (2.0, 1.0), (0.0, 1.0)])
def test_fd_boundary_check(axis, c, x):
    rep = fd_boundary_check(c, 1.0, x, axis=axis)
    assert rep, rep.max_deviation
    if c == 0:
        assert abs(rep.extrapolated.value_jump) <= 1e-8


def test_fd_dirichlet_and_neumann():
    dirichlet = fd_boundary_check(-2.0, 1.0, 1.0)
    assert abs(dirichlet.extrapolated.value_plus) <= 1e-8
    neumann = fd_boundary_check(2.0, 1.0, 1.0)
    assert abs(neumann.extrapolated.deriv_plus) <= 1e-8


def test_fd_rejects_bad_input():
    with pytest.raises(OnBoundary):
        fd_boundary_check(1.0, 1.0, 0.0)
    with pytest.raises(InvalidTimeOrder):
        fd_boundary_check(1.0, 0.0, 1.0)
