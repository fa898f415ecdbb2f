import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pointkernel.core import PointInteraction, check_jump_average, parity
from pointkernel.errors import InvalidOrder, InvalidWavenumber
from pointkernel.scatter import (
    Direction,
    SuperSingularSpec,
    check_griffiths_form,
    scattering,
    scattering_sweep,
    solve_stationary,
    super_singular_interaction,
    transmission_probability,
)

coord = st.floats(-50, 50, allow_nan=False)
interactions = st.builds(lambda a, b, c, d: PointInteraction(a, complex(b, c), d), coord, coord, coord, coord)
wavenumbers = st.floats(1e-2, 20)


@pytest.mark.parametrize("c2", [2, -2])
@pytest.mark.parametrize("k", [0.1, 1.0, 7.0])
def test_opaque_wall(c2, k):
    S = scattering(PointInteraction(0, c2, 0), k)
    assert S.t_plus == 0 and S.t_minus == 0
    assert transmission_probability(PointInteraction(0, c2, 0), k) == 0


@pytest.mark.parametrize("beta", [-3.0, 0.5, 2.0, 40.0])
def test_transparent_imaginary_c2(beta):
    for k in (0.2, 1.0, 9.0):
        assert abs(scattering(PointInteraction(0, 1j * beta, 0), k).t_plus) ** 2 == pytest.approx(1, abs=1e-14)


def test_free_particle():
    S = scattering(PointInteraction(), 3.0)
    assert (S.t_plus, S.t_minus, S.r_plus, S.r_minus) == (1, 1, 0, 0)


def test_fundamental_transmission_values():
    assert transmission_probability(PointInteraction(2, 0, 0), 1) == pytest.approx(0.5, abs=1e-15)
    assert transmission_probability(PointInteraction(0, 0, 2), 1) == pytest.approx(0.5, abs=1e-15)
    assert transmission_probability(PointInteraction(0, 2j, 0), 1) == pytest.approx(1, abs=1e-15)
    # closed forms for all k
    for k in (0.3, 1.7, 5.0):
        assert transmission_probability(PointInteraction(3, 0, 0), k) == pytest.approx(1 / (1 + 9 / (4 * k * k)))
        assert transmission_probability(PointInteraction(0, 0, 3), k) == pytest.approx(1 / (1 + 9 * k * k / 4))


def test_delta_potential_textbook_values():
    # delta potential g*delta(x) with hbar = 1, m = 1/2: T = 1 / (1 + i g / 2k)
    g, k = 1.3, 0.8
    S = scattering(PointInteraction(g, 0, 0), k)
    assert S.t_plus == pytest.approx(1 / (1 + 1j * g / (2 * k)), abs=1e-15)
    assert S.r_plus == pytest.approx(-1j * g / (2 * k) / (1 + 1j * g / (2 * k)), abs=1e-15)


@given(interactions, wavenumbers)
def test_unitarity(pi, k):
    S = scattering(pi, k)
    assert S.unitarity_defect() <= 1e-12
    assert abs(S.t_plus) ** 2 == pytest.approx(abs(S.t_minus) ** 2, abs=1e-12)
    assert S.transmission == pytest.approx(transmission_probability(pi, k), abs=1e-12)


@given(interactions, wavenumbers)
def test_transmission_parity_invariant(pi, k):
    assert transmission_probability(parity(pi), k) == pytest.approx(transmission_probability(pi, k), abs=1e-12)


@given(interactions, wavenumbers)
def test_oracle_equivalence(pi, k):
    S = scattering(pi, k)
    T, R, bd = solve_stationary(pi, k, Direction.LEFT_INCOMING)
    assert abs(T - S.t_plus) <= 1e-10 and abs(R - S.r_plus) <= 1e-10
    T, R, _ = solve_stationary(pi, k, "right-incoming")
    assert abs(T - S.t_minus) <= 1e-10 and abs(R - S.r_minus) <= 1e-10
    assert check_jump_average(bd, pi, 1e-9 * (1 + pi.max_abs) * (1 + k))


def test_monotonicity_in_k():
    ks = np.linspace(0.05, 10, 200)
    t1 = [transmission_probability(PointInteraction(2.5, 0, 0), k) for k in ks]
    t3 = [transmission_probability(PointInteraction(0, 0, 2.5), k) for k in ks]
    t2 = [transmission_probability(PointInteraction(0, 1.3, 0), k) for k in ks]
    assert np.all(np.diff(t1) > 0)
    assert np.all(np.diff(t3) < 0)
    np.testing.assert_allclose(t2, t2[0], atol=1e-15)


def test_strong_coupling_limits():
    big = 1e8
    assert transmission_probability(PointInteraction(big, 0, 0), 1) < 1e-15
    assert transmission_probability(PointInteraction(0, 0, big), 1) < 1e-15
    assert transmission_probability(PointInteraction(0, big, 0), 1) == pytest.approx(1, abs=1e-12)


def test_sweep_matches_pointwise():
    pi = PointInteraction(1.5, 0.3 - 2j, -0.7)
    ks = np.linspace(0.1, 5, 17)
    rows = scattering_sweep(pi, ks)
    for j, k in enumerate(ks):
        S = scattering(pi, k)
        np.testing.assert_allclose(rows[:, j], [S.t_plus, S.t_minus, S.r_plus, S.r_minus], atol=1e-15)


def test_invalid_wavenumber():
    with pytest.raises(InvalidWavenumber):
        scattering(PointInteraction(), 0)
    with pytest.raises(InvalidWavenumber):
        scattering_sweep(PointInteraction(), [1.0, -1.0])


def test_super_singular_triples():
    assert super_singular_interaction(SuperSingularSpec(1, 0.7), 3.0) == PointInteraction(0, 0.7, 0)
    c, k = 0.3, 2.0
    two = super_singular_interaction(SuperSingularSpec(2, c), k)
    assert (two.c1, two.c2, two.c3) == pytest.approx((-2 * c * k * k, 0, -2 * c))
    three = super_singular_interaction(SuperSingularSpec(3, c), k)
    assert (three.c1, three.c2, three.c3) == pytest.approx((0, -4 * c * k * k, 0))
    with pytest.raises(InvalidOrder):
        SuperSingularSpec(0, 1.0)


@pytest.mark.parametrize("n", range(1, 9))
def test_super_singular_triple_against_complex_power(n):
    c, k = -0.6, 1.3
    pi = super_singular_interaction(SuperSingularSpec(n, c), k)
    if n % 2 == 0:
        c1 = c * 2 ** (n - 1) * (1j * k) ** n
        c3 = -c * 2 ** (n - 1) * (1j * k) ** (n - 2)
        assert pi.c1 == pytest.approx(c1.real) and abs(c1.imag) < 1e-12
        assert pi.c3 == pytest.approx(c3.real) and pi.c2 == 0
    else:
        c2 = c * (2j * k) ** (n - 1)
        assert pi.c2 == pytest.approx(c2) and pi.c1 == 0 and pi.c3 == 0


@given(st.integers(1, 8), st.floats(-3, 3), st.floats(0.05, 5))
def test_super_singular_conserves_probability(n, c, k):
    S = scattering(super_singular_interaction(SuperSingularSpec(n, c), k), k)
    assert S.unitarity_defect() <= 1e-12


@pytest.mark.parametrize("n,c,k", [(1, 3.7, 1.0), (2, 0.3, 2.0), (5, -1.0, 0.5), (3, 0.0, 1.0)])
def test_griffiths_form(n, c, k):
    rep = check_griffiths_form(SuperSingularSpec(n, c), k)
    assert rep
    if c == 0:
        assert rep.deriv_residual == 0 and rep.value_residual == 0


def test_griffiths_form_detects_wrong_triple(monkeypatch):
    # a triple with the wrong sign must violate the higher-derivative conditions
    import pointkernel.scatter as sc

    real = sc.super_singular_interaction
    monkeypatch.setattr(sc, "super_singular_interaction",
                        lambda spec, k: parity(real(spec, k)) if spec.n % 2 else PointInteraction(
                            -real(spec, k).c1, 0, real(spec, k).c3))
    assert not check_griffiths_form(SuperSingularSpec(2, 0.5), 1.0)
    assert not check_griffiths_form(SuperSingularSpec(3, 0.5), 1.0)
