import math
import warnings
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from pointkernel.born import (
    FREE_STATE,
    BornSeries,
    QuadrantKernelState,
    SeriesDivergenceWarning,
    born_partial_sum,
    born_series,
    born_step,
    born_step_matrix,
    born_step_oracle,
    born_terms,
    closed_form_state,
    evaluate_state,
)
from pointkernel.errors import AlternationViolated
from pointkernel.propagator import TimeAxis, delta_prime_propagator

c = sp.Symbol("c", real=True)

# displayed correction terms, quadrants ordered (++, +-, -+, --) as (sign x, sign y)
EXPECTED = {
    1: ("mirror", (-c, 0, 0, c)),
    2: ("direct", (0, -c**2 / 2, -c**2 / 2, 0)),
    3: ("mirror", (c**3 / 4, 0, 0, -c**3 / 4)),
    4: ("direct", (0, c**4 / 8, c**4 / 8, 0)),
    5: ("mirror", (-c**5 / 16, 0, 0, c**5 / 16)),
}


def test_symbolic_terms_match_displayed_tables():
    terms = born_terms(c, 5)
    for i, (kind, coeffs) in EXPECTED.items():
        term = terms[i - 1]
        got = term.mirror if kind == "mirror" else term.direct
        other = term.direct if kind == "mirror" else term.mirror
        assert all(sp.simplify(g - e) == 0 for g, e in zip(got, coeffs)), (i, got)
        assert all(sp.simplify(o) == 0 for o in other)


def test_symbolic_series_is_taylor_expansion_of_closed_form():
    n = 9
    total = born_series(c, n).partial_sum()
    closed = closed_form_state(c)
    for got, exact in zip(total.direct + total.mirror, closed.direct + closed.mirror):
        taylor = sp.series(exact, c, 0, n + 1).removeO()
        assert sp.expand(got - taylor) == 0


def test_exact_rational_step():
    state = born_step(FREE_STATE, Fraction(1, 3))
    assert state.mirror == (Fraction(-1, 3), 0, 0, Fraction(1, 3))


def test_matrix_agrees_with_step():
    for cv in (0.3, -1.7, 2.0):
        M = born_step_matrix(cv)
        v = FREE_STATE.as_vector()
        for term in born_terms(cv, 6):
            v = M @ v
            np.testing.assert_allclose(v, term.as_vector(), atol=1e-14)


def test_alternation_violation():
    with pytest.raises(AlternationViolated):
        born_step(QuadrantKernelState((1, 0, 0, 0), (0, 1, 0, 0)), 1.0)


@given(st.floats(-3, 3).filter(lambda v: abs(v) > 1e-3), st.integers(1, 25))
def test_alternation_and_geometric_magnitude(cv, n):
    terms = born_terms(cv, n)
    for i, term in enumerate(terms, start=1):
        assert term.is_pure_mirror if i % 2 else term.is_pure_direct
        assert term.max_abs() == pytest.approx(abs(cv) ** i / 2 ** (i - 1), rel=1e-12)
    BornSeries(cv, terms)  # asserts the same scaling internally


def test_series_rejects_bad_magnitudes():
    terms = born_terms(1.0, 3)
    with pytest.raises(AssertionError):
        BornSeries(1.0, [terms[0], terms[1].scale(2.0)])


@pytest.mark.parametrize("cv", [0.5, 1.0, 1.5])
def test_partial_sum_error_bound(cv):
    series = born_series(cv, 30)
    for n in range(31):
        assert series.error(n) <= series.error_bound(n)
    assert series.error(30) < 1e-3


def test_zero_terms_is_free_state():
    assert born_partial_sum(0.7, 0) == FREE_STATE


def test_divergence_at_radius():
    with pytest.warns(SeriesDivergenceWarning):
        s4 = born_partial_sum(2.0, 4)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SeriesDivergenceWarning)
        sums = [born_partial_sum(2.0, n).direct[1] for n in range(2, 10, 2)]
    # cross-quadrant partial sums oscillate between -1 and 1 without settling
    assert set(sums) == {-1.0, 1.0}
    assert s4.direct[1] in (-1.0, 1.0)
    assert not born_series(2.0, 3).converges
    assert born_series(2.0, 3).error_bound(3) == math.inf


def test_evaluated_partial_sum_converges_to_propagator():
    cv, probe = 1.2, (0.7, 1.0, -0.4, 0.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        approx = evaluate_state(born_partial_sum(cv, 60), *probe, axis=TimeAxis.IMAGINARY)
    assert approx == pytest.approx(delta_prime_propagator(cv, *probe, axis=TimeAxis.IMAGINARY), abs=1e-12)


PROBES = [(1, 1, 1, 0), (-1, 1, 1, 0), (0.5, 2, -1.5, 0.5), (-2, 1.5, -0.5, 0), (0.8, 1, -1, 0)]


@pytest.mark.parametrize("probe", PROBES)
@pytest.mark.parametrize("step", [0, 1, 2])
def test_oracle_matches_analytic_step(probe, step):
    cv = 1.0
    prev = FREE_STATE if step == 0 else born_terms(cv, step)[-1]
    analytic = evaluate_state(born_step(prev, cv), *probe, axis=TimeAxis.IMAGINARY).real
    assert born_step_oracle(prev, cv, probe) == pytest.approx(analytic, abs=1e-6)


def test_oracle_zero_coupling():
    assert born_step_oracle(FREE_STATE, 0.0, (1, 1, 1, 0)) == 0
