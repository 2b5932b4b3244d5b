from fractions import Fraction as F

import pytest
from hypothesis import assume, given, strategies as st

from conftest import rationals, small_rationals
from hypsum.errors import UndefinedSeries
from hypsum.oracle import (
    HypSeriesSpec,
    SeriesPoly,
    cauchy_product,
    exp_series,
    hyp0f1_series,
    hyp1f1_series,
    hyp2f1,
    hyp_term_by_term,
    hyp_terminating_sum,
)


def test_hand_checked_sums():
    assert hyp2f1(2, 1, 2, 2) == F(1, 3)
    assert hyp2f1(0, F(7, 3), F(-5, 2), 2) == 1
    assert hyp2f1(1, 1, -3, 2) == F(5, 3)


def test_spec_infers_termination():
    spec = HypSeriesSpec.of([F(3, 2), -4], [2], 2)
    assert spec.terminate_at == 4
    with pytest.raises(ValueError):
        HypSeriesSpec.of([F(1, 2)], [2], 2)
    with pytest.raises(ValueError):
        HypSeriesSpec.of([-1], [2], 2, terminate_at=3)


def test_undefined_lower_parameter():
    with pytest.raises(UndefinedSeries):
        hyp2f1(3, 1, -1, 2)
    # the vanishing factor lies beyond the last term
    assert hyp2f1(1, 1, -1, 2) == 3


def test_three_parameter_series():
    # 3F2(-1, 2, 3; 4, 5; 1) = 1 - 6/20
    assert hyp_terminating_sum(HypSeriesSpec.of([-1, 2, 3], [4, 5], 1)) == F(7, 10)


@given(st.integers(0, 20), rationals, rationals, small_rationals)
def test_horner_matches_term_by_term(n, b, c, z):
    spec = HypSeriesSpec.of([-n, b], [c], z, n)
    try:
        fast = hyp_terminating_sum(spec)
    except UndefinedSeries:
        with pytest.raises(UndefinedSeries):
            hyp_term_by_term(spec)
        return
    assert fast == hyp_term_by_term(spec)


@given(st.integers(0, 15), rationals, rationals)
def test_symmetric_in_upper_parameters(n, b, c):
    assume(not (c.denominator == 1 and c <= 0))
    s1 = HypSeriesSpec.of([-n, b, F(1, 3)], [c, F(5, 2)], 2, n)
    s2 = HypSeriesSpec.of([F(1, 3), b, -n], [F(5, 2), c], 2, n)
    assert hyp_terminating_sum(s1) == hyp_terminating_sum(s2)


class TestSeries:
    def test_exp(self):
        assert exp_series(F(-1, 2), 2).coefficients == (1, F(-1, 2), F(1, 8))
        assert exp_series(0, 3).coefficients == (1, 0, 0, 0)
        assert exp_series(1, 1).coefficients == (1, 1)

    def test_1f1(self):
        assert hyp1f1_series(F(2, 7), 5, 0).coefficients == (1,)
        assert hyp1f1_series(1, 2, 2).coefficients == (1, F(1, 2), F(1, 6))
        assert hyp1f1_series(F(3, 2), 2, 1).coefficients == (1, F(3, 4))
        with pytest.raises(UndefinedSeries):
            hyp1f1_series(1, -2, 5)

    def test_0f1(self):
        assert hyp0f1_series(3, F(1, 16), 0).coefficients == (1,)
        assert hyp0f1_series(F(3, 2), F(1, 16), 2).coefficients == (1, 0, F(1, 24))
        assert hyp0f1_series(F(1, 2), F(1, 16), 2).coefficients == (1, 0, F(1, 8))

    def test_cauchy(self):
        p = SeriesPoly.of([1, 2, 3])
        assert cauchy_product(p, SeriesPoly.of([1, 0, 0])) == p
        assert exp_series(F(-1, 2), 6) * exp_series(F(1, 2), 6) == SeriesPoly.of([1] + [0] * 6)
        with pytest.raises(ValueError):
            cauchy_product(p, SeriesPoly.of([1]))

    @given(small_rationals, small_rationals, st.integers(0, 12))
    def test_exponential_law(self, s, t, N):
        assert exp_series(s, N) * exp_series(t, N) == exp_series(s + t, N)

    @given(st.lists(small_rationals, min_size=4, max_size=4), st.lists(small_rationals, min_size=4, max_size=4),
           st.lists(small_rationals, min_size=4, max_size=4))
    def test_ring_laws(self, a, b, c):
        p, q, r = SeriesPoly.of(a), SeriesPoly.of(b), SeriesPoly.of(c)
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r

    @given(rationals, st.integers(1, 12))
    def test_1f1_coefficient_recurrence(self, a, N):
        c = F(7, 2)
        s = hyp1f1_series(a, c, N)
        for k in range(N):
            assert s[k + 1] * (c + k) * (k + 1) == s[k] * (a + k)
