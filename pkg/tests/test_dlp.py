from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fiberstab.dlp import (
    CUTOFF,
    EnvelopeModel,
    Verdict,
    branch_value,
    curve,
    delta_at,
    delta_float,
    strictly_below,
)
from fiberstab.errors import OutOfWindow
from fiberstab.exceptional import ExceptionalClass, enumerate_exceptional
from fiberstab.ktheory import euler_poly

mus = st.fractions(min_value=0, max_value=1, max_denominator=400)


def brute_delta(order, mu):
    """Max over every class in a wide window, with the cutoff applied by hand."""
    best = None
    for e in enumerate_exceptional(order, -4, 5):
        x = abs(mu - e.mu)
        if x <= Fraction(3, 2):
            val = (x * x - 3 * x + 2) / 2 - e.delta
            best = val if best is None else max(best, val)
    return best


def test_value_at_zero():
    for n in (1, 2, 5, 34):
        m = EnvelopeModel.build(n, 0, 1)
        assert delta_at(m, 0) == 1 == delta_at(m, 1)


def test_two_line_bundles_at_minus_three_halves():
    m = EnvelopeModel.build(1, -2, 1)
    assert delta_at(m, Fraction(-3, 2)) == Fraction(3, 8)
    assert {e.mu for e in m.near(Fraction(-3, 2))} >= {-1, -2, 0}


@pytest.mark.parametrize("order", [1, 2, 5, 13])
@pytest.mark.parametrize("mu", [Fraction(k, 24) for k in range(25)])
def test_matches_brute_force(order, mu):
    assert delta_at(EnvelopeModel.build(order, 0, 1), mu) == brute_delta(order, mu)


def test_known_values():
    assert delta_at(EnvelopeModel.build(2, 0, 1), Fraction(1, 4)) == Fraction(21, 32)
    assert delta_at(EnvelopeModel.build(2, 0, 1), Fraction(1, 2)) == Fraction(5, 8)


def test_branches_past_cutoff_rise_again():
    e = ExceptionalClass(EnvelopeModel.build(1).contributors[0].v)
    assert branch_value(e, e.mu + CUTOFF) < branch_value(e, e.mu + 2)
    assert euler_poly(Fraction(-3, 2)) == Fraction(-1, 8)


@given(mus)
def test_periodic(mu):
    m = EnvelopeModel.build(13, 0, 2)
    assert delta_at(m, mu) == delta_at(m, mu + 1)


@given(mus)
def test_monotone_in_order(mu):
    vals = [delta_at(EnvelopeModel.build(n, 0, 1), mu) for n in (1, 2, 5, 13, 34)]
    assert vals == sorted(vals)


def test_exceptional_points_below(m34):
    for e in m34.contributors:
        if m34.contains(e.mu):
            assert e.delta < delta_at(m34, e.mu)


def test_window_errors():
    m = EnvelopeModel.build(5, 0, 1)
    with pytest.raises(OutOfWindow):
        delta_at(m, Fraction(3, 2))
    assert m.reduce(Fraction(7, 3)) == Fraction(1, 3)
    with pytest.raises(OutOfWindow):
        EnvelopeModel.build(5, 0, Fraction(1, 2)).reduce(2)


def test_strictly_below_examples():
    m = EnvelopeModel.build(5, 0, 1)
    assert strictly_below(m, 0, Fraction(-1, 4)) is Verdict.BELOW
    assert strictly_below(m, 0, Fraction(1, 4)) is Verdict.AT_EXCEPTIONAL_VIOLATION
    assert strictly_below(m, Fraction(1, 4), Fraction(1, 32)) is Verdict.BELOW
    assert strictly_below(m, Fraction(1, 4), 1) is Verdict.ON_OR_ABOVE_CURVE


def test_float_path_agrees(m13):
    for mu, val in curve(m13, 0, 1, Fraction(1, 50)):
        assert abs(delta_float(m13, float(mu)) - float(val)) < 1e-12
