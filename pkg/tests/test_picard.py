from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fiberstab.picard import (
    CycleBundle,
    GluingData,
    dual,
    glue_on_X,
    isomorphic,
    normal_form,
    restrict_to_cycle,
    tensor,
    trivial,
)

Q = Fraction
scal = st.fractions(min_value=Q(1, 12), max_value=12, max_denominator=12)
data = st.builds(
    GluingData,
    st.tuples(*[st.integers(-6, 6)] * 3),
    st.tuples(scal, scal, scal),
)


def test_normal_form_examples():
    assert normal_form(GluingData((0, 0, 0), (2, 3, Q(1, 6)))).same_as(normal_form(trivial()))
    nf = normal_form(GluingData((1, 0, 0), (1, 1, 5)))
    assert nf.n == (1, 0, 0) and nf.holonomy == 5
    assert nf.to_json() == {"n": [1, 0, 0], "holonomy": "5"}


@given(data, data)
def test_normal_form_is_homomorphism(g, h):
    ng, nh, nt = normal_form(g), normal_form(h), normal_form(tensor(g, h))
    assert nt.n == tuple(a + b for a, b in zip(ng.n, nh.n))
    assert nt.holonomy == ng.holonomy * nh.holonomy


@given(data)
def test_inverse_and_double_dual(g):
    assert isomorphic(tensor(g, dual(g)), trivial())
    assert isomorphic(dual(dual(g)), g)


def test_tensor_with_inverse_example():
    lam = (Q(2), Q(3), Q(7))
    g = GluingData((1, 2, 3), lam)
    h = GluingData((-1, -2, -3), tuple(1 / x for x in lam))
    assert isomorphic(tensor(g, h), trivial())


def test_restriction_examples():
    r = restrict_to_cycle(GluingData((1, 0, 0), (Q(5), 1, 1)))
    assert r.deg == (-1, 0, 0) and r.mono == 5
    assert restrict_to_cycle(trivial()).same_as(CycleBundle((0, 0, 0), Q(1)))


@given(data, data)
def test_restriction_injective_on_normal_forms(g, h):
    same_restriction = restrict_to_cycle(g).same_as(restrict_to_cycle(h))
    assert same_restriction == isomorphic(g, h)


def test_glue_examples():
    assert glue_on_X(1, GluingData((-1, -1, -1), (1, 1, 1))) == 1
    assert glue_on_X(0, GluingData((0, 0, 0), (2, 1, 1))) is None
    assert glue_on_X(0, trivial()) == 0


def test_complex_scalars():
    w = complex(-0.5, 3**0.5 / 2)
    g = GluingData((0, 0, 0), (w, w, w))
    assert glue_on_X(0, g) == 0


def test_zero_scalar_rejected():
    with pytest.raises(ValueError):
        GluingData((0, 0, 0), (0, 1, 1))
