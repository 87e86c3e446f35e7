import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fiberstab.autgroup import apply, half_twist_matrix, matrix_alpha, matrix_beta
from fiberstab.chamber import (
    I,
    CentralCharge,
    QComplex,
    SlicePoint,
    central_charge,
    in_closure,
    normalize,
    projection_f,
)
from fiberstab.dlp import EnvelopeModel, delta_at
from fiberstab.errors import BudgetExhausted, DegenerateCharge, WallGraze
from fiberstab.exceptional import ExceptionalClass, enumerate_exceptional, exceptional_at_slope
from fiberstab.ktheory import PLANE, POINT, KClass
from fiberstab.walls import (
    PathSpec,
    WallSide,
    apply_word,
    default_generators,
    detect_crossings,
    geometric_point,
    jh_classes,
    jh_classes_minus,
    kernel_class,
    normalize_to_geometric,
    on_wall_locus,
    transport,
)

Q = Fraction
O = ExceptionalClass(PLANE)
HALF = ExceptionalClass(KClass(0, 1, 2))


def path(*pts):
    return PathSpec(tuple(SlicePoint(QComplex(*a), QComplex(*b)) for a, b in pts))


def test_on_wall_locus(m34):
    assert on_wall_locus(SlicePoint(I, QComplex(Q(-1, 4))), O, m34)
    assert not on_wall_locus(SlicePoint(I, QComplex(Q(1, 4))), O, m34)
    assert not on_wall_locus(SlicePoint(I, QComplex(0, Q(-1, 4))), O, m34)


@pytest.mark.parametrize("e", enumerate_exceptional(13, 0, 1), ids=str)
def test_wall_points_align_phase_with_point(e, m34):
    rng = random.Random(e.rank)
    top = delta_at(m34, e.mu)
    for _ in range(20):
        g = e.delta + (top - e.delta) * Q(rng.randint(1, 99), 100)
        a = QComplex(Q(rng.randint(-20, 20), 7), Q(rng.randint(1, 20), 7))
        b = QComplex(-g - e.mu * a.re + e.mu**2 / 2, -e.mu * a.im)
        p = SlicePoint(a, b)
        assert projection_f(p) == (e.mu, g)
        assert on_wall_locus(p, e, m34)
        z = central_charge(p, e.v)
        assert z.im == 0 and z.re < 0


def test_jh_examples():
    t = jh_classes(O)
    assert t.sub.k_class == PLANE
    assert kernel_class(O) == KClass(-1, 0, 1)
    assert t.total() == POINT
    t = jh_classes(HALF)
    assert t.sub.k_class == 2 * HALF.v
    assert kernel_class(HALF) == 2 * HALF.v - POINT
    m = jh_classes_minus(O)
    assert m.sub.k_class == KClass(1, 0, -1)
    assert m.quot.k_class == PLANE
    assert jh_classes_minus(HALF).total() == POINT


@pytest.mark.parametrize("e", enumerate_exceptional(34, -1, 1), ids=str)
def test_jh_sums(e):
    assert jh_classes(e).total() == POINT
    assert jh_classes_minus(e).total() == POINT


def test_documented_crossing(m34):
    boundary = detect_crossings(path(((0, 1), (0, Q(-1, 4))), ((0, 1), (0, Q(1, 4)))), m34)
    assert [(r.E.v, r.side, r.t) for r in boundary] == [(PLANE, WallSide.BOUNDARY, Q(1, 2))]
    crossing = detect_crossings(
        path(((0, 1), (Q(-1, 8), Q(-1, 4))), ((0, 1), (Q(-1, 8), Q(1, 4)))), m34
    )
    assert len(crossing) == 1
    r = crossing[0]
    assert r.E.v == PLANE and r.t == Q(1, 2)
    assert projection_f(r.witness) == (0, Q(1, 8))
    assert r.side is WallSide.MINUS  # B decreases through 0
    reverse = detect_crossings(
        path(((0, 1), (Q(-1, 8), Q(1, 4))), ((0, 1), (Q(-1, 8), Q(-1, 4)))), m34
    )
    assert reverse[0].side is WallSide.PLUS


def test_no_crossing_in_gap():
    m = EnvelopeModel.build(3, 0, 1)
    p = path(((0, 1), (Q(1, 20), Q(-1, 20))), ((0, 1), (Q(1, 20), Q(-1, 5))))
    assert detect_crossings(p, m) == []
    const = path(((0, 1), (1, 0)), ((0, 1), (1, 0)))
    assert detect_crossings(const, m) == []


def test_graze_raises(m34):
    along = path(((0, 1), (Q(-1, 8), 0)), ((0, 1), (Q(-1, 2), 0)))
    with pytest.raises(WallGraze):
        detect_crossings(along, m34)


rat = st.fractions(min_value=-2, max_value=2, max_denominator=12)


@settings(max_examples=40, deadline=None)
@given(rat, rat, rat, rat, st.lists(st.fractions(min_value=Q(1, 20), max_value=Q(19, 20), max_denominator=20), max_size=3, unique=True))
def test_refinement_invariant(b0r, b0i, b1r, b1i, cuts):
    m = EnvelopeModel.build(13, 0, 1)
    p = path(((0, 1), (b0r, b0i)), ((Q(1, 3), 2), (b1r, b1i)))
    try:
        base = detect_crossings(p, m)
    except WallGraze:
        return
    fine = detect_crossings(p.subdivided(cuts), m)
    key = lambda rs: [(r.E.mu, r.side, r.witness) for r in rs]
    assert key(base) == key(fine)


def test_path_json_round_trip():
    p = path(((0, 1), (Q(-1, 8), Q(-1, 4))), ((0, 1), (Q(-1, 8), Q(1, 4))))
    assert PathSpec.from_json(json.dumps(p.to_json())) == p


def test_transport_is_pullback_by_inverse():
    z = CentralCharge.from_slice(SlicePoint(I, QComplex(Q(1, 4))))
    moved = transport(z, matrix_alpha().matrix)
    for v in (POINT, PLANE, KClass(3, -2, 5)):
        assert moved(apply(matrix_alpha().matrix, v)) == z(v)


def test_normalize_examples(m34):
    p = SlicePoint(I, QComplex(Q(1, 4)))
    assert normalize_to_geometric(CentralCharge.from_slice(p), m34, 2) == ([], p)
    # this point is fixed by the α move up to the C-action, so nothing to undo
    word, q = normalize_to_geometric(transport(CentralCharge.from_slice(p), matrix_alpha().matrix), m34, 2)
    assert word == [] and in_closure(q, m34)


def test_normalize_recovers_after_leaving(m34):
    p = SlicePoint(QComplex(0, Q(1, 2)), QComplex(Q(1, 8), Q(-1, 4)))
    z = apply_word(CentralCharge.from_slice(p), [(O, 1)])
    assert geometric_point(z, m34) is None
    assert normalize(apply_word(z, [(O, -1)])).point == p
    word, q = normalize_to_geometric(z, m34, 1)
    assert len(word) == 1 and in_closure(q, m34)


def test_normalize_after_alpha_beta(m34):
    p = SlicePoint(QComplex(0, Q(1, 2)), QComplex(Q(1, 8), Q(-1, 4)))
    z = transport(transport(CentralCharge.from_slice(p), matrix_beta().matrix), matrix_alpha().matrix)
    word, q = normalize_to_geometric(z, m34, 2)
    assert len(word) <= 2 and in_closure(q, m34)


def test_normalize_errors(m34):
    with pytest.raises(DegenerateCharge):
        normalize_to_geometric(CentralCharge(QComplex(0), QComplex(1), QComplex(1)), m34, 2)
    p = SlicePoint(QComplex(0, Q(1, 2)), QComplex(Q(1, 8), Q(-1, 4)))
    z = apply_word(CentralCharge.from_slice(p), [(O, 1)])
    with pytest.raises(BudgetExhausted):
        normalize_to_geometric(z, m34, 0)


def test_default_generators():
    gens = default_generators()
    assert all(g.rank <= 5 and -2 <= g.mu <= 2 for g in gens)
    assert exceptional_at_slope(Q(2, 5), 5).v in {g.v for g in gens}
    assert half_twist_matrix(PLANE) == matrix_alpha().matrix
