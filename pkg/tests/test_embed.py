from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import k4_crossing, k4_kite_elsewhere, small_corpus
from onepl.embed import (Crossing, CrossingType, OnePlaneEmbedding, add_kite_edges, classify_crossing,
                         crossing_classes, find_x_crossing, has_x_crossing, missing_kite_corners,
                         require_valid, validate)
from onepl.errors import InvalidEmbeddingError, XCrossingError
from onepl.oracle.brute import brute_kappa
from onepl.oracle.generators import from_drawing, gen_arrow_single, gen_cylinder, gen_xcross_rings

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


def crossing_with_sides(sides):
    """Two crossing diagonals of a square plus the given subset of its sides."""
    all_sides = [(0, 1), (1, 2), (2, 3), (3, 0)]
    edges = [(0, 2), (1, 3)] + [all_sides[i] for i in sides]
    return from_drawing(SQUARE, edges)


def test_valid_k4():
    e = k4_crossing()
    assert validate(e).ok
    assert e.is_complete()


def test_scrambled_rotation_is_nonplanar():
    e = k4_crossing()
    rot = list(e.rotations)
    rot[0] = (rot[0][1], rot[0][0], rot[0][2])
    rep = validate(OnePlaneEmbedding(4, e.edges, tuple(rot), e.crossings))
    assert not rep.ok
    assert any("nonplanar rotation system" in v for v in rep.violations)


def test_edge_crossed_twice():
    e = k4_crossing()
    extra = e.crossings + (Crossing(0, 4, e.crossings[0].cw),)
    rep = validate(OnePlaneEmbedding(4, e.edges, e.rotations, extra))
    assert any("edge crossed twice" in v for v in rep.violations)


def test_rotation_mismatch_and_loop():
    rep = validate(OnePlaneEmbedding(2, ((0, 1), (1, 1)), ((0,), (0, 1, 1)), ()))
    assert any("loop" in v for v in rep.violations)
    rep = validate(OnePlaneEmbedding(2, ((0, 1),), ((0,), ()), ()))
    assert any("rotation/edge-end mismatch" in v for v in rep.violations)


def test_too_small_rejected():
    with pytest.raises(InvalidEmbeddingError):
        require_valid(OnePlaneEmbedding(1, (), ((),), ()))


@pytest.mark.parametrize("sides,kind", [
    ((0, 1, 2, 3), CrossingType.FULL),
    ((0, 1, 2), CrossingType.ALMOST_FULL),
    ((0, 2), CrossingType.BOWTIE),
    ((0, 1), CrossingType.ARROW),
    ((0,), CrossingType.CHAIR),
    ((), CrossingType.X),
])
def test_classification(sides, kind):
    e = crossing_with_sides(sides)
    assert classify_crossing(e, 0).kind == kind


def test_arrow_roles_match_brute_force():
    e = gen_arrow_single()
    c = classify_crossing(e, 0)
    assert c.kind == CrossingType.ARROW
    # tip: the only endpoint adjacent to both of its consecutive endpoints
    cw = e.crossings[0].cw
    counts = {v: sum(e.adjacent(v, cw[(i + s) % 4]) for s in (1, 3)) for i, v in enumerate(cw)}
    assert c.tip == max(counts, key=counts.get) and counts[c.tip] == 2
    assert c.tip == 1 and c.tail == 3 and set(c.base) == {0, 2}


def test_almost_full_roles():
    c = classify_crossing(crossing_with_sides((0, 1, 2)), 0)
    # sides 01, 12, 23 present; 30 missing: wing tips are 3 and 0
    assert set(c.wing_tips) == {0, 3}
    assert set(c.spine) == {1, 2}


def test_x_crossing_detection():
    assert has_x_crossing(gen_xcross_rings(2, 4))
    assert not has_x_crossing(gen_cylinder(5, 3))
    for e in small_corpus():
        assert find_x_crossing(e) is None


def test_add_kite_edges_rejects_x():
    with pytest.raises(XCrossingError) as info:
        add_kite_edges(gen_xcross_rings(2, 5))
    assert info.value.crossing == 0


def test_kite_elsewhere_gets_duplicate():
    e = k4_kite_elsewhere()
    assert missing_kite_corners(e)
    e2 = add_kite_edges(e)
    assert e2.m == e.m + 1
    assert missing_kite_corners(e2) == []
    assert [c.kind for c in crossing_classes(e2)] == [CrossingType.FULL]


def test_add_kite_edges_idempotent_on_complete_kites():
    e = k4_crossing()
    assert add_kite_edges(e) is e


def test_add_kite_edges_properties_on_corpus():
    for e in small_corpus():
        e2 = add_kite_edges(e)
        assert add_kite_edges(e2) == e2
        assert [c.kind for c in crossing_classes(e2)] == [c.kind for c in crossing_classes(e)]
        assert missing_kite_corners(e2) == []
        assert brute_kappa(e2).kappa == brute_kappa(e).kappa


@settings(max_examples=40, deadline=None)
@given(st.lists(st.booleans(), min_size=4, max_size=4))
def test_classification_is_rotation_invariant(mask):
    sides = tuple(i for i in range(4) if mask[i])
    e = crossing_with_sides(sides)
    kind = classify_crossing(e, 0).kind
    # relabel the square by a quarter turn
    turned = crossing_with_sides(tuple((i + 1) % 4 for i in sides))
    assert classify_crossing(turned, 0).kind == kind
    assert classify_crossing(e, 0).induced_edge_count == 2 + len(sides)


def test_adjacency_counts_kites_drawn_anywhere():
    # a chair's missing kite pair drawn far away still counts as adjacent
    e = k4_kite_elsewhere()
    assert classify_crossing(e, 0).kind == CrossingType.FULL
    assert all(e.adjacent(a, b) for a, b in itertools.combinations(range(4), 2))
