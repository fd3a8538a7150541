import random
from fractions import Fraction
from itertools import combinations

from hypothesis import given, strategies as st

from arccomplex import (
    ClosedCurve,
    base_triangulation,
    enumerate_arcs,
    intersection_number,
    puncture_link_curve,
    square_torus,
)
from arccomplex.develop import (
    crossing_records,
    curve_curve_intersection,
    edge_crossing_order,
    intersection_count_dev,
    is_embedded,
    norm_coord,
)

import oracles


def test_norm_coord():
    assert norm_coord(2, 4) == (1, 2)
    assert norm_coord(-2, -4) == (1, 2)
    assert norm_coord(3, -6) == (-1, 2)
    assert norm_coord(-5, 0) == (1, 0)
    assert norm_coord(0, 7) == (0, 1)


def test_embedded_on_torus_means_coprime_slope():
    T = square_torus()
    window = oracles.torus_slopes(5)
    emb = [a for a in enumerate_arcs(T, 5) if is_embedded(a)]
    assert len(emb) == len(window)


def test_records_are_ordered_and_signed():
    T = square_torus()
    arcs = [a for a in enumerate_arcs(T, 5) if not a.is_edge_arc and is_embedded(a)]
    rng = random.Random(41)
    for a, b in combinations(rng.sample(arcs, 7), 2):
        recs = crossing_records(a, b)
        assert len(recs) == intersection_number(a, b)
        keys = [r.key for r in recs]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)
        for r in recs:
            assert r.sign in (-1, 1)
            assert r.key > 0
            assert r.other_key is not None and r.other_key > 0
            assert a.tri.glue[a.slots[r.node - 1]] // 3 == b.slots[r.visit] // 3 or r.node == 0

    # splice compatibility: the pinned visit shares the strip triangle
    for a, b in combinations(rng.sample(arcs, 5), 2):
        strip_bases = [s // 3 for s in a.slots] + [a.tri.glued(a.slots[-1]) // 3]
        for r in crossing_records(a, b):
            visits = [s // 3 for s in b.slots] + [b.tri.glued(b.slots[-1]) // 3]
            assert visits[r.visit] == strip_bases[r.node]


def test_curve_records_match_counts():
    T = square_torus()
    hor = ClosedCurve.from_slots(T, [0, 5])
    arcs = [a for a in enumerate_arcs(T, 4) if not a.is_edge_arc and is_embedded(a)]
    for a in arcs:
        recs = crossing_records(a, hor)
        assert len(recs) == intersection_number(a, hor)
        keys = [r.key for r in recs]
        assert keys == sorted(keys)


def test_curve_curve_against_farey():
    T = square_torus()
    hor = ClosedCurve.from_slots(T, [0, 5])
    ver = ClosedCurve.from_slots(T, [2, 5])
    assert curve_curve_intersection(hor, ver) == 1
    assert curve_curve_intersection(ver, hor) == 1
    link = puncture_link_curve(T, 0)
    assert curve_curve_intersection(link, hor) == 0
    assert curve_curve_intersection(link, ver) == 0


def test_multiplicity_scales_curve_counts():
    T = square_torus()
    hor = ClosedCurve.from_slots(T, [0, 5])
    ver = ClosedCurve.from_slots(T, [2, 5])
    hor3 = ClosedCurve(T, tuple(list(hor.slots) * 3))
    assert not is_embedded(hor3)
    assert curve_curve_intersection(hor3, ver) == 3


def test_edge_crossing_order_counts_and_sorts(genus2):
    arcs = [a for a in enumerate_arcs(genus2, 3) if not a.is_edge_arc]
    rng = random.Random(43)
    sample = rng.sample(arcs, 6)
    for e in range(genus2.num_edges):
        rows = edge_crossing_order(genus2, e, sample)
        keys = [k for k, _, _ in rows]
        assert keys == sorted(keys)
        for i, a in enumerate(sample):
            want = sum(1 for x in a.crossings() if x == e)
            assert sum(1 for _, j, _ in rows if j == i) == want


@given(seed=st.integers(0, 2**32 - 1))
def test_dual_route_intersection_random_pairs(seed):
    rng = random.Random(seed)
    g, n = rng.choice([(0, 3), (1, 1), (1, 2), (2, 2)])
    tri = base_triangulation(g, n)
    arcs = [a for a in enumerate_arcs(tri, 3) if not a.is_edge_arc]
    a, b = rng.choice(arcs), rng.choice(arcs)
    assert intersection_count_dev(a, b) == intersection_number(a, b)
