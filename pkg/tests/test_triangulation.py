import pytest

from arccomplex import (
    InvalidTriangulation,
    IdealTriangulation,
    NotFlippable,
    base_triangulation,
    slot_id,
    square_torus,
    three_punctured_sphere,
    tri_of,
)
from arccomplex.triangulation import polygon_fan, split_puncture, two_puncture_squares


def test_square_torus_basics(torus):
    sig = torus.signature()
    assert (sig.genus, sig.punctures) == (1, 1)
    assert torus.num_triangles == 2
    assert torus.num_edges == 3
    assert torus.num_punctures == 1
    assert torus.edge_name(0) == "vertical"
    assert torus.edge_name(2) == "horizontal"


def test_three_punctured_sphere_basics(sphere3):
    sig = sphere3.signature()
    assert (sig.genus, sig.punctures) == (0, 3)
    assert sphere3.num_punctures == 3
    # every edge joins two distinct punctures
    ends = {sphere3.edge_endpoints(e) for e in range(3)}
    assert all(a != b for a, b in ends)
    assert len(ends) == 3


def test_polygon_fan_matches_square_torus():
    assert polygon_fan(1).glue == square_torus().glue


@pytest.mark.parametrize("g", [1, 2, 3])
def test_polygon_fan_signature(g):
    sig = polygon_fan(g).signature()
    assert (sig.genus, sig.punctures) == (g, 1)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_two_puncture_squares_signature(g):
    tri = two_puncture_squares(g)
    sig = tri.signature()
    assert (sig.genus, sig.punctures) == (g, 2)
    # rungs join the two punctures, diagonals stay at puncture 0
    for e in range(tri.num_edges):
        name = tri.edge_name(e)
        a, b = tri.edge_endpoints(e)
        if name.startswith("rung"):
            assert a != b
        else:
            assert name.startswith("diag")
            assert a == b


def test_base_triangulation_counts(any_surface):
    tri = any_surface
    sig = tri.signature()
    g, n = sig.genus, sig.punctures
    assert tri.num_triangles == 4 * g - 4 + 2 * n
    assert tri.num_edges == 6 * g - 6 + 3 * n
    assert tri.num_punctures == n


def test_base_triangulation_rejects_closed():
    with pytest.raises(InvalidTriangulation):
        base_triangulation(2, 0)
    with pytest.raises(InvalidTriangulation):
        base_triangulation(0, 2)


def test_corner_walk_is_bijective(any_surface):
    tri = any_surface
    seen = set()
    for p in range(tri.num_punctures):
        fan = tri.puncture_corners(p)
        assert fan == tuple(tri.fan_from(fan[0]))
        seen.update(fan)
    assert len(seen) == tri.num_slots


def test_glue_is_fixed_point_free_involution(any_surface):
    tri = any_surface
    g = tri.glue
    for s in range(tri.num_slots):
        assert g[s] != s
        assert g[g[s]] == s


def test_split_puncture_adds_one():
    tri = three_punctured_sphere()
    tri2 = split_puncture(tri, tri.num_triangles - 1)
    sig = tri2.signature()
    assert (sig.genus, sig.punctures) == (0, 4)


class TestFlip:
    def test_flip_preserves_signature(self, any_surface):
        tri = any_surface
        for e in range(tri.num_edges):
            if not tri.flippable(e):
                continue
            fr = tri.flip_edge(e)
            assert fr.after.signature() == tri.signature()
            assert fr.after.num_edges == tri.num_edges

    def test_flip_edge_map_is_bijection_off_the_diagonal(self, any_surface):
        tri = any_surface
        for e in range(tri.num_edges):
            if not tri.flippable(e):
                continue
            fr = tri.flip_edge(e)
            others = [fr.edge_map[x] for x in range(tri.num_edges) if x != e]
            assert len(set(others)) == len(others)
            assert fr.new_edge not in others

    def test_unflippable_raises(self):
        # fan models have a self-folded-free structure; build one with an
        # edge whose two sides bound the same triangle via (0,3)+split
        tri = three_punctured_sphere()
        flippables = [e for e in range(tri.num_edges) if tri.flippable(e)]
        assert flippables
        for e in range(tri.num_edges):
            if not tri.flippable(e):
                with pytest.raises(NotFlippable):
                    tri.flip_edge(e)

    def test_double_flip_preserves_edge_crossing_data(self, torus):
        fr = torus.flip_edge(1)
        back = fr.after.flip_edge(fr.new_edge)
        assert back.after.signature() == torus.signature()


def test_validation_rejects_bad_glue():
    with pytest.raises(InvalidTriangulation):
        IdealTriangulation((0, 1, 2, 3, 4, 5))  # fixed points
    with pytest.raises(InvalidTriangulation):
        IdealTriangulation((1, 2, 0, 4, 5, 3))  # not an involution
    two_tori = (4, 5, 3, 2, 0, 1, 10, 11, 9, 8, 6, 7)
    with pytest.raises(InvalidTriangulation):
        IdealTriangulation(two_tori)  # disconnected
