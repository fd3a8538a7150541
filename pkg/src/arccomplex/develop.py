"""Exact developments of corridors into the universal cover.

A corridor lifts to a strip of ideal triangles.  The strip is developed
into the Farey tessellation: ideal vertices carry reduced integer
fractions (``(p, q)`` with ``q >= 0``, infinity is ``(1, 0)``), the
first triangle gets vertices 0, infinity, 1, and crossing a side with
endpoints u, v replaces the apex by whichever of ``u + v``, ``u - v`` is
not the current apex.  Every triangle of the development is then a
Farey triangle, the dual of the development is a tree, and a reduced
corridor never revisits a triangle, so equal coordinates mean equal
lifts.

That turns intersection questions into exact rational arithmetic:

* two chords cross iff their endpoint pairs separate each other on the
  boundary circle, tested by Moebius-normalizing one chord to (0, inf)
  and comparing image signs;
* the crossings along a chord are ordered by the product |x| * y of the
  normalized images of the crossing chord's endpoints (the square of
  the crossing height);
* lifts of a closed curve have no rational endpoints, but the pinned
  lift's holonomy is an integer matrix whose axis plays their role:
  side separation comes from wall sides or resultants of axis forms,
  and the position key ``b'/c'`` of the conjugated holonomy is again
  rational.

Lifts of another strand meeting the strip are enumerated by pinning
each visit of the strand to each strip node over the same base
triangle; a lift meets the strip in a single dual-tree interval, so
counting only pins that start their interval counts every lift once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .arcs import Arc, ClosedCurve, Strand
from .errors import InternalContractError, InvalidArc
from .triangulation import IdealTriangulation, side_of, tri_of

Coord = tuple[int, int]
Coords3 = tuple[Coord, Coord, Coord]
Mat = tuple[int, int, int, int]

ROOT: Coords3 = ((0, 1), (1, 0), (1, 1))


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def norm_coord(p: int, q: int) -> Coord:
    g = gcd(p, q)
    if g:
        p //= g
        q //= g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return (p, q)


def _cross_side(tri: IdealTriangulation, coords: Coords3, slot: int) -> Coords3:
    """Develop across ``slot`` (a side of the current triangle)."""
    j = side_of(slot)
    u = coords[(j + 1) % 3]
    v = coords[(j + 2) % 3]
    s = norm_coord(u[0] + v[0], u[1] + v[1])
    d = norm_coord(u[0] - v[0], u[1] - v[1])
    if s == coords[j]:
        apex = d
    elif d == coords[j]:
        apex = s
    else:
        raise InternalContractError("development lost the Farey invariant")
    p = tri.glued(slot)
    k = side_of(p)
    out: list[Coord | None] = [None, None, None]
    out[k] = apex
    out[(k + 2) % 3] = u
    out[(k + 1) % 3] = v
    return tuple(out)  # type: ignore[return-value]


def _develop_occupancies(
    tri: IdealTriangulation, slots: Sequence[int], visit: int, pinned: Coords3
) -> list[Coords3]:
    """Coordinates of every occupancy of a linear corridor, given one."""
    occ: list[Coords3 | None] = [None] * (len(slots) + 1)
    occ[visit] = pinned
    cur = pinned
    for w in range(visit, len(slots)):
        cur = _cross_side(tri, cur, slots[w])
        occ[w + 1] = cur
    cur = pinned
    for w in range(visit - 1, -1, -1):
        cur = _cross_side(tri, cur, tri.glued(slots[w]))
        occ[w] = cur
    return occ  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# Chord frames


@dataclass(frozen=True)
class ChordFrame:
    """Moebius normalization sending chord endpoint ``a`` to 0, ``b`` to inf."""

    a: Coord
    b: Coord

    def image(self, w: Coord) -> tuple[int, int]:
        num = -self.a[1] * w[0] + self.a[0] * w[1]
        den = self.b[1] * w[0] - self.b[0] * w[1]
        return num, den

    def side(self, w: Coord) -> int:
        """-1/+1 for the two sides of the chord, 0 on a shared endpoint."""
        num, den = self.image(w)
        return _sign(num * den)

    def key_pair(self, x: Coord, y: Coord) -> Fraction:
        """Position along a -> b of the crossing with chord {x, y}."""
        nx, dx = self.image(x)
        ny, dy = self.image(y)
        key = Fraction(-nx * ny, dx * dy)
        if key <= 0:
            raise InternalContractError("key requested for non-crossing chords")
        return key

    def matrix(self) -> Mat:
        return (-self.a[1], self.a[0], self.b[1], -self.b[0])


def _mat_mul(m: Mat, n: Mat) -> Mat:
    return (
        m[0] * n[0] + m[1] * n[2],
        m[0] * n[1] + m[1] * n[3],
        m[2] * n[0] + m[3] * n[2],
        m[2] * n[1] + m[3] * n[3],
    )


def _mat_adj(m: Mat) -> Mat:
    return (m[3], -m[1], -m[2], m[0])


def _holonomy(src: Coords3, dst: Coords3) -> Mat:
    """Integer matrix sending each src vertex direction to its dst mate."""

    def cross(u: Coord, v: Coord) -> int:
        return u[0] * v[1] - u[1] * v[0]

    u1, u2, u3 = src
    w1, w2, w3 = dst
    alpha = cross(u1, u3) * cross(w2, w3)
    beta = -cross(u2, u3) * cross(w1, w3)
    # alpha * w1 (x) ell_{u2} + beta * w2 (x) ell_{u1}
    m = (
        alpha * w1[0] * -u2[1] + beta * w2[0] * -u1[1],
        alpha * w1[0] * u2[0] + beta * w2[0] * u1[0],
        alpha * w1[1] * -u2[1] + beta * w2[1] * -u1[1],
        alpha * w1[1] * u2[0] + beta * w2[1] * u1[0],
    )
    g = gcd(gcd(abs(m[0]), abs(m[1])), gcd(abs(m[2]), abs(m[3])))
    if g == 0:
        raise InternalContractError("degenerate holonomy")
    return (m[0] // g, m[1] // g, m[2] // g, m[3] // g)


def _axis_form(m: Mat) -> tuple[int, int, int]:
    """Binary quadratic vanishing on the fixed directions of ``m``."""
    a, b, c, d = m
    return (c, d - a, -b)


def _resultant_quadratics(f: tuple[int, int, int], g: tuple[int, int, int]) -> int:
    f2, f1, f0 = f
    g2, g1, g0 = g
    return (f2 * g0 - f0 * g2) ** 2 - (f2 * g1 - f1 * g2) * (f1 * g0 - f0 * g1)


# ---------------------------------------------------------------------------
# Strips


@dataclass(frozen=True)
class Strip:
    tri: IdealTriangulation
    slots: tuple[int, ...]
    nodes: tuple[Coords3, ...]
    frame: ChordFrame

    @property
    def bases(self) -> tuple[int, ...]:
        n = [tri_of(s) for s in self.slots]
        n.append(tri_of(self.tri.glued(self.slots[-1])))
        return tuple(n)


def build_strip(arc: Arc) -> Strip:
    if arc.is_edge_arc:
        raise InvalidArc("edge arcs have no strip; handle them separately")
    tri = arc.tri
    nodes = [ROOT]
    cur = ROOT
    for s in arc.slots:
        cur = _cross_side(tri, cur, s)
        nodes.append(cur)
    a = nodes[0][side_of(arc.slots[0])]
    b = nodes[-1][side_of(tri.glued(arc.slots[-1]))]
    return Strip(tri, arc.slots, tuple(nodes), ChordFrame(a, b))


# ---------------------------------------------------------------------------
# Crossing enumeration


@dataclass(frozen=True)
class CrossingRecord:
    """One lift of the other strand crossing the strip's chord.

    ``key`` orders the crossings along the strip arc.  ``node``/``visit``
    pin a triangle the two corridors share near this crossing, which is
    what a surgery splice needs.  ``sign`` is the side of the chord the
    other strand heads towards.  ``other_key`` orders the crossing along
    the other strand when that strand is an arc.
    """

    key: Fraction
    sign: int
    node: int
    visit: int | None
    other_key: Fraction | None = None
    slot: int | None = None


def _arc_records(strip: Strip, beta: Arc) -> list[CrossingRecord]:
    tri = strip.tri
    slots = beta.slots
    visits = [tri_of(s) for s in slots]
    visits.append(tri_of(tri.glued(slots[-1])))
    start_side = side_of(slots[0])
    end_side = side_of(tri.glued(slots[-1]))
    out: list[CrossingRecord] = []
    n_nodes = len(strip.nodes)
    for n, base in enumerate(strip.bases):
        for v, bt in enumerate(visits):
            if bt != base:
                continue
            pinned = strip.nodes[n]
            if v > 0:
                prev3 = _cross_side(tri, pinned, tri.glued(slots[v - 1]))
                if (n > 0 and prev3 == strip.nodes[n - 1]) or (
                    n + 1 < n_nodes and prev3 == strip.nodes[n + 1]
                ):
                    continue  # interval continues; counted at its start
            occ = _develop_occupancies(tri, slots, v, pinned)
            p = occ[0][start_side]
            q = occ[-1][end_side]
            sp = strip.frame.side(p)
            sq = strip.frame.side(q)
            if sp * sq >= 0:
                continue
            out.append(
                CrossingRecord(
                    key=strip.frame.key_pair(p, q),
                    sign=sq,
                    node=n,
                    visit=v,
                    other_key=ChordFrame(p, q).key_pair(strip.frame.a, strip.frame.b),
                )
            )
    out.sort(key=lambda r: r.key)
    return out


def _edge_records(strip: Strip, edge: int) -> list[CrossingRecord]:
    tri = strip.tri
    seen: set[frozenset[Coord]] = set()
    out: list[CrossingRecord] = []
    for n, base in enumerate(strip.bases):
        for j in range(3):
            s = 3 * base + j
            if tri.edge_of_slot(s) != edge:
                continue
            u = strip.nodes[n][(j + 1) % 3]
            v = strip.nodes[n][(j + 2) % 3]
            chord = frozenset((u, v))
            if chord in seen:
                continue
            seen.add(chord)
            su = strip.frame.side(u)
            sv = strip.frame.side(v)
            if su * sv >= 0:
                continue
            out.append(
                CrossingRecord(
                    key=strip.frame.key_pair(u, v),
                    sign=0,
                    node=n,
                    visit=None,
                    slot=s,
                )
            )
    out.sort(key=lambda r: r.key)
    return out


def _curve_records(strip: Strip, beta: ClosedCurve) -> list[CrossingRecord]:
    tri = strip.tri
    slots = beta.slots
    period = len(slots)
    n_nodes = len(strip.nodes)
    fmat = strip.frame.matrix()
    bases = strip.bases
    out: list[CrossingRecord] = []
    for n in range(n_nodes):
        base = bases[n]
        for v in range(period):
            if tri_of(slots[v]) != base:
                continue
            pinned = strip.nodes[n]
            prev3 = _cross_side(tri, pinned, tri.glued(slots[(v - 1) % period]))
            if (n > 0 and prev3 == strip.nodes[n - 1]) or (
                n + 1 < n_nodes and prev3 == strip.nodes[n + 1]
            ):
                continue

            def wall(forward: bool) -> int:
                cur = pinned
                n_cur = n
                w = v
                while True:
                    s = slots[w % period] if forward else tri.glued(slots[(w - 1) % period])
                    j = side_of(s)
                    cu = cur[(j + 1) % 3]
                    cv = cur[(j + 2) % 3]
                    nxt = _cross_side(tri, cur, s)
                    if n_cur + 1 < n_nodes and nxt == strip.nodes[n_cur + 1]:
                        n_cur += 1
                    elif n_cur > 0 and nxt == strip.nodes[n_cur - 1]:
                        n_cur -= 1
                    else:
                        su = strip.frame.side(cu)
                        return su if su != 0 else strip.frame.side(cv)
                    cur = nxt
                    w = w + 1 if forward else w - 1

            s_in = wall(forward=False)
            s_out = wall(forward=True)
            if s_in * s_out >= 0:
                continue
            hol = _holonomy(pinned, _develop_occupancies(tri, list(slots) * 2, v, pinned)[v + period])
            conj = _mat_mul(_mat_mul(fmat, hol), _mat_adj(fmat))
            key = Fraction(conj[1], conj[2])
            if key <= 0:
                raise InternalContractError("curve crossing key not positive")
            out.append(CrossingRecord(key=key, sign=s_out, node=n, visit=v))
    out.sort(key=lambda r: r.key)
    return out


def crossing_records(alpha: Arc, beta: Strand) -> list[CrossingRecord]:
    """All lifts of ``beta`` crossing a fixed lift of ``alpha``, in order.

    ``alpha`` must cross at least one edge.  Strands sharing an ideal
    endpoint with the lift never cross it (they are separated near the
    puncture), which resolves endpoint conventions once and for all.
    """
    strip = build_strip(alpha)
    if isinstance(beta, ClosedCurve):
        return _curve_records(strip, beta)
    if beta.is_edge_arc:
        return _edge_records(strip, beta.edge)
    return _arc_records(strip, beta)


def intersection_count_dev(alpha: Arc, beta: Strand) -> int:
    """Intersection number straight from the development (no flips)."""
    if alpha.is_edge_arc:
        return sum(1 for e in beta.crossings() if e == alpha.edge) if beta != alpha else 0
    if beta == alpha:
        return 0
    return len(crossing_records(alpha, beta))


# ---------------------------------------------------------------------------
# Curve against curve


def curve_curve_intersection(x: ClosedCurve, y: ClosedCurve) -> int:
    """Crossing lifts of ``y`` against one lift of ``x``, modulo its deck.

    Counting interval starts inside one period window picks exactly one
    representative of each translation orbit of lifts.
    """
    if x.tri != y.tri:
        raise InternalContractError("curves on different triangulations")
    if x == y:
        return 0
    tri = x.tri
    xs = x.slots
    period = len(xs)
    nodes = [ROOT]
    cur = ROOT
    for s in xs:
        cur = _cross_side(tri, cur, s)
        nodes.append(cur)
    node_prev = _cross_side(tri, nodes[0], tri.glued(xs[-1]))
    fx = _axis_form(_holonomy(nodes[0], nodes[period]))

    ys = y.slots
    yp = len(ys)
    count = 0
    for n in range(period):
        base = tri_of(xs[n])
        for v in range(yp):
            if tri_of(ys[v]) != base:
                continue
            pinned = nodes[n]
            prev3 = _cross_side(tri, pinned, tri.glued(ys[(v - 1) % yp]))
            left = nodes[n - 1] if n > 0 else node_prev
            if prev3 == left or prev3 == nodes[n + 1]:
                continue
            hol = _holonomy(pinned, _develop_occupancies(tri, list(ys) * 2, v, pinned)[v + yp])
            if _resultant_quadratics(fx, _axis_form(hol)) < 0:
                count += 1
    return count


# ---------------------------------------------------------------------------
# Embeddedness and edge orders


def _is_primitive_cyclic(slots: Sequence[int]) -> bool:
    n = len(slots)
    for d in range(1, n):
        if n % d == 0 and tuple(slots) == tuple(slots[:d]) * (n // d):
            return False
    return True


def is_embedded(strand: Strand) -> bool:
    """Whether the strand has an embedded representative."""
    if isinstance(strand, Arc):
        if strand.is_edge_arc:
            return True
        return not crossing_records(strand, strand)
    if not _is_primitive_cyclic(strand.slots):
        return False
    # x == y shortcut in curve_curve_intersection must be bypassed: count
    # crossings of the curve's own other lifts.
    tri = strand.tri
    xs = strand.slots
    period = len(xs)
    nodes = [ROOT]
    cur = ROOT
    for s in xs:
        cur = _cross_side(tri, cur, s)
        nodes.append(cur)
    node_prev = _cross_side(tri, nodes[0], tri.glued(xs[-1]))
    fx = _axis_form(_holonomy(nodes[0], nodes[period]))
    for n in range(period):
        base = tri_of(xs[n])
        for v in range(period):
            if tri_of(xs[v]) != base:
                continue
            pinned = nodes[n]
            prev3 = _cross_side(tri, pinned, tri.glued(xs[(v - 1) % period]))
            left = nodes[n - 1] if n > 0 else node_prev
            if prev3 == left or prev3 == nodes[n + 1]:
                continue
            hol = _holonomy(pinned, _develop_occupancies(tri, list(xs) * 2, v, pinned)[v + period])
            if _resultant_quadratics(fx, _axis_form(hol)) < 0:
                return False
    return True


def edge_crossing_order(
    tri: IdealTriangulation, edge: int, arcs: Sequence[Arc]
) -> list[tuple[Fraction, int, int]]:
    """Crossings of the given arcs along one lift of ``edge``.

    Returns ``(key, arc_index, visit)`` sorted by position along the
    edge.  Pairwise disjoint arcs give pairwise distinct keys.
    """
    s = tri.edge_slots(edge)[0]
    t = tri_of(s)
    node_t: Coords3 = ROOT
    node_tp = _cross_side(tri, node_t, s)
    j = side_of(s)
    frame = ChordFrame(node_t[(j + 1) % 3], node_t[(j + 2) % 3])
    out: list[tuple[Fraction, int, int]] = []
    for idx, arc in enumerate(arcs):
        if arc.is_edge_arc:
            continue
        for w, sl in enumerate(arc.slots):
            if tri.edge_of_slot(sl) != edge:
                continue
            # pin by slot, not by triangle: both sides of the edge may lie
            # in the same triangle
            pinned = node_t if sl == s else node_tp
            occ = _develop_occupancies(tri, arc.slots, w, pinned)
            p = occ[0][side_of(arc.slots[0])]
            q = occ[-1][side_of(tri.glued(arc.slots[-1]))]
            if frame.side(p) * frame.side(q) >= 0:
                raise InternalContractError("edge crossing does not separate")
            out.append((frame.key_pair(p, q), idx, w))
    out.sort(key=lambda r: r[0])
    return out
