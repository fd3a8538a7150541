"""Ideal triangulations of punctured surfaces.

A triangulation with ``T`` triangles is encoded by a single gluing
involution on *slots*.  Slot ``3*t + j`` is side ``j`` of triangle ``t``.
Every triangle is oriented counterclockwise; side ``j`` sits opposite
corner ``j`` and runs from corner ``j+1`` to corner ``j+2`` (indices mod
3), so the triangle interior lies on the left of each directed side.
Gluing two slots always identifies the directed sides head-to-tail,
which keeps the surface oriented; no extra orientation data is stored.

Corners reuse the same integer encoding (``3*t + j`` is corner ``j`` of
triangle ``t``).  Slots and corners are distinct namespaces that happen
to share a range; function names say which is meant.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InvalidTriangulation, NotFlippable


def tri_of(slot: int) -> int:
    return slot // 3


def side_of(slot: int) -> int:
    return slot % 3


def slot_id(triangle: int, side: int) -> int:
    return 3 * triangle + side % 3


@dataclass(frozen=True)
class SurfaceSig:
    """Topological type (genus, number of punctures)."""

    genus: int
    punctures: int

    @property
    def chi(self) -> int:
        return 2 - 2 * self.genus - self.punctures

    @property
    def triangle_count(self) -> int:
        return 4 * self.genus - 4 + 2 * self.punctures

    @property
    def edge_count(self) -> int:
        return 6 * self.genus - 6 + 3 * self.punctures

    def admits_ideal_triangulation(self) -> bool:
        return self.punctures >= 1 and self.triangle_count >= 1


class IdealTriangulation:
    """Immutable ideal triangulation given by its slot gluing involution.

    >>> tri = square_torus()
    >>> tri.signature()
    SurfaceSig(genus=1, punctures=1)
    >>> tri.num_edges
    3
    """

    __slots__ = (
        "glue",
        "num_triangles",
        "num_slots",
        "names",
        "_edge_slots",
        "_edge_of_slot",
        "_next_ccw",
        "_next_cw",
        "_punc_of_corner",
        "_fans",
        "_sig",
        "_hash16",
    )

    def __init__(self, glue: Sequence[int], names: Mapping[str, int] | None = None):
        glue = tuple(glue)
        if len(glue) == 0 or len(glue) % 3 != 0:
            raise InvalidTriangulation("slot count must be a positive multiple of 3")
        n_slots = len(glue)
        for s, p in enumerate(glue):
            if not (0 <= p < n_slots):
                raise InvalidTriangulation(f"slot {s} glued out of range: {p}")
            if p == s:
                raise InvalidTriangulation(f"slot {s} glued to itself")
            if glue[p] != s:
                raise InvalidTriangulation(f"gluing is not an involution at slot {s}")
        object.__setattr__(self, "glue", glue)
        object.__setattr__(self, "num_slots", n_slots)
        object.__setattr__(self, "num_triangles", n_slots // 3)

        # Edges are the slot pairs, ordered by their smaller slot.
        pairs = sorted({(min(s, p), max(s, p)) for s, p in enumerate(glue)})
        edge_of_slot = [0] * n_slots
        for e, (a, b) in enumerate(pairs):
            edge_of_slot[a] = e
            edge_of_slot[b] = e
        object.__setattr__(self, "_edge_slots", tuple(pairs))
        object.__setattr__(self, "_edge_of_slot", tuple(edge_of_slot))

        # Corner rotation around each puncture.  Crossing the ccw-adjacent
        # side (j+1) of corner (t, j) lands at corner (k+1) of the glued
        # side's triangle; clockwise is the inverse.
        nxt = [0] * n_slots
        prv = [0] * n_slots
        for c in range(n_slots):
            t, j = divmod(c, 3)
            p = glue[slot_id(t, j + 1)]
            nxt[c] = slot_id(tri_of(p), side_of(p) + 1)
            q = glue[slot_id(t, j + 2)]
            prv[c] = slot_id(tri_of(q), side_of(q) + 2)
        for c in range(n_slots):
            if prv[nxt[c]] != c:
                raise InvalidTriangulation("corner rotation is not a bijection")
        object.__setattr__(self, "_next_ccw", tuple(nxt))
        object.__setattr__(self, "_next_cw", tuple(prv))

        # Punctures = corner orbits, labeled by smallest corner id.
        seen = [-1] * n_slots
        fans: list[tuple[int, ...]] = []
        for c in range(n_slots):
            if seen[c] >= 0:
                continue
            orbit = [c]
            cur = nxt[c]
            while cur != c:
                orbit.append(cur)
                cur = nxt[cur]
            idx = len(fans)
            for x in orbit:
                seen[x] = idx
            fans.append(tuple(orbit))
        object.__setattr__(self, "_punc_of_corner", tuple(seen))
        object.__setattr__(self, "_fans", tuple(fans))

        # Connectivity over triangle adjacency.
        reached = {0}
        stack = [0]
        while stack:
            t = stack.pop()
            for j in range(3):
                u = tri_of(glue[slot_id(t, j)])
                if u not in reached:
                    reached.add(u)
                    stack.append(u)
        if len(reached) != self.num_triangles:
            raise InvalidTriangulation("triangulation is not connected")

        n_punc = len(fans)
        t_count = self.num_triangles
        # chi of the compactified surface: punctures - edges + triangles.
        chi_c = n_punc - len(pairs) + t_count
        if chi_c % 2 != 0 or chi_c > 2:
            raise InvalidTriangulation(f"impossible euler characteristic {chi_c}")
        sig = SurfaceSig(genus=(2 - chi_c) // 2, punctures=n_punc)
        if sig.triangle_count != t_count:
            raise InvalidTriangulation("triangle count inconsistent with signature")
        object.__setattr__(self, "_sig", sig)

        digest = hashlib.sha256(("tri:" + ",".join(map(str, glue))).encode()).hexdigest()
        object.__setattr__(self, "_hash16", digest[:16])
        object.__setattr__(self, "names", dict(names) if names else {})

    # -- identity ---------------------------------------------------------

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("IdealTriangulation is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, IdealTriangulation) and self.glue == other.glue

    def __hash__(self) -> int:
        return hash(self.glue)

    def __repr__(self) -> str:
        s = self._sig
        return (
            f"IdealTriangulation(genus={s.genus}, punctures={s.punctures}, "
            f"triangles={self.num_triangles}, hash={self._hash16})"
        )

    def signature(self) -> SurfaceSig:
        return self._sig

    @property
    def content_hash(self) -> str:
        """16-hex-digit digest of the gluing; identifies the triangulation."""
        return self._hash16

    @property
    def num_edges(self) -> int:
        return len(self._edge_slots)

    @property
    def num_punctures(self) -> int:
        return len(self._fans)

    # -- slots and edges ----------------------------------------------------

    def glued(self, slot: int) -> int:
        return self.glue[slot]

    def edge_of_slot(self, slot: int) -> int:
        return self._edge_of_slot[slot]

    def edge_slots(self, edge: int) -> tuple[int, int]:
        return self._edge_slots[edge]

    def edge_endpoints(self, edge: int) -> tuple[int, int]:
        """Punctures at the tail and head of the edge's smaller slot."""
        s = self._edge_slots[edge][0]
        t, j = divmod(s, 3)
        return (
            self._punc_of_corner[slot_id(t, j + 1)],
            self._punc_of_corner[slot_id(t, j + 2)],
        )

    def named_edge(self, name: str) -> int:
        return self.names[name]

    # -- corners and punctures ----------------------------------------------

    def next_corner_ccw(self, corner: int) -> int:
        return self._next_ccw[corner]

    def next_corner_cw(self, corner: int) -> int:
        return self._next_cw[corner]

    def puncture_of_corner(self, corner: int) -> int:
        return self._punc_of_corner[corner]

    def puncture_corners(self, puncture: int) -> tuple[int, ...]:
        return self._fans[puncture]

    def fan_from(self, corner: int) -> list[int]:
        """Corners around the same puncture, ccw, starting at ``corner``."""
        out = [corner]
        cur = self._next_ccw[corner]
        while cur != corner:
            out.append(cur)
            cur = self._next_ccw[cur]
        return out

    # -- flips ----------------------------------------------------------------

    def flippable(self, edge: int) -> bool:
        s, sp = self._edge_slots[edge]
        return tri_of(s) != tri_of(sp)

    def flip_edge(self, edge: int) -> "FlipResult":
        """Replace ``edge`` by the other diagonal of its quadrilateral.

        The two triangles keep their indices; their sides are relabeled so
        that the new diagonal is side 1 of ``t`` glued to side 2 of ``t'``.
        """
        s, sp = self._edge_slots[edge]
        t, j = divmod(s, 3)
        tp, jp = divmod(sp, 3)
        if t == tp:
            raise NotFlippable(f"edge {edge} has the same triangle on both sides")

        frame = QuadFrame(
            t=t,
            tp=tp,
            diag_t=s,
            diag_tp=sp,
            ab=slot_id(t, j + 2),
            bc=slot_id(tp, jp + 1),
            cd=slot_id(tp, jp + 2),
            da=slot_id(t, j + 1),
            corner_class={
                slot_id(t, j): "A",
                slot_id(t, j + 1): "B",
                slot_id(t, j + 2): "D",
                slot_id(tp, jp): "C",
                slot_id(tp, jp + 1): "D",
                slot_id(tp, jp + 2): "B",
            },
        )
        omap = {
            frame.bc: slot_id(t, 0),
            frame.ab: slot_id(t, 2),
            frame.cd: slot_id(tp, 0),
            frame.da: slot_id(tp, 1),
        }

        def ms(x: int) -> int:
            return omap.get(x, x)

        new_glue = [-1] * self.num_slots
        for x in range(self.num_slots):
            if x == s or x == sp:
                continue
            new_glue[ms(x)] = ms(self.glue[x])
        new_glue[slot_id(t, 1)] = slot_id(tp, 2)
        new_glue[slot_id(tp, 2)] = slot_id(t, 1)
        after = IdealTriangulation(new_glue)

        edge_map = [-1] * self.num_edges
        for f in range(self.num_edges):
            if f == edge:
                edge_map[f] = after.edge_of_slot(slot_id(t, 1))
            else:
                edge_map[f] = after.edge_of_slot(ms(self._edge_slots[f][0]))
        return FlipResult(
            before=self,
            after=after,
            edge=edge,
            frame=frame,
            omap=omap,
            edge_map=tuple(edge_map),
        )


# Quadrilateral around a flipped edge, vertices A, B, C, D in ccw order.
# The old diagonal joins B and D (triangle t = ABD, t' = CDB); the new one
# joins A and C (triangle t = ABC, t' = ACD).  Slots are in the OLD labels.
@dataclass(frozen=True)
class QuadFrame:
    t: int
    tp: int
    diag_t: int
    diag_tp: int
    ab: int
    bc: int
    cd: int
    da: int
    corner_class: dict[int, str] = field(repr=False)

    def outer_slots(self) -> tuple[int, int, int, int]:
        return (self.ab, self.bc, self.cd, self.da)

    def slot_class(self, slot: int) -> str:
        if slot == self.ab:
            return "AB"
        if slot == self.bc:
            return "BC"
        if slot == self.cd:
            return "CD"
        if slot == self.da:
            return "DA"
        raise KeyError(slot)


# Which side of the NEW diagonal AC a strand endpoint lies on.
_NEW_SIDE = {"AB": "B", "BC": "B", "B": "B", "CD": "D", "DA": "D", "D": "D"}
# Which side of the OLD diagonal BD it lies on.
_OLD_SIDE = {"BC": "C", "CD": "C", "C": "C", "DA": "A", "AB": "A", "A": "A"}


def separates_new(entry: str, exit_: str) -> bool:
    a = _NEW_SIDE.get(entry)
    b = _NEW_SIDE.get(exit_)
    return a is not None and b is not None and a != b


def separates_old(entry: str, exit_: str) -> bool:
    a = _OLD_SIDE.get(entry)
    b = _OLD_SIDE.get(exit_)
    return a is not None and b is not None and a != b


@dataclass(frozen=True)
class FlipResult:
    before: IdealTriangulation
    after: IdealTriangulation
    edge: int
    frame: QuadFrame
    omap: dict[int, int]
    edge_map: tuple[int, ...]

    @property
    def new_edge(self) -> int:
        return self.edge_map[self.edge]

    def new_slot(self, old_slot: int) -> int:
        return self.omap.get(old_slot, old_slot)

    def ac_exit_slot(self, from_side: str) -> int:
        # Crossing the new diagonal out of triangle ABC (the B side) uses
        # its side 1; out of ACD (the D side) uses side 2.
        if from_side == "B":
            return slot_id(self.frame.t, 1)
        if from_side == "D":
            return slot_id(self.frame.tp, 2)
        raise ValueError(from_side)

    def new_corner(self, cls: str, in_triangle: int) -> int:
        t, tp = self.frame.t, self.frame.tp
        if cls == "A":
            return slot_id(in_triangle, 0)
        if cls == "B":
            return slot_id(t, 1)
        if cls == "D":
            return slot_id(tp, 2)
        if cls == "C":
            return slot_id(t, 2) if in_triangle == t else slot_id(tp, 1)
        raise ValueError(cls)


# ---------------------------------------------------------------------------
# Base models


def square_torus() -> IdealTriangulation:
    """Once-punctured torus: unit square with a diagonal.

    Triangle 0 is the lower right half, triangle 1 the upper left.  Edge
    names: ``horizontal`` (slope 0), ``vertical`` (slope infinity),
    ``diagonal`` (slope 1).
    """
    return IdealTriangulation(
        (4, 5, 3, 2, 0, 1),
        names={"vertical": 0, "diagonal": 1, "horizontal": 2},
    )


def three_punctured_sphere() -> IdealTriangulation:
    """Two triangles glued along their boundaries, one puncture per vertex."""
    return IdealTriangulation((3, 5, 4, 0, 2, 1))


def polygon_fan(genus: int) -> IdealTriangulation:
    """Once-punctured genus-g surface from the standard 4g-gon.

    Boundary word ``a b a^-1 b^-1 c d c^-1 d^-1 ...`` (side ``4k`` glued to
    side ``4k+2`` reversed, ``4k+1`` to ``4k+3``), triangulated by the fan
    of diagonals from polygon vertex 0.  Triangle ``i-1`` has corners at
    polygon vertices ``(0, i, i+1)``.
    """
    g = genus
    if g < 1:
        raise ValueError("polygon_fan needs genus >= 1")
    n_tri = 4 * g - 2
    glue = [-1] * (3 * n_tri)

    def boundary_slot(i: int) -> int:
        if i == 0:
            return 2
        if i == 4 * g - 1:
            return 3 * (4 * g - 3) + 1
        return 3 * (i - 1)

    def pair(x: int, y: int) -> None:
        glue[x] = y
        glue[y] = x

    for k in range(g):
        pair(boundary_slot(4 * k), boundary_slot(4 * k + 2))
        pair(boundary_slot(4 * k + 1), boundary_slot(4 * k + 3))
    for t in range(1, n_tri):
        pair(3 * t + 2, 3 * (t - 1) + 1)
    return IdealTriangulation(glue)


def two_puncture_squares(genus: int) -> IdealTriangulation:
    """Genus-g surface with two punctures, cut into 2g squares.

    The two punctures are joined by ``4g`` parallel edges (rungs); the
    complementary squares each get the diagonal joining their two
    puncture-0 corners.  Rung ``e`` crossed towards puncture 1 exits
    through the slot ``down(e)``; crossed towards puncture 0 through
    ``up(e)``.  Square ``a`` is cut into triangles ``2a`` and ``2a+1``.
    Edge names: ``rung0 .. rung{4g-1}``, ``diag0 .. diag{2g-1}``.
    """
    g = genus
    if g < 1:
        raise ValueError("two_puncture_squares needs genus >= 1")
    n_rungs = 4 * g
    glue = [-1] * (3 * n_rungs)  # 4g triangles, 3 slots each

    def down_slot(e: int) -> int:
        e %= n_rungs
        if e < 2 * g:
            return 6 * e + 2  # side 2 of triangle 2e
        return 6 * (e - 2 * g) + 3  # side 0 of triangle 2(e-2g)+1

    def up_slot(e: int) -> int:
        m = (e - 2 * g - 1) % n_rungs
        if m < 2 * g:
            return 6 * m  # side 0 of triangle 2m
        return 6 * (m - 2 * g) + 4  # side 1 of triangle 2(m-2g)+1

    def pair(x: int, y: int) -> None:
        glue[x] = y
        glue[y] = x

    for k in range(2 * g):
        pair(6 * k + 1, 6 * k + 5)  # diagonal of square k
    for e in range(n_rungs):
        pair(down_slot(e), up_slot(e))

    tri = IdealTriangulation(glue)
    sig = tri.signature()
    if sig != SurfaceSig(genus=g, punctures=2):
        raise InvalidTriangulation(f"squares model built {sig}, wanted ({g},2)")
    names = {}
    for e in range(n_rungs):
        names[f"rung{e}"] = tri.edge_of_slot(down_slot(e))
    for k in range(2 * g):
        names[f"diag{k}"] = tri.edge_of_slot(6 * k + 1)
    return IdealTriangulation(glue, names=names)


def split_puncture(tri: IdealTriangulation, triangle: int) -> IdealTriangulation:
    """Star-subdivide ``triangle`` at a new interior puncture.

    The child keeping old side ``0`` reuses the old triangle index; the
    other two children are appended at the end.
    """
    T = tri.num_triangles
    if not (0 <= triangle < T):
        raise ValueError(f"no triangle {triangle}")
    t1, t2, t3 = triangle, T, T + 1

    def m(slot: int) -> int:
        if tri_of(slot) != triangle:
            return slot
        j = side_of(slot)
        return (slot_id(t1, 0), slot_id(t2, 1), slot_id(t3, 2))[j]

    glue = [-1] * (3 * (T + 2))
    for x in range(tri.num_slots):
        glue[m(x)] = m(tri.glue[x])

    def pair(x: int, y: int) -> None:
        glue[x] = y
        glue[y] = x

    pair(slot_id(t1, 2), slot_id(t3, 0))
    pair(slot_id(t1, 1), slot_id(t2, 0))
    pair(slot_id(t2, 2), slot_id(t3, 1))
    return IdealTriangulation(glue)


def base_triangulation(genus: int, punctures: int) -> IdealTriangulation:
    """Deterministic base triangulation of the (genus, punctures) surface.

    Small signatures get bespoke models; extra punctures come from
    star-subdividing the last triangle repeatedly.
    """
    sig = SurfaceSig(genus, punctures)
    if not sig.admits_ideal_triangulation():
        raise ValueError(f"({genus},{punctures}) has no ideal triangulation")
    if genus == 0:
        tri = three_punctured_sphere()
        extra = punctures - 3
    elif punctures == 2:
        return two_puncture_squares(genus)
    else:
        tri = square_torus() if genus == 1 else polygon_fan(genus)
        extra = punctures - 1
    for _ in range(extra):
        tri = split_puncture(tri, tri.num_triangles - 1)
    if tri.signature() != sig:
        raise InvalidTriangulation(f"built {tri.signature()}, wanted {sig}")
    return tri
