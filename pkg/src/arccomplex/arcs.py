"""Arcs and closed curves as corridor paths through a triangulation.

A corridor records the sides an arc crosses, as *exit slots*: slot ``s``
means the path leaves triangle ``s // 3`` through side ``s % 3``.  For a
reduced corridor the endpoints are forced: the start corner is opposite
the first crossed side (numerically equal to ``slots[0]``) and the end
corner is opposite the entry side of the last triangle (numerically
``glue[slots[-1]]``), since any other endpoint position lets the final
crossing slide off the edge.  Arcs isotopic to an edge cross nothing and
are stored by edge id instead.

Reduced corridors lift to geodesics in the dual tree of the universal
cover, so they are automatically in minimal position with respect to
every edge and every other reduced corridor; there are no hidden bigons
to remove anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import InternalContractError, InvalidArc, TriangulationMismatch
from .triangulation import (
    _NEW_SIDE,
    FlipResult,
    IdealTriangulation,
    separates_new,
    separates_old,
    slot_id,
    side_of,
    tri_of,
)


# ---------------------------------------------------------------------------
# Raw paths and reduction


@dataclass
class RawPath:
    """Unreduced path between puncture corners, with explicit endpoints.

    Splicing operations produce these; :meth:`reduce` cancels immediate
    backtracks and absorbs endpoint crossings until the normal form is
    reached.
    """

    tri: IdealTriangulation
    start: int
    slots: list[int]
    end: int

    def __post_init__(self) -> None:
        tri = self.tri
        here = tri_of(self.start)
        for s in self.slots:
            if tri_of(s) != here:
                raise InvalidArc(f"slot {s} not in current triangle {here}")
            here = tri_of(tri.glued(s))
        if tri_of(self.end) != here:
            raise InvalidArc("end corner not in final triangle")

    def reduce(self) -> "RawPath":
        tri = self.tri
        glue = tri.glue
        start, end = self.start, self.end
        slots = list(self.slots)
        changed = True
        while changed:
            changed = False
            # stack cancellation of immediate backtracks
            out: list[int] = []
            for s in slots:
                if out and s == glue[out[-1]]:
                    out.pop()
                    changed = True
                else:
                    out.append(s)
            slots = out
            # absorb a first crossing adjacent to the start corner
            while slots:
                j = side_of(slots[0])
                c = side_of(start)
                if c == j:
                    break
                p = glue[slots[0]]
                # the start corner is an endpoint of the crossed side; the
                # endpoint slides across it into the glued triangle
                if c == (j + 1) % 3:
                    start = slot_id(tri_of(p), side_of(p) + 2)
                else:
                    start = slot_id(tri_of(p), side_of(p) + 1)
                slots.pop(0)
                changed = True
            while slots:
                last = slots[-1]
                p = glue[last]
                k = side_of(p)
                c = side_of(end)
                if c == k:
                    break
                if c == (k + 1) % 3:
                    end = slot_id(tri_of(last), side_of(last) + 2)
                else:
                    end = slot_id(tri_of(last), side_of(last) + 1)
                slots.pop()
                changed = True
        return RawPath(self.tri, start, slots, end)

    def to_arc(self) -> "Arc | None":
        """Reduce and classify; ``None`` means the path was inessential."""
        r = self.reduce()
        tri = self.tri
        if not r.slots:
            if r.start == r.end:
                return None
            t, a = divmod(r.start, 3)
            tb, b = divmod(r.end, 3)
            if t != tb:
                raise InternalContractError("crossing-free path spans triangles")
            joining = slot_id(t, (3 - a - b) % 3)
            return Arc.edge_arc(tri, tri.edge_of_slot(joining))
        if r.start != r.slots[0] or r.end != tri.glued(r.slots[-1]):
            raise InternalContractError("reduced path has absorbable endpoints")
        return Arc.from_reduced_slots(tri, r.slots)


def _reversed_slots(tri: IdealTriangulation, slots: Sequence[int]) -> tuple[int, ...]:
    return tuple(tri.glued(s) for s in reversed(slots))


# ---------------------------------------------------------------------------
# Arcs


@dataclass(frozen=True)
class Arc:
    """Essential arc between punctures, in canonical form.

    One of ``edge`` / ``slots`` is set: either the arc is parallel to a
    triangulation edge, or it crosses at least one edge and ``slots`` is
    the lexicographically smaller of its two directed corridors.  A
    corridor class need not be embedded; ``develop.is_embedded`` decides
    that.
    """

    tri: IdealTriangulation
    edge: int | None
    slots: tuple[int, ...]

    @staticmethod
    def edge_arc(tri: IdealTriangulation, edge: int) -> "Arc":
        if not (0 <= edge < tri.num_edges):
            raise InvalidArc(f"no edge {edge}")
        return Arc(tri, edge, ())

    @staticmethod
    def from_reduced_slots(tri: IdealTriangulation, slots: Sequence[int]) -> "Arc":
        slots = tuple(slots)
        if not slots:
            raise InvalidArc("empty corridor; use edge_arc")
        here = tri_of(slots[0])
        for i, s in enumerate(slots):
            if tri_of(s) != here:
                raise InvalidArc("corridor is not connected")
            if i + 1 < len(slots) and slots[i + 1] == tri.glued(s):
                raise InvalidArc("corridor backtracks")
            here = tri_of(tri.glued(s))
        rev = _reversed_slots(tri, slots)
        return Arc(tri, None, min(slots, rev))

    @property
    def is_edge_arc(self) -> bool:
        return self.edge is not None

    def __len__(self) -> int:
        return len(self.slots)

    @property
    def start_corner(self) -> int:
        if self.is_edge_arc:
            s = self.tri.edge_slots(self.edge)[0]
            return slot_id(tri_of(s), side_of(s) + 1)
        return self.slots[0]

    @property
    def end_corner(self) -> int:
        if self.is_edge_arc:
            s = self.tri.edge_slots(self.edge)[0]
            return slot_id(tri_of(s), side_of(s) + 2)
        return self.tri.glued(self.slots[-1])

    def endpoints(self) -> tuple[int, int]:
        """Punctures at the two ends (unordered pair as a sorted tuple)."""
        a = self.tri.puncture_of_corner(self.start_corner)
        b = self.tri.puncture_of_corner(self.end_corner)
        return (a, b) if a <= b else (b, a)

    def crossings(self) -> tuple[int, ...]:
        return tuple(self.tri.edge_of_slot(s) for s in self.slots)

    def normal_coordinates(self) -> tuple[int, ...]:
        vec = [0] * self.tri.num_edges
        for s in self.slots:
            vec[self.tri.edge_of_slot(s)] += 1
        return tuple(vec)

    def sort_key(self) -> tuple:
        if self.is_edge_arc:
            return (0, self.edge, ())
        return (1, len(self.slots), self.slots)

    def __str__(self) -> str:
        if self.is_edge_arc:
            return f"edge[{self.edge}]"
        return "corridor[" + ",".join(map(str, self.slots)) + "]"


@dataclass(frozen=True)
class ClosedCurve:
    """Essential closed curve as a cyclically reduced cyclic corridor."""

    tri: IdealTriangulation
    slots: tuple[int, ...]

    @staticmethod
    def from_slots(tri: IdealTriangulation, slots: Sequence[int]) -> "ClosedCurve | None":
        """Cyclically reduce and canonicalize; ``None`` if null-homotopic."""
        slots = list(slots)
        here = [tri_of(s) for s in slots]
        for i, s in enumerate(slots):
            if tri_of(tri.glued(s)) != here[(i + 1) % len(here)]:
                raise InvalidArc("cyclic corridor is not connected")
        changed = True
        while changed and slots:
            changed = False
            m = len(slots)
            for i in range(m):
                if slots[(i + 1) % m] == tri.glued(slots[i]):
                    if (i + 1) % m > i:
                        del slots[i : i + 2]
                    else:
                        del slots[i]
                        del slots[0]
                    changed = True
                    break
        if not slots:
            return None
        best = None
        for cand in (tuple(slots), _reversed_slots(tri, slots)):
            for r in range(len(cand)):
                rot = cand[r:] + cand[:r]
                if best is None or rot < best:
                    best = rot
        return ClosedCurve(tri, best)

    def __len__(self) -> int:
        return len(self.slots)

    def crossings(self) -> tuple[int, ...]:
        return tuple(self.tri.edge_of_slot(s) for s in self.slots)

    def normal_coordinates(self) -> tuple[int, ...]:
        vec = [0] * self.tri.num_edges
        for s in self.slots:
            vec[self.tri.edge_of_slot(s)] += 1
        return tuple(vec)

    def sort_key(self) -> tuple:
        return (2, len(self.slots), self.slots)

    def __str__(self) -> str:
        return "curve[" + ",".join(map(str, self.slots)) + "]"


Strand = Union[Arc, ClosedCurve]


def puncture_link_curve(tri: IdealTriangulation, puncture: int) -> ClosedCurve:
    """Small circle around one puncture, oriented with the corner fan."""
    fan = tri.puncture_corners(puncture)
    slots = [slot_id(tri_of(c), side_of(c) + 1) for c in fan]
    curve = ClosedCurve.from_slots(tri, slots)
    if curve is None:
        raise InternalContractError("puncture link reduced to nothing")
    return curve


def edge_link_curve(tri: IdealTriangulation, edge: int) -> ClosedCurve:
    """Boundary of a neighborhood of an edge joining distinct punctures."""
    a, b = tri.edge_endpoints(edge)
    if a == b:
        raise ValueError("edge_link_curve needs an edge with distinct endpoints")
    s, sp = tri.edge_slots(edge)
    t, j = divmod(s, 3)
    tp, jp = divmod(sp, 3)
    slots: list[int] = []
    # around the head vertex, from the far side of the edge back to it
    c = slot_id(tp, jp + 1)
    stop = slot_id(t, j + 2)
    while c != stop:
        slots.append(slot_id(tri_of(c), side_of(c) + 1))
        c = tri.next_corner_ccw(c)
    # around the tail vertex
    c = slot_id(t, j + 1)
    stop = slot_id(tp, jp + 2)
    while c != stop:
        slots.append(slot_id(tri_of(c), side_of(c) + 1))
        c = tri.next_corner_ccw(c)
    curve = ClosedCurve.from_slots(tri, slots)
    if curve is None:
        raise InternalContractError("edge link reduced to nothing")
    return curve


# ---------------------------------------------------------------------------
# Transport through a flip


def _segment_entry(fr: FlipResult, prev_slot: int) -> str | None:
    p = fr.before.glued(prev_slot)
    if tri_of(p) in (fr.frame.t, fr.frame.tp):
        return fr.frame.slot_class(p)
    return None


def _emit(fr: FlipResult, entry: str | None, had_diag: bool, s: int, out: list[int]) -> None:
    frame = fr.frame
    if entry is not None:
        exit_cls = frame.slot_class(s)
        if separates_old(entry, exit_cls) != had_diag:
            raise InternalContractError("transport: diagonal crossing mismatch")
        if separates_new(entry, exit_cls):
            out.append(fr.ac_exit_slot(_NEW_SIDE[entry]))
        out.append(fr.new_slot(s))
    else:
        if had_diag:
            raise InternalContractError("transport: stray diagonal crossing")
        out.append(s)


def transport_arc(arc: Arc, fr: FlipResult) -> Arc:
    """Rewrite an arc's corridor after flipping one edge."""
    if arc.tri != fr.before:
        raise TriangulationMismatch("arc does not live on the flipped triangulation")
    frame = fr.frame
    diag = (frame.diag_t, frame.diag_tp)
    if arc.is_edge_arc:
        if arc.edge == fr.edge:
            return Arc.from_reduced_slots(fr.after, (slot_id(frame.t, 1),))
        return Arc.edge_arc(fr.after, fr.edge_map[arc.edge])
    slots = arc.slots
    if len(slots) == 1 and slots[0] in diag:
        # corridor joining the two triangle apexes becomes the new diagonal
        return Arc.edge_arc(fr.after, fr.new_edge)

    out: list[int] = []
    start_c = slots[0]
    entry: str | None = None
    if tri_of(start_c) in (frame.t, frame.tp):
        entry = frame.corner_class[start_c]
    had_diag = False
    for s in slots:
        if s in diag:
            if entry is None:
                raise InternalContractError("transport: diagonal crossed from outside")
            had_diag = True
            continue
        _emit(fr, entry, had_diag, s, out)
        had_diag = False
        entry = _segment_entry(fr, s)
    if entry is not None:
        end_c = fr.before.glued(slots[-1])
        end_cls = frame.corner_class[end_c]
        if separates_old(entry, end_cls) != had_diag:
            raise InternalContractError("transport: diagonal crossing mismatch at end")
        if separates_new(entry, end_cls):
            out.append(fr.ac_exit_slot(_NEW_SIDE[entry]))
    elif had_diag:
        raise InternalContractError("transport: unconsumed diagonal crossing")

    if not out:
        raise InternalContractError("transport: corridor vanished")
    raw = RawPath(fr.after, out[0], list(out), fr.after.glued(out[-1]))
    reduced = raw.reduce()
    if reduced.slots != out:
        raise InternalContractError("transport: result was not reduced")
    return Arc.from_reduced_slots(fr.after, out)


def transport_curve(curve: ClosedCurve, fr: FlipResult) -> ClosedCurve:
    if curve.tri != fr.before:
        raise TriangulationMismatch("curve does not live on the flipped triangulation")
    frame = fr.frame
    diag = (frame.diag_t, frame.diag_tp)
    slots = curve.slots
    k = next((i for i, s in enumerate(slots) if s not in diag), None)
    if k is None:
        raise InternalContractError("curve crosses only the flipped edge")
    rot = slots[k:] + slots[:k]
    last = max(i for i, s in enumerate(rot) if s not in diag)
    entry = _segment_entry(fr, rot[last])
    had_diag = any(s in diag for s in rot[last + 1 :])
    out: list[int] = []
    for s in rot[: last + 1]:
        if s in diag:
            if entry is None:
                raise InternalContractError("transport: diagonal crossed from outside")
            had_diag = True
            continue
        _emit(fr, entry, had_diag, s, out)
        had_diag = False
        entry = _segment_entry(fr, s)
    new = ClosedCurve.from_slots(fr.after, out)
    if new is None or len(new.slots) != len(out):
        raise InternalContractError("transport: curve was not cyclically reduced")
    return new


def transport(obj: Strand, fr: FlipResult) -> Strand:
    if isinstance(obj, Arc):
        return transport_arc(obj, fr)
    return transport_curve(obj, fr)


# ---------------------------------------------------------------------------
# Combing and intersection numbers


@dataclass
class CombResult:
    flips: list[FlipResult]
    final_tri: IdealTriangulation
    combed: Arc
    carried: list[Strand]


def comb_to_edge(arc: Arc, carried: Iterable[Strand] = ()) -> CombResult:
    """Flip edges until ``arc`` becomes an edge arc, carrying passengers.

    Each step flips the first edge along the corridor whose flip strictly
    drops the arc's crossing count.  Such an edge always exists for a
    reduced corridor; failure to find one is a hard internal error.
    """
    cur = arc
    items = list(carried)
    flips: list[FlipResult] = []
    while not cur.is_edge_arc:
        tri = cur.tri
        chosen = None
        tried: set[int] = set()
        for s in cur.slots:
            e = tri.edge_of_slot(s)
            if e in tried:
                continue
            tried.add(e)
            a, b = tri.edge_slots(e)
            if tri_of(a) == tri_of(b):
                continue
            fr = tri.flip_edge(e)
            cand = transport_arc(cur, fr)
            if len(cand) < len(cur):
                chosen = (fr, cand)
                break
        if chosen is None:
            raise InternalContractError("no crossing-reducing flip exists")
        fr, cur = chosen
        items = [transport(x, fr) for x in items]
        flips.append(fr)
    return CombResult(flips=flips, final_tri=cur.tri, combed=cur, carried=items)


def _count_edge(strand: Strand, edge: int) -> int:
    return sum(1 for e in strand.crossings() if e == edge)


def intersection_number(x: Strand, y: Strand) -> int:
    """Geometric intersection number of two essential strands.

    Arcs count interior crossings only; a strand meets itself and any
    edge-parallel copy of a disjoint edge zero times.
    """
    if x.tri != y.tri:
        raise TriangulationMismatch("strands live on different triangulations")
    if x == y:
        return 0
    if isinstance(x, Arc) and x.is_edge_arc:
        return _count_edge(y, x.edge)
    if isinstance(y, Arc) and y.is_edge_arc:
        return _count_edge(x, y.edge)
    if isinstance(x, Arc):
        res = comb_to_edge(x, (y,))
        return _count_edge(res.carried[0], res.combed.edge)
    if isinstance(y, Arc):
        res = comb_to_edge(y, (x,))
        return _count_edge(res.carried[0], res.combed.edge)
    from .develop import curve_curve_intersection

    return curve_curve_intersection(x, y)


# ---------------------------------------------------------------------------
# Enumeration


def enumerate_arcs(tri: IdealTriangulation, max_crossings: int) -> list[Arc]:
    """All essential arcs with at most ``max_crossings`` crossings.

    Every backtrack-free corridor is an essential arc in normal form, so
    this is a plain tree walk over extensions plus the edge arcs,
    deduplicated by canonical orientation.  Deterministic order: edge
    arcs by id, then corridors by (length, slots).
    """
    seen: set[tuple[int, ...]] = set()
    out: list[Arc] = [Arc.edge_arc(tri, e) for e in range(tri.num_edges)]

    def visit(slots: list[int]) -> None:
        canon = min(tuple(slots), _reversed_slots(tri, slots))
        if canon not in seen:
            seen.add(canon)
            out.append(Arc(tri, None, canon))
        if len(slots) == max_crossings:
            return
        p = tri.glued(slots[-1])
        t = tri_of(p)
        for j in range(3):
            s = slot_id(t, j)
            if s != p:
                slots.append(s)
                visit(slots)
                slots.pop()

    if max_crossings >= 1:
        for s0 in range(tri.num_slots):
            visit([s0])
    out.sort(key=Arc.sort_key)
    return out
