"""Immersed closed curves in general position on a combinatorial surface.

A curve is a cyclic sequence of face-crossing segments; each segment enters
and leaves its face through specified darts (edge sides).  All curves that
are meant to interact share one StrandRegistry giving, for every edge, the
strict linear order of the strands crossing it.  The registry is the
combinatorial substitute for a choice of perturbation: in-face chords are
realized as straight segments between their boundary positions (geometry
module), so two chords cross exactly when their endpoints interleave.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    Backtracking, DegeneratePosition, NotClosed, NotTransverse, SamePoint)
from .geometry import FaceChart


@dataclass(frozen=True)
class Segment:
    """One face crossing: enters through `entry_dart`, leaves through
    `exit_dart` (both darts bound `face`)."""

    face: int
    entry_dart: int
    exit_dart: int


class StrandRegistry:
    """Strict strand orders: edge id -> list of (curve_name, point_index),
    listed along the canonical (lower) dart of the edge."""

    def __init__(self, surface):
        self.surface = surface
        self.orders = {}

    def set_order(self, edge_id, entries):
        entries = list(entries)
        if len(set(entries)) != len(entries):
            raise DegeneratePosition("duplicate strand on edge %d" % edge_id)
        self.orders[edge_id] = entries

    def order_along(self, dart):
        """Strand order along the direction of `dart`."""
        surf = self.surface
        entries = self.orders.get(surf.edge_of[dart], [])
        if dart == surf.canonical_dart(dart):
            return list(entries)
        return list(reversed(entries))

    def position(self, dart, entry):
        order = self.order_along(dart)
        try:
            return order.index(entry)
        except ValueError:
            raise DegeneratePosition(
                "strand %r missing from edge order" % (entry,))


class NormalCurve:
    """Closed immersed curve in general position. Immutable after validation."""

    def __init__(self, surface, name, segments, registry):
        self.surface = surface
        self.name = name
        self.segments = tuple(segments)
        self.registry = registry

    def __len__(self):
        return len(self.segments)

    def point_edge(self, i):
        """Edge of crossing point i (between segments i and i+1)."""
        return self.surface.edge_of[self.segments[i].exit_dart]

    def point_key(self, i):
        return (self.name, i % len(self.segments))

    def chord_key(self, i):
        return (self.name, i)

    def chord_ends(self, i):
        """Boundary objects of segment i's chord: entry then exit."""
        n = len(self.segments)
        seg = self.segments[i]
        entry_point = self.point_key((i - 1) % n)
        exit_point = self.point_key(i)
        return (("s", seg.entry_dart) + entry_point,
                ("s", seg.exit_dart) + exit_point)

    def __repr__(self):
        return "NormalCurve(%r, %d segments)" % (self.name, len(self.segments))


def validate_curve(surface, name, raw_segments, registry):
    """Validate and canonicalize a curve from raw (entry_dart, exit_dart)
    pairs or Segment triples.

    Checks closure under the edge gluing, the no-backtracking (immersion)
    condition, and that every crossing point appears exactly once in the
    shared strand registry.  The segment list is rotated so the
    lexicographically least segment comes first.
    """
    segs = []
    for raw in raw_segments:
        if isinstance(raw, Segment):
            seg = raw
        elif len(raw) == 3:
            seg = Segment(*raw)
        else:
            entry, exit_ = raw
            seg = Segment(surface.face_of[entry], entry, exit_)
        if surface.face_of[seg.entry_dart] != seg.face \
                or surface.face_of[seg.exit_dart] != seg.face:
            raise NotClosed("segment darts do not bound the stated face")
        segs.append(seg)
    if not segs:
        raise NotClosed("curve has no segments")

    n = len(segs)
    for i, seg in enumerate(segs):
        nxt = segs[(i + 1) % n]
        if surface.alpha[seg.exit_dart] != nxt.entry_dart:
            raise NotClosed(
                "segment %d exits dart %d but segment %d enters dart %d"
                % (i, seg.exit_dart, (i + 1) % n, nxt.entry_dart))

    # canonical starting segment
    key = lambda s: (s.face, s.entry_dart, s.exit_dart)
    rotations = [tuple(segs[i:] + segs[:i]) for i in range(n)]
    segs = min(rotations, key=lambda r: [key(s) for s in r])

    curve = NormalCurve(surface, name, segs, registry)

    # registry coverage: each crossing point appears exactly once on its edge
    for i in range(n):
        e = curve.point_edge(i)
        order = registry.orders.get(e, [])
        if order.count(curve.point_key(i)) != 1:
            raise DegeneratePosition(
                "crossing point %s must appear exactly once on edge %d"
                % (curve.point_key(i), e))

    # no backtracking: a segment entering and leaving through the same edge
    # side at adjacent strand positions bounds a trivial half-bigon
    for i in range(n):
        seg = curve.segments[i]
        if seg.entry_dart == seg.exit_dart:
            p_in = registry.position(seg.entry_dart,
                                     curve.point_key((i - 1) % n))
            p_out = registry.position(seg.exit_dart, curve.point_key(i))
            if abs(p_in - p_out) == 1:
                raise Backtracking(
                    "segment %d backtracks across dart %d"
                    % (i, seg.entry_dart))
            if p_in == p_out:
                raise DegeneratePosition("segment endpoints coincide")
    return curve


class Multicurve:
    """Disjoint union of curves sharing one registry (e.g. fold preimages)."""

    def __init__(self, components):
        components = list(components)
        if not components:
            raise ValueError("multicurve needs at least one component")
        self.components = components
        self.surface = components[0].surface
        self.registry = components[0].registry

    def __iter__(self):
        return iter(self.components)

    def __repr__(self):
        return "Multicurve(%s)" % ", ".join(c.name for c in self.components)


def _components(curve_or_multi):
    if isinstance(curve_or_multi, Multicurve):
        return list(curve_or_multi.components)
    return [curve_or_multi]


@dataclass(frozen=True, order=True)
class GeneralizedIntersectionPoint:
    """Transverse crossing of two chords, remembering the preimage branches.

    `chord_a`/`chord_b` are (curve_name, segment_index); positions are the
    piece-boundary indices of the crossing along each chord in the ambient
    curve system (derived data used to order crossings along the curves).
    """

    face: int
    chord_a: tuple
    chord_b: tuple
    pos_a: int
    pos_b: int

    def swapped(self):
        return GeneralizedIntersectionPoint(
            self.face, self.chord_b, self.chord_a, self.pos_b, self.pos_a)


class CurveSystem:
    """A family of curves in general position sharing one registry.

    Caches one FaceChart per face; every combinatorial query about chords,
    crossings, regions and arcs is answered from these charts.
    """

    def __init__(self, surface, curves):
        self.surface = surface
        self.curves = {}
        for c in curves:
            for comp in _components(c):
                if comp.surface is not surface:
                    raise ValueError("curves live on different surfaces")
                if comp.name in self.curves:
                    raise ValueError("duplicate curve name %r" % comp.name)
                self.curves[comp.name] = comp
        self._charts = {}
        self._chart_salt = 0

    def curve(self, name):
        return self.curves[name]

    def chord_face(self, chord):
        name, i = chord
        return self.curves[name].segments[i].face

    def chart(self, face):
        if face not in self._charts:
            self._charts[face] = self._build_chart(face)
        return self._charts[face]

    def _boundary_objects(self, face, with_midpoints=False):
        surf = self.surface
        objs = []
        for d in surf.face_cycles[face]:
            objs.append(("corner", d))
            order = []
            for entry in self.registry_order_along(d):
                if entry[0] in self.curves:
                    order.append(("s", d) + entry)
            if with_midpoints:
                split = self._half_split(surf.edge_of[d])
                if d != surf.canonical_dart(d):
                    split = len(self._edge_entries(surf.edge_of[d])) - split
                order.insert(split, ("m", surf.edge_of[d]))
            objs.extend(order)
        return objs

    def _edge_entries(self, edge_id):
        reg = next(iter(self.curves.values())).registry
        return [e for e in reg.orders.get(edge_id, []) if e[0] in self.curves]

    def _half_split(self, edge_id):
        m = len(self._edge_entries(edge_id))
        return (m + 1) // 2

    def registry_order_along(self, dart):
        reg = next(iter(self.curves.values())).registry
        return reg.order_along(dart)

    def _build_chart(self, face, with_midpoints=False, spokes=None):
        objs = self._boundary_objects(face, with_midpoints)
        chords = {}
        for curve in self.curves.values():
            for i, seg in enumerate(curve.segments):
                if seg.face == face:
                    chords[curve.chord_key(i)] = curve.chord_ends(i)
        return FaceChart(objs, chords, spokes=spokes, salt=self._chart_salt)

    # -- intersections ---------------------------------------------------------

    def _chords_in_face(self, face, names):
        out = []
        for name in names:
            curve = self.curves[name]
            for i, seg in enumerate(curve.segments):
                if seg.face == face:
                    out.append(curve.chord_key(i))
        return out

    def intersections_between(self, names_a, names_b):
        """All transverse crossings of the two curve families, canonically
        ordered.  Families must be disjoint."""
        if set(names_a) & set(names_b):
            raise NotTransverse("a curve is not transverse to itself")
        points = []
        for face in range(self.surface.n_faces):
            chords_a = self._chords_in_face(face, names_a)
            chords_b = self._chords_in_face(face, names_b)
            if not chords_a or not chords_b:
                continue
            chart = self.chart(face)
            for ca in chords_a:
                for cb in chords_b:
                    node = chart.crossing_node(ca, cb)
                    if node is None:
                        continue
                    pos = chart.crossing_position(node)
                    points.append(GeneralizedIntersectionPoint(
                        face, ca, cb, pos[ca], pos[cb]))
        points.sort()
        return points

    def self_intersections(self, names):
        """Unordered crossing pairs within one curve family."""
        points = []
        for face in range(self.surface.n_faces):
            chords = self._chords_in_face(face, names)
            chart = self.chart(face)
            for i in range(len(chords)):
                for j in range(i + 1, len(chords)):
                    node = chart.crossing_node(chords[i], chords[j])
                    if node is None:
                        continue
                    pos = chart.crossing_position(node)
                    points.append(GeneralizedIntersectionPoint(
                        face, chords[i], chords[j],
                        pos[chords[i]], pos[chords[j]]))
        points.sort()
        return points


def intersections(a, b):
    """Generalized intersection points of two curves or multicurves sharing
    a registry; one point per interleaving chord pair per face."""
    comps_a = _components(a)
    comps_b = _components(b)
    if comps_a[0].registry is not comps_b[0].registry:
        raise NotTransverse("curves do not share a strand registry")
    names_a = [c.name for c in comps_a]
    names_b = [c.name for c in comps_b]
    if set(names_a) & set(names_b):
        raise NotTransverse("curve compared against itself")
    system = CurveSystem(comps_a[0].surface, comps_a + comps_b)
    return system.intersections_between(names_a, names_b)


def self_intersections(a):
    comps = _components(a)
    system = CurveSystem(comps[0].surface, comps)
    return system.self_intersections([c.name for c in comps])


# -- arcs ----------------------------------------------------------------------


@dataclass(frozen=True)
class ArcRun:
    """Traversal of one chord from boundary position `start` to `stop`
    (piece-boundary indices in the ambient system chart); start < stop means
    the chord is traversed in its own direction."""

    chord: tuple
    start: int
    stop: int

    @property
    def forward(self):
        return self.start < self.stop


@dataclass(frozen=True)
class Arc:
    """Directed sub-path of a curve between two crossing points."""

    curve: str
    forward: bool
    runs: tuple

    def reversed(self):
        return Arc(self.curve, not self.forward,
                   tuple(ArcRun(r.chord, r.stop, r.start)
                         for r in reversed(self.runs)))


def _position_on(system, point, curve_name):
    """(segment index, piece-boundary position) of a crossing point on the
    named curve."""
    if point.chord_a[0] == curve_name:
        return point.chord_a[1], point.pos_a
    if point.chord_b[0] == curve_name:
        return point.chord_b[1], point.pos_b
    raise ValueError("point does not lie on curve %r" % curve_name)


def _chord_piece_count(system, chord):
    face = system.chord_face(chord)
    return len(system.chart(face).chord_pieces(chord))


def arc_forward(system, curve_name, p, q):
    """Arc along the curve's own direction from p to q."""
    seg_p, pos_p = _position_on(system, p, curve_name)
    seg_q, pos_q = _position_on(system, q, curve_name)
    curve = system.curve(curve_name)
    n = len(curve.segments)
    runs = []
    if (seg_p, pos_p) == (seg_q, pos_q):
        raise SamePoint("arc endpoints coincide")
    if seg_p == seg_q and pos_p < pos_q:
        runs.append(ArcRun(curve.chord_key(seg_p), pos_p, pos_q))
    else:
        runs.append(ArcRun(curve.chord_key(seg_p), pos_p,
                           _chord_piece_count(system, curve.chord_key(seg_p))))
        i = (seg_p + 1) % n
        while i != seg_q:
            runs.append(ArcRun(curve.chord_key(i), 0,
                               _chord_piece_count(system, curve.chord_key(i))))
            i = (i + 1) % n
        runs.append(ArcRun(curve.chord_key(seg_q), 0, pos_q))
    return Arc(curve_name, True, tuple(runs))


def arcs_between(system, curve_name, p, q):
    """The two complementary arcs of the curve between crossing points p, q,
    both directed along the curve; their concatenation covers the circle."""
    return (arc_forward(system, curve_name, p, q),
            arc_forward(system, curve_name, q, p))


def arc_crossing_darts(system, arc):
    """Darts crossed by the arc, in traversal order."""
    curve = system.curve(arc.curve)
    darts = []
    runs = arc.runs
    for i in range(len(runs) - 1):
        seg_idx = runs[i].chord[1]
        seg = curve.segments[seg_idx]
        if arc.forward:
            darts.append(seg.exit_dart)
        else:
            darts.append(seg.entry_dart)
    return darts


def arc_pieces(system, arc):
    """Directed arrangement pieces of the arc: list of
    (face, edge_index, along_chord_direction)."""
    out = []
    for run in arc.runs:
        face = system.chord_face(run.chord)
        pieces = system.chart(face).chord_pieces(run.chord)
        if run.forward:
            for k in range(run.start, run.stop):
                out.append((face, pieces[k], True))
        else:
            for k in range(run.start - 1, run.stop - 1, -1):
                out.append((face, pieces[k], False))
    return out
