"""Exact rational geometry for the interior of a single face.

Each face of a combinatorial surface is a disc.  Its boundary objects
(corners, curve-strand crossings, optional edge midpoints) are placed on the
unit circle at exact rational points, in the face's boundary cyclic order,
and curve chords become straight segments between their endpoints.  Convex
position makes two chords cross exactly when their endpoints interleave, so
this realization is the canonical general-position interpretation of the
strand-order data.  All predicates use fractions.Fraction: no epsilons.

Degenerate coincidences (three concurrent chords, a crossing on a spoke,
...) are detected exactly and resolved by retrying with a different
deterministic jitter of the boundary angles; the combinatorial output is an
isotopic arrangement either way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class DegenerateChart(Exception):
    """Internal: jittered placement hit an exact coincidence; retry."""


def _mix(*values):
    """Deterministic 32-bit mixing of small integers (stable across runs)."""
    h = 0x9E3779B9
    for v in values:
        h ^= (v + 0x7F4A7C15) & 0xFFFFFFFF
        h = (h * 0x85EBCA6B) & 0xFFFFFFFF
        h ^= h >> 13
    return h


def circle_point(frac):
    """Exact rational point on the unit circle at angle 2*pi*frac - pi.

    The rational parameter t ~ tan(angle/2) is a float approximation of the
    requested angle, rounded to denominator 10**9; the resulting point lies
    exactly on the circle and the circular order of points equals the order
    of the `frac` values.
    """
    theta = math.pi * (2 * float(frac) - 1.0)
    t = Fraction(round(math.tan(theta / 2.0) * 10**9), 10**9)
    den = 1 + t * t
    return ((1 - t * t) / den, 2 * t / den)


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def vec_cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _direction_key(v):
    """Key giving counterclockwise angular order of nonzero vectors starting
    at the positive x-axis: (half-plane, on-axis flag, slope).

    Within each open half plane -x/y increases strictly with the angle, and
    the half plane's axis direction (angle 0 resp. pi) precedes it.
    """
    x, y = v
    if y > 0 or (y == 0 and x > 0):
        half = 0
    else:
        half = 1
    if y == 0:
        return (half, 0, Fraction(0))
    return (half, 1, -x / y)


def ccw_sort_key(v):
    # -x/y is monotone in angle within each open half plane; the axis cases
    # are pinned with sentinels.
    return _direction_key(v)


def segment_intersection(p1, q1, p2, q2):
    """Proper interior crossing point of two segments, else None (touching
    at endpoints or collinear overlap raises DegenerateChart)."""
    d1 = (q1[0] - p1[0], q1[1] - p1[1])
    d2 = (q2[0] - p2[0], q2[1] - p2[1])
    denom = vec_cross(d1, d2)
    w = (p2[0] - p1[0], p2[1] - p1[1])
    if denom == 0:
        if vec_cross(w, d1) == 0:
            raise DegenerateChart("collinear chords")
        return None
    t = vec_cross(w, d2) / denom
    s = vec_cross(w, d1) / denom
    if 0 < t < 1 and 0 < s < 1:
        return ((p1[0] + t * d1[0], p1[1] + t * d1[1]), t, s)
    if (t in (0, 1) and 0 <= s <= 1) or (s in (0, 1) and 0 <= t <= 1):
        raise DegenerateChart("chords touch at an endpoint")
    return None


@dataclass(frozen=True)
class ArrEdge:
    """Undirected arrangement edge."""

    index: int
    node_a: int
    node_b: int
    kind: tuple  # ("arc", boundary position) | ("chord", chord_key, piece) | ("spoke", spoke_key, piece)


class FaceChart:
    """Arrangement of chords (and optional spokes) inside one face.

    boundary_objects: hashable ids in the face boundary cyclic order.
    chords: {chord_key: (start_object, end_object)} straight segments.
    spokes: {spoke_key: boundary_object}; each spoke runs from its boundary
        object to the circle center (used only by refinement routing).
    """

    def __init__(self, boundary_objects, chords, spokes=None, salt=0):
        self.boundary_objects = list(boundary_objects)
        self.chord_ends = dict(chords)
        self.spoke_ends = dict(spokes or {})
        for attempt in range(32):
            try:
                self._build(attempt, salt)
                return
            except DegenerateChart:
                continue
        raise AssertionError("could not reach generic position in 32 attempts")

    # -- construction ----------------------------------------------------------

    def _build(self, attempt, salt):
        objs = self.boundary_objects
        B = len(objs)
        if B < 2:
            raise ValueError("a chart needs at least two boundary objects")
        self.pos = {}
        prev_t = None
        for r, obj in enumerate(objs):
            h = _mix(r, attempt, salt)
            jitter = Fraction((h % 1025) - 512, 8192)  # in [-1/16, 1/16]
            frac = Fraction(2 * r + 1, 2 * B) + jitter / B
            pt = circle_point(frac)
            t = pt[1] / (1 + pt[0]) if 1 + pt[0] != 0 else None
            if t is None or (prev_t is not None and t <= prev_t):
                raise DegenerateChart("circle placement collided")
            prev_t = t
            self.pos[obj] = pt

        center = (Fraction(0), Fraction(0))
        if self.spoke_ends:
            pts = [self.pos[o] for o in objs]
            for i in range(len(pts)):
                if vec_cross(pts[i], pts[(i + 1) % len(pts)]) <= 0:
                    raise DegenerateChart("center not strictly inside")

        segs = {}
        for key, (a, b) in self.chord_ends.items():
            segs[("chord", key)] = (self.pos[a], self.pos[b])
        for key, obj in self.spoke_ends.items():
            segs[("spoke", key)] = (self.pos[obj], center)

        # pairwise proper crossings; spokes all share the center, which is a
        # legitimate arrangement vertex, so spoke-spoke pairs are skipped.
        events = {k: [] for k in segs}  # seg key -> [(t, node_id)]
        crossing_pts = {}
        keys = sorted(segs, key=repr)
        for i in range(len(keys)):
            for j in range(i + 1, len(keys)):
                k1, k2 = keys[i], keys[j]
                if k1[0] == "spoke" and k2[0] == "spoke":
                    continue
                hit = segment_intersection(*segs[k1], *segs[k2])
                if hit is None:
                    continue
                pt, t, s = hit
                node = ("x", k1, k2)
                if pt in crossing_pts.values():
                    raise DegenerateChart("coincident crossings")
                crossing_pts[node] = pt
                events[k1].append((t, node))
                events[k2].append((s, node))

        # nodes: boundary objects, crossings, and the center when spokes exist
        self.node_pos = {}
        for obj in objs:
            self.node_pos[("b", obj)] = self.pos[obj]
        for node, pt in crossing_pts.items():
            self.node_pos[node] = pt
        if self.spoke_ends:
            self.node_pos[("c",)] = center

        self.edges = []
        self._adj = {}  # node -> list of (direction, edge_index, forward?)

        def add_edge(na, nb, kind):
            idx = len(self.edges)
            pa, pb = self.node_pos[na], self.node_pos[nb]
            if pa == pb:
                raise DegenerateChart("zero-length arrangement edge")
            self.edges.append(ArrEdge(idx, na, nb, kind))
            self._adj.setdefault(na, []).append(
                ((pb[0] - pa[0], pb[1] - pa[1]), idx, True))
            self._adj.setdefault(nb, []).append(
                ((pa[0] - pb[0], pa[1] - pb[1]), idx, False))
            return idx

        # boundary arcs (chords of the circle between consecutive objects;
        # straight is fine: all interior geometry stays inside the hull)
        self.boundary_arc_edges = []
        for r, obj in enumerate(objs):
            nxt = objs[(r + 1) % B]
            e = add_edge(("b", obj), ("b", nxt), ("arc", r))
            self.boundary_arc_edges.append(e)

        # chord / spoke pieces between consecutive events
        self.pieces = {}  # seg key -> ordered list of edge indices
        for key in keys:
            pa, pb = segs[key]
            evs = sorted(events[key])
            if key[0] == "chord":
                a_obj, b_obj = self.chord_ends[key[1]]
                chain = [("b", a_obj)] + [n for _, n in evs] + [("b", b_obj)]
            else:
                chain = [("b", self.spoke_ends[key[1]])] + [n for _, n in evs] + [("c",)]
            ids = []
            for i in range(len(chain) - 1):
                ids.append(add_edge(chain[i], chain[i + 1],
                                    (key[0], key[1], i)))
            self.pieces[key] = ids

        self._trace_regions()

    def _trace_regions(self):
        # sort directed edges counterclockwise around each node
        order = {}
        for node, items in self._adj.items():
            keyed = sorted(items, key=lambda it: ccw_sort_key(it[0]))
            for i in range(len(keyed) - 1):
                if ccw_sort_key(keyed[i][0]) == ccw_sort_key(keyed[i + 1][0]):
                    raise DegenerateChart("parallel directions at a node")
            order[node] = [(e, f) for _, e, f in keyed]

        def next_directed(edge_idx, forward):
            e = self.edges[edge_idx]
            v = e.node_b if forward else e.node_a
            incoming_rev = (edge_idx, not forward)
            lst = order[v]
            i = lst.index(incoming_rev)
            nxt_e, nxt_f = lst[(i - 1) % len(lst)]  # clockwise-next
            return nxt_e, nxt_f

        self.region_of = {}
        self.regions = []
        for e in range(len(self.edges)):
            for f in (True, False):
                if (e, f) in self.region_of:
                    continue
                cycle = []
                cur = (e, f)
                while cur not in self.region_of:
                    self.region_of[cur] = len(self.regions)
                    cycle.append(cur)
                    cur = next_directed(*cur)
                if cur != cycle[0]:
                    raise AssertionError("face tracing did not close")
                self.regions.append(tuple(cycle))

        # the outer region is the one left of a reversed boundary arc
        self.outer_region = self.region_of[(self.boundary_arc_edges[0], False)]
        for e in self.boundary_arc_edges:
            if self.region_of[(e, False)] != self.outer_region:
                raise AssertionError("outer region is not unique")

    # -- queries ---------------------------------------------------------------

    def n_regions(self):
        return len(self.regions)

    def chord_pieces(self, chord_key):
        """Arrangement edges along a chord, in chord direction."""
        return self.pieces[("chord", chord_key)]

    def spoke_pieces(self, spoke_key):
        return self.pieces[("spoke", spoke_key)]

    def piece_sides(self, edge_idx):
        """(left_region, right_region) of an arrangement edge, relative to
        its stored direction node_a -> node_b."""
        return (self.region_of[(edge_idx, True)],
                self.region_of[(edge_idx, False)])

    def arc_region(self, position):
        """Interior region adjacent to the boundary arc after cyclic
        `position` (left of the counterclockwise arc)."""
        return self.region_of[(self.boundary_arc_edges[position], True)]

    def crossing_node(self, chord1, chord2):
        for node in self.node_pos:
            if node[0] == "x":
                k1, k2 = node[1], node[2]
                pair = {k1[1] if k1[0] == "chord" else None,
                        k2[1] if k2[0] == "chord" else None}
                if pair == {chord1, chord2}:
                    return node
        return None

    def chords_cross(self, chord1, chord2):
        return self.crossing_node(chord1, chord2) is not None

    def rays_at_crossing(self, node):
        """Outgoing directed pieces at a crossing node, counterclockwise.

        Returns list of (seg_kind, seg_key, towards_end: bool, edge_index)
        where towards_end means the ray points along the segment direction.
        """
        out = []
        for direction, e, fwd in sorted(self._adj[node],
                                        key=lambda it: ccw_sort_key(it[0])):
            kind = self.edges[e].kind
            # kind = (segkind, key, piece_index); the ray leaves `node`
            # along the segment; it points toward the segment end iff we
            # traverse the edge forward.
            out.append((kind[0], kind[1], fwd, e))
        return out

    def crossing_position(self, node):
        """For crossing node ("x", k1, k2): {bare_key: boundary_position}
        where boundary_position counts the pieces before the node along the
        segment (so positions run 1 .. n_pieces-1)."""
        out = {}
        for k in (node[1], node[2]):
            ids = self.pieces[k]
            for i, e in enumerate(ids):
                if self.edges[e].node_b == node:
                    out[k[1]] = i + 1
                    break
        return out
