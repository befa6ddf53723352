"""Shipped fixture library: grid tori, polyline curves, slope curves,
isotopic-circle configurations and the symmetric genus-2 complex.

Polyline curves are drawn in unrolled coordinates on R^2 and reduced mod the
grid torus; all crossings with grid lines are computed in exact rational
arithmetic, which fixes the strand orders (the registry) without any hidden
perturbation choice.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .curves import StrandRegistry, validate_curve
from .errors import DegeneratePosition
from .surface import surface_from_face_words, surface_from_polygons


class GridTorus:
    """m x n grid of unit square cells on the torus R^2 / (mZ x nZ).

    dart(i, j, side): side in "b", "r", "t", "l" of cell (i, j); the boundary
    word runs counterclockwise bottom, right, top, left.
    """

    def __init__(self, m, n):
        self.m, self.n = m, n
        words = []
        cells = []
        for j in range(n):
            for i in range(m):
                cells.append((i, j))
                words.append([
                    (("h", i, j), 1),
                    (("v", (i + 1) % m, j), 1),
                    (("h", i, (j + 1) % n), -1),
                    (("v", i, j), -1),
                ])
        self.surface, side_darts = surface_from_face_words(words)
        self._dart = {}
        for w, (i, j) in enumerate(cells):
            for side, d in zip("brtl", side_darts[w]):
                self._dart[(i, j, side)] = d

    def dart(self, i, j, side):
        return self._dart[(i % self.m, j % self.n, side)]

    def face(self, i, j):
        return self.surface.face_of[self.dart(i, j, "b")]

    def edge_direction_positive(self, edge_key):
        """True if the canonical dart of the edge points along +x (horizontal
        edges) resp. +y (vertical edges)."""
        kind, i, j = edge_key
        if kind == "v":
            plus = self.dart(i - 1, j, "r")   # points +y
        else:
            plus = self.dart(i, j, "b")       # points +x
        return self.surface.canonical_dart(plus) == plus

    def edge_id(self, edge_key):
        kind, i, j = edge_key
        if kind == "v":
            d = self.dart(i - 1, j, "r")
        else:
            d = self.dart(i, j, "b")
        return self.surface.edge_of[d]


def torus_square():
    """The one-face square torus."""
    return surface_from_polygons([["a", "b", "-a", "-b"]])[0]


def genus2_octagon():
    return surface_from_polygons(
        [["a", "b", "-a", "-b", "c", "d", "-c", "-d"]])[0]


# -- polyline curves -------------------------------------------------------------


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def _segment_line_crossings(p, q):
    """Crossings of the open segment p->q with integer grid lines, sorted by
    the parameter along the segment: (t, kind, line_index, other_coord)."""
    out = []
    px, py = p
    qx, qy = q
    if qx != px:
        lo, hi = (px, qx) if px < qx else (qx, px)
        k = lo.__ceil__()
        while k < hi:
            t = (k - px) / (qx - px)
            y = py + t * (qy - py)
            if y == y.__floor__():
                raise DegeneratePosition("polyline through a lattice point")
            out.append((t, "v", k, y))
            k += 1
    if qy != py:
        lo, hi = (py, qy) if py < qy else (qy, py)
        k = lo.__ceil__()
        while k < hi:
            t = (k - py) / (qy - py)
            x = px + t * (qx - px)
            if x == x.__floor__():
                raise DegeneratePosition("polyline through a lattice point")
            out.append((t, "h", k, x))
            k += 1
    out.sort()
    return out


def _crossing_exit_dart(grid, kind, line, other, direction):
    """Dart crossed when the polyline passes the given grid line."""
    if kind == "v":
        i = line % grid.m
        j = int(other.__floor__()) % grid.n
        return grid.dart(i - 1, j, "r") if direction > 0 else grid.dart(i, j, "l")
    j = line % grid.n
    i = int(other.__floor__()) % grid.m
    return grid.dart(i, j - 1, "t") if direction > 0 else grid.dart(i, j, "b")


def _edge_key_and_coord(grid, kind, line, other):
    if kind == "v":
        return ("v", line % grid.m, int(other.__floor__()) % grid.n), \
            other - other.__floor__()
    return ("h", int(other.__floor__()) % grid.m, line % grid.n), \
        other - other.__floor__()


def _canonical_rotation(segments):
    n = len(segments)
    rotations = [tuple(segments[i:] + segments[:i]) for i in range(n)]
    best = min(rotations)
    return rotations.index(best)


class PolylineCurveData:
    def __init__(self, name, segments, edge_hits):
        self.name = name
        self.segments = segments      # (face, entry_dart, exit_dart) triples
        self.edge_hits = edge_hits    # per crossing point: (edge_key, coord)


def trace_polyline(grid, name, points):
    """Trace a closed polyline (unrolled coordinates; the endpoint must equal
    the start modulo the grid periods) into face-crossing segments."""
    pts = [(_frac(x), _frac(y)) for x, y in points]
    if len(pts) < 2:
        raise ValueError("need at least two points")
    dx, dy = pts[-1][0] - pts[0][0], pts[-1][1] - pts[0][1]
    if dx != dx.__floor__() or dy != dy.__floor__() \
            or int(dx) % grid.m or int(dy) % grid.n:
        raise ValueError("polyline does not close up on the torus")
    for x, y in pts:
        if x == x.__floor__() or y == y.__floor__():
            raise DegeneratePosition("polyline vertex on a grid line")

    crossings = []  # (kind, line_index, other_coord, direction)
    for a, b in zip(pts, pts[1:]):
        for t, kind, k, other in _segment_line_crossings(a, b):
            direction = 1 if (b[0] > a[0] if kind == "v" else b[1] > a[1]) else -1
            crossings.append((kind, k, other, direction))
    if not crossings:
        raise DegeneratePosition("polyline crosses no grid edge")

    surf = grid.surface
    k = len(crossings)
    segments = []
    for idx in range(k):
        exit_prev = _crossing_exit_dart(grid, *crossings[idx])
        exit_next = _crossing_exit_dart(grid, *crossings[(idx + 1) % k])
        entry = surf.alpha[exit_prev]
        face = surf.face_of[entry]
        if surf.face_of[exit_next] != face:
            raise DegeneratePosition(
                "polyline leaves a cell through a non-bounding edge")
        segments.append((face, entry, exit_next))

    # the curve's crossing point j sits between segments j and j+1, which is
    # raw crossing j+1
    hits = [_edge_key_and_coord(grid, kd, ln, ot)
            for kd, ln, ot, _ in crossings]
    hits = hits[1:] + hits[:1]

    # apply the validator's canonical rotation up front so that registry
    # point indices match the validated curve
    r = _canonical_rotation(segments)
    segments = segments[r:] + segments[:r]
    hits = hits[r:] + hits[:r]
    return PolylineCurveData(name, segments, hits)


def curves_from_polylines(grid, named_points):
    """Build validated curves plus a shared registry from closed polylines.

    Strand orders are the exact coordinate orders along each grid edge.
    """
    data = [trace_polyline(grid, name, pts) for name, pts in named_points]
    per_edge = {}
    for d in data:
        for point_idx, (edge_key, coord) in enumerate(d.edge_hits):
            per_edge.setdefault(edge_key, []).append(
                (coord, (d.name, point_idx)))
    registry = StrandRegistry(grid.surface)
    for edge_key, entries in per_edge.items():
        coords = [c for c, _ in entries]
        if len(set(coords)) != len(coords):
            raise DegeneratePosition(
                "two strands cross edge %r at the same point" % (edge_key,))
        entries.sort()
        if not grid.edge_direction_positive(edge_key):
            entries.reverse()
        registry.set_order(grid.edge_id(edge_key),
                           [key for _, key in entries])
    curves = [validate_curve(grid.surface, d.name, d.segments, registry)
              for d in data]
    return curves, registry


def slope_curve_points(p, q, index=0):
    """Unrolled polyline for the (p, q) line on the unit torus, offset so
    that distinct indices stay in general position."""
    if gcd(p, q) != 1:
        raise ValueError("slope must be primitive")
    ox = Fraction(2 * index + 1, 97)
    oy = Fraction(3 * index + 2, 89)
    return [(ox, oy), (ox + p, oy + q)]


def make_torus_slopes(slopes):
    """Curves of the given primitive slopes on the 1x1 grid torus, named
    'c0', 'c1', ...; returns (grid, curves, registry)."""
    grid = GridTorus(1, 1)
    named = [("c%d" % k, slope_curve_points(p, q, k))
             for k, (p, q) in enumerate(slopes)]
    curves, registry = curves_from_polylines(grid, named)
    return grid, curves, registry


def lens_fixture():
    """Two isotopic (1,0)-circles on a 2x2 grid torus crossing at 2 points:
    one flat, one with a bump that straddles the vertical line x=1 while
    arcing over the horizontal line y=1 (the bump must straddle a vertex so
    no chord re-enters its own edge side at adjacent strand positions)."""
    grid = GridTorus(2, 2)
    a = [(Fraction(1, 7), Fraction(3, 10)),
         (Fraction(15, 7), Fraction(3, 10))]
    b = [(Fraction(1, 11), Fraction(1, 5)),
         (Fraction(3, 4), Fraction(1, 5)),
         (Fraction(19, 20), Fraction(23, 20)),
         (Fraction(23, 20), Fraction(23, 20)),
         (Fraction(13, 10), Fraction(1, 5)),
         (Fraction(23, 11), Fraction(1, 5))]
    curves, registry = curves_from_polylines(grid, [("a", a), ("b", b)])
    return grid, curves[0], curves[1], registry


def figure_eight_fixture():
    """An immersed curve with exactly one self-crossing on a 2x1 grid torus:
    a rightward circle with a vertical detour loop whose descending strand
    crosses the horizontal strand once."""
    grid = GridTorus(2, 1)
    c = [(Fraction(1, 5), Fraction(1, 2)),
         (Fraction(3, 2), Fraction(1, 2)),
         (Fraction(8, 5), Fraction(13, 10)),
         (Fraction(9, 10), Fraction(13, 10)),
         (Fraction(11, 10), Fraction(3, 10)),
         (Fraction(7, 4), Fraction(1, 20)),
         (Fraction(11, 5), Fraction(-1, 2))]
    curves, registry = curves_from_polylines(grid, [("e", c)])
    return grid, curves[0], registry


def parallel_circles_fixture():
    """Two disjoint parallel (1,0)-circles on the 1x1 grid torus."""
    grid = GridTorus(1, 1)
    a = [(Fraction(1, 7), Fraction(1, 3)), (Fraction(8, 7), Fraction(1, 3))]
    b = [(Fraction(1, 7), Fraction(2, 3)), (Fraction(8, 7), Fraction(2, 3))]
    curves, registry = curves_from_polylines(grid, [("a", a), ("b", b)])
    return grid, curves[0], curves[1], registry
