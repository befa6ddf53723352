from fractions import Fraction

import pytest

from quiltfloer.curves import (
    CurveSystem, StrandRegistry, arc_crossing_darts, arc_pieces,
    arcs_between, intersections, self_intersections, validate_curve)
from quiltfloer.errors import (
    Backtracking, DegeneratePosition, NotClosed, NotTransverse, SamePoint)
from quiltfloer.fixtures import (
    GridTorus, curves_from_polylines, figure_eight_fixture, lens_fixture,
    make_torus_slopes, parallel_circles_fixture, slope_curve_points)


def test_validate_simple_torus_curve():
    grid, curves, _ = make_torus_slopes([(1, 0)])
    c = curves[0]
    assert len(c.segments) == 1
    seg = c.segments[0]
    assert grid.surface.alpha[seg.exit_dart] == seg.entry_dart


def test_validate_not_closed():
    grid = GridTorus(1, 1)
    surf = grid.surface
    reg = StrandRegistry(surf)
    r = grid.dart(0, 0, "r")
    t = grid.dart(0, 0, "t")
    reg.set_order(surf.edge_of[r], [("x", 0)])
    reg.set_order(surf.edge_of[t], [("x", 1)])
    # exit through r but re-enter through the top gluing: not closed
    with pytest.raises(NotClosed):
        validate_curve(surf, "x",
                       [(surf.face_of[r], surf.alpha[r], t),
                        (surf.face_of[r], surf.alpha[r], r)], reg)


def test_validate_backtracking():
    # a tiny bubble crossing one edge twice: each segment enters and exits
    # through the same edge side at adjacent strand positions
    grid = GridTorus(1, 1)
    surf = grid.surface
    reg = StrandRegistry(surf)
    t = grid.dart(0, 0, "t")
    b = grid.dart(0, 0, "b")
    reg.set_order(surf.edge_of[t], [("x", 0), ("x", 1)])
    f = surf.face_of[t]
    with pytest.raises(Backtracking):
        validate_curve(surf, "x", [(f, t, t), (f, b, b)], reg)


def test_validate_missing_registry_entry():
    grid = GridTorus(1, 1)
    surf = grid.surface
    reg = StrandRegistry(surf)
    r = grid.dart(0, 0, "r")
    reg.set_order(surf.edge_of[r], [("x", 0)])  # only one of two points
    with pytest.raises(DegeneratePosition):
        validate_curve(surf, "x",
                       [(surf.face_of[r], surf.alpha[r], r),
                        (surf.face_of[r], surf.alpha[r], r)], reg)


def test_torus_1_0_vs_0_1_single_point():
    _, curves, _ = make_torus_slopes([(1, 0), (0, 1)])
    pts = intersections(curves[0], curves[1])
    assert len(pts) == 1


def test_parallel_circles_disjoint():
    _, a, b, _ = parallel_circles_fixture()
    assert intersections(a, b) == []


def test_curve_vs_itself_not_transverse():
    _, curves, _ = make_torus_slopes([(1, 0)])
    with pytest.raises(NotTransverse):
        intersections(curves[0], curves[0])


def test_intersection_symmetry():
    _, curves, _ = make_torus_slopes([(1, 2), (2, 1)])
    ab = intersections(curves[0], curves[1])
    ba = intersections(curves[1], curves[0])
    assert len(ab) == len(ba)
    assert sorted(p.swapped() for p in ab) == sorted(ba)


def brute_force_count(p, q, r, s):
    """Chord interleaving count oracle on the common refinement: the curves
    are straight lines, so count crossings of the two lines in the unit
    square directly from the exact polyline coordinates."""
    from quiltfloer.fixtures import trace_polyline
    # lines:  (p,q) through o1, (r,s) through o2;  count solutions of
    # o1 + t(p,q) = o2 + u(r,s) mod 1 with t,u in [0,1)
    o1x, o1y = slope_curve_points(p, q, 0)[0]
    o2x, o2y = slope_curve_points(r, s, 1)[0]
    det = p * s - q * r
    if det == 0:
        return 0
    count = 0
    for a in range(-4, 5):
        for b in range(-4, 5):
            # solve t*p - u*r = o2x - o1x + a ; t*q - u*s = o2y - o1y + b
            rhs1 = o2x - o1x + a
            rhs2 = o2y - o1y + b
            t = (rhs1 * s - rhs2 * r) / det
            u = (p * rhs2 - q * rhs1) / det
            if 0 <= t < 1 and 0 <= u < 1:
                count += 1
    return count


@pytest.mark.parametrize("slopes", [
    ((1, 0), (0, 1)), ((1, 0), (1, 1)), ((1, 0), (1, 2)),
    ((1, 2), (2, 1)), ((1, 1), (1, -1)), ((2, 3), (1, 1)),
    ((3, 1), (1, 3)), ((1, -2), (2, 1)),
])
def test_torus_intersection_law(slopes):
    (p, q), (r, s) = slopes
    _, curves, _ = make_torus_slopes([(p, q), (r, s)])
    pts = intersections(curves[0], curves[1])
    assert len(pts) == abs(p * s - q * r)
    assert len(pts) == brute_force_count(p, q, r, s)


def test_embedded_curve_no_self_intersections():
    _, curves, _ = make_torus_slopes([(1, 2)])
    assert self_intersections(curves[0]) == []


def test_figure_eight_one_self_intersection():
    _, e, _ = figure_eight_fixture()
    assert len(self_intersections(e)) == 1


def test_lens_two_intersections():
    _, a, b, _ = lens_fixture()
    assert len(intersections(a, b)) == 2


# -- arcs ------------------------------------------------------------------------


def test_arcs_partition_curve():
    _, a, b, _ = lens_fixture()
    system = CurveSystem(a.surface, [a, b])
    p, q = system.intersections_between(["a"], ["b"])
    arc1, arc2 = arcs_between(system, "b", p, q)
    # each run traverses pieces; total pieces of both arcs = all pieces of b
    total = sum(r.stop - r.start for r in arc1.runs) + \
        sum(r.stop - r.start for r in arc2.runs)
    all_pieces = 0
    for i in range(len(b.segments)):
        face = system.chord_face(("b", i))
        all_pieces += len(system.chart(face).chord_pieces(("b", i)))
    assert total == all_pieces


def test_arcs_same_point_rejected():
    _, a, b, _ = lens_fixture()
    system = CurveSystem(a.surface, [a, b])
    p, q = system.intersections_between(["a"], ["b"])
    with pytest.raises(SamePoint):
        arcs_between(system, "a", p, p)


def test_arc_crossing_darts_consistency():
    _, a, b, _ = lens_fixture()
    system = CurveSystem(a.surface, [a, b])
    p, q = system.intersections_between(["a"], ["b"])
    arc1, arc2 = arcs_between(system, "b", p, q)
    surf = a.surface
    for arc in (arc1, arc2):
        darts = arc_crossing_darts(system, arc)
        # consecutive runs are glued across the crossed darts
        for i, d in enumerate(darts):
            face_here = system.chord_face(arc.runs[i].chord)
            face_next = system.chord_face(arc.runs[i + 1].chord)
            assert surf.face_of[d] == face_here
            assert surf.face_of[surf.alpha[d]] == face_next


def test_arc_pieces_direction():
    _, a, b, _ = lens_fixture()
    system = CurveSystem(a.surface, [a, b])
    p, q = system.intersections_between(["a"], ["b"])
    fwd, _ = arcs_between(system, "a", p, q)
    pieces = fwd.runs
    rev = fwd.reversed()
    assert rev.runs[0].chord == pieces[-1].chord
    assert len(arc_pieces(system, rev)) == len(arc_pieces(system, fwd))
