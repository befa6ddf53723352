"""Closed oriented combinatorial surfaces as dart-based combinatorial maps.

A surface is a triple (darts, alpha, sigma) where alpha is a fixed-point-free
involution pairing the two half-edges (darts) of each edge and sigma rotates
the darts counterclockwise around their origin vertex.  Faces are the orbits
of phi = sigma o alpha.  This single internal form is the source of truth;
polygon-gluing words are accepted as input sugar and converted.

The module also provides quad subdivision (`refine`) and a lazily developed
universal cover (`DevelopedCover`) used for null-homotopy detection and for
the disc developments behind bigon counting.  The cover is built face by
face: crossing an undeveloped edge spawns a fresh lifted face, and whenever
the developed corners around a lifted vertex account for the full valence of
the base vertex the link is closed up, cascading as needed.  For a closed
surface this folding rule builds exactly (a ball of) the universal cover.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .errors import Disconnected, FixedDart, NonAdjacentStep, NonOrientable


def _orbits(perm):
    """Orbits of a permutation given as a sequence, sorted by least element."""
    n = len(perm)
    seen = [False] * n
    orbits = []
    for start in range(n):
        if seen[start]:
            continue
        cycle = []
        d = start
        while not seen[d]:
            seen[d] = True
            cycle.append(d)
            d = perm[d]
        orbits.append(tuple(cycle))
    orbits.sort(key=lambda c: c[0])
    return orbits


@dataclass(frozen=True)
class FacePolygon:
    """One face of a combinatorial surface: a cyclic dart sequence."""

    face_id: int
    boundary_darts: tuple
    side_count: int


class CombinatorialSurface:
    """Closed, connected, oriented surface. Immutable after construction."""

    def __init__(self, alpha, sigma):
        n = len(alpha)
        if len(sigma) != n:
            raise ValueError("alpha and sigma must act on the same darts")
        alpha = tuple(alpha)
        sigma = tuple(sigma)
        if sorted(alpha) != list(range(n)) or sorted(sigma) != list(range(n)):
            raise ValueError("alpha and sigma must be permutations of 0..n-1")
        for d in range(n):
            if alpha[d] == d:
                raise FixedDart("involution fixes dart %d" % d)
            if alpha[alpha[d]] != d:
                raise ValueError("alpha is not an involution at dart %d" % d)

        self.n_darts = n
        self.alpha = alpha
        self.sigma = sigma
        # phi = sigma o alpha walks the boundary of each face; consecutive
        # darts meet head-to-origin.
        self.phi = tuple(sigma[alpha[d]] for d in range(n))
        inv = [0] * n
        for d in range(n):
            inv[self.phi[d]] = d
        self.phi_inv = tuple(inv)
        inv = [0] * n
        for d in range(n):
            inv[sigma[d]] = d
        self.sigma_inv = tuple(inv)

        self.face_cycles = _orbits(self.phi)
        self.vertex_cycles = _orbits(self.sigma)
        self.edge_pairs = tuple(
            (d, alpha[d]) for d in range(n) if d < alpha[d]
        )

        self.face_of = [0] * n
        for i, cyc in enumerate(self.face_cycles):
            for d in cyc:
                self.face_of[d] = i
        self.face_of = tuple(self.face_of)
        self.vertex_of = [0] * n
        for i, cyc in enumerate(self.vertex_cycles):
            for d in cyc:
                self.vertex_of[d] = i
        self.vertex_of = tuple(self.vertex_of)
        self.edge_of = [0] * n
        for i, (d, e) in enumerate(self.edge_pairs):
            self.edge_of[d] = i
            self.edge_of[e] = i
        self.edge_of = tuple(self.edge_of)

        if n and not self._connected():
            raise Disconnected("surface is not connected")

        self.n_faces = len(self.face_cycles)
        self.n_vertices = len(self.vertex_cycles)
        self.n_edges = len(self.edge_pairs)
        self.euler_characteristic = self.n_vertices - self.n_edges + self.n_faces
        chi = self.euler_characteristic
        if chi % 2 != 0 or chi > 2:
            raise ValueError("characteristic %d is not that of a closed "
                             "oriented surface" % chi)
        self.genus = (2 - chi) // 2

    def _connected(self):
        seen = {0}
        stack = [0]
        while stack:
            d = stack.pop()
            for e in (self.alpha[d], self.sigma[d]):
                if e not in seen:
                    seen.add(e)
                    stack.append(e)
        return len(seen) == self.n_darts

    # -- queries -------------------------------------------------------------

    def face(self, face_id):
        cyc = self.face_cycles[face_id]
        return FacePolygon(face_id, cyc, len(cyc))

    def faces(self):
        return [self.face(i) for i in range(self.n_faces)]

    def canonical_dart(self, dart):
        """Lower dart of the edge through `dart`; fixes the edge direction
        along which strand orderings are stored."""
        a = self.alpha[dart]
        return dart if dart < a else a

    def other_face(self, dart):
        return self.face_of[self.alpha[dart]]

    def valence(self, dart):
        return len(self.vertex_cycles[self.vertex_of[dart]])

    def fingerprint(self):
        return ("surface", self.alpha, self.sigma)

    def __repr__(self):
        return "CombinatorialSurface(V=%d, E=%d, F=%d, genus=%d)" % (
            self.n_vertices, self.n_edges, self.n_faces, self.genus)


def build_surface(n_darts, involution_pairs, rotation_cycles):
    """Build a surface from raw dart data.

    involution_pairs: iterable of (d, d') covering every dart exactly once.
    rotation_cycles: iterable of cycles (tuples of darts), jointly a
        permutation; each cycle lists the darts around one vertex in
        counterclockwise order.
    """
    alpha = [-1] * n_darts
    for d, e in involution_pairs:
        if d == e:
            raise FixedDart("involution fixes dart %d" % d)
        if not (0 <= d < n_darts and 0 <= e < n_darts):
            raise ValueError("dart out of range in involution pair")
        if alpha[d] != -1 or alpha[e] != -1:
            raise ValueError("dart repeated in involution pairs")
        alpha[d] = e
        alpha[e] = d
    if -1 in alpha:
        raise ValueError("involution pairs do not cover all darts")

    sigma = [-1] * n_darts
    for cyc in rotation_cycles:
        for i, d in enumerate(cyc):
            if sigma[d] != -1:
                raise ValueError("dart repeated in rotation cycles")
            sigma[d] = cyc[(i + 1) % len(cyc)]
    if -1 in sigma:
        raise ValueError("rotation cycles do not cover all darts")

    return CombinatorialSurface(alpha, sigma)


def surface_from_face_words(face_words):
    """Build a surface from faces given as boundary words of signed side keys.

    face_words: list of faces; each face is a list of (key, sign) with
    sign in {+1, -1}.  Every key must occur exactly twice overall, once with
    each sign (otherwise the gluing is non-orientable or not closed).

    Returns (surface, side_darts) where side_darts[i][j] is the dart id given
    to side j of input face i.
    """
    side_darts = []
    dart = 0
    occurrences = {}
    for i, word in enumerate(face_words):
        ids = []
        for j, (key, sign) in enumerate(word):
            if sign not in (1, -1):
                raise ValueError("sign must be +1 or -1")
            occurrences.setdefault(key, []).append((sign, dart))
            ids.append(dart)
            dart += 1
        side_darts.append(tuple(ids))
    n = dart

    alpha = [-1] * n
    for key, occ in occurrences.items():
        if len(occ) != 2:
            raise ValueError("side key %r occurs %d times, expected 2"
                             % (key, len(occ)))
        (s1, d1), (s2, d2) = occ
        if s1 == s2:
            raise NonOrientable("side key %r glued without orientation "
                                "reversal" % (key,))
        alpha[d1] = d2
        alpha[d2] = d1

    phi = [-1] * n
    for ids in side_darts:
        for j, d in enumerate(ids):
            phi[d] = ids[(j + 1) % len(ids)]
    # phi = sigma o alpha, so sigma = phi o alpha.
    sigma = tuple(phi[alpha[d]] for d in range(n))
    surf = CombinatorialSurface(alpha, sigma)
    return surf, side_darts


def surface_from_polygons(words):
    """Polygon-gluing sugar: faces as words of string labels, a leading '-'
    marking the reversed side, e.g. torus = [["a", "b", "-a", "-b"]]."""
    face_words = []
    for word in words:
        sides = []
        for lab in word:
            if lab.startswith("-"):
                sides.append((lab[1:], -1))
            else:
                sides.append((lab, 1))
        face_words.append(sides)
    return surface_from_face_words(face_words)


# -- quad subdivision ---------------------------------------------------------


@dataclass
class Refinement:
    """Quad subdivision of a surface with transport metadata.

    Each n-gon face splits into n quads around a new central vertex; each
    original edge splits at a new midpoint vertex.  For transporting curves:

    half_along(dart): the two refined darts that traverse the two halves of
        edge(dart) in the direction of `dart` (first half first).
    spoke_dart(dart): refined dart traversing the spoke of `dart` from the
        face center to the edge midpoint.
    """

    original: CombinatorialSurface
    refined: CombinatorialSurface
    face_ancestry: dict = field(default_factory=dict)
    quad_of_dart: dict = field(default_factory=dict)
    _half0_dart: dict = field(default_factory=dict)   # edge id -> refined dart
    _half1_dart: dict = field(default_factory=dict)
    _spoke_dart: dict = field(default_factory=dict)   # original dart -> refined dart

    def half_along(self, dart):
        surf = self.original
        e = surf.edge_of[dart]
        d0, da = self._half0_dart[e], self._half1_dart[e]
        if dart == surf.canonical_dart(dart):
            return (d0, da)
        ref = self.refined
        return (ref.alpha[da], ref.alpha[d0])

    def spoke_dart(self, dart):
        return self._spoke_dart[dart]


def refine(surface):
    """Quad-subdivide: each n-gon becomes n quads about a new central vertex.

    Returns a Refinement; chi, genus, orientation and connectivity are
    preserved by construction.
    """
    alpha, phi = surface.alpha, surface.phi
    quads = []
    quad_darts = sorted(range(surface.n_darts))
    for d in quad_darts:
        e = surface.edge_of[d]
        dn = phi[d]
        en = surface.edge_of[dn]
        side_a = (("H1", e), 1) if d == surface.canonical_dart(d) else (("H0", e), -1)
        side_b = (("H0", en), 1) if dn == surface.canonical_dart(dn) else (("H1", en), -1)
        side_c = (("S", dn), -1)
        side_d = (("S", d), 1)
        quads.append([side_a, side_b, side_c, side_d])

    refined, side_darts = surface_from_face_words(quads)

    ref = Refinement(original=surface, refined=refined)
    for i, d in enumerate(quad_darts):
        quad_face = refined.face_of[side_darts[i][0]]
        ref.quad_of_dart[d] = quad_face
        ref.face_ancestry[quad_face] = surface.face_of[d]
        e = surface.edge_of[d]
        if d == surface.canonical_dart(d):
            # side A traverses H1 along the canonical direction;
            # the H0 dart along the canonical direction is side B of the
            # preceding quad, recovered via alpha of our side A? No: record
            # H0 from the quad whose side B carries it with sign +1.
            ref._half1_dart[e] = side_darts[i][0]
        dn = phi[d]
        if dn == surface.canonical_dart(dn):
            ref._half0_dart[surface.edge_of[dn]] = side_darts[i][1]
        ref._spoke_dart[d] = side_darts[i][3]
    return ref


# -- universal cover ----------------------------------------------------------


class DevelopedCover:
    """Lazily developed universal cover of a surface, rooted at a base face.

    Lifted faces are integers; `base_face[i]` is the base face under lift i.
    `step(lift, dart)` develops across `dart` (which must bound the lifted
    face) and returns the lifted face on the other side, creating it when
    necessary.  Vertex links are folded shut as soon as they complete, so two
    developments reach the same lifted face exactly when the connecting loop
    is null-homotopic downstairs.
    """

    def __init__(self, surface, base_face=0):
        self.surface = surface
        self.base_face = base_face
        self.base_of = [base_face]
        # (lift, dart) -> (lift', alpha[dart])
        self.alpha_lift = {}
        self._lock = threading.RLock()
        self._close_completed_links(0)

    def n_lifts(self):
        return len(self.base_of)

    def step(self, lift, dart):
        """Develop across `dart` out of lifted face `lift`."""
        surf = self.surface
        if surf.face_of[dart] != self.base_of[lift]:
            raise NonAdjacentStep(
                "dart %d does not bound face %d" % (dart, self.base_of[lift]))
        with self._lock:
            hit = self.alpha_lift.get((lift, dart))
            if hit is not None:
                return hit[0]
            new = len(self.base_of)
            self.base_of.append(surf.face_of[surf.alpha[dart]])
            self._assign(lift, dart, new)
            self._close_completed_links(new)
            return new

    def neighbor(self, lift, dart):
        """Already-developed neighbor across `dart`, or None."""
        hit = self.alpha_lift.get((lift, dart))
        return None if hit is None else hit[0]

    def boundary_darts(self):
        """All (lift, dart) with no developed neighbor."""
        out = []
        for lift in range(len(self.base_of)):
            for d in self.surface.face_cycles[self.base_of[lift]]:
                if (lift, d) not in self.alpha_lift:
                    out.append((lift, d))
        return out

    # -- folding internals ----------------------------------------------------

    def _close_completed_links(self, face_lift):
        """Close any vertex link completed by the mere presence of this
        lifted face (e.g. low-valence base vertices)."""
        for q in self.surface.face_cycles[self.base_of[face_lift]]:
            closing = self._close_link((face_lift, q))
            if closing is not None:
                self._assign(*closing)

    def _assign(self, lift, dart, other):
        surf = self.surface
        queue = [(lift, dart, other)]
        while queue:
            f, d, g = queue.pop()
            a = surf.alpha[d]
            cur = self.alpha_lift.get((f, d))
            if cur is not None:
                if cur != (g, a):
                    raise AssertionError("inconsistent link closure")
                continue
            self.alpha_lift[(f, d)] = (g, a)
            self.alpha_lift[(g, a)] = (f, d)
            for corner in ((f, d), (g, a)):
                closing = self._close_link(corner)
                if closing is not None:
                    queue.append(closing)

    def _next_corner(self, corner):
        hit = self.alpha_lift.get(corner)
        if hit is None:
            return None
        return (hit[0], self.surface.sigma[corner[1]])

    def _prev_corner(self, corner):
        f, q = corner
        hit = self.alpha_lift.get((f, self.surface.phi_inv[q]))
        if hit is None:
            return None
        return hit

    def _close_link(self, corner):
        """If the assigned corner chain around corner's vertex has full
        valence but is not yet a cycle, return the closing crossing."""
        surf = self.surface
        valence = surf.valence(corner[1])
        first = corner
        count = 1
        while count <= valence:
            prev = self._prev_corner(first)
            if prev is None or prev == corner:
                break
            first = prev
            count += 1
        last = corner
        while count <= valence:
            nxt = self._next_corner(last)
            if nxt is None or nxt == first:
                break
            last = nxt
            count += 1
        if count > valence:
            raise AssertionError("vertex link exceeds base valence")
        if count == valence and self.alpha_lift.get(last) is None:
            # closing crossing runs from `last` back onto `first`
            if surf.sigma[last[1]] != first[1]:
                raise AssertionError("link closure dart mismatch")
            return (last[0], last[1], first[0])
        return None


def develop_path(surface, darts, base_face=None, cover=None):
    """Develop a dual path given by the darts it crosses.

    Each dart is crossed out of its own face, so consecutive darts must
    satisfy face(darts[i+1]) == face(alpha(darts[i])).  Returns the list of
    placements (lifted face ids), one per step plus the base placement; two
    placements are equal iff the corresponding universal-cover lifts agree.
    """
    if darts:
        start = surface.face_of[darts[0]]
    else:
        start = base_face if base_face is not None else 0
    if base_face is not None and start != base_face:
        raise NonAdjacentStep("first dart does not leave the base face")
    if cover is None:
        cover = DevelopedCover(surface, start)
        lift = 0
    else:
        if cover.base_of[0] != start:
            raise NonAdjacentStep("cover is rooted at a different face")
        lift = 0
    placements = [lift]
    for d in darts:
        if surface.face_of[d] != cover.base_of[lift]:
            raise NonAdjacentStep(
                "dart %d does not bound the current face" % d)
        lift = cover.step(lift, d)
        placements.append(lift)
    return placements
