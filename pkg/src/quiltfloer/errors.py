"""Exception taxonomy for quiltfloer.

Every validation failure raises a named subclass of QuiltFloerError so that
callers (and the batch CLI) can report structured, per-task errors.  Errors
that carry audit data (e.g. NotAComplex) expose it as attributes.
"""


class QuiltFloerError(Exception):
    """Base class for all quiltfloer errors."""


# -- surface construction ---------------------------------------------------

class FixedDart(QuiltFloerError):
    """Edge involution pairs a dart with itself."""


class NonOrientable(QuiltFloerError):
    """Polygon gluing scheme does not admit a consistent orientation."""


class Disconnected(QuiltFloerError):
    """Dart set does not form a connected surface."""


class NonAdjacentStep(QuiltFloerError):
    """Development step crosses an edge that does not bound the current face."""


# -- curves ------------------------------------------------------------------

class NotClosed(QuiltFloerError):
    """Curve segments do not close up under the edge gluing."""


class Backtracking(QuiltFloerError):
    """Curve segment enters and leaves through the same strand position."""


class DegeneratePosition(QuiltFloerError):
    """Strand ordering data is missing, duplicated or otherwise not strict."""


class NotTransverse(QuiltFloerError):
    """Two curves (or a correspondence and a product of curves) are not
    transverse: some chord endpoints collide in the strand ordering."""


class SamePoint(QuiltFloerError):
    """Arc endpoints coincide."""


# -- lunes -------------------------------------------------------------------

class NotNullHomotopic(QuiltFloerError):
    """Loop does not bound: development fails to close, or the crossing
    cochain admits no potential."""


class SameCorner(QuiltFloerError):
    """Bigon corners must be distinct generalized intersection points."""


# -- chain complexes ---------------------------------------------------------

class NotAComplex(QuiltFloerError):
    """The differential does not square to zero over GF(2).

    Attributes:
        witnesses: list of (i, j, count) triples where (d.d)[i, j] is odd.
    """

    def __init__(self, message, witnesses=()):
        super().__init__(message)
        self.witnesses = list(witnesses)


# -- correspondences ---------------------------------------------------------

class NoReflectionSymmetry(QuiltFloerError):
    """No collar reflection across the requested fold circle exists."""


class OverlappingCircles(QuiltFloerError):
    """Twist circles are not disjoint."""


class TangentToFoldImage(QuiltFloerError):
    """Curve meets a fold-circle image non-transversally."""


class UnresolvedOverlap(QuiltFloerError):
    """Pushforward produced exactly overlapping strands and no perturbation
    order was supplied."""


class NotComposable(QuiltFloerError):
    """The combinatorial composability (transversality) check failed."""


# -- quilts ------------------------------------------------------------------

class NotContained(QuiltFloerError):
    """Lune support leaves the image subcomplex of the correspondence."""


class SeamLiftFailure(QuiltFloerError):
    """Provenance map cannot lift a boundary arc to the correspondence."""


# -- cli / io ----------------------------------------------------------------

class SchemaError(QuiltFloerError):
    """Problem document violates the published JSON schema.

    Attributes:
        pointer: JSON-pointer path of the offending element.
    """

    def __init__(self, message, pointer=""):
        super().__init__(message)
        self.pointer = pointer


class DanglingReference(QuiltFloerError):
    """Problem document references an undefined surface/curve/correspondence."""


class VersionUnsupported(QuiltFloerError):
    """Problem document version is not supported by this tool."""
