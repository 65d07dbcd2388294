"""Exception hierarchy shared by all modules.

Exit-code mapping used by the CLI:
  InputError (and subclasses)      -> exit 2  (malformed input)
  HypothesisError / ImproperNodeSetError -> exit 1  (a certified "no")
  InternalCheckError               -> exit 1  (bug sentinel, never user error)
"""


class PpsnError(Exception):
    """Base class for all library errors."""


class InputError(PpsnError):
    """Malformed or inconsistent user input."""


class ParseError(InputError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DimensionMismatchError(InputError):
    """Ambient dimensions of two objects disagree."""


class OffManifoldError(InputError):
    """A node claimed to lie on a manifold has a nonzero residual."""

    def __init__(self, point, poly_index, residual):
        self.point = point
        self.poly_index = poly_index
        self.residual = residual
        super().__init__(
            f"point {tuple(str(c) for c in point)} has residual {residual} "
            f"on defining polynomial #{poly_index + 1}"
        )


class CountMismatchError(InputError):
    """Node or value count disagrees with the expected dimension."""


class HypothesisError(PpsnError):
    """A mathematical hypothesis of the operation failed its exact check."""


class ImproperNodeSetError(HypothesisError):
    """A node set required to be properly posed is not; carries the certificate."""

    def __init__(self, certificate, message="node set is not properly posed"):
        self.certificate = certificate
        super().__init__(message)


class InsufficientIntersectionError(HypothesisError):
    """Leading forms share a projective zero, or the intersection degenerates."""


class DecompositionError(HypothesisError):
    """An ideal-membership decomposition required to exist does not."""


class InternalCheckError(PpsnError):
    """An internal cross-check identity failed: implementation bug, never user error."""
