"""Exception types shared across the package."""


class QuartetMergeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidTree(QuartetMergeError):
    """The edge set does not describe a logical routing tree."""


class UnknownReceiver(QuartetMergeError):
    """A receiver name is not among the tree's receivers."""


class SameReceiver(QuartetMergeError):
    """An operation on a receiver pair was given the same receiver twice."""


class MisplacedJoin(QuartetMergeError):
    """A joining edge is missing or does not lie on the receiver's root path."""


class InvalidConfiguration(QuartetMergeError):
    """A joining configuration violates the pairwise shared-prefix rule."""


class InsufficientReceivers(QuartetMergeError):
    """The operation needs at least two receivers."""


class StructuralViolation(QuartetMergeError):
    """Tree surgery broke a structural invariant; indicates a bug."""


class InconsistentAnswer(QuartetMergeError):
    """A query answer contradicts the current candidate state (noise only)."""


class Stalled(QuartetMergeError):
    """No eligible quartet remains while receivers are still unresolved."""


class TooLarge(QuartetMergeError):
    """The instance exceeds a documented enumeration cap."""


class BadSpec(QuartetMergeError):
    """A generator shape or size parameter is out of range."""


class ParseError(QuartetMergeError):
    """A topology file is malformed.

    Carries the 1-based line number when the offending line is known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
