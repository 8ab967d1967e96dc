"""Exception hierarchy shared by all liftlab modules."""


class LiftlabError(Exception):
    """Base class for every error raised by liftlab."""


class SpanViolation(LiftlabError):
    """An equation handed to row reduction already lies in the span of the system."""


class Inconsistent(LiftlabError):
    """Adding an equation would make the affine system unsolvable."""


class IncompleteAssignment(LiftlabError):
    pass


class EmptySet(LiftlabError):
    pass


class ShapeMismatch(LiftlabError):
    pass


class ParamViolation(LiftlabError):
    pass


class GuardExceeded(LiftlabError):
    """An exhaustive computation would exceed its size guard."""


class NotPowerOfTwo(LiftlabError):
    pass


class WidthOverflow(GuardExceeded):
    pass


class MalformedProof(LiftlabError):
    pass


class SourceInvalid(LiftlabError):
    pass


class ParseError(LiftlabError):
    pass


class InvariantBroken(LiftlabError):
    """A simulation invariant failed; this always indicates a bug."""
