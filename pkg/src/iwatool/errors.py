"""Exception types shared across the toolkit."""


class IwatoolError(Exception):
    """Base class for all toolkit errors."""


class RingMismatch(IwatoolError):
    """Operands belong to different coefficient rings."""


class PrecisionTooLow(IwatoolError):
    """The requested computation needs more l-adic precision than available."""


class DegreeCapExceeded(IwatoolError):
    """A polynomial operation would exceed the configured degree cap."""


class InvalidRange(IwatoolError):
    """Arguments violate an ordering precondition (e.g. n < m)."""


class TooFewPoints(IwatoolError):
    """Not enough sequence points to determine a fit."""


class UnstableFit(IwatoolError):
    """The observed sequence does not stabilize onto the exact growth law."""


class OrderNotCoprime(IwatoolError):
    """The group order is not coprime to l."""


class UnknownIrreducible(IwatoolError):
    """A virtual character was paired against an irreducible outside its table."""


class NotASubgroup(IwatoolError):
    """The provided generators do not describe a subgroup of the ambient group."""


class EllIsTwo(IwatoolError):
    """Real/imaginary splitting requires an odd prime l."""


class UnknownPlace(IwatoolError):
    """A place id was referenced that is not part of the tower input."""


class MissingReferent(IwatoolError):
    """The referent table lacks an entry needed by the requested formula."""


class LeopoldtNotAssumed(IwatoolError):
    """A conditional formula was requested without its hypothesis flag."""


class PreconditionSUnionT(IwatoolError):
    """The mirror identities require S and T to jointly cover the wild places."""


class MalformedInput(IwatoolError):
    """An input document does not match the expected schema."""
