"""Exception hierarchy shared across the package."""


class FinmodError(Exception):
    """Base class for every error raised by finmod."""


class MalformedSpec(FinmodError):
    pass


class NonAssociative(FinmodError):
    pass


class BadUnit(FinmodError):
    pass


class CharNotPrimePower(FinmodError):
    pass


class RingMismatch(FinmodError):
    pass


class NotASubmodule(FinmodError):
    pass


class BoundExceeded(FinmodError):
    """A lattice or enumeration grew past its configured bound."""


class InternalInconsistency(FinmodError):
    """Two independent computations that must agree did not."""


class InapplicableSuite(FinmodError):
    pass


class UnknownSelector(FinmodError):
    pass


class VersionMismatch(FinmodError):
    pass


class IoFailure(FinmodError):
    pass
