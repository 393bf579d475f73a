"""Exception hierarchy shared by the library and the command line."""


class PrimeTuplesError(Exception):
    """Base class for all library errors."""


class DomainOverflowError(PrimeTuplesError, ValueError):
    """Input lies above the supported integer cap."""


class RangeTooLargeError(PrimeTuplesError, ValueError):
    """Requested range is wider than the configured maximum."""


class InvalidPairError(PrimeTuplesError, ValueError):
    pass


class InconsistentClassError(PrimeTuplesError, ValueError):
    pass


class InvalidMultipletError(PrimeTuplesError, ValueError):
    pass


class InvalidSignatureError(PrimeTuplesError, ValueError):
    pass


class ConstraintError(PrimeTuplesError, ValueError):
    """A congruence or magnitude precondition of an operation does not hold."""


class PreconditionError(PrimeTuplesError, ValueError):
    pass
