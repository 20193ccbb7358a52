class ProtopError(Exception):
    pass


class BudgetExceeded(ProtopError):
    """A configured search or enumeration budget was exhausted."""


class InfiniteIndexError(ProtopError):
    pass


class NotCompleteError(ProtopError):
    pass


class NotNormalError(ProtopError):
    pass


class WordTooLong(ProtopError):
    pass


class NotMember(ProtopError):
    pass


class OracleInconsistency(ProtopError):
    """Caller-supplied oracles contradict each other or the induction."""


class UnsupportedDescriptor(ProtopError):
    pass
