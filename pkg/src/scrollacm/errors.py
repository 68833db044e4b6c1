"""Exception hierarchy shared by every module."""


class ScrollAcmError(ValueError):
    """Base class; the CLI maps it to exit code 2."""


class DomainError(ScrollAcmError):
    pass


class NoInitializedTwist(ScrollAcmError):
    pass


class NonIntegralPairing(ScrollAcmError):
    pass


class ZeroRank(ScrollAcmError):
    pass


class NotACM(ScrollAcmError):
    pass


class WrongDegree(ScrollAcmError):
    pass


class ShapeMismatch(ScrollAcmError):
    pass


class NotIrregular(ScrollAcmError):
    pass


class NotInKfrak(ScrollAcmError):
    def __init__(self, word, failing_t):
        self.word = tuple(word)
        self.failing_t = failing_t
        super().__init__(f"word {self.word} is not admissible: condition fails at t={failing_t}")


class InconsistentState(AssertionError):
    """Internal invariant violation (CLI exit code 3)."""
