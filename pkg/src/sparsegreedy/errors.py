"""Exception hierarchy.

Every error raised by the library derives from :class:`SparseGreedyError`.
The ``exit_code`` attribute is what the CLI returns when the error escapes a
command: 2 for invalid input, 3 for size guards, 1 for a check or selection
that failed on otherwise valid input.
"""


class SparseGreedyError(Exception):
    exit_code = 1


class ValidationError(SparseGreedyError, ValueError):
    """Input is well formed but violates a domain constraint."""

    exit_code = 2


class ParseError(ValidationError):
    """Input could not be decoded at all."""


class DuplicateAtomId(ValidationError):
    pass


class NonpositiveWeight(ValidationError):
    pass


class UnknownAtom(ValidationError):
    pass


class ZeroMeasureSet(ValidationError):
    pass


class SpaceMismatch(ValidationError):
    pass


class EmptyCollection(ValidationError):
    pass


class UnknownSetId(ValidationError):
    pass


class BadOrder(ValidationError):
    pass


class GammaOutOfRange(ValidationError):
    pass


class NoCandidates(ValidationError):
    pass


class TooLarge(SparseGreedyError):
    exit_code = 3


class GridTooLarge(TooLarge):
    pass


class BucketLimitExceeded(TooLarge):
    pass


class SelectionImpossible(SparseGreedyError, RuntimeError):
    """No set met the log-greedy threshold. This is a bug, never an input problem."""


class NoQualifyingSet(SparseGreedyError):
    """Fixed-threshold selection failed: the supplied M is too small here."""

    def __init__(self, threshold, remaining):
        self.threshold = threshold
        self.remaining = remaining
        super().__init__(
            f"no set keeps the required mass below height {threshold} "
            f"({remaining} sets remaining)"
        )


class SumExceedsOne(SparseGreedyError):
    def __init__(self, atom, total):
        self.atom = atom
        self.total = total
        super().__init__(f"witness sums to {total} > 1 at atom {atom}")


class SupportViolation(SparseGreedyError):
    pass
