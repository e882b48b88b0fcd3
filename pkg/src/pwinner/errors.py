"""Exception hierarchy shared by every module."""


class PWError(Exception):
    """Base class for all package errors."""


class CycleError(PWError):
    """A preference relation contains a directed cycle."""


class PairDeterminedError(PWError):
    """Tried to fix a pair that is already ordered."""


class DegenerateRule(PWError):
    """A score vector with all entries equal."""


class SmoothnessViolation(PWError):
    """Consecutive members of a rule family are not a smooth step."""


class BudgetExceeded(PWError):
    """The brute-force search space is larger than the configured budget."""

    def __init__(self, size, budget):
        super().__init__(f"search space {size} exceeds budget {budget}")
        self.size = size
        self.budget = budget


class PreconditionViolated(PWError):
    """A solver was called outside its regime."""


class UnsupportedAlpha(PreconditionViolated):
    """Copeland solver called with alpha outside {0, 1}."""


class InfeasibleTarget(PWError):
    """A score or margin target cannot be realised."""


class ParityError(InfeasibleTarget):
    """Margin target entries of mixed parity."""


class NoDifferentiatingPositions(PWError):
    """No usable pair of differences for the differentiating-rule gadget."""


class PatternAbsent(PWError):
    """The score vector lacks the difference pattern a gadget needs."""


class AlphaOutOfRange(PWError):
    """Copeland alpha outside the interval a gadget is defined for."""


class OccurrenceCapViolated(PWError):
    """A 3DM element occurs in more triples than allowed."""


class InvalidSolution(PWError):
    """A source-problem solution does not solve its instance."""


class ExtractionFailed(PWError):
    """A co-winning completion did not map back to a valid solution."""


class ParseError(PWError):
    """Malformed instance or source file."""

    def __init__(self, msg, line=None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


class InvalidSourceInstance(PWError):
    """A SAT, 3DM or graph instance violates its structural invariants."""


class TableMismatch(PWError):
    """A generated gadget does not reproduce its score table."""


class CompletionFailed(PWError):
    """A completion built from a valid solution leaves the target losing."""
