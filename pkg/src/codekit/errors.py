"""Shared exception types.

Every failure mode that the command line maps to a dedicated exit status
has its own class here, so library callers can catch them selectively.
"""


class CodekitError(Exception):
    """Base class for all library errors."""


class ParseError(CodekitError):
    """Malformed expression, relation spec, or language file."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnsupportedError(CodekitError):
    """Input combination whose decidability is an open problem.

    `question` identifies which open problem blocks the computation
    (Q1: independence for S_k / Lambda_k with k >= 2 on infinite
    regular sets; Q2: error correction on infinite regular sets;
    Q3: code-ness of the antireflexive image in the same regime).
    """

    def __init__(self, question, message):
        self.question = question
        super().__init__(f"unsupported ({question}): {message}")


class BudgetExceededError(CodekitError):
    """A configured resource cap (states, iterations, candidates) was hit."""

    def __init__(self, message, budget=None, observed=None):
        self.budget = budget
        self.observed = observed
        super().__init__(message)
