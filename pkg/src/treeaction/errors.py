"""Shared exception types.

Exit-code mapping used by the CLI: parse errors -> 2, construction errors
-> 3, invariant failures -> 4.
"""


class SpecParseError(ValueError):
    """A spec file or word failed to parse; carries a human-readable position."""


class WordSyntaxError(SpecParseError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ConstructionError(RuntimeError):
    """A representation or tree could not be built from valid-looking data."""


class ChartMismatchError(TypeError):
    """Affine operands live in different charts."""


class InvariantFailure(AssertionError):
    """An exact identity that must hold was violated; carries a witness."""

    def __init__(self, prop, witness):
        super().__init__(f"{prop}: witness {witness!r}")
        self.prop = prop
        self.witness = witness


class BallBudgetError(ConstructionError):
    """Tree ball construction exceeded its vertex budget."""

    def __init__(self, budget, stats):
        super().__init__(f"vertex budget {budget} exceeded: partial stats {stats}")
        self.stats = stats
