class ConfigurationError(ValueError):
    """Malformed input or a violated precondition."""


class BudgetExhausted(RuntimeError):
    """An enumeration or search hit its configured cap."""


class InvariantViolation(AssertionError):
    """A checked mathematical identity or inequality failed."""
