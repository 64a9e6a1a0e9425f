"""Error types shared across the package.

Three failure families map onto the three CLI exit codes: success (0),
configuration errors (1), and numeric failures mid-run (2).
"""


class ConfigurationError(ValueError):
    """Bad or inconsistent scenario input (wrong key, range, geometry)."""


class NumericFailure(ArithmeticError):
    """The integration produced non-finite values or an unsolvable system.

    Carries the step index at which the failure was detected, when known.
    """

    def __init__(self, message, step_index=None):
        super().__init__(message)
        self.step_index = step_index


class ContractViolation(ValueError):
    """An API was called outside its documented domain (programming error)."""
