"""
Exception hierarchy for the workbench.

Input problems are ValueErrors; mathematical failures are reported as values.
"""


class WorkbenchError(ValueError):
    """Base class for all workbench errors."""


class InputError(WorkbenchError):
    """Malformed or inconsistent input."""


class SchemaError(InputError):
    """A JSON document violates its schema."""

    def __init__(self, what: str, violations):
        self.violations = list(violations)
        details = "; ".join(self.violations)
        super().__init__(f"{what} failed schema validation: {details}")


class AlgebraValidationError(InputError):
    """The presented algebra is not finite-dimensional."""


class PreconditionError(WorkbenchError):
    """A mathematical precondition of a construction does not hold."""
