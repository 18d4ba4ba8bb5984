"""Exception hierarchy shared by every layer of the workbench."""

from __future__ import annotations


class GraderingError(Exception):
    """Base class for all workbench errors."""


class SpecError(GraderingError):
    """A ring spec or document is malformed.

    ``path`` names the offending field (for example ``structure_constants[3]``)
    and ``line``/``column`` locate JSON syntax errors when known.
    """

    def __init__(self, message: str, path: str = "", line: int | None = None,
                 column: int | None = None):
        self.path = path
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        elif path:
            where = f" at {path}"
        super().__init__(f"{message}{where}")


class MixedRingError(GraderingError):
    """Operands live in different ambient rings."""


class UnsupportedModulusError(GraderingError):
    """A linear-system operation was requested over a composite modulus."""


class BudgetExceeded(GraderingError):
    """An enumeration would exceed the configured budget."""


class UncertifiedGradingError(GraderingError):
    """A grading was used before ``certify_grading`` accepted it."""


class PreconditionError(GraderingError):
    """Inputs violate the stated hypotheses of a check."""


class IncompatibleModulusError(PreconditionError):
    """A catalog example cannot be realized over the requested modulus."""
