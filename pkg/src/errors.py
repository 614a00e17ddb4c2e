"""Exception hierarchy shared by every analysis module and mapped to CLI exit codes."""

from typing import Any


class StructreeError(Exception):
    """Base class. `exit_code` is what the CLI returns when the error escapes."""

    exit_code = 1

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def as_dict(self) -> dict[str, Any]:
        return {"error": type(self).__name__, "message": self.message, **self.details}


class InputError(StructreeError):
    """Unknown vertex, empty or full vertex set, malformed family spec, radius too small."""

    exit_code = 2


class BudgetError(StructreeError):
    """A search or closure ran past its configured budget.

    Args:
        budget: name of the exhausted budget setting.
        limit: its value.
        partial: counts gathered before stopping (lower bounds).
    """

    exit_code = 3

    def __init__(self, message: str, budget: str, limit: int, partial: dict[str, int] | None = None):
        super().__init__(message, budget=budget, limit=limit, partial=partial or {})
        self.budget = budget
        self.limit = limit
        self.partial = partial or {}


class CoverageError(StructreeError):
    """Vertices or end shadows that lie in no cut of the tree set."""

    exit_code = 2

    def __init__(self, message: str, uncovered: list[str]):
        super().__init__(message, uncovered=uncovered)
        self.uncovered = uncovered


class StructureError(StructreeError):
    """A structural axiom failed after construction (coterminality, T1/T2, tree shape)."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message, witness=witness)
        self.witness = witness
