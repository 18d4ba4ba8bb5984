from __future__ import annotations

import os

DEFAULT_BUDGET = 10**6
BUDGET_ENV = "GRADERING_BUDGET"


def default_budget() -> int:
    """Enumeration budget, overridable through ``GRADERING_BUDGET``."""
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET
    value = int(raw)
    if value < 1:
        raise ValueError(f"{BUDGET_ENV} must be positive, got {raw!r}")
    return value


def resolve_budget(budget: int | None) -> int:
    return default_budget() if budget is None else budget
