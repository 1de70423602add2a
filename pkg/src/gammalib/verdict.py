"""Check verdicts and the global enumeration budget."""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from typing import Any

from .errors import BudgetError

DEFAULT_MAX_ENUM = 10**6

_max_enum: contextvars.ContextVar[int] = contextvars.ContextVar("max_enum", default=DEFAULT_MAX_ENUM)


def max_enum() -> int:
    return _max_enum.get()


@contextlib.contextmanager
def enumeration_budget(limit: int):
    """Temporarily change the per-check cap on primitive checks."""
    token = _max_enum.set(int(limit))
    try:
        yield
    finally:
        _max_enum.reset(token)


def require_budget(count: int, what: str) -> None:
    limit = _max_enum.get()
    if count > limit:
        raise BudgetError(f"{what}: {count} primitive checks exceed budget {limit}")


@dataclass(frozen=True)
class Verdict:
    """Outcome of an exhaustive check.

    A failing verdict names the violated ``law`` and carries the
    lexicographically first ``witness`` tuple.
    """

    ok: bool
    law: str | None = None
    witness: Any = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls, detail: str = "") -> Verdict:
        return cls(True, detail=detail)

    @classmethod
    def failed(cls, law: str, witness: Any, detail: str = "") -> Verdict:
        return cls(False, law, witness, detail)

    def __str__(self) -> str:
        if self.ok:
            return "pass"
        return f"fail({self.law}, witness={self.witness})"
