"""Three-valued search results and search budgets.

Every bounded search in this package answers with a Verdict: Yes with a
re-checkable witness, No with a re-checkable certificate, or Unknown with a
report of the budget that ran out.  Generic searches never answer No on an
infinite category unless a backend supplied a certificate that is sound at
any size.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class SearchBudget:
    """Caps for the bounded searches.

    max_size: largest object size grade enumerated (objects, pair codomains,
        cocone candidates alike).
    max_candidates: cap on the number of candidate objects examined per
        single existential search.
    max_nodes: cap on assignment nodes explored by a coloring backtracker.
    max_colors: largest color count swept by the generic Ramsey-arrow check
        (the (wR) quantifier over k is unbounded; this bounds the sweep).
    wall_ms: optional coarse wall-clock cap in milliseconds.
    """

    max_size: int = 6
    max_candidates: int = 4000
    max_nodes: int = 200_000
    max_colors: int = 3
    wall_ms: int | None = None

    def __post_init__(self) -> None:
        for name in ("max_size", "max_candidates", "max_nodes", "max_colors"):
            if getattr(self, name) <= 0:
                raise ValueError(f"budget field {name} must be positive")
        if self.wall_ms is not None and self.wall_ms <= 0:
            raise ValueError("wall_ms must be positive when given")


@dataclass(frozen=True)
class Verdict:
    """Yes(witness) / No(certificate) / Unknown(budget report)."""

    status: str
    payload: dict = field(default_factory=dict)

    @staticmethod
    def yes(**payload: Any) -> "Verdict":
        return Verdict(YES, payload)

    @staticmethod
    def no(**payload: Any) -> "Verdict":
        return Verdict(NO, payload)

    @staticmethod
    def unknown(**payload: Any) -> "Verdict":
        return Verdict(UNKNOWN, payload)

    @property
    def is_yes(self) -> bool:
        return self.status == YES

    @property
    def is_no(self) -> bool:
        return self.status == NO

    @property
    def is_unknown(self) -> bool:
        return self.status == UNKNOWN

    @property
    def exhaustive(self) -> bool:
        """Whether the verdict closed its quantifiers (not just in-budget)."""
        return bool(self.payload.get("exhaustive", False))

    def exit_code(self) -> int:
        return {YES: 0, NO: 1, UNKNOWN: 2}[self.status]


class InputError(ValueError):
    """Malformed or out-of-contract input (CLI exit code 3)."""
