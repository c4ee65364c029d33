"""Result record shared by both inference algorithms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .topology import JoiningConfig


@dataclass(frozen=True)
class InferenceResult:
    """Inferred joining edges plus the query budget spent to get them.

    ``queries_used`` counts logical quartet queries (cache replays and
    majority sub-probes excluded); the oracle's stats carry probe counts.
    """

    joins: JoiningConfig
    queries_used: int
    trace: Any

    def matches(self, config: JoiningConfig) -> bool:
        return self.joins == config
