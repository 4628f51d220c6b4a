# SPDX-License-Identifier: MIT
# This file is licensed under the terms of the MIT License.  See the LICENSE
# file in the root of this repository for complete details.

"""
Outcome and cost records of single algorithm runs.
"""

from __future__ import annotations

import enum
import json

from dataclasses import dataclass, field
from typing import Any

from ._config import schedule_constants


__all__ = ["CSV_COLUMNS", "RunReport", "Verdict"]


CSV_COLUMNS = (
    "algorithm",
    "n",
    "m",
    "mode",
    "trial",
    "seed",
    "comparisons",
    "evaluations",
    "edge_queries",
    "outer_rounds",
    "found",
)


class Verdict(str, enum.Enum):
    CLAW_FOUND = "ClawFound"
    COLLISION_FOUND = "CollisionFound"
    TRIANGLE_FOUND = "TriangleFound"
    DISTINCT = "Distinct"
    NOT_FOUND = "NotFound"

    @property
    def found(self) -> bool:
        return self in (
            Verdict.CLAW_FOUND,
            Verdict.COLLISION_FOUND,
            Verdict.TRIANGLE_FOUND,
        )


@dataclass
class RunReport:
    """
    Outcome and cost breakdown of one algorithm execution.

    In ``sampled`` mode the counters are the run's ledger totals.  In
    ``analytic`` mode they are exact expected values and may be fractional.
    ``witness`` is always verified against the instance before a report is
    built.
    """

    algorithm: str
    mode: str
    verdict: Verdict
    witness: tuple[int, ...] | None = None
    comparisons: float = 0
    evaluations: float = 0
    edge_queries: float = 0
    outer_rounds: float = 0
    n: int = 0
    m: int = 0
    seed: int | None = None
    trial: int = 0
    success_probability: float | None = None
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.verdict.found

    @property
    def cost(self) -> float:
        """
        All metered accesses, whatever their kind.
        """
        return self.comparisons + self.evaluations + self.edge_queries

    def to_dict(self) -> dict[str, Any]:
        return {
            "algorithm": self.algorithm,
            "mode": self.mode,
            "verdict": self.verdict.value,
            "witness": list(self.witness) if self.witness is not None else None,
            "comparisons": self.comparisons,
            "evaluations": self.evaluations,
            "edge_queries": self.edge_queries,
            "outer_rounds": self.outer_rounds,
            "n": self.n,
            "m": self.m,
            "seed": self.seed,
            "trial": self.trial,
            "success_probability": self.success_probability,
            "params": dict(self.params),
            "schedule": schedule_constants(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def csv_row(self) -> dict[str, Any]:
        return {
            "algorithm": self.algorithm,
            "n": self.n,
            "m": self.m,
            "mode": self.mode,
            "trial": self.trial,
            "seed": self.seed,
            "comparisons": self.comparisons,
            "evaluations": self.evaluations,
            "edge_queries": self.edge_queries,
            "outer_rounds": self.outer_rounds,
            "found": int(self.found),
        }
