# SPDX-License-Identifier: MIT
# This file is licensed under the terms of the MIT License.  See the LICENSE
# file in the root of this repository for complete details.

"""
Helpers to test code built on *qclaw*.

`count_accesses` tallies oracle calls independently of any
`qclaw.oracle.QueryLedger`, so ledger bookkeeping can be checked against
what really happened.  `capture_logs` is structlog's.

Attention: neither is thread-safe!
"""

from __future__ import annotations

import sys

from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any, Generator

from structlog.testing import capture_logs

from . import oracle


__all__ = ["AccessTally", "capture_logs", "count_accesses"]

# Modules that import the metered free functions by name.
_PATCHED_MODULES = ("qclaw.oracle", "qclaw.triangle", "qclaw.adversary")


@dataclass
class AccessTally:
    """
    Calls observed while `count_accesses` was active.
    """

    comparisons: int = 0
    evaluations: int = 0
    edge_queries: int = 0

    @property
    def total(self) -> int:
        return self.comparisons + self.evaluations + self.edge_queries


@contextmanager
def count_accesses() -> Generator[AccessTally, None, None]:
    """
    Context manager that counts every metered comparison, evaluation and
    edge query made while it is active.

    Bulk charges for superposed applications are not calls and therefore
    not counted.
    """
    tally = AccessTally()
    original_compare = oracle.ComparisonOracle.compare
    original_evaluate = oracle.evaluate
    original_edge_query = oracle.edge_query

    def compare(self: oracle.ComparisonOracle, *args: Any) -> bool:
        tally.comparisons += 1
        return original_compare(self, *args)

    def evaluate(*args: Any) -> int:
        tally.evaluations += 1
        return original_evaluate(*args)

    def edge_query(*args: Any) -> bool:
        tally.edge_queries += 1
        return original_edge_query(*args)

    modules = [sys.modules[name] for name in _PATCHED_MODULES if name in sys.modules]
    saved = [(m, m.__dict__.get("evaluate"), m.__dict__.get("edge_query")) for m in modules]

    oracle.ComparisonOracle.compare = compare  # type: ignore[method-assign]
    for m, ev, eq in saved:
        if ev is not None:
            m.evaluate = evaluate  # type: ignore[attr-defined]
        if eq is not None:
            m.edge_query = edge_query  # type: ignore[attr-defined]
    try:
        yield tally
    finally:
        oracle.ComparisonOracle.compare = original_compare  # type: ignore[method-assign]
        for m, ev, eq in saved:
            if ev is not None:
                m.evaluate = ev  # type: ignore[attr-defined]
            if eq is not None:
                m.edge_query = eq  # type: ignore[attr-defined]
