# SPDX-License-Identifier: MIT
# This file is licensed under the terms of the MIT License.  See the LICENSE
# file in the root of this repository for complete details.

"""
structlog processors that know about *qclaw*'s domain objects.

They follow the usual processor signature ``(logger, method_name,
event_dict) -> event_dict`` and are installed by
`qclaw.configure_logging`.
"""

from __future__ import annotations

import contextlib

from typing import Any, Generator

import structlog

from structlog.typing import EventDict, WrappedLogger


__all__ = [
    "add_ledger_totals",
    "add_schedule_constants",
    "bound_run",
]


def add_ledger_totals(
    logger: WrappedLogger, method_name: str, event_dict: EventDict
) -> EventDict:
    """
    Replace a ``ledger`` key holding a `qclaw.oracle.QueryLedger` by its three
    counters.

    Anything without the counters is left untouched.
    """
    ledger = event_dict.get("ledger")
    if ledger is None or not hasattr(ledger, "comparisons"):
        return event_dict

    del event_dict["ledger"]
    event_dict["comparisons"] = ledger.comparisons
    event_dict["evaluations"] = ledger.evaluations
    event_dict["edge_queries"] = ledger.edge_queries

    return event_dict


def add_schedule_constants(
    logger: WrappedLogger, method_name: str, event_dict: EventDict
) -> EventDict:
    """
    If the event carries ``with_schedule=True``, stamp the current schedule
    constants onto it.
    """
    if not event_dict.pop("with_schedule", False):
        return event_dict

    # circular imports :(
    from ._config import schedule_constants

    for key, value in schedule_constants().items():
        event_dict.setdefault(key, value)

    return event_dict


@contextlib.contextmanager
def bound_run(**kw: Any) -> Generator[None, None, None]:
    """
    Bind ``algorithm``, ``mode``, ``seed``, ... to the context-local context
    for the duration of one run and restore the previous values afterwards.
    """
    with structlog.contextvars.bound_contextvars(**kw):
        yield
