# SPDX-License-Identifier: MIT
# This file is licensed under the terms of the MIT License.  See the LICENSE
# file in the root of this repository for complete details.

from __future__ import annotations

import pytest
import structlog

from qclaw import configure, configure_logging, get_logger
from qclaw.claw import classical_sort_ed
from qclaw.oracle import FunctionInstance, GraphInstance, QueryLedger
from qclaw.processors import add_ledger_totals, add_schedule_constants, bound_run
from qclaw.testing import capture_logs
from qclaw.triangle import classical_triangle


class TestAddLedgerTotals:
    def test_expands(self):
        ledger = QueryLedger()
        ledger.charge(comparisons=3, edge_queries=2)

        assert {
            "event": "e",
            "comparisons": 3,
            "evaluations": 0,
            "edge_queries": 2,
        } == add_ledger_totals(None, "info", {"event": "e", "ledger": ledger})

    def test_leaves_other_values(self):
        event = {"event": "e", "ledger": "main"}

        assert event == add_ledger_totals(None, "info", dict(event))


class TestAddScheduleConstants:
    def test_opt_in(self):
        event = add_schedule_constants(None, "info", {"event": "e", "with_schedule": True})

        assert "8/7" == event["growth_factor"]
        assert "with_schedule" not in event

    def test_follows_configuration(self):
        configure(cutoff_multiplier=7)
        event = add_schedule_constants(None, "info", {"event": "e", "with_schedule": True})

        assert 7 == event["cutoff_multiplier"]

    def test_untouched_without_flag(self):
        assert {"event": "e"} == add_schedule_constants(None, "info", {"event": "e"})

    def test_does_not_override(self):
        event = add_schedule_constants(
            None, "info", {"event": "e", "prng": "mine", "with_schedule": True}
        )

        assert "mine" == event["prng"]


class TestBoundRun:
    def test_binds_and_restores(self):
        with bound_run(algorithm="claw", seed=4):
            assert {"algorithm": "claw", "seed": 4} == structlog.contextvars.get_contextvars()

        assert {} == structlog.contextvars.get_contextvars()

    def test_nested(self):
        with bound_run(algorithm="outer"):
            with bound_run(algorithm="inner"):
                assert "inner" == structlog.contextvars.get_contextvars()["algorithm"]

            assert "outer" == structlog.contextvars.get_contextvars()["algorithm"]


class TestRunLogging:
    def test_runs_log_start_and_finish(self):
        """
        Every run logs its start and its verdict.
        """
        configure_logging(10)
        with capture_logs() as logs:
            classical_sort_ed(FunctionInstance.of([3, 1, 3]))

        events = [e["event"] for e in logs]
        assert "run_started" in events
        assert "run_finished" in events

    @pytest.mark.parametrize(
        "run",
        [
            lambda: classical_sort_ed(FunctionInstance.of([3, 1, 3])),
            lambda: classical_triangle(GraphInstance.of(3, [(1, 2), (2, 3), (1, 3)])),
        ],
    )
    def test_finished_runs_carry_schedule(self, run):
        """
        Finished runs ask for the schedule constants, and the processor chain
        stamps them.
        """
        configure(cutoff_multiplier=5)
        configure_logging(10)
        with capture_logs() as logs:
            run()

        finished = next(e for e in logs if e["event"] == "run_finished")
        assert finished["with_schedule"] is True

        stamped = add_schedule_constants(None, "debug", dict(finished))

        assert 5 == stamped["cutoff_multiplier"]
        assert "8/7" == stamped["growth_factor"]

    def test_logger(self):
        with capture_logs() as logs:
            get_logger().info("hello", ledger=QueryLedger())

        assert ["hello"] == [e["event"] for e in logs]
        assert "info" == logs[0]["log_level"]
