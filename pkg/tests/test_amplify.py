# SPDX-License-Identifier: MIT
# This file is licensed under the terms of the MIT License.  See the LICENSE
# file in the root of this repository for complete details.

from __future__ import annotations

import math
import statistics

import pytest

from hypothesis import given
from hypothesis import strategies as st

from qclaw import configure, make_rng
from qclaw.amplify import (
    RotationSearch,
    amplify_known,
    conditioned,
    expected_applications,
    grover_success_prob,
    inner_success,
    known_iterations,
    known_success,
    qsearch,
    run_schedule,
    sample_grover,
    schedule_stats,
    statevector_grover,
)
from qclaw.exceptions import ContractError, DomainError, QClawError, ResourceError
from qclaw.oracle import QueryLedger


class TestGroverSuccessProb:
    @pytest.mark.parametrize(
        ("k", "t", "j", "expected"),
        [(2, 1, 0, 0.5), (4, 1, 1, 1.0), (16, 4, 1, 1.0), (8, 0, 3, 0.0), (5, 5, 0, 1.0)],
    )
    def test_examples(self, k, t, j, expected):
        assert expected == pytest.approx(grover_success_prob(k, t, j), abs=1e-12)

    @pytest.mark.parametrize(("k", "t", "j"), [(0, 0, 0), (4, 5, 0), (4, 1, -1)])
    def test_invalid(self, k, t, j):
        with pytest.raises(DomainError):
            grover_success_prob(k, t, j)

    @given(st.integers(2, 256).flatmap(
        lambda k: st.tuples(st.just(k), st.integers(0, k), st.integers(0, 16))
    ))
    def test_matches_statevector(self, case):
        """
        The closed form and the explicit amplitude vector agree.
        """
        k, t, j = case

        assert statevector_grover(k, t, j) == pytest.approx(
            grover_success_prob(k, t, j), abs=1e-10
        )

    @pytest.mark.slow
    def test_matches_statevector_exhaustively(self):
        for k in range(2, 257):
            for t in range(k + 1):
                for j in range(17):
                    assert abs(
                        statevector_grover(k, t, j) - grover_success_prob(k, t, j)
                    ) < 1e-10


class TestStatevector:
    def test_examples(self):
        assert 1.0 == pytest.approx(statevector_grover(4, 1, 1), abs=1e-10)
        assert math.sin(5 * math.asin(math.sqrt(1 / 8))) ** 2 == pytest.approx(
            statevector_grover(8, 1, 2), abs=1e-12
        )
        assert 1.0 == pytest.approx(statevector_grover(7, 7, 0))

    def test_limit(self):
        """
        Spaces beyond the configured limit are refused.
        """
        configure(statevector_limit=16)

        with pytest.raises(ResourceError):
            statevector_grover(17, 1, 1)


class TestSampleGrover:
    def test_certain(self, rng):
        for _ in range(50):
            outcome = sample_grover(4, 1, 1, rng)

            assert 0 == outcome.found
            assert 2 == outcome.oracle_applications

    def test_nothing_marked(self, rng):
        assert sample_grover(16, 0, 3, rng).found is None

    def test_frequency(self, rng):
        """
        K=2, t=1, j=0 succeeds half of the time, within 3 binomial σ.
        """
        trials = 10_000
        hits = sum(sample_grover(2, 1, 0, rng).found is not None for _ in range(trials))

        assert abs(hits / trials - 0.5) <= 3 * math.sqrt(0.25 / trials)


class TestRotationSearch:
    def test_theta(self):
        assert math.pi / 6 == pytest.approx(RotationSearch(4, 1).theta)
        assert 0.0 == RotationSearch(4, 0).success_after(3)


class TestQSearch:
    def test_single_marked(self, rng):
        """
        K=4, t=1: mean applications over 1000 runs stay at most 6.
        """
        apps = []
        for _ in range(1000):
            outcome = qsearch(4, lambda i: i == 2, rng)

            assert 2 == outcome.found
            apps.append(outcome.oracle_applications)

        assert statistics.fmean(apps) <= 6

    def test_everything_marked(self, rng):
        outcome = qsearch(4, lambda i: True, rng)

        assert outcome.found is not None
        assert outcome.oracle_applications <= 2

    def test_cutoff(self, rng):
        """
        Nothing marked with a cutoff: NotFound after exactly the cutoff.
        """
        outcome = qsearch(8, lambda i: False, rng, 50)

        assert outcome.found is None
        assert 50 == outcome.oracle_applications

    def test_no_cutoff_refused(self, rng):
        with pytest.raises(ContractError):
            qsearch(8, lambda i: False, rng)

    def test_verify_gates_witnesses(self, rng):
        """
        A marked item failing verification is never returned.
        """
        outcome = qsearch(8, lambda i: i == 3, rng, 40, verify=lambda i: False)

        assert outcome.found is None

    def test_charges_iterations(self, rng):
        charged = []
        outcome = qsearch(64, lambda i: i == 7, rng, charge=charged.append)

        assert outcome.iterations_used == sum(charged)

    @pytest.mark.slow
    @pytest.mark.parametrize(("k", "t"), [(16, 1), (64, 1), (256, 1), (256, 16)])
    def test_expected_applications(self, k, t):
        rng = make_rng(99, k, t)
        apps = [
            qsearch(k, lambda i: i < t, rng).oracle_applications
            for _ in range(10_000)
        ]

        assert statistics.fmean(apps) <= 9 * math.sqrt(k / t)


class TestScheduleStats:
    def test_certain(self):
        """
        a = 1: the first measurement succeeds after zero iterations.
        """
        st_ = schedule_stats(1.0)

        assert 1.0 == pytest.approx(st_.success)
        assert 0.0 == pytest.approx(st_.iterations)
        assert 1.0 == pytest.approx(st_.measurements)
        assert expected_applications(1.0) <= 2

    def test_cutoff_only_counts_applications(self):
        st_ = schedule_stats(0.0, cutoff=50)

        assert 0.0 == st_.success
        assert 50 == pytest.approx(st_.applications)

    def test_zero_without_cutoff(self):
        with pytest.raises(ContractError):
            schedule_stats(0.0)

    def test_sqrt_scaling(self):
        """
        a = 1/64 needs a small constant times √64 applications.
        """
        assert 8 <= expected_applications(1 / 64, cap=8) <= 72

    def test_matches_sampling(self):
        """
        The exact expectation agrees with the sampled schedule.
        """
        a = 1 / 64
        rng = make_rng(5)
        trials = 20_000
        apps = [
            run_schedule(a, rng, lambda ok, _j: ok or None, cap=8).applications
            for _ in range(trials)
        ]
        mean = statistics.fmean(apps)
        sigma = statistics.pstdev(apps) / math.sqrt(trials)

        assert expected_applications(a, cap=8) == pytest.approx(mean, abs=4 * sigma)

    def test_cutoff_success_matches_sampling(self):
        a = 1 / 32
        rng = make_rng(6)
        trials = 20_000
        hits = sum(
            run_schedule(a, rng, lambda ok, _j: ok or None, cutoff=20).witness
            is not None
            for _ in range(trials)
        )
        p = schedule_stats(a, cutoff=20).success

        assert p == pytest.approx(hits / trials, abs=4 * math.sqrt(p * (1 - p) / trials))

    def test_growth_factor_matters(self):
        """
        The configured λ is what the schedule uses.
        """
        before = expected_applications(1 / 256)
        configure(growth_factor=1.3)

        assert before != expected_applications(1 / 256)


class TestKnownAmplification:
    @pytest.mark.parametrize(("a", "j"), [(1.0, 0), (0.25, 1), (0.01, 8)])
    def test_iterations(self, a, j):
        assert j == known_iterations(a)

    def test_success(self):
        assert 1.0 == pytest.approx(known_success(0.25))
        assert known_success(0.01) == pytest.approx(grover_success_prob(100, 1, 8))
        assert known_success(0.01) >= 0.98

    def test_invalid(self, rng):
        with pytest.raises(DomainError):
            amplify_known(0.0, 1, rng)

    def test_cost(self, rng):
        """
        Cost is applications times the per-application cost.
        """
        outcome = amplify_known(0.25, lambda: 7.0, rng)

        assert 0 == outcome.found
        assert 2 == outcome.oracle_applications
        assert 14.0 == outcome.cost


class TestInnerSuccess:
    def test_window_mean(self):
        """
        The closed form equals the average of the rotation over the window.
        """
        for t, k, width in [(1, 16, 4), (3, 64, 7), (5, 25, 5)]:
            mean = statistics.fmean(
                grover_success_prob(k, t, j) for j in range(width)
            )

            assert mean == pytest.approx(inner_success(t, k, width), abs=1e-12)

    def test_nothing_marked(self):
        assert 0.0 == inner_success(0, 16, 4)


class TestConditioned:
    def test_charges_accepted_run_only(self, rng):
        """
        Rejected draws leave no trace on the run's ledger.
        """
        ledger = QueryLedger()
        draws = iter([None, None, "w"])

        def draw(scratch):
            scratch.charge(comparisons=5)
            return next(draws)

        assert "w" == conditioned(draw, True, ledger)
        assert 5 == ledger.comparisons

    def test_impossible(self, monkeypatch):
        monkeypatch.setattr("qclaw.amplify._MAX_REDRAWS", 10)

        with pytest.raises(QClawError):
            conditioned(lambda scratch: None, True, QueryLedger())
