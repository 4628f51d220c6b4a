# SPDX-License-Identifier: MIT
# This file is licensed under the terms of the MIT License.  See the LICENSE
# file in the root of this repository for complete details.

"""
Grover search and amplitude amplification, simulated on the two-dimensional
marked/unmarked subspace.

From a uniform start over ``K`` items of which ``t`` are marked, ``j``
iterations leave the marked mass at ``sin²((2j + 1)θ)`` with
``θ = arcsin(√(t/K))``.  The same formula governs amplification of any
procedure with success probability ``a = sin²θ``.

Accounting: one iteration is one application of the checked procedure, the
diffusion step is free, and every measurement is followed by one
verification application.

The unknown-``t`` schedule (``QSearch``)::

    m ← 1
    repeat:
        draw j uniformly from [0, ⌈m⌉)
        run j iterations, measure, verify
        m ← min(λm, cap)

with ``λ = 8/7`` by default (see `qclaw.configure`).
"""

from __future__ import annotations

import math

from dataclasses import dataclass
from typing import Any, Callable, NamedTuple, TypeVar

import numpy as np

from ._config import _CONFIG, get_logger
from .exceptions import ContractError, DomainError, QClawError, ResourceError
from .oracle import QueryLedger
from .typing import Charge, CostFunction, Measure, Rng


__all__ = [
    "Amplified",
    "RotationSearch",
    "ScheduleStats",
    "SearchOutcome",
    "amplify_known",
    "conditioned",
    "expected_applications",
    "grover_success_prob",
    "inner_success",
    "known_iterations",
    "known_success",
    "qsearch",
    "run_schedule",
    "sample_grover",
    "schedule_stats",
    "statevector_grover",
]

log = get_logger(__name__)

# Below this, sin(2θ) is treated as zero in the closed-form window sums.
_EPS = 1e-12
_MAX_ROUNDS = 100_000
# Redraws allowed when conditioning a measured round on its outcome.
_MAX_REDRAWS = 1_000_000

W = TypeVar("W")


def _check_space(k: int, t: int) -> None:
    if k < 1:
        msg = f"search space must be non-empty, got K={k}"
        raise DomainError(msg)
    if not 0 <= t <= k:
        msg = f"marked count {t} outside [0, {k}]"
        raise DomainError(msg)


def _check_probability(a: float) -> None:
    if not 0 < a <= 1:
        msg = f"success probability must lie in (0, 1], got {a}"
        raise DomainError(msg)


def _theta(a: float) -> float:
    return math.asin(math.sqrt(min(1.0, max(0.0, a))))


@dataclass(frozen=True)
class RotationSearch:
    """
    A Grover search over ``space_size`` items with ``marked_count`` marked.
    """

    space_size: int
    marked_count: int

    def __post_init__(self) -> None:
        _check_space(self.space_size, self.marked_count)

    @property
    def theta(self) -> float:
        return _theta(self.marked_count / self.space_size)

    def success_after(self, j: int) -> float:
        if self.marked_count == 0:
            return 0.0
        return math.sin((2 * j + 1) * self.theta) ** 2


class SearchOutcome(NamedTuple):
    """
    Result of a measured search.

    ``oracle_applications`` counts iterations plus one verification per
    measurement.  ``cost`` is filled in when a per-application cost is known.
    """

    found: int | None
    iterations_used: int
    oracle_applications: int
    rounds: int = 1
    cost: float = 0.0


class Amplified(NamedTuple):
    """
    Result of `run_schedule`: the witness returned by the measure callback.
    """

    witness: Any
    iterations: int
    measurements: int

    @property
    def applications(self) -> int:
        return self.iterations + self.measurements


def grover_success_prob(k: int, t: int, j: int) -> float:
    """
    Marked mass after *j* Grover iterations on ``K`` items with ``t`` marked.
    """
    _check_space(k, t)
    if j < 0:
        msg = f"iteration count must be non-negative, got {j}"
        raise DomainError(msg)

    return RotationSearch(k, t).success_after(j)


def statevector_grover(k: int, t: int, j: int) -> float:
    """
    The same quantity, from an explicit ``K``-entry amplitude vector.

    Marked items are the first ``t`` entries; each iteration flips their sign
    and then inverts every amplitude about the mean.

    Raises:
        ResourceError: if ``K`` exceeds the configured state-vector limit.
    """
    _check_space(k, t)
    if k > _CONFIG.statevector_limit:
        msg = f"K={k} exceeds the state-vector limit {_CONFIG.statevector_limit}"
        raise ResourceError(msg)

    amplitudes = np.full(k, 1.0 / math.sqrt(k))
    for _ in range(j):
        amplitudes[:t] *= -1.0
        amplitudes = 2.0 * amplitudes.mean() - amplitudes

    return float(np.sum(amplitudes[:t] ** 2))


def sample_grover(k: int, t: int, j: int, rng: Rng) -> SearchOutcome:
    """
    Run *j* iterations, measure, and verify.

    Marked items are ``0, ..., t - 1``.  An unmarked measurement fails
    verification and is reported as ``found=None``.
    """
    p = grover_success_prob(k, t, j)
    found: int | None = None
    if rng.random() < p:
        found = int(rng.integers(0, t))

    return SearchOutcome(found, j, j + 1)


def _window_success(theta: float, width: int) -> float:
    """
    Mean of ``sin²((2j + 1)θ)`` over ``j ∈ [0, width)``.
    """
    s2 = math.sin(2 * theta)
    if abs(s2) < _EPS:
        return math.sin(theta) ** 2
    total = width / 2 - math.sin(4 * width * theta) / (4 * s2)

    return min(1.0, max(0.0, total / width))


def _growth() -> float:
    return float(_CONFIG.growth_factor)


class ScheduleStats(NamedTuple):
    """
    Exact statistics of one QSearch schedule run.

    ``success`` is the probability of ending with a witness; the other two
    are expected counts.
    """

    success: float
    iterations: float
    measurements: float

    @property
    def applications(self) -> float:
        return self.iterations + self.measurements


def _uncapped_stats(theta: float, cap: float | None) -> ScheduleStats:
    alive = 1.0
    iterations = measurements = 0.0
    m = 1.0
    lam = _growth()
    for _ in range(_MAX_ROUNDS):
        width = math.ceil(m)
        p = _window_success(theta, width)
        mean_j = (width - 1) / 2
        settled = cap is not None and m >= cap
        if settled:
            # Stationary from here on: the remaining rounds are geometric.
            iterations += alive * mean_j / p
            measurements += alive / p
            return ScheduleStats(1.0, iterations, measurements)
        iterations += alive * mean_j
        measurements += alive
        alive *= 1.0 - p
        if alive < 1e-16:
            break
        m = lam * m if cap is None else min(lam * m, cap)

    return ScheduleStats(1.0 - alive, iterations, measurements)


def _cutoff_stats(theta: float, cap: float | None, cutoff: int) -> ScheduleStats:
    # Distribution over applications used so far, for runs still alive.
    alive: dict[int, float] = {0: 1.0}
    success = iterations = measurements = 0.0
    m = 1.0
    lam = _growth()
    while alive:
        width = math.ceil(m)
        nxt: dict[int, float] = {}
        for used, weight in alive.items():
            w = weight / width
            for j in range(width):
                jj = min(j, cutoff - used)
                iterations += w * jj
                at = used + jj
                if at >= cutoff:
                    continue
                measurements += w
                p = math.sin((2 * jj + 1) * theta) ** 2
                success += w * p
                if at + 1 < cutoff and p < 1.0:
                    nxt[at + 1] = nxt.get(at + 1, 0.0) + w * (1.0 - p)
        alive = {k: v for k, v in nxt.items() if v > 1e-18}
        m = lam * m if cap is None else min(lam * m, cap)

    return ScheduleStats(success, iterations, measurements)


def schedule_stats(
    a: float, *, cap: float | None = None, cutoff: int | None = None
) -> ScheduleStats:
    """
    Exact expected behaviour of `run_schedule` for true success probability
    *a*.

    Args:
        a: Success probability of one measurement of the amplified procedure.

        cap: Ceiling on the schedule's ``m``; `None` lets it grow.

        cutoff: Stop after this many applications (iterations plus
            verifications).

    Raises:
        ContractError: if ``a = 0`` and no cutoff bounds the run.
    """
    if a < 0 or a > 1:
        msg = f"success probability must lie in [0, 1], got {a}"
        raise DomainError(msg)
    theta = _theta(a)
    if cutoff is not None:
        return _cutoff_stats(theta, cap, cutoff)
    if a == 0:
        msg = "a search without witnesses and without cutoff never terminates"
        raise ContractError(msg)

    return _uncapped_stats(theta, cap)


def expected_applications(a: float, cap: float | None = None) -> float:
    """
    Expected oracle applications of the QSearch schedule when each
    measurement succeeds with probability *a* before amplification.
    """
    _check_probability(a)

    return schedule_stats(a, cap=cap).applications


def run_schedule(
    a: float,
    rng: Rng,
    measure: Measure,
    *,
    cap: float | None = None,
    cutoff: int | None = None,
    charge: Charge | None = None,
) -> Amplified:
    """
    Run the QSearch schedule on a procedure with true success probability *a*.

    *a* is white-box knowledge: it only decides the flag handed to *measure*,
    which must turn the flag into a verified witness (or `None`).  The search
    ends on the first witness or once *cutoff* applications are spent.

    Raises:
        ContractError: if ``a = 0`` and no cutoff bounds the run.
    """
    if a <= 0 and cutoff is None:
        msg = "a search without witnesses and without cutoff never terminates"
        raise ContractError(msg)

    theta = _theta(a)
    lam = _growth()
    m = 1.0
    iterations = measurements = 0
    while cutoff is None or iterations + measurements < cutoff:
        j = int(rng.integers(0, math.ceil(m)))
        if cutoff is not None:
            j = min(j, cutoff - iterations - measurements)
        if charge is not None and j:
            charge(j)
        iterations += j
        if cutoff is not None and iterations + measurements >= cutoff:
            break

        success = bool(rng.random() < math.sin((2 * j + 1) * theta) ** 2)
        measurements += 1
        witness = measure(success, j)
        if witness is not None:
            return Amplified(witness, iterations, measurements)
        m = lam * m if cap is None else min(lam * m, cap)

    return Amplified(None, iterations, measurements)


def qsearch(
    k: int,
    marked_predicate: Callable[[int], bool],
    rng: Rng,
    cutoff_applications: int | None = None,
    *,
    verify: Callable[[int], bool] | None = None,
    charge: Charge | None = None,
) -> SearchOutcome:
    """
    Search items ``0, ..., K - 1`` for one satisfying *marked_predicate*.

    The predicate is scanned white-box to set up the rotation; every
    measured item is then checked by *verify* (default: the predicate), so an
    unmarked item is never returned.

    Without a cutoff the contract on an empty marked set is non-termination,
    which is refused with `ContractError`.  An exhausted cutoff yields
    ``found=None``.
    """
    if k < 1:
        msg = f"search space must be non-empty, got K={k}"
        raise DomainError(msg)
    marked = [i for i in range(k) if marked_predicate(i)]
    unmarked_count = k - len(marked)
    check = verify if verify is not None else marked_predicate
    marked_set = set(marked)

    def pick_unmarked() -> int:
        while True:
            i = int(rng.integers(0, k))
            if i not in marked_set:
                return i

    def measure(success: bool, j: int) -> int | None:
        if success:
            item = marked[int(rng.integers(0, len(marked)))]
        elif unmarked_count:
            item = pick_unmarked()
        else:
            item = marked[int(rng.integers(0, len(marked)))]
        return item if check(item) else None

    result = run_schedule(
        len(marked) / k,
        rng,
        measure,
        cap=math.sqrt(k),
        cutoff=cutoff_applications,
        charge=charge,
    )
    log.debug(
        "qsearch_finished",
        space_size=k,
        marked=len(marked),
        found=result.witness,
        applications=result.applications,
    )

    return SearchOutcome(
        result.witness,
        result.iterations,
        result.applications,
        result.measurements,
    )


def known_iterations(a: float) -> int:
    """
    Iterations used when *a* is known: ``⌈π/(4θ) - 1/2⌉``, ``θ = arcsin √a``.
    """
    _check_probability(a)
    x = math.pi / (4 * _theta(a)) - 0.5

    return max(0, math.ceil(round(x, 9)))


def amplify_known(
    a: float, round_cost: CostFunction | float, rng: Rng
) -> SearchOutcome:
    """
    Amplify a procedure with known success probability *a* in a fixed number
    of iterations, measure once and verify.

    ``found`` is ``0`` on success and `None` otherwise; ``cost`` is the
    applications times *round_cost*.
    """
    j = known_iterations(a)
    p = math.sin((2 * j + 1) * _theta(a)) ** 2
    per = round_cost() if callable(round_cost) else float(round_cost)
    found = 0 if rng.random() < p else None

    return SearchOutcome(found, j, j + 1, 1, (j + 1) * per)


def known_success(a: float) -> float:
    """
    Success probability of `amplify_known` for *a*.
    """
    j = known_iterations(a)
    return math.sin((2 * j + 1) * _theta(a)) ** 2


def inner_success(t: int, k: int, width: int) -> float:
    """
    Success of a single-shot search with ``j`` uniform in ``[0, width)``.
    """
    if t == 0:
        return 0.0
    return _window_success(_theta(t / k), width)


def conditioned(
    draw: Callable[[QueryLedger], W | None], want: bool, ledger: QueryLedger
) -> W | None:
    """
    Redraw a measured classical procedure on scratch ledgers until its
    outcome agrees with *want*, then charge the accepted run to *ledger*.

    This is how a measurement of an amplified procedure is simulated: the
    flag comes from the rotation, the witness from a real run.
    """
    for _ in range(_MAX_REDRAWS):
        scratch = QueryLedger()
        witness = draw(scratch)
        if (witness is not None) == want:
            ledger.merge(scratch)
            return witness

    msg = f"no run with outcome found={want} in {_MAX_REDRAWS} draws"
    raise QClawError(msg)
