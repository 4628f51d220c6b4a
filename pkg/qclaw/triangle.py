# SPDX-License-Identifier: MIT
# This file is licensed under the terms of the MIT License.  See the LICENSE
# file in the root of this repository for complete details.

"""
Triangle finding with edge-slot queries.

A round of `find_triangle` first searches the ``C(n, 2)`` slots for an edge
``(a, b)`` (one query per application), then searches ``[n]`` for a node
``c`` closing a triangle (two queries per application: ``(a, c)`` and
``(b, c)``).  Rounds are amplified; a round succeeds with probability
proportional to the share of edges lying on a triangle.
"""

from __future__ import annotations

import itertools
import math

from dataclasses import dataclass

from ._config import _CONFIG, get_logger, make_rng
from .amplify import (
    conditioned,
    grover_success_prob,
    inner_success,
    known_iterations,
    known_success,
    qsearch,
    run_schedule,
    schedule_stats,
)
from .exceptions import DomainError
from .oracle import (
    GraphInstance,
    QueryLedger,
    count_triangles,
    edge_query,
    find_triangles,
    slot_pairs,
)
from .processors import bound_run
from .reports import RunReport, Verdict
from .typing import MODES, Mode, Rng


__all__ = [
    "TrianglePlan",
    "TriangleResult",
    "classical_triangle",
    "count_triangles",
    "find_triangle",
    "gen_planted_triangle",
    "grover_all_triples",
    "round_success",
    "stage_one_success",
    "triangle_bound",
]

log = get_logger(__name__)

Triple = tuple[int, int, int]


@dataclass
class TriangleResult(RunReport):
    """
    A `qclaw.reports.RunReport` with the per-stage split of edge queries.

    ``stage_breakdown`` is ``(edge-search queries, node-search queries,
    outer rounds)``.
    """

    stage_breakdown: tuple[float, float, float] = (0.0, 0.0, 0.0)

    @property
    def nodes(self) -> Triple | None:
        return self.witness  # type: ignore[return-value]

    def to_dict(self) -> dict[str, object]:
        d = super().to_dict()
        d["stage_breakdown"] = list(self.stage_breakdown)
        return d


def triangle_bound(n: int, m: int) -> float:
    """
    ``n + √(nm)``.
    """
    return n + math.sqrt(n * m)


def _check(g: GraphInstance, mode: str) -> None:
    if mode not in MODES:
        msg = f"mode must be one of {MODES}, got {mode!r}"
        raise DomainError(msg)
    if g.n < 3:
        msg = f"triangle finding needs n >= 3, got {g.n}"
        raise DomainError(msg)


def _ensure_rng(rng: Rng | None) -> Rng:
    return rng if rng is not None else make_rng(0)


def _triangle(a: int, b: int, c: int) -> Triple:
    return tuple(sorted((a, b, c)))  # type: ignore[return-value]


def _finish(result: TriangleResult) -> TriangleResult:
    log.debug(
        "run_finished",
        with_schedule=True,
        verdict=result.verdict.value,
        witness=result.witness,
        edge_queries=result.edge_queries,
        stage_breakdown=result.stage_breakdown,
    )
    return result


def _common_neighbours(g: GraphInstance, a: int, b: int) -> list[int]:
    return sorted(g.neighbours(a) & g.neighbours(b))


@dataclass(frozen=True)
class TrianglePlan:
    """
    Iteration counts and worst-case query cost of one round on *g*.
    """

    n: int
    m: int

    @property
    def slots(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def edge_share(self) -> float:
        return self.m / self.slots

    @property
    def edge_iterations(self) -> int:
        return known_iterations(self.edge_share)

    @property
    def edge_success(self) -> float:
        return known_success(self.edge_share)

    @property
    def node_width(self) -> int:
        return math.ceil(math.pi / 4 * math.sqrt(self.n))

    @property
    def edge_stage_cost(self) -> int:
        return self.edge_iterations + 1

    @property
    def node_stage_cost(self) -> int:
        return 2 * self.node_width

    @property
    def cost(self) -> int:
        return self.edge_stage_cost + self.node_stage_cost

    @property
    def cap(self) -> float:
        return math.sqrt(self.m)

    @property
    def decision_cutoff(self) -> int:
        return _CONFIG.cutoff_multiplier * math.ceil(math.sqrt(self.m))


def stage_one_success(g: GraphInstance) -> float:
    """
    Share of edges that lie on at least one triangle: the chance that the
    edge found in a round can be completed.
    """
    if g.m == 0:
        return 0.0
    supporting = sum(1 for a, b in g.edges if _common_neighbours(g, a, b))
    return supporting / g.m


def round_success(g: GraphInstance) -> float:
    """
    Exact probability that one round returns a verified triangle.
    """
    if g.m == 0:
        return 0.0
    plan = TrianglePlan(g.n, g.m)
    completion = sum(
        inner_success(len(_common_neighbours(g, a, b)), g.n, plan.node_width)
        for a, b in g.edges
    )
    return plan.edge_success * completion / g.m


def _pick_non_edge(g: GraphInstance, rng: Rng) -> tuple[int, int]:
    while True:
        u, v = sorted((rng.choice(g.n, 2, replace=False) + 1).tolist())
        if not g.has_edge(u, v):
            return u, v


def _sampled_round(
    g: GraphInstance,
    plan: TrianglePlan,
    ledger: QueryLedger,
    rng: Rng,
    stages: list[float],
) -> Triple | None:
    j1 = plan.edge_iterations
    ledger.charge(edge_queries=j1)
    stages[0] += j1
    if plan.m == plan.slots or rng.random() < plan.edge_success:
        edges = sorted(g.edges)
        a, b = edges[int(rng.integers(0, len(edges)))]
    else:
        a, b = _pick_non_edge(g, rng)
    stages[0] += 1
    if not edge_query(g, a, b, ledger):
        return None

    closing = _common_neighbours(g, a, b)
    j2 = int(rng.integers(0, plan.node_width))
    ledger.charge(edge_queries=2 * j2)
    stages[1] += 2 * j2
    if rng.random() < grover_success_prob(g.n, len(closing), j2):
        c = closing[int(rng.integers(0, len(closing)))]
    else:
        closing_set = set(closing)
        others = [c for c in range(1, g.n + 1) if c not in closing_set]
        c = others[int(rng.integers(0, len(others)))]
    if c in (a, b):
        return None

    stages[1] += 1
    if not edge_query(g, a, c, ledger):
        return None
    stages[1] += 1
    if not edge_query(g, b, c, ledger):
        return None

    return _triangle(a, b, c)


def find_triangle(
    g: GraphInstance,
    mode: Mode = "sampled",
    rng: Rng | None = None,
    cutoff: int | None = None,
) -> TriangleResult:
    """
    Find a triangle in ``O(n + √(nm))`` edge queries.

    *cutoff* counts round applications; it defaults to
    ``cutoff_multiplier · ⌈√m⌉``, after which the answer is ``NotFound``.
    """
    _check(g, mode)
    base = {"algorithm": "find_triangle", "mode": mode, "n": g.n, "m": g.m}
    with bound_run(algorithm="find_triangle", mode=mode):
        log.debug("run_started", n=g.n, m=g.m)
        if g.m == 0:
            return _finish(TriangleResult(verdict=Verdict.NOT_FOUND, **base))

        plan = TrianglePlan(g.n, g.m)
        cutoff = cutoff if cutoff is not None else plan.decision_cutoff
        a = round_success(g)
        params = {
            "a": a,
            "round_cost": plan.cost,
            "edge_iterations": plan.edge_iterations,
            "node_width": plan.node_width,
            "stage_one_success": stage_one_success(g),
            "cutoff": cutoff,
        }

        if mode == "analytic":
            st = schedule_stats(a, cap=plan.cap, cutoff=cutoff)
            triangles = find_triangles(g)
            witness = triangles[0] if a > 0 and triangles else None
            return _finish(
                TriangleResult(
                    verdict=Verdict.TRIANGLE_FOUND if witness else Verdict.NOT_FOUND,
                    witness=witness,
                    edge_queries=st.applications * plan.cost,
                    outer_rounds=st.applications,
                    success_probability=st.success,
                    params=params,
                    stage_breakdown=(
                        st.applications * plan.edge_stage_cost,
                        st.applications * plan.node_stage_cost,
                        st.applications,
                    ),
                    **base,
                )
            )

        rng = _ensure_rng(rng)
        ledger = QueryLedger()
        stages = [0.0, 0.0]
        accepted: list[list[float]] = []

        def draw(scratch: QueryLedger) -> Triple | None:
            split = [0.0, 0.0]
            accepted[:] = [split]
            return _sampled_round(g, plan, scratch, rng, split)

        def measure(success: bool, _j: int) -> Triple | None:
            witness = conditioned(draw, success, ledger)
            stages[0] += accepted[0][0]
            stages[1] += accepted[0][1]
            return witness

        def charge(j: int) -> None:
            ledger.charge(edge_queries=j * plan.cost)
            stages[0] += j * plan.edge_stage_cost
            stages[1] += j * plan.node_stage_cost

        result = run_schedule(
            a, rng, measure, cap=plan.cap, cutoff=cutoff, charge=charge
        )

        return _finish(
            TriangleResult(
                verdict=(
                    Verdict.TRIANGLE_FOUND if result.witness else Verdict.NOT_FOUND
                ),
                witness=result.witness,
                edge_queries=ledger.edge_queries,
                outer_rounds=result.applications,
                success_probability=a,
                params=params,
                stage_breakdown=(stages[0], stages[1], result.applications),
                **base,
            )
        )


def grover_all_triples(
    g: GraphInstance,
    mode: Mode = "sampled",
    rng: Rng | None = None,
    cutoff: int | None = None,
) -> TriangleResult:
    """
    Search all ``C(n, 3)`` triples at three queries per application:
    ``O(n^{3/2})``.

    *cutoff* counts applications and defaults to
    ``cutoff_multiplier · ⌈√C(n, 3)⌉``.
    """
    _check(g, mode)
    k = math.comb(g.n, 3)
    cutoff = (
        cutoff
        if cutoff is not None
        else _CONFIG.cutoff_multiplier * math.ceil(math.sqrt(k))
    )
    triangles = find_triangles(g)
    params = {"triples": k, "cutoff": cutoff}
    base = {"algorithm": "grover_all_triples", "mode": mode, "n": g.n, "m": g.m}

    with bound_run(algorithm="grover_all_triples", mode=mode):
        log.debug("run_started", n=g.n, m=g.m)
        if mode == "analytic":
            st = schedule_stats(len(triangles) / k, cap=math.sqrt(k), cutoff=cutoff)
            witness = triangles[0] if triangles else None
            return _finish(
                TriangleResult(
                    verdict=Verdict.TRIANGLE_FOUND if witness else Verdict.NOT_FOUND,
                    witness=witness,
                    edge_queries=3 * st.applications,
                    outer_rounds=st.measurements,
                    success_probability=st.success,
                    params=params,
                    stage_breakdown=(0.0, 3 * st.applications, st.measurements),
                    **base,
                )
            )

        ledger = QueryLedger()
        marked = {_rank_triple(t, g.n) for t in triangles}

        def triple(i: int) -> Triple:
            return _unrank_triple(i, g.n)

        def verify(i: int) -> bool:
            a, b, c = triple(i)
            return (
                edge_query(g, a, b, ledger)
                and edge_query(g, a, c, ledger)
                and edge_query(g, b, c, ledger)
            )

        outcome = qsearch(
            k,
            marked.__contains__,
            _ensure_rng(rng),
            cutoff,
            verify=verify,
            charge=lambda j: ledger.charge(edge_queries=3 * j),
        )
        witness = triple(outcome.found) if outcome.found is not None else None

        return _finish(
            TriangleResult(
                verdict=Verdict.TRIANGLE_FOUND if witness else Verdict.NOT_FOUND,
                witness=witness,
                edge_queries=ledger.edge_queries,
                outer_rounds=outcome.rounds,
                params=params,
                stage_breakdown=(0.0, float(ledger.edge_queries), outcome.rounds),
                **base,
            )
        )


def _rank_triple(t: Triple, n: int) -> int:
    a, b, c = t
    rank = sum(math.comb(n - x, 2) for x in range(1, a))
    rank += sum(n - y for y in range(a + 1, b))
    return rank + c - b - 1


def _unrank_triple(i: int, n: int) -> Triple:
    """
    The *i*-th (0-based) triple ``a < b < c`` of ``[n]`` in lexicographic
    order.
    """
    for a in range(1, n - 1):
        block = math.comb(n - a, 2)
        if i < block:
            break
        i -= block
    for b in range(a + 1, n):
        block = n - b
        if i < block:
            break
        i -= block

    return a, b, b + 1 + i


def classical_triangle(g: GraphInstance) -> TriangleResult:
    """
    Query every slot once, then scan the wedges without further queries.
    """
    ledger = QueryLedger()
    with bound_run(algorithm="classical_triangle", mode="sampled"):
        log.debug("run_started", n=g.n, m=g.m)
        adjacency: dict[int, set[int]] = {u: set() for u in range(1, g.n + 1)}
        for u, v in slot_pairs(g.n):
            if edge_query(g, u, v, ledger):
                adjacency[u].add(v)
                adjacency[v].add(u)

        witness = None
        for a in range(1, g.n + 1):
            for b, c in itertools.combinations(sorted(adjacency[a]), 2):
                if a < b and c in adjacency[b]:
                    witness = (a, b, c)
                    break
            if witness:
                break

        return _finish(
            TriangleResult(
                algorithm="classical_triangle",
                mode="sampled",
                verdict=Verdict.TRIANGLE_FOUND if witness else Verdict.NOT_FOUND,
                witness=witness,
                edge_queries=ledger.edge_queries,
                n=g.n,
                m=g.m,
                stage_breakdown=(float(ledger.edge_queries), 0.0, 0.0),
            )
        )


def gen_planted_triangle(
    n: int, target_m: int, seed: int | Rng
) -> GraphInstance:
    """
    A graph on ``[n]`` with exactly *target_m* edges and exactly one
    triangle.

    Nodes are split into halves ``L`` and ``R``.  The triangle is an edge
    ``(u, v)`` inside ``L`` plus one node ``w`` of ``R``; every other edge
    runs between ``L`` and ``R``, and no other node of ``R`` is joined to
    both ``u`` and ``v``.  Labels are shuffled at the end.

    Raises:
        DomainError: if ``target_m < n - 1`` or more edges are requested than
            the construction can hold.
    """
    if n < 3:
        msg = f"a triangle needs n >= 3, got {n}"
        raise DomainError(msg)
    left = (n + 1) // 2
    right = n - left
    capacity = left * right + 1 - (right - 1)
    if not max(n - 1, 3) <= target_m <= capacity:
        msg = (
            f"cannot plant a unique triangle with m={target_m} on n={n} "
            f"(need {max(n - 1, 3)} <= m <= {capacity})"
        )
        raise DomainError(msg)

    rng = seed if not isinstance(seed, int) else make_rng(seed)
    u, v, w = 1, 2, left + 1
    edges = {(u, v), (u, w), (v, w)}
    candidates = [
        (x, y)
        for x in range(1, left + 1)
        for y in range(left + 1, n + 1)
        if (x, y) not in edges
    ]
    order = rng.permutation(len(candidates))
    for idx in order.tolist():
        if len(edges) == target_m:
            break
        x, y = candidates[idx]
        if x in (u, v) and y != w:
            partner = v if x == u else u
            if (partner, y) in edges:
                continue
        edges.add((x, y))

    labels = (rng.permutation(n) + 1).tolist()
    return GraphInstance.of(
        n, [(labels[x - 1], labels[y - 1]) for x, y in edges]
    )
