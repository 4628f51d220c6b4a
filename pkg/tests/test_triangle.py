# SPDX-License-Identifier: MIT
# This file is licensed under the terms of the MIT License.  See the LICENSE
# file in the root of this repository for complete details.

from __future__ import annotations

import itertools
import math

import pytest

from hypothesis import given, settings
from hypothesis import strategies as st

from qclaw import make_rng
from qclaw.amplify import inner_success
from qclaw.cli import fit_exponent
from qclaw.exceptions import DomainError
from qclaw.oracle import GraphInstance, count_triangles
from qclaw.reports import Verdict
from qclaw.testing import count_accesses
from qclaw.triangle import (
    TrianglePlan,
    _rank_triple,
    _unrank_triple,
    classical_triangle,
    find_triangle,
    gen_planted_triangle,
    grover_all_triples,
    round_success,
    stage_one_success,
    triangle_bound,
)


def _is_triangle(g, t):
    return t is not None and all(
        g.has_edge(u, v) for u, v in itertools.combinations(t, 2)
    )


def _complete(n):
    return GraphInstance.of(n, itertools.combinations(range(1, n + 1), 2))


def _path(n):
    return GraphInstance.of(n, [(i, i + 1) for i in range(1, n)])


def _bipartite(n):
    half = n // 2
    return GraphInstance.of(
        n, [(u, v) for u in range(1, half + 1) for v in range(half + 1, n + 1)]
    )


class TestTrianglePlan:
    def test_costs(self):
        """
        One query per edge-stage application, two per node-stage one.
        """
        plan = TrianglePlan(16, 30)

        assert 120 == plan.slots
        assert math.ceil(math.pi / 4 * math.sqrt(16)) == plan.node_width
        assert plan.edge_iterations + 1 == plan.edge_stage_cost
        assert 2 * plan.node_width == plan.node_stage_cost
        assert plan.edge_stage_cost + plan.node_stage_cost == plan.cost

    def test_complete_graph_needs_no_edge_iterations(self):
        assert 0 == TrianglePlan(5, 10).edge_iterations

    def test_bound(self):
        assert 16 + math.sqrt(16 * 64) == triangle_bound(16, 64)


class TestRoundSuccess:
    def test_stage_one(self, triangle_graph):
        """
        The 4-cycle with a chord: every edge lies on a triangle.
        """
        assert 1.0 == stage_one_success(triangle_graph)

    def test_star_never_completes(self):
        star = GraphInstance.of(5, [(1, i) for i in range(2, 6)])

        assert 0.0 == stage_one_success(star)
        assert 0.0 == round_success(star)

    def test_matches_formula(self, triangle_graph):
        plan = TrianglePlan(4, 5)
        closing = {(1, 2): 1, (2, 3): 1, (3, 4): 1, (1, 4): 1, (1, 3): 2}
        expected = plan.edge_success * sum(
            inner_success(c, 4, plan.node_width) for c in closing.values()
        ) / 5

        assert expected == pytest.approx(round_success(triangle_graph))

    def test_empty(self):
        assert 0.0 == round_success(GraphInstance(4))


class TestFindTriangle:
    def test_complete(self):
        g = _complete(4)
        for trial in range(20):
            report = find_triangle(g, rng=make_rng(2, trial), cutoff=200)

            assert Verdict.TRIANGLE_FOUND is report.verdict
            assert _is_triangle(g, report.nodes)

    def test_path_not_found(self, rng):
        report = find_triangle(_path(5), rng=rng, cutoff=10)

        assert Verdict.NOT_FOUND is report.verdict
        assert 10 == report.outer_rounds

    def test_empty(self, rng):
        report = find_triangle(GraphInstance(6), rng=rng)

        assert Verdict.NOT_FOUND is report.verdict
        assert 0 == report.edge_queries

    def test_too_small(self):
        with pytest.raises(DomainError):
            find_triangle(GraphInstance(2))

    def test_stage_breakdown(self, rng):
        """
        Both stages add up to the metered total.
        """
        g = gen_planted_triangle(16, 20, 1)
        report = find_triangle(g, rng=rng, cutoff=500)
        edge_stage, node_stage, rounds = report.stage_breakdown

        assert report.edge_queries == pytest.approx(edge_stage + node_stage)
        assert rounds == report.outer_rounds

    def test_analytic_breakdown(self):
        g = gen_planted_triangle(32, 64, 3)
        report = find_triangle(g, "analytic")

        assert report.edge_queries == pytest.approx(sum(report.stage_breakdown[:2]))
        assert 0 < report.success_probability <= 1

    @settings(max_examples=20, deadline=None)
    @given(st.integers(6, 40), st.integers(0, 2**16))
    def test_witnesses_verify(self, n, seed):
        """
        A reported triangle is always real.
        """
        g = gen_planted_triangle(n, n, seed)
        report = find_triangle(g, rng=make_rng(seed), cutoff=300)

        if report.found:
            assert _is_triangle(g, report.nodes)

    def test_to_dict(self, rng):
        report = find_triangle(_complete(5), rng=rng, cutoff=100)

        assert 3 == len(report.to_dict()["stage_breakdown"])

    @pytest.mark.slow
    def test_sparse_exponent(self):
        points = []
        for e in range(4, 10):
            n = 2**e
            g = gen_planted_triangle(n, 2 * n, e)
            points.append((n, find_triangle(g, "analytic").edge_queries))

        assert 0.90 <= fit_exponent(points).slope <= 1.10

    @pytest.mark.slow
    def test_dense_exponent(self):
        points = []
        for e in range(4, 10):
            n = 2**e
            g = gen_planted_triangle(n, int(0.3 * math.comb(n, 2)), e)
            points.append((n, find_triangle(g, "analytic").edge_queries))

        assert 1.40 <= fit_exponent(points).slope <= 1.60


class TestGroverAllTriples:
    @given(st.integers(3, 12))
    def test_ranking(self, n):
        """
        Ranks enumerate the triples of [n] in lexicographic order.
        """
        triples = list(itertools.combinations(range(1, n + 1), 3))

        assert list(range(len(triples))) == [_rank_triple(t, n) for t in triples]
        assert triples == [_unrank_triple(i, n) for i in range(len(triples))]

    def test_complete(self, rng):
        g = _complete(4)
        report = grover_all_triples(g, rng=rng)

        assert _is_triangle(g, report.nodes)

    def test_bipartite_not_found(self, rng):
        report = grover_all_triples(_bipartite(10), rng=rng, cutoff=30)

        assert Verdict.NOT_FOUND is report.verdict

    def test_three_queries_per_application(self, rng):
        g = gen_planted_triangle(12, 20, 2)
        with count_accesses() as tally:
            report = grover_all_triples(g, rng=rng, cutoff=400)

        assert tally.edge_queries <= 3 * report.outer_rounds
        assert 0 == (report.edge_queries - tally.edge_queries) % 3

    @pytest.mark.slow
    def test_dense_exponent(self):
        points = []
        for e in range(4, 9):
            n = 2**e
            g = gen_planted_triangle(n, int(0.3 * math.comb(n, 2)), e)
            points.append((n, grover_all_triples(g, "analytic").edge_queries))

        assert 1.40 <= fit_exponent(points).slope <= 1.60


class TestClassicalTriangle:
    def test_k3(self):
        report = classical_triangle(_complete(3))

        assert (1, 2, 3) == report.nodes
        assert 3 == report.edge_queries

    def test_empty(self):
        report = classical_triangle(GraphInstance(4))

        assert Verdict.NOT_FOUND is report.verdict
        assert 6 == report.edge_queries

    @settings(max_examples=50)
    @given(st.integers(3, 9).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.sets(st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda e: e[0] < e[1])),
        )
    ))
    def test_exact(self, case):
        """
        Every slot is queried once and the answer is exact.
        """
        n, edges = case
        g = GraphInstance.of(n, edges)
        report = classical_triangle(g)

        assert math.comb(n, 2) == report.edge_queries
        assert (count_triangles(g) > 0) is report.found
        if report.found:
            assert _is_triangle(g, report.nodes)


class TestGenPlantedTriangle:
    def test_smallest(self):
        g = gen_planted_triangle(4, 3, 0)

        assert 3 == g.m
        assert 1 == count_triangles(g)

    def test_unique(self):
        g = gen_planted_triangle(16, 20, 1)

        assert 20 == g.m
        assert 1 == count_triangles(g)

    @settings(max_examples=40)
    @given(st.integers(4, 30), st.integers(0, 2**16), st.floats(0, 1))
    def test_always_unique(self, n, seed, share):
        left = (n + 1) // 2
        right = n - left
        lo, hi = max(n - 1, 3), left * right + 1 - (right - 1)
        m = lo + int(share * (hi - lo))
        g = gen_planted_triangle(n, m, seed)

        assert m == g.m
        assert 1 == count_triangles(g)

    def test_infeasible(self):
        with pytest.raises(DomainError):
            gen_planted_triangle(8, math.comb(8, 2), 0)

    def test_deterministic(self):
        assert gen_planted_triangle(20, 40, 9) == gen_planted_triangle(20, 40, 9)
