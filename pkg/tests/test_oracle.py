# SPDX-License-Identifier: MIT
# This file is licensed under the terms of the MIT License.  See the LICENSE
# file in the root of this repository for complete details.

from __future__ import annotations

import itertools
import json
import math

from collections import Counter

import pytest

from hypothesis import given, settings
from hypothesis import strategies as st

from qclaw import make_rng
from qclaw.adversary import count_collisions
from qclaw.exceptions import DomainError, InstanceFormatError
from qclaw.oracle import (
    ClawPair,
    ComparisonOracle,
    FunctionInstance,
    GraphInstance,
    QueryLedger,
    binary_search,
    count_triangles,
    dump_instance,
    edge_query,
    evaluate,
    find_claws,
    find_collisions,
    gen_k_repeated,
    gen_ordered_pair,
    gen_planted_claw,
    gen_two_to_one,
    load_instance,
    load_instances,
    mergesort_worst,
    or_to_claw,
    or_to_ed,
    or_to_ordered_claw,
    or_to_triangle,
    search_depth,
    slot_index,
    slot_pairs,
    sort_indices,
)


bit_vectors = st.lists(st.integers(0, 1), min_size=1, max_size=40)


class TestQueryLedger:
    def test_charge_adds(self):
        """
        Bulk charges add to the matching counters.
        """
        ledger = QueryLedger()
        ledger.charge(comparisons=3, edge_queries=2)
        ledger.charge(evaluations=1)

        assert (3, 1, 2) == (
            ledger.comparisons,
            ledger.evaluations,
            ledger.edge_queries,
        )
        assert 6 == ledger.total

    def test_negative_charge(self):
        """
        Counters never decrease.
        """
        with pytest.raises(DomainError):
            QueryLedger().charge(comparisons=-1)

    def test_merge(self):
        a = QueryLedger(1, 2, 3)
        a.merge(QueryLedger(4, 5, 6))

        assert {"comparisons": 5, "evaluations": 7, "edge_queries": 9} == a.as_dict()


class TestFunctionInstance:
    def test_ordered_must_be_monotone(self):
        """
        A non-monotone table flagged as ordered is refused.
        """
        with pytest.raises(DomainError):
            FunctionInstance.of([1, 3, 2], ordered=True)

    def test_size_mismatch(self):
        with pytest.raises(DomainError):
            FunctionInstance(3, (1, 2))

    def test_values_fit_int64(self):
        with pytest.raises(DomainError):
            FunctionInstance.of([2**63])

    def test_restrict(self):
        """
        Restriction renumbers the chosen indices from 1.
        """
        f = FunctionInstance.of([10, 20, 30, 40])

        assert (20, 40) == f.restrict([2, 4]).values


class TestCompare:
    @pytest.mark.parametrize(
        ("side_a", "i", "side_b", "j", "expected"),
        [("F", 1, "F", 2, False), ("F", 2, "F", 3, True), ("F", 1, "G", 1, False)],
    )
    def test_examples(self, side_a, i, side_b, j, expected):
        """
        f = [3, 1, 2], g = [2, 2]: each comparison charges exactly one.
        """
        oracle = ComparisonOracle(
            FunctionInstance.of([3, 1, 2]), FunctionInstance.of([2, 2])
        )

        assert expected is oracle.compare(side_a, i, side_b, j)
        assert 1 == oracle.ledger.comparisons
        assert 0 == oracle.ledger.evaluations

    def test_out_of_range(self):
        oracle = ComparisonOracle(FunctionInstance.of([3, 1, 2]))

        with pytest.raises(DomainError):
            oracle.compare("F", 0, "F", 1)
        with pytest.raises(DomainError):
            oracle.compare("F", 1, "F", 4)

        assert 0 == oracle.ledger.comparisons

    def test_equal_short_circuits(self):
        """
        Equality costs one comparison when the first one is false.
        """
        oracle = ComparisonOracle(FunctionInstance.of([5, 1]))

        assert not oracle.equal("F", 1, "F", 2)
        assert 1 == oracle.ledger.comparisons
        assert oracle.equal("F", 1, "F", 1)
        assert 3 == oracle.ledger.comparisons


class TestEvaluate:
    @pytest.mark.parametrize(("i", "expected"), [(2, 4), (3, 2)])
    def test_examples(self, i, expected):
        ledger = QueryLedger()

        assert expected == evaluate(FunctionInstance.of([4, 4, 2]), i, ledger)
        assert 1 == ledger.evaluations

    def test_one_based(self):
        with pytest.raises(DomainError):
            evaluate(FunctionInstance.of([7]), 0, QueryLedger())


class TestEdgeQuery:
    def test_symmetric(self):
        g = GraphInstance.of(3, [(1, 2), (1, 3), (2, 3)])
        ledger = QueryLedger()

        assert edge_query(g, 1, 3, ledger)
        assert edge_query(g, 3, 1, ledger)
        assert 2 == ledger.edge_queries

    def test_empty(self):
        assert not edge_query(GraphInstance(2), 1, 2, QueryLedger())

    @pytest.mark.parametrize(("u", "v"), [(1, 1), (0, 2), (1, 5)])
    def test_invalid(self, u, v):
        with pytest.raises(DomainError):
            edge_query(GraphInstance(4), u, v, QueryLedger())

    def test_slot_order(self):
        """
        Slot indices follow the lexicographic order of slot pairs.
        """
        for n in range(2, 9):
            assert list(range(n * (n - 1) // 2)) == [
                slot_index(u, v, n) for u, v in slot_pairs(n)
            ]


class TestSorting:
    @pytest.mark.parametrize(
        ("n", "expected"), [(0, 0), (1, 0), (2, 1), (3, 3), (4, 5), (8, 17), (16, 49)]
    )
    def test_mergesort_worst(self, n, expected):
        assert expected == mergesort_worst(n)

    @given(st.lists(st.integers(-50, 50), min_size=1, max_size=64))
    def test_sort_indices(self, values):
        """
        Sorting is correct, stable and within the worst-case bound.
        """
        f = FunctionInstance.of(values)
        oracle = ComparisonOracle(f)
        order = sort_indices(oracle, "F", range(1, f.size + 1))

        assert sorted(range(1, f.size + 1), key=lambda i: (f.value(i), i)) == order
        assert oracle.ledger.comparisons <= mergesort_worst(f.size)

    @given(
        st.lists(st.integers(-20, 20), min_size=1, max_size=50),
        st.integers(-25, 25),
    )
    def test_binary_search(self, values, target):
        """
        The leftmost equal position is found in at most
        ``⌈log₂(n + 1)⌉ + 1`` comparisons.
        """
        f = FunctionInstance.of(sorted(values), ordered=True)
        g = FunctionInstance.of([target])
        oracle = ComparisonOracle(f, g)
        pos = binary_search(oracle, "F", list(range(1, f.size + 1)), "G", 1)

        if target in f.values:
            assert f.values.index(target) == pos
        else:
            assert pos is None
        assert oracle.ledger.comparisons <= search_depth(f.size) + 1


class TestGenerators:
    def test_planted_claw(self):
        f, g = gen_planted_claw(4, 4, 1)

        assert 1 == len(find_claws(f, g))

    def test_planted_claw_forced(self):
        f, g = gen_planted_claw(1, 1, 0)

        assert f.values == g.values

    def test_planted_claw_exhaustive(self):
        """
        An exhaustive scan over all 8 · 64 pairs finds exactly one claw.
        """
        f, g = gen_planted_claw(8, 64, 7)
        claws = [
            (x, y)
            for x, y in itertools.product(range(1, 9), range(1, 65))
            if f.value(x) == g.value(y)
        ]

        assert 1 == len(claws)

    def test_two_to_one(self):
        assert 1 == len(set(gen_two_to_one(2, 0).values))
        assert [2, 2] == sorted(Counter(gen_two_to_one(4, 3).values).values())
        assert 3 == count_collisions(gen_two_to_one(6, 5))

    def test_two_to_one_odd(self):
        with pytest.raises(DomainError):
            gen_two_to_one(5, 0)

    def test_k_repeated(self):
        assert 1 == len(set(gen_k_repeated(5, 5, 0).values))
        assert 1 == count_collisions(gen_k_repeated(6, 2, 1))
        assert 6 == count_collisions(gen_k_repeated(8, 4, 2))

    def test_ordered_pair(self):
        f, g = gen_ordered_pair(4, 4, True, 9)
        f2, g2 = gen_ordered_pair(4, 4, False, 9)

        assert f.ordered
        assert g.ordered
        assert find_claws(f, g)
        assert not find_claws(f2, g2)

    def test_ordered_pair_forced(self):
        f, g = gen_ordered_pair(1, 1, True, 3)

        assert f.values == g.values

    def test_deterministic(self):
        """
        Equal seeds give equal instances, whatever the generator.
        """
        assert gen_planted_claw(16, 32, 5) == gen_planted_claw(16, 32, 5)
        assert gen_two_to_one(16, 5) == gen_two_to_one(16, 5)
        assert gen_k_repeated(16, 3, 5) == gen_k_repeated(16, 3, 5)
        assert gen_ordered_pair(9, 7, True, 5) == gen_ordered_pair(9, 7, True, 5)

    def test_accepts_generators(self):
        f, _ = gen_planted_claw(10, 10, make_rng(5))

        assert 10 == f.size


class TestReductions:
    def test_or_to_claw(self):
        assert not find_claws(*or_to_claw([0, 0]))
        assert [ClawPair(1, 2)] == find_claws(*or_to_claw([0, 1, 0]))
        assert 5 == len(find_claws(*or_to_claw([1] * 5)))

    def test_or_to_ed(self):
        assert (1, 0, 3, 0) == or_to_ed([0, 1, 0]).values
        assert [ClawPair(2, 4)] == find_collisions(or_to_ed([0, 1, 0]))
        assert not find_collisions(or_to_ed([0, 0]))
        assert (0, 0, 0) == or_to_ed([1, 1]).values

    def test_or_to_ordered_claw(self):
        f, g = or_to_ordered_claw([0, 1])

        assert ((3, 5), (2, 5)) == (f.values, g.values)
        assert [ClawPair(2, 2)] == find_claws(f, g)
        assert [ClawPair(1, 1)] == find_claws(*or_to_ordered_claw([1]))
        assert not find_claws(*or_to_ordered_claw([0, 0]))

    def test_or_to_triangle(self):
        assert 0 == count_triangles(or_to_triangle([0, 0, 0]))

        with_edge = or_to_triangle([1, 0, 0])

        assert 1 == count_triangles(with_edge)
        assert with_edge.has_edge(1, 2)
        assert with_edge.has_edge(1, 4)
        assert with_edge.has_edge(2, 4)
        assert count_triangles(or_to_triangle([1] * 6)) > 1

    def test_or_bits_only(self):
        with pytest.raises(DomainError):
            or_to_claw([0, 2])

    @settings(max_examples=250)
    @given(bit_vectors)
    def test_claw_and_ed_match_or(self, x):
        """
        Claws and collisions exist iff OR(X) = 1.
        """
        assert bool(find_claws(*or_to_claw(x))) is any(x)
        assert bool(find_collisions(or_to_ed(x))) is any(x)
        assert bool(find_claws(*or_to_ordered_claw(x))) is any(x)

    @settings(max_examples=250)
    @given(st.integers(2, 8).flatmap(
        lambda n: st.lists(st.integers(0, 1), min_size=math.comb(n, 2), max_size=math.comb(n, 2))
    ))
    def test_triangle_matches_or(self, x):
        assert (count_triangles(or_to_triangle(x)) > 0) is any(x)


class TestInstanceFiles:
    def test_round_trip(self, tmp_path):
        """
        A pair written to disk loads back unchanged.
        """
        f, g = gen_planted_claw(5, 7, 3)
        path = tmp_path / "pair.json"
        dump_instance([f, g], path)

        assert [f, g] == load_instances(path)

    def test_graph_dict(self):
        g = load_instance({"kind": "graph", "n": 3, "edges": [[2, 1], [1, 3]]})

        assert frozenset({(1, 2), (1, 3)}) == g.edges

    @pytest.mark.parametrize(
        "doc",
        [
            {"kind": "function", "n": 3, "values": [1, 2]},
            {"kind": "function", "n": 2, "values": [1, "a"]},
            {"kind": "function", "n": 2, "values": [2, 1], "ordered": True},
            {"kind": "graph", "n": 2, "edges": [[1, 1]]},
            {"kind": "tree", "n": 2},
            {"n": 2},
        ],
    )
    def test_invalid(self, doc):
        with pytest.raises(InstanceFormatError):
            load_instance(doc)

    def test_not_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{nope")

        with pytest.raises(InstanceFormatError):
            load_instance(path)

    def test_single_expected(self, tmp_path):
        path = tmp_path / "two.json"
        path.write_text(
            json.dumps([{"kind": "function", "n": 1, "values": [1]}] * 2)
        )

        with pytest.raises(InstanceFormatError):
            load_instance(path)
