# SPDX-License-Identifier: MIT
# This file is licensed under the terms of the MIT License.  See the LICENSE
# file in the root of this repository for complete details.

"""
Problem instances and the metered interfaces every algorithm goes through.

Three access models are metered separately: comparisons ``[a ≤ b]`` between
function values, evaluations that read a value, and edge-slot queries on a
graph.  Domains are 1-based, ``[N] = {1, ..., N}``.

Instances are immutable and may be shared read-only between threads; a
`QueryLedger` belongs to exactly one run.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
import os

from dataclasses import dataclass, field
from typing import Any, Iterable, Literal, NamedTuple, Sequence

from ._config import make_rng
from .exceptions import DomainError, InstanceFormatError
from .typing import Rng


__all__ = [
    "ClawPair",
    "ComparisonOracle",
    "FunctionInstance",
    "GraphInstance",
    "QueryLedger",
    "Side",
    "binary_search",
    "compare",
    "count_triangles",
    "dump_instance",
    "edge_query",
    "evaluate",
    "find_claws",
    "find_collisions",
    "gen_k_repeated",
    "gen_ordered_pair",
    "gen_planted_claw",
    "gen_two_to_one",
    "load_instance",
    "mergesort_worst",
    "or_to_claw",
    "or_to_ed",
    "or_to_ordered_claw",
    "or_to_triangle",
    "sort_indices",
]

Side = Literal["F", "G"]

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

# Generated values are drawn from a range far inside int64 so that reductions
# like 2i + 1 never overflow.
_VALUE_BOUND = 2**40


@dataclass
class QueryLedger:
    """
    Metered counts of one run.

    Every classical oracle access increments exactly one counter by one.
    Applications performed in superposition are booked in bulk through
    `charge`, since they have no classical call to count.
    """

    comparisons: int = 0
    evaluations: int = 0
    edge_queries: int = 0

    def charge(
        self, comparisons: int = 0, evaluations: int = 0, edge_queries: int = 0
    ) -> None:
        if comparisons < 0 or evaluations < 0 or edge_queries < 0:
            msg = "ledger counters never decrease"
            raise DomainError(msg)
        self.comparisons += comparisons
        self.evaluations += evaluations
        self.edge_queries += edge_queries

    def merge(self, other: QueryLedger) -> None:
        """
        Add *other*'s counts to this ledger.
        """
        self.charge(other.comparisons, other.evaluations, other.edge_queries)

    @property
    def total(self) -> int:
        return self.comparisons + self.evaluations + self.edge_queries

    def as_dict(self) -> dict[str, int]:
        return {
            "comparisons": self.comparisons,
            "evaluations": self.evaluations,
            "edge_queries": self.edge_queries,
        }


@dataclass(frozen=True)
class FunctionInstance:
    """
    A function ``[N] → Z`` stored as its value table.

    ``values[i - 1]`` is the value at ``i``.  With ``ordered=True`` the table
    must be monotone non-decreasing.
    """

    size: int
    values: tuple[int, ...]
    ordered: bool = False

    def __post_init__(self) -> None:
        if self.size < 1:
            msg = f"function size must be positive, got {self.size}"
            raise DomainError(msg)
        if len(self.values) != self.size:
            msg = f"expected {self.size} values, got {len(self.values)}"
            raise DomainError(msg)
        if any(v < INT64_MIN or v > INT64_MAX for v in self.values):
            msg = "values must fit into 64-bit signed integers"
            raise DomainError(msg)
        if self.ordered and any(
            a > b for a, b in zip(self.values, self.values[1:])
        ):
            msg = "ordered function is not monotone non-decreasing"
            raise DomainError(msg)

    @classmethod
    def of(cls, values: Iterable[int], ordered: bool = False) -> FunctionInstance:
        vs = tuple(int(v) for v in values)
        return cls(len(vs), vs, ordered)

    def __len__(self) -> int:
        return self.size

    def value(self, i: int) -> int:
        """
        White-box read, unmetered.  For instance generators, checkers and
        analytic cost accounting only.
        """
        _check_index(i, self.size)
        return self.values[i - 1]

    def restrict(self, indices: Sequence[int]) -> FunctionInstance:
        """
        The function on ``[len(indices)]`` whose ``k``-th value is
        ``f(indices[k - 1])``.
        """
        return FunctionInstance.of((self.value(i) for i in indices))


class ClawPair(NamedTuple):
    """
    ``(x, y)`` with ``f(x) = g(y)``; for collisions ``x < y`` and ``f = g``.
    """

    x: int
    y: int


def slot_index(u: int, v: int, n: int) -> int:
    """
    0-based position of the edge slot ``{u, v}`` in the order
    ``{1,2}, {1,3}, ..., {1,n}, {2,3}, ...``.
    """
    if u > v:
        u, v = v, u
    return (u - 1) * n - (u - 1) * u // 2 + (v - u - 1)


def slot_pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(1, n + 1), 2))


@dataclass(frozen=True)
class GraphInstance:
    """
    An undirected simple graph on ``[n]`` given by its set of edges ``(u, v)``
    with ``u < v``.
    """

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 1:
            msg = f"node count must be positive, got {self.n}"
            raise DomainError(msg)
        for u, v in self.edges:
            if not (1 <= u < v <= self.n):
                msg = f"invalid edge ({u}, {v}) for n={self.n}"
                raise DomainError(msg)

    @classmethod
    def of(cls, n: int, edges: Iterable[Sequence[int]]) -> GraphInstance:
        normalized = set()
        for u, v in edges:
            if u == v:
                msg = f"self-loop at node {u}"
                raise DomainError(msg)
            normalized.add((min(u, v), max(u, v)))
        return cls(n, frozenset(normalized))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def slots(self) -> int:
        return self.n * (self.n - 1) // 2

    def has_edge(self, u: int, v: int) -> bool:
        """
        White-box adjacency, unmetered.
        """
        return (min(u, v), max(u, v)) in self.edges

    @functools.cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {u: set() for u in range(1, self.n + 1)}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return {u: frozenset(vs) for u, vs in adj.items()}

    def neighbours(self, u: int) -> frozenset[int]:
        return self.adjacency[u]


def _check_index(i: int, size: int) -> None:
    if not 1 <= i <= size:
        msg = f"index {i} outside [1, {size}]"
        raise DomainError(msg)


class ComparisonOracle:
    """
    Metered ``[a ≤ b]`` access to one or two functions.

    Only the boolean of a comparison ever leaves the oracle.  With ``g``
    omitted both sides refer to ``f``.
    """

    def __init__(
        self,
        f: FunctionInstance,
        g: FunctionInstance | None = None,
        ledger: QueryLedger | None = None,
    ) -> None:
        self._f = f
        self._g = g if g is not None else f
        self.ledger = ledger if ledger is not None else QueryLedger()

    @property
    def sizes(self) -> tuple[int, int]:
        return self._f.size, self._g.size

    def size(self, side: Side) -> int:
        return self._f.size if side == "F" else self._g.size

    def _table(self, side: Side) -> FunctionInstance:
        if side == "F":
            return self._f
        if side == "G":
            return self._g
        msg = f"side must be 'F' or 'G', got {side!r}"
        raise DomainError(msg)

    def compare(self, side_a: Side, i: int, side_b: Side, j: int) -> bool:
        """
        Return ``[side_a(i) ≤ side_b(j)]`` and charge one comparison.
        """
        a = self._table(side_a)
        b = self._table(side_b)
        _check_index(i, a.size)
        _check_index(j, b.size)
        self.ledger.comparisons += 1

        return a.values[i - 1] <= b.values[j - 1]

    def equal(self, side_a: Side, i: int, side_b: Side, j: int) -> bool:
        """
        Equality through two comparisons, the second only when needed.
        """
        return self.compare(side_a, i, side_b, j) and self.compare(
            side_b, j, side_a, i
        )

    def with_ledger(self, ledger: QueryLedger) -> ComparisonOracle:
        return ComparisonOracle(self._f, self._g, ledger)


def compare(
    f: FunctionInstance,
    g: FunctionInstance | None,
    side_a: Side,
    i: int,
    side_b: Side,
    j: int,
    ledger: QueryLedger,
) -> bool:
    """
    One-shot form of `ComparisonOracle.compare`.
    """
    return ComparisonOracle(f, g, ledger).compare(side_a, i, side_b, j)


def evaluate(fn: FunctionInstance, i: int, ledger: QueryLedger) -> int:
    """
    Read ``fn(i)`` and charge one evaluation.
    """
    _check_index(i, fn.size)
    ledger.evaluations += 1

    return fn.values[i - 1]


def edge_query(g: GraphInstance, u: int, v: int, ledger: QueryLedger) -> bool:
    """
    Return whether ``{u, v}`` is an edge and charge one edge query.
    """
    if u == v:
        msg = f"edge slot needs two distinct nodes, got {u} twice"
        raise DomainError(msg)
    _check_index(u, g.n)
    _check_index(v, g.n)
    ledger.edge_queries += 1

    return g.has_edge(u, v)


# Sorting and searching in the comparison model.


def mergesort_worst(n: int) -> int:
    """
    Worst-case comparisons of top-down mergesort on *n* items:
    ``n⌈log₂n⌉ - 2^⌈log₂n⌉ + 1``.
    """
    if n <= 1:
        return 0
    k = (n - 1).bit_length()
    return n * k - 2**k + 1


def search_depth(n: int) -> int:
    """
    ``⌈log₂(n + 1)⌉``: comparisons of a leftmost binary search over *n* items.
    """
    return n.bit_length()


def sort_indices(
    oracle: ComparisonOracle, side: Side, indices: Sequence[int]
) -> list[int]:
    """
    Stable mergesort of *indices* by their *side* values.
    """
    items = list(indices)
    if len(items) <= 1:
        return items

    mid = len(items) // 2
    left = sort_indices(oracle, side, items[:mid])
    right = sort_indices(oracle, side, items[mid:])

    merged: list[int] = []
    i = j = 0
    while i < len(left) and j < len(right):
        if oracle.compare(side, left[i], side, right[j]):
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])

    return merged


def binary_search(
    oracle: ComparisonOracle,
    side: Side,
    sorted_indices: Sequence[int],
    target_side: Side,
    target: int,
) -> int | None:
    """
    Return the position in *sorted_indices* of the leftmost value equal to
    ``target_side(target)``, or `None`.

    The leftmost position with ``value ≥ target`` costs at most
    ``⌈log₂(n + 1)⌉`` comparisons; one more checks equality.
    """
    lo, hi = 0, len(sorted_indices)
    while lo < hi:
        mid = (lo + hi) // 2
        if oracle.compare(target_side, target, side, sorted_indices[mid]):
            hi = mid
        else:
            lo = mid + 1

    if lo == len(sorted_indices):
        return None
    if oracle.compare(side, sorted_indices[lo], target_side, target):
        return lo

    return None


# White-box scans used as checkers and for analytic accounting.  Unmetered.


def find_claws(f: FunctionInstance, g: FunctionInstance) -> list[ClawPair]:
    by_value: dict[int, list[int]] = {}
    for x, v in enumerate(f.values, start=1):
        by_value.setdefault(v, []).append(x)

    return [
        ClawPair(x, y)
        for y, v in enumerate(g.values, start=1)
        for x in by_value.get(v, ())
    ]


def find_collisions(f: FunctionInstance) -> list[ClawPair]:
    by_value: dict[int, list[int]] = {}
    for x, v in enumerate(f.values, start=1):
        by_value.setdefault(v, []).append(x)

    return [
        ClawPair(x, y)
        for xs in by_value.values()
        for x, y in itertools.combinations(xs, 2)
    ]


def count_triangles(g: GraphInstance) -> int:
    return sum(
        1
        for a, b in g.edges
        for c in range(b + 1, g.n + 1)
        if g.has_edge(a, c) and g.has_edge(b, c)
    )


def find_triangles(g: GraphInstance) -> list[tuple[int, int, int]]:
    return [
        (a, b, c)
        for a, b in sorted(g.edges)
        for c in range(b + 1, g.n + 1)
        if g.has_edge(a, c) and g.has_edge(b, c)
    ]


# Instance generators.  All are deterministic in the seed.


def _rng(seed: int | Rng) -> Rng:
    if isinstance(seed, int):
        return make_rng(seed)
    return seed


def _distinct_values(rng: Rng, count: int) -> list[int]:
    """
    *count* pairwise distinct integers, drawn then deduplicated in draw order.
    """
    seen: dict[int, None] = {}
    while len(seen) < count:
        draw = rng.integers(-_VALUE_BOUND, _VALUE_BOUND, size=count - len(seen) + 8)
        for v in draw.tolist():
            seen.setdefault(int(v), None)
            if len(seen) == count:
                break

    return list(seen)


def gen_planted_claw(
    n: int, m: int, seed: int | Rng
) -> tuple[FunctionInstance, FunctionInstance]:
    """
    ``f: [n] → Z`` and ``g: [m] → Z`` with exactly one claw; every other
    value is distinct across both tables.
    """
    if n < 1 or m < 1:
        msg = f"sizes must be positive, got N={n}, M={m}"
        raise DomainError(msg)
    rng = _rng(seed)
    values = _distinct_values(rng, n + m - 1)
    f = values[:n]
    g = values[n:]
    x = int(rng.integers(0, n))
    y = int(rng.integers(0, m))
    g.insert(y, f[x])

    return FunctionInstance.of(f), FunctionInstance.of(g)


def gen_two_to_one(n: int, seed: int | Rng) -> FunctionInstance:
    """
    A function on ``[n]`` where every value has exactly two preimages.
    """
    if n < 2 or n % 2:
        msg = f"a 2-to-1 function needs an even positive size, got {n}"
        raise DomainError(msg)
    rng = _rng(seed)
    values = _distinct_values(rng, n // 2) * 2
    rng.shuffle(values)

    return FunctionInstance.of(values)


def gen_k_repeated(n: int, k: int, seed: int | Rng) -> FunctionInstance:
    """
    A function on ``[n]`` where one value has exactly *k* preimages and all
    others are distinct.
    """
    if not 2 <= k <= n:
        msg = f"need 2 <= k <= N, got k={k}, N={n}"
        raise DomainError(msg)
    rng = _rng(seed)
    distinct = _distinct_values(rng, n - k + 1)
    values = distinct + [distinct[0]] * (k - 1)
    rng.shuffle(values)

    return FunctionInstance.of(values)


def gen_ordered_pair(
    n: int, m: int, plant_claw: bool, seed: int | Rng
) -> tuple[FunctionInstance, FunctionInstance]:
    """
    Two strictly increasing tables; they share exactly one value iff
    *plant_claw*.
    """
    if n < 1 or m < 1:
        msg = f"sizes must be positive, got N={n}, M={m}"
        raise DomainError(msg)
    rng = _rng(seed)
    shared = 1 if plant_claw else 0
    values = _distinct_values(rng, n + m - shared)
    f = values[:n]
    g = values[n:]
    if plant_claw:
        g.append(f[int(rng.integers(0, n))])

    return (
        FunctionInstance.of(sorted(f), ordered=True),
        FunctionInstance.of(sorted(g), ordered=True),
    )


# Reductions from OR.


def _bits(x: Sequence[int]) -> list[int]:
    bits = [int(b) for b in x]
    if any(b not in (0, 1) for b in bits):
        msg = "OR instances are bit vectors"
        raise DomainError(msg)
    if not bits:
        msg = "OR instances need at least one bit"
        raise DomainError(msg)
    return bits


def or_to_claw(x: Sequence[int]) -> tuple[FunctionInstance, FunctionInstance]:
    """
    ``f = [1]`` and ``g = X``: a claw exists iff ``OR(X) = 1``.
    """
    return FunctionInstance.of([1]), FunctionInstance.of(_bits(x))


def or_to_ed(x: Sequence[int]) -> FunctionInstance:
    """
    ``f(i) = i(1 - x_i)`` on ``[N]`` and ``f(N + 1) = 0``: a collision exists
    iff ``OR(X) = 1``.
    """
    bits = _bits(x)
    return FunctionInstance.of([i * (1 - b) for i, b in enumerate(bits, 1)] + [0])


def or_to_ordered_claw(
    x: Sequence[int],
) -> tuple[FunctionInstance, FunctionInstance]:
    """
    ``f(i) = 2i + 1`` and ``g(i) = 2i + x_i``: both ordered, claw iff
    ``OR(X) = 1``.
    """
    bits = _bits(x)
    n = len(bits)
    return (
        FunctionInstance.of((2 * i + 1 for i in range(1, n + 1)), ordered=True),
        FunctionInstance.of(
            (2 * i + b for i, b in enumerate(bits, 1)), ordered=True
        ),
    )


def or_to_triangle(x: Sequence[int], n: int | None = None) -> GraphInstance:
    """
    Read *x* as a graph on ``n`` nodes over the ``C(n, 2)`` slots and join an
    apex node ``n + 1`` to every node.  Triangle iff ``OR(X) = 1``.
    """
    bits = _bits(x)
    if n is None:
        n = (1 + math.isqrt(1 + 8 * len(bits))) // 2
    if n < 2 or n * (n - 1) // 2 != len(bits):
        msg = f"{len(bits)} bits do not cover the edge slots of a graph"
        raise DomainError(msg)
    edges = [pair for pair, b in zip(slot_pairs(n), bits) if b]
    edges += [(i, n + 1) for i in range(1, n + 1)]

    return GraphInstance.of(n + 1, edges)


# Instance files.


def _instance_from_dict(doc: dict[str, Any]) -> FunctionInstance | GraphInstance:
    try:
        kind = doc["kind"]
        if kind == "function":
            values = doc["values"]
            if len(values) != doc["n"]:
                msg = f"'n' is {doc['n']} but {len(values)} values are given"
                raise InstanceFormatError(msg)
            if any(isinstance(v, bool) or not isinstance(v, int) for v in values):
                msg = "function values must be integers"
                raise InstanceFormatError(msg)
            return FunctionInstance.of(values, ordered=bool(doc.get("ordered", False)))
        if kind == "graph":
            return GraphInstance.of(doc["n"], [tuple(e) for e in doc["edges"]])
    except InstanceFormatError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        msg = f"malformed instance: {e}"
        raise InstanceFormatError(msg) from e

    msg = f"unknown instance kind {doc.get('kind')!r}"
    raise InstanceFormatError(msg)


def load_instance(
    source: str | os.PathLike[str] | dict[str, Any],
) -> FunctionInstance | GraphInstance:
    """
    Load and validate a function or graph from a JSON file or parsed dict.

    A file may also hold a list of instances, e.g. the two tables of a claw
    problem; use `load_instances` for those.

    Raises:
        InstanceFormatError: if the document violates an instance invariant.
    """
    if isinstance(source, dict):
        return _instance_from_dict(source)

    docs = load_instances(source)
    if len(docs) != 1:
        msg = f"expected one instance, found {len(docs)}"
        raise InstanceFormatError(msg)

    return docs[0]


def load_instances(
    path: str | os.PathLike[str],
) -> list[FunctionInstance | GraphInstance]:
    with open(path, encoding="utf-8") as fp:
        try:
            doc = json.load(fp)
        except json.JSONDecodeError as e:
            msg = f"{path}: not JSON: {e}"
            raise InstanceFormatError(msg) from e

    docs = doc if isinstance(doc, list) else [doc]
    try:
        return [_instance_from_dict(d) for d in docs]
    except InstanceFormatError as e:
        msg = f"{path}: {e}"
        raise InstanceFormatError(msg) from e


def instance_to_dict(instance: FunctionInstance | GraphInstance) -> dict[str, Any]:
    if isinstance(instance, FunctionInstance):
        return {
            "kind": "function",
            "n": instance.size,
            "ordered": instance.ordered,
            "values": list(instance.values),
        }
    return {
        "kind": "graph",
        "n": instance.n,
        "edges": [list(e) for e in sorted(instance.edges)],
    }


def dump_instance(
    instances: FunctionInstance | GraphInstance | Sequence[FunctionInstance | GraphInstance],
    path: str | os.PathLike[str],
) -> None:
    if isinstance(instances, (FunctionInstance, GraphInstance)):
        doc: Any = instance_to_dict(instances)
    else:
        doc = [instance_to_dict(i) for i in instances]
    with open(path, "w", encoding="utf-8") as fp:
        json.dump(doc, fp)
