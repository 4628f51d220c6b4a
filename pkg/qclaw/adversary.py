# SPDX-License-Identifier: MIT
# This file is licensed under the terms of the MIT License.  See the LICENSE
# file in the root of this repository for complete details.

"""
Exhaustive relation parameters for the adversary lower bound on three
function families over ``[N] → [N]`` in the evaluation model.

For input sets ``A`` and ``B`` and the relation ``R`` of pairs at Hamming
distance one with different answers:

- ``m``: least number of partners of any ``f ∈ A``;
- ``m′``: least number of partners of any ``g ∈ B``;
- ``l``: most partners of any ``f`` differing from it at one fixed ``x``;
- ``l′``: the same from the ``B`` side.

Any algorithm then needs ``Ω(√(m·m′/(l·l′)))`` evaluations.

Families are generated constructively (collision structure first, then
injective value assignments) instead of filtering all ``N^N`` functions.
"""

from __future__ import annotations

import enum
import itertools
import math

from collections import Counter
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Sequence

import numpy as np

from ._config import get_logger
from .exceptions import DegenerateError, DomainError
from .oracle import FunctionInstance, QueryLedger, evaluate


__all__ = [
    "FamilyKind",
    "ProblemFamily",
    "RelationParams",
    "ambainis_bound",
    "answer",
    "count_collisions",
    "enumerate_family",
    "relation_params",
    "relation_table",
    "scaling_check",
]

log = get_logger(__name__)

MAX_SIZE = 8


class FamilyKind(str, enum.Enum):
    PARITY_COLLISION = "parity-collision"
    NO_COLLISION = "no-collision"
    NO_RANGE = "no-range"


def count_collisions(
    f: FunctionInstance | Sequence[int], ledger: QueryLedger | None = None
) -> int:
    """
    ``|C_f|``, the number of pairs ``x < y`` with ``f(x) = f(y)``.

    With a *ledger*, every value is read through `qclaw.oracle.evaluate`.
    """
    if not isinstance(f, FunctionInstance):
        f = FunctionInstance.of(f)
    if ledger is not None:
        values: Iterable[int] = (evaluate(f, i, ledger) for i in range(1, f.size + 1))
    else:
        values = f.values

    return sum(c * (c - 1) // 2 for c in Counter(values).values())


def answer(kind: FamilyKind | str, values: Sequence[int]) -> int:
    """
    ``Φ(f)``: the parity of ``|C_f|``, the lone element, or the missing range
    value, depending on *kind*.
    """
    kind = FamilyKind(kind)
    if kind is FamilyKind.PARITY_COLLISION:
        return count_collisions(values) % 2

    counts = Counter(values)
    if kind is FamilyKind.NO_COLLISION:
        lone = [x for x, v in enumerate(values, 1) if counts[v] == 1]
        if len(lone) != 1:
            msg = f"{list(values)} has {len(lone)} lone elements"
            raise DomainError(msg)
        return lone[0]

    missing = [v for v in range(1, len(values) + 1) if v not in counts]
    if len(missing) != 1:
        msg = f"{list(values)} misses {len(missing)} range values"
        raise DomainError(msg)
    return missing[0]


@dataclass(frozen=True)
class RelationParams:
    m: int
    m_prime: int
    l: int  # noqa: E741
    l_prime: int

    @property
    def bound(self) -> float:
        return ambainis_bound(self)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return self.m, self.m_prime, self.l, self.l_prime


def ambainis_bound(params: RelationParams | Sequence[int]) -> float:
    """
    ``√(m·m′/(l·l′))``.

    Raises:
        DegenerateError: if an entry is not positive.
    """
    m, m_prime, l, l_prime = (
        params.as_tuple() if isinstance(params, RelationParams) else params
    )
    if min(m, m_prime, l, l_prime) <= 0:
        msg = f"relation parameters must be positive, got {(m, m_prime, l, l_prime)}"
        raise DegenerateError(msg)

    return math.sqrt(m * m_prime / (l * l_prime))


@dataclass(frozen=True)
class ProblemFamily:
    """
    The input sets of one family at size ``N``.

    Rows of ``a`` and ``b`` are value tables with entries in ``[N]``;
    ``phi_a``/``phi_b`` hold each row's answer.  For the no-collision and
    no-range families ``A = B``.
    """

    kind: FamilyKind
    n: int
    a: np.ndarray
    b: np.ndarray
    phi_a: np.ndarray
    phi_b: np.ndarray

    @property
    def symmetric(self) -> bool:
        return self.kind is not FamilyKind.PARITY_COLLISION

    def answer(self, values: Sequence[int]) -> int:
        return answer(self.kind, values)


def _matchings(points: tuple[int, ...], pairs: int) -> Iterator[list[tuple[int, int]]]:
    """
    Every set of *pairs* disjoint pairs from *points*.
    """
    if pairs == 0:
        yield []
        return
    if len(points) < 2 * pairs:
        return
    first, rest = points[0], points[1:]
    # first paired with some later point
    for k, partner in enumerate(rest):
        remaining = rest[:k] + rest[k + 1 :]
        for tail in _matchings(remaining, pairs - 1):
            yield [(first, partner), *tail]
    # first stays single
    yield from _matchings(rest, pairs)


def _tables(n: int, matchings: Iterable[list[tuple[int, int]]]) -> np.ndarray:
    """
    All functions ``[N] → [N]`` whose colliding pairs are exactly one of
    *matchings*, as an ``(count, N)`` array of values.
    """
    chunks = []
    assignments: dict[int, np.ndarray] = {}
    for matching in matchings:
        paired = {x for pair in matching for x in pair}
        blocks: list[tuple[int, ...]] = [*matching]
        blocks += [(x,) for x in range(n) if x not in paired]
        width = len(blocks)
        if width not in assignments:
            assignments[width] = np.array(
                list(itertools.permutations(range(1, n + 1), width)), dtype=np.int8
            )
        values = assignments[width]
        table = np.empty((len(values), n), dtype=np.int8)
        for k, block in enumerate(blocks):
            for x in block:
                table[:, x] = values[:, k]
        chunks.append(table)

    return np.concatenate(chunks) if chunks else np.empty((0, n), dtype=np.int8)


def _answers(kind: FamilyKind, table: np.ndarray) -> np.ndarray:
    n = table.shape[1]
    counts = np.stack([(table == v).sum(axis=1, dtype=np.int8) for v in range(1, n + 1)], axis=1)
    if kind is FamilyKind.PARITY_COLLISION:
        return (counts * (counts - 1) // 2).sum(axis=1) % 2
    if kind is FamilyKind.NO_RANGE:
        return np.argmax(counts == 0, axis=1) + 1

    # counts of each position's own value; the lone one has count 1
    own = np.take_along_axis(counts, table.astype(np.int64) - 1, axis=1)
    return np.argmax(own == 1, axis=1) + 1


def enumerate_family(kind: FamilyKind | str, n: int) -> ProblemFamily:
    """
    Build ``A``, ``B`` and the answers of a family at size *n*.

    Raises:
        DomainError: if *n* breaks the family's divisibility or parity rule,
            or exceeds the enumeration ceiling of 8.
    """
    kind = FamilyKind(kind)
    if not 2 <= n <= MAX_SIZE:
        msg = f"enumeration needs 2 <= N <= {MAX_SIZE}, got {n}"
        raise DomainError(msg)

    points = tuple(range(n))
    if kind is FamilyKind.PARITY_COLLISION:
        if n % 4:
            msg = f"parity-collision needs 4 | N, got {n}"
            raise DomainError(msg)
        a = _tables(n, _matchings(points, n // 4))
        b = _tables(n, _matchings(points, n // 4 + 1))
    elif kind is FamilyKind.NO_COLLISION:
        if n % 2 == 0 or n < 3:
            msg = f"no-collision needs an odd N >= 3, got {n}"
            raise DomainError(msg)
        a = b = _tables(n, _matchings(points, (n - 1) // 2))
    else:
        a = b = _tables(n, [[(0, 1)]])

    phi_a = _answers(kind, a)
    phi_b = phi_a if b is a else _answers(kind, b)
    log.debug("family_enumerated", kind=kind.value, n=n, size_a=len(a), size_b=len(b))

    return ProblemFamily(kind, n, a, b, phi_a, phi_b)


def _encode(table: np.ndarray, n: int) -> np.ndarray:
    """
    Base-``N`` code of every row, position ``x`` weighted by ``N^x``.
    """
    weights = n ** np.arange(n, dtype=np.int64)
    return (table.astype(np.int64) - 1) @ weights


def _partner_counts(
    src: np.ndarray, src_phi: np.ndarray, dst: np.ndarray, dst_phi: np.ndarray, n: int
) -> np.ndarray:
    """
    For every row of *src* and position ``x``: how many rows of *dst* differ
    from it exactly at ``x`` and have a different answer.
    """
    codes = _encode(src, n)
    dst_codes = _encode(dst, n)
    order = np.argsort(dst_codes)
    dst_codes = dst_codes[order]
    dst_phi = dst_phi[order]

    counts = np.zeros((len(src), n), dtype=np.int8)
    for x in range(n):
        weight = np.int64(n) ** x
        current = src[:, x].astype(np.int64)
        for v in range(1, n + 1):
            moved = current != v
            neighbour = codes + (v - current) * weight
            pos = np.searchsorted(dst_codes, neighbour)
            pos = np.minimum(pos, len(dst_codes) - 1)
            hit = moved & (dst_codes[pos] == neighbour) & (dst_phi[pos] != src_phi)
            counts[:, x] += hit

    return counts


def relation_params(family: ProblemFamily) -> tuple[RelationParams, int]:
    """
    Build ``R`` exhaustively and return its parameters with ``|R|``.

    Raises:
        DegenerateError: if ``R`` is empty.
    """
    n = family.n
    from_a = _partner_counts(family.a, family.phi_a, family.b, family.phi_b, n)
    if family.symmetric:
        from_b = from_a
    else:
        from_b = _partner_counts(family.b, family.phi_b, family.a, family.phi_a, n)

    size = int(from_a.sum())
    if size == 0:
        msg = f"the {family.kind.value} relation at N={n} is empty"
        raise DegenerateError(msg)
    if int(from_b.sum()) != size:
        msg = "relation counted from both sides disagrees"
        raise AssertionError(msg)

    params = RelationParams(
        m=int(from_a.sum(axis=1).min()),
        m_prime=int(from_b.sum(axis=1).min()),
        l=int(from_a.max()),
        l_prime=int(from_b.max()),
    )
    log.debug("relation_built", kind=family.kind.value, n=n, relation_size=size)

    return params, size


def _row(kind: FamilyKind | str, n: int) -> dict[str, Any]:
    family = enumerate_family(kind, n)
    params, size = relation_params(family)
    return {
        "kind": family.kind.value,
        "n": n,
        "size_a": len(family.a),
        "size_b": len(family.b),
        "relation_size": size,
        "m": params.m,
        "m_prime": params.m_prime,
        "l": params.l,
        "l_prime": params.l_prime,
        "bound": ambainis_bound(params),
    }


def scaling_check(
    kind: FamilyKind | str, sizes: Iterable[int]
) -> list[tuple[int, float]]:
    """
    ``(N, bound)`` for every size.
    """
    return [(row["n"], row["bound"]) for row in relation_table([(kind, n) for n in sizes])]


def relation_table(
    kinds_sizes: Iterable[tuple[FamilyKind | str, int]],
) -> list[dict[str, Any]]:
    """
    One row per ``(kind, N)`` with the columns ``kind, n, size_a, size_b,
    relation_size, m, m_prime, l, l_prime, bound``.
    """
    return [_row(kind, n) for kind, n in kinds_sizes]
