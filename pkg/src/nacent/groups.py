"""Finite groups as explicit multiplication tables on 0-based indices."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .config import order_guard
from .errors import InvalidPermutation, NotAGroup, OrderLimitExceeded

# Full O(n^3) associativity verification up to this order; above it, a
# deterministic sample of 10*n^2 triples (all (i,j) pairs against 10
# pseudo-random k) is checked instead, on top of the full Latin-square,
# identity and inverse checks.
ASSOC_FULL_LIMIT = 512
ASSOC_SAMPLE_SLICES = 10


class FiniteGroup:
    """A finite group given by its Cayley table.

    Elements are the indices 0..n-1, the identity is element 0 and
    ``table[i, j]`` is the index of the product i*j. Instances are
    immutable after construction and safe to share between threads.
    """

    __slots__ = ("order", "table", "inverses", "orders", "name", "_cache")

    def __init__(self, table: np.ndarray, name: str = "group"):
        table = np.ascontiguousarray(table, dtype=np.int32)
        _validate_table(table)
        n = table.shape[0]
        self.order = n
        self.table = table
        self.table.setflags(write=False)
        self.name = name
        self.inverses = _inverses(table)
        self.inverses.setflags(write=False)
        self.orders = _element_orders(table)
        self.orders.setflags(write=False)
        if not np.all(n % self.orders == 0):
            x = int(np.nonzero(n % self.orders)[0][0])
            raise NotAGroup("lagrange", (x,), f"element order {self.orders[x]} does not divide {n}")
        self._cache: dict = {}

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def power(self, a: int, k: int) -> int:
        """a**k for any integer k (reduced modulo the element order)."""
        k %= int(self.orders[a])
        acc = 0
        for _ in range(k):
            acc = int(self.table[acc, a])
        return acc

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


def from_cayley_table(table: Sequence[Sequence[int]] | np.ndarray,
                      name: str = "group",
                      max_order: int | None = None) -> FiniteGroup:
    """Validate a raw multiplication table and return the group.

    The identity is relocated to index 0 by relabeling; the relative order
    of the remaining elements is preserved. Raises NotAGroup naming the
    first violated law, OrderLimitExceeded past the order guard.
    """
    arr = np.asarray(table, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise NotAGroup("shape", (), f"expected a square table, got {arr.shape}")
    n = arr.shape[0]
    if n == 0:
        raise NotAGroup("shape", (), "empty table")
    limit = order_guard() if max_order is None else max_order
    if n > limit:
        raise OrderLimitExceeded(f"table order {n} exceeds limit {limit}")
    if arr.min() < 0 or arr.max() >= n:
        i, j = np.unravel_index(int(np.argmax((arr < 0) | (arr >= n))), arr.shape)
        raise NotAGroup("entry-range", (int(i), int(j)), f"entry {arr[i, j]} outside 0..{n - 1}")
    e = _find_identity(arr)
    if e != 0:
        relabel = np.empty(n, dtype=np.int64)
        old = [e] + [i for i in range(n) if i != e]
        relabel[old] = np.arange(n)
        arr = relabel[arr[np.ix_(old, old)]]
    return FiniteGroup(arr, name=name)


def from_permutations(generators: Sequence[Sequence[int]],
                      name: str = "group",
                      max_order: int | None = None) -> FiniteGroup:
    """Close a list of permutations under composition and tabulate.

    Elements are enumerated breadth-first from the identity with the
    generators applied (on the right) in the given order, so the
    enumeration is deterministic. Composition is (a*b)(x) = a(b(x)).
    """
    gens = []
    degree = 0
    for g in generators:
        p = tuple(int(x) for x in g)
        if sorted(p) != list(range(len(p))):
            raise InvalidPermutation(f"{g!r} is not a permutation of 0..{len(p) - 1}")
        gens.append(p)
        degree = max(degree, len(p))
    if any(len(p) != degree for p in gens):
        raise InvalidPermutation("generators act on different numbers of points")
    limit = order_guard() if max_order is None else max_order

    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                p = tuple(a[g[x]] for x in range(degree))
                if p not in index:
                    if len(elems) >= limit:
                        raise OrderLimitExceeded(
                            f"permutation closure exceeds limit {limit}")
                    index[p] = len(elems)
                    elems.append(p)
                    nxt.append(p)
        frontier = nxt
    n = len(elems)
    table = np.empty((n, n), dtype=np.int32)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            table[i, j] = index[tuple(a[b[x]] for x in range(degree))]
    return FiniteGroup(table, name=name)


def element_order(G: FiniteGroup, x: int) -> int:
    """Least m >= 1 with x**m = identity."""
    if not 0 <= x < G.order:
        raise IndexError(f"element {x} out of range for order-{G.order} group")
    return int(G.orders[x])


def exponent(G: FiniteGroup) -> int:
    """Least common multiple of all element orders."""
    return math.lcm(*(int(o) for o in np.unique(G.orders)))


# ---------------------------------------------------------------------------
# validation internals

def _find_identity(arr: np.ndarray) -> int:
    n = arr.shape[0]
    idx = np.arange(n)
    rows = np.nonzero((arr == idx[None, :]).all(axis=1))[0]
    for e in rows:
        if (arr[:, e] == idx).all():
            return int(e)
    raise NotAGroup("identity", (), "no two-sided identity element")


def _validate_table(table: np.ndarray) -> None:
    n = table.shape[0]
    idx = np.arange(n, dtype=np.int32)
    if not (table[0] == idx).all():
        j = int(np.nonzero(table[0] != idx)[0][0])
        raise NotAGroup("identity", (0, j), f"0*{j} = {table[0, j]}")
    if not (table[:, 0] == idx).all():
        i = int(np.nonzero(table[:, 0] != idx)[0][0])
        raise NotAGroup("identity", (i, 0), f"{i}*0 = {table[i, 0]}")
    if not (np.sort(table, axis=1) == idx[None, :]).all():
        i = int(np.nonzero((np.sort(table, axis=1) != idx[None, :]).any(axis=1))[0][0])
        raise NotAGroup("latin-square", (i,), f"row {i} is not a permutation")
    if not (np.sort(table, axis=0) == idx[:, None]).all():
        j = int(np.nonzero((np.sort(table, axis=0) != idx[:, None]).any(axis=0))[0][0])
        raise NotAGroup("latin-square", (j,), f"column {j} is not a permutation")
    _check_associativity(table)


def _assoc_slice_ok(table: np.ndarray, tableT: np.ndarray, k: int) -> bool:
    # (i*j)*k == i*(j*k) for all i,j at fixed k, phrased on the transposed
    # table so both gathers stream from contiguous memory.
    colk = tableT[k]
    return np.array_equal(colk[tableT], tableT[colk])


def _check_associativity(table: np.ndarray) -> None:
    n = table.shape[0]
    tableT = np.ascontiguousarray(table.T)
    if n <= ASSOC_FULL_LIMIT:
        ks: Iterable[int] = range(n)
    else:
        rng = np.random.default_rng(0x5EED ^ n)
        ks = (int(k) for k in rng.integers(0, n, ASSOC_SAMPLE_SLICES))
    for k in ks:
        if not _assoc_slice_ok(table, tableT, k):
            colk = tableT[k]
            bad = np.nonzero(colk[tableT] != tableT[colk])
            j, i = int(bad[0][0]), int(bad[1][0])
            raise NotAGroup(
                "associativity", (i, j, int(k)),
                f"({i}*{j})*{k} = {table[table[i, j], k]} but "
                f"{i}*({j}*{k}) = {table[i, table[j, k]]}")


def _inverses(table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    inv = np.empty(n, dtype=np.int32)
    rows, cols = np.nonzero(table == 0)
    inv[rows] = cols
    bad = np.nonzero(table[inv, np.arange(n)] != 0)[0]
    if bad.size:
        i = int(bad[0])
        raise NotAGroup("inverse", (i,), f"right inverse of {i} is not a left inverse")
    return inv


def _element_orders(table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    orders = np.zeros(n, dtype=np.int32)
    orders[0] = 1
    idx = np.arange(n)
    cur = idx.copy()
    k = 1
    while (orders == 0).any():
        if k > n:
            raise NotAGroup("element-order", (), "power sequence does not return to identity")
        k += 1
        cur = table[cur, idx]
        done = (cur == 0) & (orders == 0)
        orders[done] = k
    return orders
