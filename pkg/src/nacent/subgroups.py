"""Subgroup algebra over a fixed parent group.

Subgroups are bitsets (arbitrary-width Python ints) over the parent's
element indices, so equality, intersection and deduplication are plain
integer operations. All functions here are pure; derived structures that
are expensive to recompute (center, centralizer classes, generators,
conjugacy classes) are memoized on the parent group.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import exhaustive_normality
from .errors import NotNormal, ParentMismatch
from .groups import FiniteGroup

# ---------------------------------------------------------------------------
# bitset helpers


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def indices_of(mask: int, n: int) -> np.ndarray:
    """Ascending element indices present in the bitset."""
    nbytes = (n + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    bits = np.unpackbits(raw, bitorder="little")[:n]
    return np.nonzero(bits)[0]


def bool_of(mask: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def mask_of_bool(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


@dataclass(frozen=True)
class Subgroup:
    """Membership bitset over a parent group's element indices."""

    parent: FiniteGroup
    mask: int

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def members(self) -> np.ndarray:
        return indices_of(self.mask, self.parent.order)

    def member_bool(self) -> np.ndarray:
        return bool_of(self.mask, self.parent.order)

    def contains(self, x: int) -> bool:
        return bool((self.mask >> int(x)) & 1)

    def is_whole(self) -> bool:
        return self.size == self.parent.order

    def is_trivial(self) -> bool:
        return self.mask == 1

    def __le__(self, other: "Subgroup") -> bool:
        _check_same_parent(self, other)
        return self.mask & ~other.mask == 0

    def __repr__(self) -> str:
        return f"Subgroup(size={self.size} of {self.parent.name!r})"


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, 1)


def whole_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (1 << G.order) - 1)


def _check_same_parent(H1: Subgroup, H2: Subgroup) -> None:
    if H1.parent is not H2.parent:
        raise ParentMismatch(
            f"subgroups of {H1.parent.name!r} and {H2.parent.name!r} cannot be combined")


def _cached(G: FiniteGroup, key: str, compute):
    try:
        return G._cache[key]
    except KeyError:
        value = compute()
        G._cache[key] = value
        return value


# ---------------------------------------------------------------------------
# centralizers and center


def centralizer_mask(G: FiniteGroup, x: int) -> int:
    t = G.table
    return mask_of_bool(t[:, x] == t[x, :])


def centralizer(G: FiniteGroup, x: int) -> Subgroup:
    """All elements commuting with x; contains the center and x itself."""
    return Subgroup(G, centralizer_mask(G, x))


def center_mask(G: FiniteGroup) -> int:
    def compute():
        t = G.table
        return mask_of_bool((t == t.T).all(axis=1))
    return _cached(G, "center_mask", compute)


def center(G: FiniteGroup) -> Subgroup:
    """Elements commuting with everything."""
    return Subgroup(G, center_mask(G))


@dataclass(frozen=True)
class CentralizerTable:
    """Deduplicated element centralizers of one group.

    `elem_class[x]` is the class id of C(x); classes are numbered by first
    witness, so `witnesses` is ascending.
    """

    elem_class: np.ndarray
    masks: tuple[int, ...]
    witnesses: tuple[int, ...]
    sizes: tuple[int, ...]
    abelian: tuple[bool, ...]


def centralizer_table(G: FiniteGroup) -> CentralizerTable:
    def compute():
        t = G.table
        n = G.order
        commutes = (t == t.T)  # commutes[g, x]: g commutes with x
        packed = np.packbits(commutes, axis=0, bitorder="little")
        class_of: dict[int, int] = {}
        elem_class = np.empty(n, dtype=np.int32)
        masks: list[int] = []
        witnesses: list[int] = []
        for x in range(n):
            m = int.from_bytes(packed[:, x].tobytes(), "little")
            cid = class_of.get(m)
            if cid is None:
                cid = len(masks)
                class_of[m] = cid
                masks.append(m)
                witnesses.append(x)
            elem_class[x] = cid
        abelian = []
        for m in masks:
            mem = indices_of(m, n)
            sub = t[np.ix_(mem, mem)]
            abelian.append(bool((sub == sub.T).all()))
        return CentralizerTable(
            elem_class=elem_class,
            masks=tuple(masks),
            witnesses=tuple(witnesses),
            sizes=tuple(m.bit_count() for m in masks),
            abelian=tuple(abelian),
        )
    return _cached(G, "centralizer_table", compute)


# ---------------------------------------------------------------------------
# generation


def generated_mask(G: FiniteGroup, seeds) -> int:
    """Bitset of the smallest subgroup containing the seed elements."""
    t = G.table
    n = G.order
    seed_arr = np.unique(np.asarray(list(seeds), dtype=np.int64)) if seeds is not None else np.empty(0, np.int64)
    member = np.zeros(n, dtype=bool)
    member[0] = True
    if seed_arr.size == 0:
        return 1
    frontier = seed_arr[~member[seed_arr]]
    member[frontier] = True
    # right-multiplication closure; in a finite group powers supply inverses
    while frontier.size:
        prods = np.unique(t[np.ix_(frontier, seed_arr)])
        new = prods[~member[prods]]
        member[new] = True
        frontier = new
    return mask_of_bool(member)


def generated_subgroup(G: FiniteGroup, seeds) -> Subgroup:
    """Smallest subgroup of G containing the given elements."""
    return Subgroup(G, generated_mask(G, seeds))


def cyclic_span_mask(G: FiniteGroup, x: int) -> int:
    m = 1
    cur = int(x)
    while cur != 0:
        m |= 1 << cur
        cur = int(G.table[cur, x])
    return m


def generators(G: FiniteGroup) -> tuple[int, ...]:
    """A small generating set, grown greedily by least uncovered element."""
    def compute():
        gens: list[int] = []
        covered = 1
        while covered.bit_count() < G.order:
            x = 0
            while (covered >> x) & 1:
                x += 1
            gens.append(x)
            covered = generated_mask(G, gens)
        return tuple(gens)
    return _cached(G, "generators", compute)


# ---------------------------------------------------------------------------
# conjugation and normality


def conjugate_mask(G: FiniteGroup, mask: int, g: int) -> int:
    t = G.table
    mem = indices_of(mask, G.order)
    conj = t[t[G.inverses[g], mem], g]
    return mask_of(conj)


def conjugate_subgroup(G: FiniteGroup, H: Subgroup, g: int) -> Subgroup:
    """g^-1 H g; same size as H."""
    return Subgroup(G, conjugate_mask(G, H.mask, g))


def is_normal(G: FiniteGroup, H: Subgroup, exhaustive: bool | None = None) -> bool:
    """True iff g^-1 H g = H for all g.

    Checked on a cached generating set of G; `exhaustive` (or the
    NACENT_EXHAUSTIVE_NORMALITY environment variable) forces the
    definitional scan over every element.
    """
    if exhaustive is None:
        exhaustive = exhaustive_normality()
    if H.mask == 1 or H.is_whole():
        return True
    scan = range(G.order) if exhaustive else generators(G)
    return all(conjugate_mask(G, H.mask, g) == H.mask for g in scan)


def normalizer_mask(G: FiniteGroup, mask: int) -> int:
    """Bitset of { g : g^-1 (mask) g = mask }."""
    t = G.table
    n = G.order
    mem = indices_of(mask, n)
    inside = bool_of(mask, n)
    t1 = t[np.ix_(G.inverses, mem)]              # inv(g) * h
    t2 = t[t1, np.arange(n, dtype=np.int64)[:, None]]  # (inv(g) * h) * g
    return mask_of_bool(inside[t2].all(axis=1))


def conjugacy_classes(G: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """Conjugacy classes as ascending index tuples, ordered by least member."""
    def compute():
        t = G.table
        n = G.order
        inv = G.inverses
        seen = np.zeros(n, dtype=bool)
        classes = []
        for x in range(n):
            if seen[x]:
                continue
            orbit = np.unique(t[t[inv, x], np.arange(n)])
            seen[orbit] = True
            classes.append(tuple(int(v) for v in orbit))
        return tuple(classes)
    return _cached(G, "conjugacy_classes", compute)


# ---------------------------------------------------------------------------
# commutators


def commutator_values(G: FiniteGroup, right_mask: int | None = None,
                      left_mask: int | None = None) -> np.ndarray:
    """Distinct values [x, y] = x^-1 y^-1 x y with x in left, y in right.

    Defaults cover the whole group on both sides. Computed in row blocks
    to bound memory on large tables.
    """
    t = G.table
    n = G.order
    inv = G.inverses
    left = np.arange(n) if left_mask is None else indices_of(left_mask, n)
    right = np.arange(n) if right_mask is None else indices_of(right_mask, n)
    if left.size == 0 or right.size == 0:
        return np.array([0], dtype=np.int64)
    inv_right = inv[right]
    out: set[int] = set()
    block = max(1, 4_000_000 // max(1, right.size))
    for start in range(0, left.size, block):
        xs = left[start:start + block]
        a = t[np.ix_(inv[xs], inv_right)]          # x^-1 y^-1
        b = t[a, xs[:, None]]                      # x^-1 y^-1 x
        c = t[b, right[None, :]]                   # x^-1 y^-1 x y
        out.update(int(v) for v in np.unique(c))
    return np.array(sorted(out), dtype=np.int64)


def commutator_subgroup(G: FiniteGroup) -> Subgroup:
    """Subgroup generated by all commutators."""
    def compute():
        return generated_mask(G, commutator_values(G))
    return Subgroup(G, _cached(G, "commutator_mask", compute))


# ---------------------------------------------------------------------------
# intersections / equality


def subgroup_intersection(H1: Subgroup, H2: Subgroup) -> Subgroup:
    _check_same_parent(H1, H2)
    return Subgroup(H1.parent, H1.mask & H2.mask)


def subgroup_equal(H1: Subgroup, H2: Subgroup) -> bool:
    _check_same_parent(H1, H2)
    return H1.mask == H2.mask


# ---------------------------------------------------------------------------
# quotients


@dataclass(frozen=True)
class QuotientMap:
    """A normal subgroup, the quotient group, and the projection map."""

    parent: FiniteGroup
    kernel: Subgroup
    quotient: FiniteGroup
    projection: np.ndarray  # parent index -> coset index

    def image_mask(self, H: Subgroup) -> int:
        if H.parent is not self.parent:
            raise ParentMismatch("subgroup does not live in the quotient's parent")
        return mask_of(np.unique(self.projection[H.members()]))

    def image(self, H: Subgroup) -> Subgroup:
        return Subgroup(self.quotient, self.image_mask(H))


def quotient(G: FiniteGroup, N: Subgroup, exhaustive: bool | None = None) -> QuotientMap:
    """Quotient of G by a normal subgroup, cosets labeled by least member."""
    if N.parent is not G:
        raise ParentMismatch("kernel is not a subgroup of the given group")
    if not is_normal(G, N, exhaustive=exhaustive):
        raise NotNormal(f"subgroup of size {N.size} is not normal in {G.name!r}")
    n = G.order
    if N.mask == 1:
        proj = np.arange(n, dtype=np.int32)
        qm = QuotientMap(G, N, G, proj)
    elif N.is_whole():
        proj = np.zeros(n, dtype=np.int32)
        q = FiniteGroup(np.zeros((1, 1), dtype=np.int32), name=f"{G.name}/G")
        qm = QuotientMap(G, N, q, proj)
    else:
        t = G.table
        mem = N.members()
        proj = np.full(n, -1, dtype=np.int32)
        reps = []
        for g in range(n):
            if proj[g] < 0:
                proj[t[g, mem]] = len(reps)
                reps.append(g)
        reps_arr = np.asarray(reps, dtype=np.int64)
        qtable = proj[t[np.ix_(reps_arr, reps_arr)]]
        q = FiniteGroup(qtable, name=f"{G.name}/{N.size}")
        qm = QuotientMap(G, N, q, proj)
    _validate_quotient(qm)
    qm.projection.setflags(write=False)
    return qm


def _validate_quotient(qm: QuotientMap) -> None:
    t = qm.parent.table
    proj = qm.projection
    qt = qm.quotient.table
    n = qm.parent.order
    if qm.quotient.order * qm.kernel.size != n:
        raise NotNormal("quotient size does not multiply back to the parent order")
    # homomorphism property, in row blocks
    block = max(1, 8_000_000 // n)
    for start in range(0, n, block):
        rows = slice(start, min(n, start + block))
        if not np.array_equal(proj[t[rows]], qt[proj[rows]][:, proj]):
            raise NotNormal("projection is not a homomorphism")
    if mask_of_bool(proj == 0) != qm.kernel.mask:
        raise NotNormal("projection kernel differs from the given subgroup")


def preimage(qm: QuotientMap, S: Subgroup) -> Subgroup:
    """Pull a subgroup of the quotient back to the parent."""
    if S.parent is not qm.quotient:
        raise ParentMismatch("subgroup does not live in the quotient group")
    sel = S.member_bool()[qm.projection]
    return Subgroup(qm.parent, mask_of_bool(sel))


# ---------------------------------------------------------------------------
# standalone re-tabling


def subgroup_as_group(H: Subgroup, name: str | None = None) -> tuple[FiniteGroup, np.ndarray]:
    """Extract a subgroup into its own group on compacted indices.

    Returns the standalone group and the embedding array mapping its
    element i to the parent index. Identity stays at 0.
    """
    G = H.parent
    if H.is_whole():
        return G, np.arange(G.order, dtype=np.int64)
    mem = H.members().astype(np.int64)
    pos = np.zeros(G.order, dtype=np.int32)
    pos[mem] = np.arange(mem.size, dtype=np.int32)
    sub = pos[G.table[np.ix_(mem, mem)]]
    g = FiniteGroup(sub, name=name or f"{G.name}[{mem.size}]")
    return g, mem
