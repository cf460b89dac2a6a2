"""Naive reference implementations used to cross-check the library.

Everything here is definitional pure Python over a raw multiplication
table (list of lists); nothing reuses the package's bitset machinery.
"""

from __future__ import annotations


def table_of(G) -> list[list[int]]:
    return [[int(v) for v in row] for row in G.table]


def naive_centralizer(table, x) -> frozenset[int]:
    n = len(table)
    return frozenset(g for g in range(n) if table[g][x] == table[x][g])


def naive_center(table) -> frozenset[int]:
    n = len(table)
    return frozenset(z for z in range(n)
                     if all(table[z][g] == table[g][z] for g in range(n)))


def naive_centralizer_sets(table) -> set[frozenset[int]]:
    return {naive_centralizer(table, x) for x in range(len(table))}


def naive_is_abelian_subset(table, members) -> bool:
    ms = sorted(members)
    return all(table[a][b] == table[b][a] for a in ms for b in ms)


def naive_orders(table) -> list[int]:
    n = len(table)
    out = []
    for x in range(n):
        cur, k = x, 1
        while cur != 0:
            cur = table[cur][x]
            k += 1
        out.append(k)
    return out


def naive_closure(table, seed) -> frozenset[int]:
    n = len(table)
    member = bytearray(n)
    member[0] = 1
    seeds = sorted({int(s) for s in seed})
    frontier = [0]
    for s in seeds:
        if not member[s]:
            member[s] = 1
            frontier.append(s)
    while frontier:
        nxt = []
        for a in frontier:
            row = table[a]
            for s in seeds:
                b = row[s]
                if not member[b]:
                    member[b] = 1
                    nxt.append(b)
        frontier = nxt
    return frozenset(i for i in range(n) if member[i])


def naive_all_subgroups(table) -> set[frozenset[int]]:
    """Every subgroup, by growing generator sets one element at a time."""
    n = len(table)
    triv = frozenset([0])
    subs = {triv}
    frontier = [triv]
    while frontier:
        nxt = []
        for H in frontier:
            for x in range(n):
                if x in H:
                    continue
                H2 = naive_closure(table, set(H) | {x})
                if H2 not in subs:
                    subs.add(H2)
                    nxt.append(H2)
        frontier = nxt
    return subs


def naive_inverses(table) -> list[int]:
    n = len(table)
    inv = [0] * n
    for i in range(n):
        for j in range(n):
            if table[i][j] == 0:
                inv[i] = j
                break
    return inv


def naive_conjugate(table, inv, members, g) -> frozenset[int]:
    return frozenset(table[table[inv[g]][m]][g] for m in members)


def naive_normal_subgroups(table) -> set[frozenset[int]]:
    inv = naive_inverses(table)
    n = len(table)
    return {H for H in naive_all_subgroups(table)
            if all(naive_conjugate(table, inv, H, g) == H for g in range(n))}


def _prime_powers(n: int) -> dict[int, int]:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def subtable(table, members) -> list[list[int]]:
    ms = sorted(members)
    pos = {m: i for i, m in enumerate(ms)}
    return [[pos[table[a][b]] for b in ms] for a in ms]


def naive_is_nilpotent_sylow_count(table, subs=None) -> bool:
    """Nilpotent iff there is exactly one subgroup of each full prime-power
    order (a unique Sylow subgroup for every prime). Needs the subgroup
    lattice, so only affordable on small groups."""
    n = len(table)
    if n == 1:
        return True
    if subs is None:
        subs = naive_all_subgroups(table)
    for p, k in _prime_powers(n).items():
        target = p ** k
        if sum(1 for H in subs if len(H) == target) != 1:
            return False
    return True


def naive_is_nilpotent(table, members=None) -> bool:
    """Nilpotent iff every two elements of coprime orders commute.

    (Elements of coprime order commuting forces every subgroup generated
    by the p-elements to be a normal Sylow subgroup, and conversely a
    direct product of p-groups commutes across factors.) Checked against
    naive_is_nilpotent_sylow_count on small groups in the test suite.
    """
    ms = sorted(members) if members is not None else range(len(table))
    ms = list(ms)
    orders = naive_orders(table)
    from math import gcd
    for i, a in enumerate(ms):
        for b in ms[i + 1:]:
            if gcd(orders[a], orders[b]) == 1 and table[a][b] != table[b][a]:
                return False
    return True


def naive_conjugacy_classes(table) -> list[frozenset[int]]:
    n = len(table)
    inv = naive_inverses(table)
    seen = [False] * n
    classes = []
    for x in range(n):
        if seen[x]:
            continue
        orbit = {table[table[inv[g]][x]][g] for g in range(n)}
        for v in orbit:
            seen[v] = True
        classes.append(frozenset(orbit))
    return classes


def naive_class_join_normals(table) -> set[frozenset[int]]:
    """Normal subgroups as joins of conjugacy-class closures."""
    atoms = [naive_closure(table, cls) for cls in naive_conjugacy_classes(table)]
    found = {frozenset([0])}
    for atom in atoms:
        new = {naive_closure(table, H | atom) for H in found}
        found |= new
    return found


def naive_fitting(table) -> frozenset[int]:
    """Join of all normal nilpotent subgroups."""
    normals = naive_class_join_normals(table)
    nn = [H for H in normals if naive_is_nilpotent(table, H)]
    seed = set()
    for H in nn:
        seed |= H
    return naive_closure(table, seed)
