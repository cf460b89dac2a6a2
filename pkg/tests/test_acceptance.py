"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
complete. The corpus sweep (catalog up to order 200 plus the two large
heisenberg_frobenius groups) runs once and is shared by the criteria that
consume it.
"""

import json
import time

import pytest

from nacent import (
    NotAGroup,
    build,
    builtin_catalog,
    cent_stats,
    centralizer_partition,
    classify,
    from_cayley_table,
    full_report,
    hughes_subgroup,
    is_hughes_thompson_type,
    is_nilpotent,
    is_normal_partition,
    is_partition,
    load_group,
    save_group,
)
from nacent.cli import _run_all
from oracles import naive_centralizer_sets, table_of

FLAGSHIPS = [("heisenberg_frobenius(7,3)", 1100), ("heisenberg_frobenius(13,3)", 7000)]


def report_line(num: int, description: str, ok: bool, detail: str = "") -> None:
    tag = "PASS" if ok else "FAIL"
    tail = f"  [{detail}]" if detail else ""
    print(f"{tag} criterion {num}: {description}{tail}")


@pytest.fixture(scope="module")
def sweep():
    """Catalog(200) plus both flagship groups, at parallelism 4."""
    tasks = [(name, "spec", name, guard) for name, guard in FLAGSHIPS]
    tasks += [(s.name, "spec", s.name, 200) for s in builtin_catalog(200)]
    start = time.monotonic()
    records = _run_all(tasks, parallelism=4)
    elapsed = time.monotonic() - start
    return records, elapsed


def test_criterion_1_flagship_exact_counts():
    start = time.monotonic()
    G = build("heisenberg_frobenius(7,3)")
    rep = full_report(G)
    elapsed = time.monotonic() - start

    ok = True
    ok &= rep.order == 1029
    ok &= rep.center_order == 1
    ok &= rep.nacent_count == 2
    ok &= rep.category == "two_nacent" and rep.case == "C"
    counting = rep.case_data["counting"]
    ok &= counting["cent_ca"] == 9
    ok &= counting["ca_over_z"] == 343
    ok &= rep.cent_count == 9 + 343 + 1 == 353
    ok &= counting["formula_ca_over_z"] is True
    ok &= elapsed < 30.0

    # independent brute-force oracle over the raw table
    table = table_of(G)
    naive = naive_centralizer_sets(table)
    ok &= len(naive) == 353
    st = cent_stats(G)
    ok &= {frozenset(c.members().tolist()) for c in st.cent} == naive

    report_line(1, "flagship exact counts (353 = 9 + 343 + 1, case C)", ok,
                f"{elapsed:.1f}s")
    assert ok


def test_criterion_2_iff_sweep(sweep):
    records, elapsed = sweep
    bad = []
    for r in records:
        iff = r["case_data"]["iff"]
        if not (iff["forward_ok"] and iff["converse_ok"]):
            bad.append(r["group_id"])
    ok = not bad and elapsed < 60.0
    report_line(2, "characterization holds both ways over catalog(200) + flagships",
                ok, f"{len(records)} groups, {elapsed:.1f}s")
    assert not bad, bad
    assert elapsed < 60.0


def test_criterion_3_consequence_sweep(sweep):
    records, _ = sweep
    two_nacent = [r for r in records if r["category"] == "two_nacent"]
    keys = ("a", "b", "c", "d", "e", "f", "normal_ca", "ca_group")
    bad = [r["group_id"] for r in two_nacent
           if any(r["consequences"][k] is not True for k in keys)]
    ok = bool(two_nacent) and not bad
    report_line(3, "all consequences hold on every two-nacent group", ok,
                f"{len(two_nacent)} two-nacent group(s)")
    assert two_nacent, "sweep contained no two-nacent group"
    assert not bad, bad


def test_criterion_4_hughes_property():
    bad = []
    checked = 0
    for spec in builtin_catalog(200):
        G = build(spec.name)
        p = is_hughes_thompson_type(G)
        if p is None:
            continue
        checked += 1
        hp = hughes_subgroup(G, p)
        if G.order != p * hp.size or not is_nilpotent(hp):
            bad.append(spec.name)
    ok = not bad and checked > 0
    report_line(4, "Hughes subgroup has index exactly p and is nilpotent", ok,
                f"{checked} Hughes-type groups")
    assert checked > 0
    assert not bad, bad


def test_criterion_5_cent_oracle_equivalence():
    bad = []
    checked = 0
    for spec in builtin_catalog(200):
        G = build(spec.name)
        if G.order > 200:
            continue
        checked += 1
        st = cent_stats(G)
        got = {frozenset(c.members().tolist()) for c in st.cent}
        if got != naive_centralizer_sets(table_of(G)):
            bad.append(spec.name)
    ok = not bad
    report_line(5, "centralizer dedup equals naive recomputation (order <= 200)",
                ok, f"{checked} groups")
    assert not bad, bad


def test_criterion_6_fitting_oracle():
    from nacent import fitting_subgroup
    from oracles import naive_fitting
    bad = []
    checked = 0
    for spec in builtin_catalog(100):
        G = build(spec.name)
        if G.order > 100:
            continue
        checked += 1
        got = set(fitting_subgroup(G).members().tolist())
        if got != naive_fitting(table_of(G)):
            bad.append(spec.name)
    ok = not bad
    report_line(6, "Fitting subgroup equals brute-force normal-nilpotent join "
                   "(order <= 100)", ok, f"{checked} groups")
    assert not bad, bad


def test_criterion_7_partition_machinery(sweep):
    records, _ = sweep
    bad = []
    for r in records:
        if r["category"] == "two_nacent":
            part = r["case_data"]["partition"]
            if not part.get("exists"):
                bad.append(r["group_id"])

    s3 = build("symmetric(3)")
    part = centralizer_partition(s3)
    ok_s3 = (part is not None and len(part.components) == 4
             and is_partition(part.quotient, part.components)
             and is_normal_partition(part.quotient, part))

    q8 = build("dicyclic(2)")
    part = centralizer_partition(q8)
    ok_q8 = (part is not None and len(part.components) == 3
             and part.quotient.order == 4
             and is_partition(part.quotient, part.components)
             and is_normal_partition(part.quotient, part))

    ok = not bad and ok_s3 and ok_q8
    report_line(7, "centralizer partition exists on two-nacent groups; "
                   "S3 -> 4 components, Q8/Z -> 3", ok)
    assert not bad, bad
    assert ok_s3 and ok_q8


def test_criterion_8_roundtrip_and_validation(tmp_path):
    fixtures = ["cyclic(1)", "cyclic(7)", "symmetric(3)", "symmetric(4)",
                "dicyclic(2)", "dihedral(6)", "heisenberg(3)", "agl1(5)",
                "sl23", "direct_product(cyclic(2),dihedral(4))"]
    stable = 0
    for i, spec in enumerate(fixtures):
        G = build(spec)
        p1 = tmp_path / f"g{i}a.json"
        p2 = tmp_path / f"g{i}b.json"
        save_group(G, p1)
        save_group(load_group(p1), p2)
        if p1.read_bytes() == p2.read_bytes():
            stable += 1

    rejected = False
    law = ""
    table = [[int(v) for v in row] for row in build("symmetric(3)").table]
    table[4][5] = table[4][4]  # mutate one entry
    try:
        from_cayley_table(table)
    except NotAGroup as exc:
        rejected = True
        law = exc.law
    ok = stable == len(fixtures) and rejected and bool(law)
    report_line(8, "save/load round-trip byte-stable; corrupted table rejected",
                ok, f"{stable}/{len(fixtures)} stable, law={law!r}")
    assert stable == len(fixtures)
    assert rejected and law
