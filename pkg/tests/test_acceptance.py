"""Acceptance criteria, one test each; every test records a PASS/FAIL line.

The lines are printed as they run (visible with ``-s``) and repeated in the
terminal summary under "acceptance criteria".
"""
import random
import time
from collections import Counter

import pytest

from ccoalition.coalition import (
    cc_oracle,
    cc_zero_family_check,
    check_certificate,
    connected_domatic_number,
    is_coalition,
    minimal_cds,
    partition_cds,
    validate_partition,
)
from ccoalition.formulas import (
    cc_auto,
    cc_cartesian_full_pair_bound,
    cc_corona,
    cc_unicyclic,
    in_family_G,
)
from ccoalition.generators import (
    add_pendant,
    cartesian,
    complete,
    corona,
    cycle,
    enumerate_graphs,
    labelled_unicyclic,
    prufer_trees,
)
from ccoalition.graph import Graph, cut_vertices, full_vertices, is_cds, is_connected
from ccoalition.sweep import OracleCache, Summary, graphs_upto, run_sweep
from report import record

K1 = Graph(1, (0,))


def _summarise(rows) -> tuple[Summary, list]:
    summary, bad = Summary(), []
    for row in rows:
        summary.add(row)
        if not row.agree:
            bad.append(row.to_json())
    return summary, bad


def test_criterion_1_cycles():
    start = time.perf_counter()
    values = {n: cc_oracle(cycle(n)).value for n in (3, 4, 5, 6, 7, 8, 9, 10)}
    elapsed = time.perf_counter() - start
    ok = values == {3: 3, 4: 4, 5: 3, 6: 3, 7: 3, 8: 3, 9: 3, 10: 3} and elapsed < 10
    record(1, ok, f"CC(C_n) for n=3..10 = {list(values.values())} in {elapsed:.2f}s (limit 10s)")
    assert ok


def test_criterion_2_trees():
    cache = OracleCache()
    start = time.perf_counter()
    checked, bad = 0, []
    for n in range(4, 10):
        for t in prufer_trees(n):
            expected = 0 if full_vertices(t) else 2
            auto = cc_auto(t, certificate=False).value
            oracle = cache.value(t)
            checked += 1
            if not auto == oracle == expected:
                bad.append((t, auto, oracle, expected))
    elapsed = time.perf_counter() - start
    ok = not bad and checked == sum(n ** (n - 2) for n in range(4, 10)) and elapsed < 300
    record(2, ok, f"{checked} labelled trees n=4..9, {cache.classes} classes, {len(bad)} disagreements, {elapsed:.1f}s (limit 300s)")
    assert not bad, bad[:3]
    assert elapsed < 300


def test_criterion_3_unicyclic():
    cache = OracleCache()
    start = time.perf_counter()
    branches: Counter = Counter()
    checked, bad = 0, []
    four_mismatch = zero_mismatch = 0
    for n in range(4, 10):
        for g in labelled_unicyclic(n):
            rep = cc_unicyclic(g)
            oracle = cache.value(g)
            checked += 1
            branches[rep.case] += 1
            if rep.value != oracle:
                bad.append((g, rep.case, rep.value, oracle))
            if (oracle == 4) != (rep.case == "C4"):
                four_mismatch += 1
            if (oracle == 0) != in_family_G(g):
                zero_mismatch += 1
    elapsed = time.perf_counter() - start
    every_branch = all(branches[c] >= 1 for c in ("C4", "family-G", "Y-small", "other"))
    ok = not bad and every_branch and not four_mismatch and not zero_mismatch and elapsed < 1800
    record(
        3,
        ok,
        f"{checked} labelled unicyclic graphs n=4..9, branches {dict(sorted(branches.items()))}, "
        f"{len(bad)} disagreements, {elapsed:.0f}s (limit 1800s)",
    )
    assert not bad, bad[:3]
    assert every_branch and not four_mismatch and not zero_mismatch
    assert elapsed < 1800


def test_criterion_4_cut_set_characterization():
    cache = OracleCache()
    start = time.perf_counter()
    exhaustive = bad = 0
    for n in range(4, 8):
        for g in enumerate_graphs(n, "connected,no-full-vertex"):
            exhaustive += 1
            x = cut_vertices(g)
            if (cache.value(g) == 2) != is_cds(g, x):
                bad += 1
    rng = random.Random(20240601)
    sampled = 0
    pairs = [(u, v) for u in range(8) for v in range(u + 1, 8)]
    while sampled < 100_000:
        edges = [p for p in pairs if rng.random() < 0.5]
        g = Graph.from_edges(8, edges)
        if not is_connected(g) or full_vertices(g):
            continue
        sampled += 1
        if (cache.value(g) == 2) != is_cds(g, cut_vertices(g)):
            bad += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0
    record(4, ok, f"{exhaustive} labelled graphs n=4..7 plus {sampled} random at n=8, {bad} violations, {elapsed:.0f}s")
    assert ok


def test_criterion_5_corona():
    summary, bad = _summarise(run_sweep("corona", 12))
    k1c4 = cc_corona(K1, cycle(4)).value
    k1c4_oracle = cc_oracle(corona(K1, cycle(4))).value
    cases = {key.split(":")[1] for key in summary.cases}
    ok = not bad and k1c4 == k1c4_oracle == 5 and {"K1-and-CC(H)=0", "K1-and-CC(H)>0", "G-nontrivial"} <= cases
    record(5, ok, f"{summary.total} corona pairs with |V(g)|(1+|V(h)|) <= 12 (h <= 7 vertices), cases {sorted(cases)}, CC(K1 corona C4) = {k1c4_oracle}, {len(bad)} disagreements")
    assert ok, bad[:3]


def test_criterion_6_join():
    summary, bad = _summarise(run_sweep("join", 8))
    cases = {key.split(":")[1] for key in summary.cases}
    ok = not bad and cases == {"neither-complete", "complete-with-CC-zero", "sum"}
    record(6, ok, f"{summary.total} ordered pairs with |V(g)|+|V(h)| <= 8, branches {dict(sorted(summary.cases.items()))}, {len(bad)} disagreements")
    assert ok, bad[:3]


def _product_outcome():
    cache = OracleCache(10)
    cart, cart_bad = _summarise(r for r in run_sweep("cartesian-bound", 3, cache=cache))
    lex, lex_bad = _summarise(r for r in run_sweep("lex-bound", 3, cache=cache))
    witnesses = []
    for a, b in ((2, 2), (3, 2), (3, 3)):
        g, h = complete(a), complete(b)
        value, cells = cc_cartesian_full_pair_bound(g, h)
        witnesses.append(check_certificate(cartesian(g, h), validate_partition(cartesian(g, h), cells)) and len(cells) == value)
    return cart, cart_bad, lex, lex_bad, witnesses


_PRODUCTS = {}


def _products():
    if not _PRODUCTS:
        _PRODUCTS["result"] = _product_outcome()
    return _PRODUCTS["result"]


def test_criterion_7_product_bounds():
    cart, cart_bad, lex, lex_bad, witnesses = _products()
    lex_bound_bad = [r for r in lex_bad if r["rule"] == "lexicographic-bound"]
    ok = not cart_bad and all(witnesses) and not lex_bad
    detail = (
        f"cartesian: {cart.total} rows, {len(cart_bad)} violations; two-full-vertex witnesses valid for "
        f"(K2,K2),(K3,K2),(K3,K3): {all(witnesses)}; lexicographic: {lex.total} rows, {len(lex_bound_bad)} bound violations"
    )
    if lex_bound_bad:
        detail += " (" + ", ".join(f"{r['graph6']}: bound {r['formula_value']} > CC {r['oracle_value']}" for r in lex_bound_bad) + "; the bound fails when CC(g) = 0)"
    record(7, ok, detail)
    # the Cartesian half and the witnesses hold outright
    assert not cart_bad and all(witnesses)
    # the only lexicographic failures are P3 lex K2 and P3 lex K3
    assert {(r["n"], r["formula_value"], r["oracle_value"]) for r in lex_bad if r["rule"] == "lexicographic-bound"} == {(6, 1, 0), (9, 1, 0)}


@pytest.mark.xfail(strict=True, reason="lexicographic bound CC(g)+k_g exceeds CC when CC(g)=0, e.g. P3 lex K2")
def test_criterion_7_lexicographic_bound_holds_everywhere():
    _, _, _, lex_bad, _ = _products()
    assert not lex_bad


def test_criterion_8_structural_properties():
    cache = OracleCache()
    start = time.perf_counter()
    connected = list(graphs_upto(7, connected=True))

    cut_bad = certs = 0
    for g in connected:
        cuts = cut_vertices(g)
        for res in (cc_oracle(g), cc_auto(g)):
            if res.certificate is None:
                continue
            certs += 1
            cells = res.certificate.cells
            for i, w in enumerate(res.certificate.witness):
                if w is not None and (cells[i] | cells[w]) & cuts != cuts:
                    cut_bad += 1

    rng = random.Random(7)
    split_bad = instances = 0
    while instances < 500:
        n = rng.randint(3, 9)
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.45])
        if not is_connected(g) or full_vertices(g):
            continue
        a = minimal_cds(g, g.all) | (rng.getrandbits(n) & g.all)
        if a.bit_count() < 2:
            continue
        instances += 1
        cells = partition_cds(g, a)
        if sum(c.bit_count() for c in cells) != a.bit_count() or not all(
            any(is_coalition(g, c, d) for j, d in enumerate(cells) if j != i) for i, c in enumerate(cells)
        ):
            split_bad += 1

    pendant_bad = pendant_cases = 0
    dc_bad = dc_cases = 0
    for h in connected:
        if h.n < 3 or full_vertices(h):
            continue
        base = cache.value(h)
        dc_cases += 1
        if base < 2 * connected_domatic_number(h):
            dc_bad += 1
        for v in range(h.n):
            pendant_cases += 1
            if cache.value(add_pendant(h, v)) > base:
                pendant_bad += 1
    elapsed = time.perf_counter() - start
    ok = not (cut_bad or split_bad or pendant_bad or dc_bad)
    record(
        8,
        ok,
        f"cut vertices in every coalition pair: {certs} certificates, {cut_bad} violations; "
        f"CDS splitting: {instances} random instances, {split_bad} invalid; "
        f"pendant monotonicity: {pendant_cases} attachments, {pendant_bad} violations; "
        f"CC >= 2 d_c: {dc_cases} graphs, {dc_bad} violations; {elapsed:.0f}s",
    )
    assert ok


def test_criterion_9_zero_and_one():
    mismatches = ones = checked = 0
    for g in graphs_upto(7):
        value = cc_oracle(g).value
        checked += 1
        if value == 1 and g.n != 1:
            ones += 1
        if is_connected(g) and (value == 0) != cc_zero_family_check(g):
            mismatches += 1
    k1 = cc_oracle(K1).value
    ok = not mismatches and not ones and k1 == 1
    record(9, ok, f"{checked} graphs up to 7 vertices: CC=0 vs family mismatches {mismatches}, CC(K1)={k1}, other graphs with CC=1: {ones}")
    assert ok
