"""Formula-versus-oracle sweeps over graph families.

Each family yields ``Row`` records in a deterministic order. Oracle values
are cached per isomorphism class, so a labelled sweep pays for the
exhaustive search once per class.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .coalition import (
    NotCoalitionPartition,
    PartitionError,
    _oracle_cap,
    cc_oracle,
    cc_zero_family_check,
    partition_cds,
    validate_partition,
)
from .formulas import (
    Inapplicable,
    cartesian_bound_witness,
    cc_cartesian_full_pair_bound,
    cc_cartesian_lower_bound,
    cc_auto,
    cc_corona,
    cc_cycle,
    cc_join,
    cc_lexicographic_lower_bound,
    cc_tree,
    cc_two_characterization,
    cc_unicyclic,
    lexicographic_bound_witness,
)
from .generators import (
    atlas_graphs,
    canonical_key,
    cartesian,
    corona,
    cycle,
    enumerate_graphs,
    join,
    labelled_unicyclic,
    lexicographic,
    prufer_trees,
)
from .graph import Graph, full_vertices, is_connected
from .graph6 import graph6_encode

ATLAS_MAX = 7


class OracleCache:
    """Oracle values keyed by canonical form."""

    def __init__(self, max_n: int | None = None):
        self.max_n = max_n
        self.values: dict[bytes, int] = {}
        self.lookups = 0

    def value(self, g: Graph) -> int:
        self.lookups += 1
        key = canonical_key(g)
        try:
            return self.values[key]
        except KeyError:
            value = cc_oracle(g, self.max_n).value
            self.values[key] = value
            return value

    @property
    def classes(self) -> int:
        return len(self.values)


@dataclass(slots=True)
class Row:
    graph: Graph
    rule: str
    formula_value: int | str | None
    oracle_value: int | None
    agree: bool
    case: str = ""

    @property
    def graph6(self) -> str:
        return graph6_encode(self.graph).decode("ascii")

    def to_json(self) -> dict:
        return {
            "graph6": self.graph6,
            "n": self.graph.n,
            "rule": self.rule,
            "case": self.case,
            "formula_value": self.formula_value,
            "oracle_value": self.oracle_value,
            "agree": self.agree,
        }

    def tsv(self) -> str:
        fv = "" if self.formula_value is None else str(self.formula_value)
        ov = "" if self.oracle_value is None else str(self.oracle_value)
        return "\t".join([self.graph6, str(self.graph.n), self.rule, fv, ov, "yes" if self.agree else "no"])


TSV_HEADER = "graph6\tn\trule\tformula_value\toracle_value\tagree"


@dataclass
class Summary:
    total: int = 0
    agree: int = 0
    cases: Counter = field(default_factory=Counter)

    @property
    def disagree(self) -> int:
        return self.total - self.agree

    def add(self, row: Row) -> None:
        self.total += 1
        self.agree += row.agree
        self.cases[f"{row.rule}:{row.case}"] += 1

    def to_json(self) -> dict:
        return {"total": self.total, "agree": self.agree, "disagree": self.disagree, "cases": dict(sorted(self.cases.items()))}


def graphs_upto(max_n: int, *, connected: bool = False, min_n: int = 1) -> Iterator[Graph]:
    """One graph per isomorphism class, ordered by vertex count."""
    if max_n > ATLAS_MAX:
        raise ValueError(f"unlabelled catalogue stops at {ATLAS_MAX} vertices; use an external graph6 source")
    for g in atlas_graphs(max_n):
        if g.n >= min_n and (not connected or is_connected(g)):
            yield g


def _universe(n: int, filters: str, labelled: bool, source) -> Iterator[Graph]:
    if source is not None:
        return enumerate_graphs(n, filters, source=source, dedup=not labelled)
    return enumerate_graphs(n, filters, dedup=not labelled)


def sweep_cycles(max_n: int, cache: OracleCache, **_) -> Iterator[Row]:
    for n in range(3, max_n + 1):
        g = cycle(n)
        f, o = cc_cycle(n), cache.value(g)
        yield Row(g, "cycle-formula", f, o, f == o, "C4" if n == 4 else "other")


def sweep_trees(max_n: int, cache: OracleCache, *, labelled: bool = False, rule: str = "default", source=None) -> Iterator[Row]:
    for n in range(1, max_n + 1):
        stream = prufer_trees(n) if labelled and source is None else _universe(n, "trees", labelled, source)
        for g in stream:
            if rule == "auto":
                res = cc_auto(g, cache.max_n, certificate=False)
                f, case, name = res.value, res.method, "auto"
            else:
                rep = cc_tree(g)
                f, case, name = rep.value, rep.case, "tree-formula"
            o = cache.value(g)
            yield Row(g, name, f, o, f == o, case)


def sweep_unicyclic(max_n: int, cache: OracleCache, *, labelled: bool = False, rule: str = "default", source=None) -> Iterator[Row]:
    for n in range(3, max_n + 1):
        stream = labelled_unicyclic(n) if labelled and source is None else _universe(n, "unicyclic", labelled, source)
        for g in stream:
            if rule == "auto":
                res = cc_auto(g, cache.max_n, certificate=False)
                f, case, name = res.value, res.method, "auto"
            else:
                rep = cc_unicyclic(g)
                f, case, name = rep.value, rep.case, "unicyclic-formula"
            o = cache.value(g)
            yield Row(g, name, f, o, f == o, case)


def sweep_corona(max_n: int, cache: OracleCache, **_) -> Iterator[Row]:
    """Pairs (g, h), g connected, with |V(g)|(1 + |V(h)|) <= max_n and |V(h)| <= 7."""
    for g in graphs_upto(min(ATLAS_MAX, max_n // 2), connected=True):
        hmax = min(ATLAS_MAX, max_n // g.n - 1)
        if hmax < 1:
            continue
        for h in graphs_upto(hmax):
            prod = corona(g, h)
            rep = cc_corona(g, h, max_n=cache.max_n)
            o = cache.value(prod)
            yield Row(prod, "corona", rep.value, o, rep.value == o, rep.case)


def sweep_join(max_n: int, cache: OracleCache, **_) -> Iterator[Row]:
    """Ordered pairs (g, h) of nonempty graphs with |V(g)| + |V(h)| <= max_n."""
    top = min(ATLAS_MAX, max_n - 1)
    pool = list(graphs_upto(top)) if top >= 1 else []
    for g in pool:
        for h in pool:
            if g.n + h.n > max_n:
                continue
            prod = join(g, h)
            rep = cc_join(g, h, max_n=cache.max_n)
            o = cache.value(prod)
            yield Row(prod, "join", rep.value, o, rep.value == o, rep.case)


def _product_rows(
    max_n: int,
    cache: OracleCache,
    name: str,
    build: Callable[[Graph, Graph], Graph],
    bound: Callable[..., int],
    witness: Callable[..., tuple],
    full_pair: bool,
) -> Iterator[Row]:
    limit = _oracle_cap(cache.max_n)
    factors = list(graphs_upto(min(ATLAS_MAX, max_n), connected=True, min_n=2))
    for g in factors:
        for h in factors:
            prod = build(g, h)
            if prod.n > limit:
                continue
            o = cache.value(prod)
            b = bound(g, h, cache.max_n)
            yield Row(prod, f"{name}-bound", b, o, o >= b)
            try:
                cells = witness(g, h, cache.max_n)
                validate_partition(prod, cells)
                target = cc_auto(g, cache.max_n, certificate=False).value + full_vertices(g).bit_count()
                ok = target <= len(cells) <= o
                yield Row(prod, f"{name}-witness", len(cells), o, ok, f"target={target}")
            except Inapplicable:
                pass
            except (NotCoalitionPartition, PartitionError):
                yield Row(prod, f"{name}-witness", None, o, False, "witness-invalid")
            if full_pair:
                try:
                    fb, cells = cc_cartesian_full_pair_bound(g, h)
                except Inapplicable:
                    continue
                try:
                    validate_partition(prod, cells)
                    ok = True
                except (NotCoalitionPartition, PartitionError):
                    ok = False
                yield Row(prod, "cartesian-full-pair", fb, o, ok and len(cells) == fb and o >= fb, "" if ok else "witness-invalid")


def sweep_cartesian(max_n: int, cache: OracleCache, **_) -> Iterator[Row]:
    """Connected factors with 2..max_n vertices; products larger than the oracle cap are skipped."""
    return _product_rows(max_n, cache, "cartesian", cartesian, cc_cartesian_lower_bound, cartesian_bound_witness, True)


def sweep_lexicographic(max_n: int, cache: OracleCache, **_) -> Iterator[Row]:
    return _product_rows(max_n, cache, "lexicographic", lexicographic, cc_lexicographic_lower_bound, lexicographic_bound_witness, False)


def _connected_universe(max_n: int, labelled: bool, source, extra: str = "") -> Iterator[Graph]:
    filters = "connected" + extra
    if source is not None or labelled:
        for n in range(1, max_n + 1):
            yield from _universe(n, filters, labelled, source)
        return
    for g in graphs_upto(max_n, connected=True):
        if not extra or not full_vertices(g):
            yield g


def sweep_zero_family(max_n: int, cache: OracleCache, *, labelled: bool = False, source=None, **_) -> Iterator[Row]:
    for g in _connected_universe(max_n, labelled, source):
        member = cc_zero_family_check(g)
        o = cache.value(g)
        yield Row(g, "zero-family", "0" if member else ">0", o, (o == 0) == member)


def sweep_cut_set(max_n: int, cache: OracleCache, *, labelled: bool = False, source=None, **_) -> Iterator[Row]:
    for g in _connected_universe(max_n, labelled, source, ",no-full-vertex"):
        if g.n < 2:
            continue
        rep = cc_two_characterization(g)
        o = cache.value(g)
        claim = rep.value == 2
        yield Row(g, "cut-set", "2" if claim else "!=2", o, (o == 2) == claim, rep.case)


def sweep_cds_partition(max_n: int, cache: OracleCache, *, labelled: bool = False, source=None, **_) -> Iterator[Row]:
    """Split V(g) with partition_cds; the split must validate and cannot beat CC(g)."""
    for g in _connected_universe(max_n, labelled, source, ",no-full-vertex"):
        if g.n < 2:
            continue
        cells = partition_cds(g, g.all)
        o = cache.value(g)
        try:
            validate_partition(g, cells)
            ok = True
        except NotCoalitionPartition:
            ok = False
        yield Row(g, "cds-partition", len(cells), o, ok and len(cells) <= o)


FAMILIES: dict[str, Callable[..., Iterator[Row]]] = {
    "trees": sweep_trees,
    "unicyclic": sweep_unicyclic,
    "cycles": sweep_cycles,
    "corona": sweep_corona,
    "join": sweep_join,
    "cartesian-bound": sweep_cartesian,
    "lex-bound": sweep_lexicographic,
    "zero-family": sweep_zero_family,
    "cut-set": sweep_cut_set,
    "cds-partition": sweep_cds_partition,
}


def run_sweep(family: str, max_n: int, *, cache: OracleCache | None = None, **options) -> Iterator[Row]:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    return FAMILIES[family](max_n, cache or OracleCache(), **options)
