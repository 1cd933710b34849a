"""Connected coalitions, certificates and the exhaustive CC oracle."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

from .graph import (
    Graph,
    GraphError,
    VertexSet,
    full_vertices,
    induced_is_connected,
    is_cds,
    is_connected,
    lowest,
    members,
    vset,
    _reach,
)

DEFAULT_ORACLE_CAP = 12

Partition = tuple[VertexSet, ...]


class PartitionError(ValueError):
    """The cells given do not form a partition (or a disjoint nonempty pair)."""


class NotCoalitionPartition(Exception):
    """A genuine partition in which some cell has no valid witness."""

    def __init__(self, cell: int, cells: Partition):
        super().__init__(f"cell {cell} ({members(cells[cell])}) is neither a full-vertex singleton nor in a connected coalition")
        self.cell = cell
        self.cells = cells


class OracleTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Certificate:
    """A partition plus, per cell, ``None`` for a full-vertex singleton or the partner's index."""

    n: int
    cells: Partition
    witness: tuple[int | None, ...]

    def __len__(self) -> int:
        return len(self.cells)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "cells": [members(c) for c in self.cells],
            "witness": [{"type": "full"} if w is None else {"type": "partner", "cell": w} for w in self.witness],
        }

    @classmethod
    def from_json(cls, doc: dict) -> Certificate:
        witness = []
        for w in doc["witness"]:
            if w["type"] == "full":
                witness.append(None)
            elif w["type"] == "partner":
                witness.append(int(w["cell"]))
            else:
                raise ValueError(f"unknown witness type {w['type']!r}")
        cells = tuple(vset(c) for c in doc["cells"])
        if len(witness) != len(cells):
            raise ValueError("witness list and cell list differ in length")
        return cls(int(doc["n"]), cells, tuple(witness))


@dataclass(frozen=True)
class CCResult:
    value: int
    method: str
    certificate: Certificate | None = None

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "method": self.method,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
        }


def _is_full_singleton(g: Graph, cell: VertexSet) -> bool:
    return cell & (cell - 1) == 0 and g.adj[lowest(cell)].bit_count() == g.n - 1


def check_partition(g: Graph, cells: Sequence[VertexSet]) -> Partition:
    seen = 0
    for i, c in enumerate(cells):
        if not c:
            raise PartitionError(f"cell {i} is empty")
        if c & ~g.all:
            raise PartitionError(f"cell {i} has vertices outside 0..{g.n - 1}")
        if c & seen:
            raise PartitionError(f"cell {i} overlaps an earlier cell at {members(c & seen)}")
        seen |= c
    if seen != g.all:
        raise PartitionError(f"vertices {members(g.all & ~seen)} are not covered")
    return tuple(cells)


def is_coalition(g: Graph, a: VertexSet, b: VertexSet) -> bool:
    if not a or not b:
        raise PartitionError("empty set")
    if a & b:
        raise PartitionError("sets overlap")
    return is_cds(g, a | b) and not is_cds(g, a) and not is_cds(g, b)


def validate_partition(g: Graph, cells: Sequence[VertexSet]) -> Certificate:
    """Certificate for ``cells``; raises NotCoalitionPartition naming the first bad cell.

    Partners are searched in cell-index order, so the certificate is
    deterministic.
    """
    cells = check_partition(g, cells)
    witness: list[int | None] = []
    for i, c in enumerate(cells):
        if _is_full_singleton(g, c):
            witness.append(None)
            continue
        for j, d in enumerate(cells):
            if j != i and is_coalition(g, c, d):
                witness.append(j)
                break
        else:
            raise NotCoalitionPartition(i, cells)
    return Certificate(g.n, cells, tuple(witness))


def check_certificate(g: Graph, cert: Certificate) -> bool:
    """Re-check every witness of ``cert`` from the definitions alone."""
    if cert.n != g.n or len(cert.witness) != len(cert.cells):
        return False
    try:
        check_partition(g, cert.cells)
    except PartitionError:
        return False
    for i, (c, w) in enumerate(zip(cert.cells, cert.witness)):
        if w is None:
            if not _is_full_singleton(g, c):
                return False
        elif not (0 <= w < len(cert.cells)) or w == i or not is_coalition(g, c, cert.cells[w]):
            return False
    return True


def cc_zero_family_check(g: Graph) -> bool:
    """Membership in the family of graphs whose full-vertex deletion is disconnected.

    A complete graph leaves nothing behind, which does not count as
    disconnected.
    """
    rest = g.all & ~full_vertices(g)
    if not rest:
        return False
    return not induced_is_connected(g, rest)


def cds_table(g: Graph) -> bytearray:
    """``table[S]`` is 1 exactly when vertex set ``S`` is a connected dominating set."""
    size = 1 << g.n
    table = bytearray(size)
    closed = [g.adj[v] | 1 << v for v in range(g.n)]
    dom = [0] * size
    everything = g.all
    for mask in range(1, size):
        low = mask & -mask
        v = low.bit_length() - 1
        reach = dom[mask ^ low] | closed[v]
        dom[mask] = reach
        if reach == everything and _reach(g, v, mask) == mask:
            table[mask] = 1
    return table


def _oracle_cap(max_n: int | None) -> int:
    if max_n is not None:
        return max_n
    return int(os.environ.get("CC_ORACLE_CAP", DEFAULT_ORACLE_CAP))


def _search_order(g: Graph) -> list[int]:
    # high degree first: cut vertices and hubs constrain coalition pairs early
    return sorted(range(g.n), key=lambda v: (-g.adj[v].bit_count(), v))


class _CoalitionSearch:
    """Depth-first enumeration of set partitions as restricted-growth strings.

    Vertices are placed in ``order``; each is tried in a new cell first, then
    in the existing cells by index. A branch is cut when the cell count cannot
    beat the best found, when a cell becomes a connected dominating set (such a
    set only grows, and can then never be valid unless it is a full-vertex
    singleton), or when some cell can no longer reach a coalition partner even
    if every unplaced vertex joined it.
    """

    def __init__(self, g: Graph, together: VertexSet = 0, find_all: bool = False):
        self.g = g
        self.cds = cds_table(g)
        self.full = full_vertices(g)
        self.order = _search_order(g)
        self.suffix = [0] * (g.n + 1)
        for i in range(g.n - 1, -1, -1):
            self.suffix[i] = self.suffix[i + 1] | 1 << self.order[i]
        self.together = together
        self.find_all = find_all
        self.best = 0
        self.best_cells: list[VertexSet] | None = None
        self.all_best: list[Partition] = []
        self.cells: list[VertexSet] = []
        self.anchor = -1

    def _stuck(self, cell: VertexSet) -> bool:
        # a cell is a CDS and not a full-vertex singleton
        if not self.cds[cell]:
            return False
        return not (cell & (cell - 1) == 0 and cell & self.full)

    def _feasible(self, rest: VertexSet) -> bool:
        cds = self.cds
        cells = self.cells
        full = self.full
        for i, c in enumerate(cells):
            if c & full and c & (c - 1) == 0:
                continue
            if rest and cds[c | rest]:
                continue
            for j, d in enumerate(cells):
                if j != i and cds[c | d | rest] and not (d & full and d & (d - 1) == 0):
                    break
            else:
                return False
        return True

    def _place(self, i: int, k: int) -> bool:
        """Put ``order[i]`` into cell ``k`` (``k == len(cells)`` opens a cell)."""
        bit = 1 << self.order[i]
        if k == len(self.cells):
            self.cells.append(bit)
        else:
            self.cells[k] |= bit
        if self.together >> self.order[i] & 1 and self.anchor < 0:
            self.anchor = k
        return not self._stuck(self.cells[k]) and self._feasible(self.suffix[i + 1])

    def _unplace(self, i: int, k: int) -> None:
        v = self.order[i]
        if self.together >> v & 1 and self.anchor == k and not (self.cells[k] & ~(1 << v) & self.together):
            self.anchor = -1
        if self.cells[k] == 1 << v:
            self.cells.pop()
        else:
            self.cells[k] &= ~(1 << v)

    def _choices(self, i: int) -> list[int]:
        v = self.order[i]
        if self.together >> v & 1 and self.anchor >= 0:
            return range(self.anchor, self.anchor + 1)
        # new cell first, then existing cells in index order
        return _new_then_old(len(self.cells))

    def run(self, i: int = 0) -> None:
        n = self.g.n
        if self.find_all:
            if len(self.cells) + (n - i) < self.best:
                return
        elif len(self.cells) + (n - i) <= self.best or self.best == n:
            return
        if i == n:
            if len(self.cells) > self.best:
                self.best = len(self.cells)
                self.best_cells = list(self.cells)
                self.all_best = []
            if self.find_all:
                self.all_best.append(tuple(self.cells))
            return
        for k in self._choices(i):
            if self._place(i, k):
                self.run(i + 1)
            self._unplace(i, k)


def _new_then_old(k: int) -> list[int]:
    return [k, *range(k)]


def _normalise(g: Graph, cells: Sequence[VertexSet]) -> Partition:
    return tuple(sorted(cells, key=lowest))


def _prefix_states(search: _CoalitionSearch, depth: int) -> Iterator[list[VertexSet]]:
    """Partial placements of the first ``depth`` vertices, in serial DFS order."""

    def rec(i: int) -> Iterator[list[VertexSet]]:
        if i == depth:
            yield list(search.cells)
            return
        for k in search._choices(i):
            if search._place(i, k):
                yield from rec(i + 1)
            search._unplace(i, k)

    return rec(0)


def _run_from_prefix(args: tuple[Graph, VertexSet, list[VertexSet], int]) -> tuple[int, list[VertexSet] | None]:
    g, together, prefix, depth = args
    search = _CoalitionSearch(g, together)
    search.cells = list(prefix)
    if together:
        for k, c in enumerate(prefix):
            if c & together:
                search.anchor = k
    search.run(depth)
    return search.best, search.best_cells


def cc_oracle(
    g: Graph,
    max_n: int | None = None,
    *,
    together: VertexSet = 0,
    workers: int = 1,
) -> CCResult:
    """Exact CC(g) by exhaustive search over set partitions of V(g).

    ``together`` restricts the search to partitions placing all of those
    vertices in one cell. With ``workers > 1`` the search tree is split by
    the placement of the first few vertices; value and certificate match the
    serial run.
    """
    cap = _oracle_cap(max_n)
    if g.n > cap:
        raise OracleTooLarge(f"instance too large for oracle: n={g.n} > {cap}")
    if g.n == 0:
        return CCResult(0, "oracle")
    if workers > 1 and g.n > 4:
        depth = min(4, g.n - 1)
        seed = _CoalitionSearch(g, together)
        jobs = [(g, together, prefix, depth) for prefix in _prefix_states(seed, depth)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_from_prefix, jobs))
        best, best_cells = 0, None
        for value, cells in outcomes:
            if value > best:
                best, best_cells = value, cells
    else:
        search = _CoalitionSearch(g, together)
        search.run()
        best, best_cells = search.best, search.best_cells
    if not best:
        return CCResult(0, "oracle")
    cert = validate_partition(g, _normalise(g, best_cells))
    return CCResult(best, "oracle", cert)


def optimal_partitions(g: Graph, max_n: int | None = None) -> tuple[int, list[Partition]]:
    """CC(g) together with every connected coalition partition of that size."""
    cap = _oracle_cap(max_n)
    if g.n > cap:
        raise OracleTooLarge(f"instance too large for oracle: n={g.n} > {cap}")
    if g.n == 0:
        return 0, []
    search = _CoalitionSearch(g, find_all=True)
    search.run()
    if search.best_cells is None:
        return 0, []
    return search.best, [_normalise(g, p) for p in search.all_best]


def minimal_cds(g: Graph, within: VertexSet) -> VertexSet:
    """Prune ``within`` to a minimal connected dominating set.

    Removals are attempted from the highest vertex down until nothing can be
    dropped, so low-numbered vertices are kept when there is a choice.
    """
    if not is_cds(g, within):
        raise GraphError("set is not a connected dominating set")
    current = within
    changed = True
    while changed:
        changed = False
        for v in reversed(members(current)):
            smaller = current & ~(1 << v)
            if smaller and is_cds(g, smaller):
                current = smaller
                changed = True
    return current


def partition_cds(g: Graph, a: VertexSet) -> Partition:
    """Split a connected dominating set into cells that each have a coalition partner."""
    if not is_connected(g):
        raise GraphError("graph not connected")
    if full_vertices(g):
        raise GraphError("graph has a full vertex")
    if not is_cds(g, a):
        raise GraphError("set is not a connected dominating set")
    if a.bit_count() < 2:
        raise GraphError("set has fewer than two vertices")
    x = minimal_cds(g, a)
    first = lowest(x)
    cells = [1 << first, x & ~(1 << first)]
    for v in members(a & ~x):
        bit = 1 << v
        if any(is_cds(g, bit | c) for c in cells):
            cells.append(bit)
        else:
            cells[0] |= bit
    return tuple(cells)


def split_cds(g: Graph, a: VertexSet) -> Partition:
    """Split a connected dominating set of any connected graph into valid cells.

    Full vertices in ``a`` become singletons. Those cannot act as partners,
    so the rest must itself be a CDS; it is then split inside g minus its
    full vertices. Full vertices are dominated by
    any nonempty set, so a subset of the rest is a CDS of g exactly when it
    is one of the smaller graph.
    """
    if not is_cds(g, a):
        raise GraphError("set is not a connected dominating set")
    full = full_vertices(g)
    if not full:
        if a.bit_count() < 2:
            raise GraphError("set has fewer than two vertices")
        return partition_cds(g, a)
    singles = [1 << v for v in members(a & full)]
    rest = a & ~full
    if not rest:
        return tuple(singles)
    if not is_cds(g, rest):
        # a full singleton is itself a CDS, so it cannot partner anything
        raise GraphError("set minus the full vertices is not a connected dominating set; no split exists")
    kept = members(g.all & ~full)
    inner = g.induced(g.all & ~full)
    index = {v: i for i, v in enumerate(kept)}
    sub = split_cds(inner, vset(index[v] for v in members(rest)))
    return (*singles, *(vset(kept[i] for i in members(c)) for c in sub))


def connected_domatic_number(g: Graph, max_n: int | None = None) -> int:
    """Largest partition of V(g) into connected dominating sets."""
    cap = _oracle_cap(max_n)
    if g.n > cap:
        raise OracleTooLarge(f"instance too large for oracle: n={g.n} > {cap}")
    if not is_connected(g):
        raise GraphError("graph not connected")
    cds = cds_table(g)
    order = _search_order(g)
    n = g.n
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] | 1 << order[i]
    cells: list[VertexSet] = []
    best = 0

    def rec(i: int) -> None:
        nonlocal best
        if len(cells) + (n - i) <= best:
            return
        if i == n:
            best = len(cells)
            return
        bit = 1 << order[i]
        rest = suffix[i + 1]
        for k in _new_then_old(len(cells)):
            if k == len(cells):
                cells.append(bit)
            else:
                cells[k] |= bit
            if all(cds[c | rest] for c in cells):
                rec(i + 1)
            if cells[k] == bit:
                cells.pop()
            else:
                cells[k] &= ~bit

    rec(0)
    return best


def full_vertex_reduction(g: Graph) -> tuple[Graph, int]:
    """Delete full vertices (lowest first) while the remainder stays connected and nonempty.

    CC(g) is ``k + CC(stripped)`` when CC(stripped) is nonzero and 0 otherwise.
    """
    stripped, kept = reduce_full_vertices(g)
    return stripped, g.n - len(kept)


def reduce_full_vertices(g: Graph) -> tuple[Graph, list[int]]:
    """Like full_vertex_reduction, returning the original ids of the surviving vertices."""
    kept = list(range(g.n))
    while g.n > 1:
        full = full_vertices(g)
        if not full:
            break
        v = lowest(full)
        rest = g.remove(1 << v)
        if not is_connected(rest):
            break
        g = rest
        del kept[v]
    return g, kept
