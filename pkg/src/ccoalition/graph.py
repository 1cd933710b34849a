"""Simple graphs on vertices 0..n-1 stored as neighbour bitmasks.

A vertex set is a plain ``int`` whose bit ``v`` is set when vertex ``v``
belongs to the set. Every predicate takes the host graph explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

MAX_VERTICES = 63

VertexSet = int


class GraphError(ValueError):
    """Raised for malformed graphs or violated graph preconditions."""


def vset(vertices: Iterable[int]) -> VertexSet:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: VertexSet) -> list[int]:
    """Vertices of ``mask`` in ascending order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def lowest(mask: VertexSet) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    edge_count: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        object.__setattr__(self, "adj", tuple(self.adj))
        universe = (1 << self.n) - 1
        total = 0
        for v, row in enumerate(self.adj):
            if row & ~universe:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in members(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
            total += row.bit_count()
        object.__setattr__(self, "edge_count", total // 2)

    @classmethod
    def trusted(cls, n: int, rows: tuple[int, ...], edge_count: int) -> Graph:
        """Build without validation; for generators that produce symmetric rows by construction."""
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", rows)
        object.__setattr__(g, "edge_count", edge_count)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def all(self) -> VertexSet:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in members(self.adj[u] >> (u + 1) << (u + 1)):
                yield u, v

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def induced(self, s: VertexSet) -> Graph:
        """Subgraph induced by ``s``, relabelled to 0..|s|-1 in ascending order."""
        keep = members(s)
        index = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            rows.append(vset(index[u] for u in members(self.adj[v] & s)))
        return Graph(len(keep), tuple(rows))

    def remove(self, s: VertexSet) -> Graph:
        return self.induced(self.all & ~s)

    def relabel(self, perm: list[int]) -> Graph:
        """Graph in which old vertex ``v`` becomes ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges())})"


def closed_neighbourhood(g: Graph, s: VertexSet) -> VertexSet:
    adj = g.adj
    out = rest = s
    while rest:
        low = rest & -rest
        out |= adj[low.bit_length() - 1]
        rest ^= low
    return out


def _reach(g: Graph, start: int, within: VertexSet) -> VertexSet:
    adj = g.adj
    seen = frontier = 1 << start
    while frontier:
        grown = 0
        while frontier:
            low = frontier & -frontier
            grown |= adj[low.bit_length() - 1]
            frontier ^= low
        frontier = grown & within & ~seen
        seen |= frontier
    return seen


def is_connected(g: Graph) -> bool:
    """The graph on zero vertices is not connected; K1 is."""
    if g.n == 0:
        return False
    return _reach(g, 0, g.all) == g.all


def induced_is_connected(g: Graph, s: VertexSet) -> bool:
    if not s:
        raise GraphError("empty set")
    return _reach(g, lowest(s), s) == s


def components(g: Graph, within: VertexSet | None = None) -> list[VertexSet]:
    rest = g.all if within is None else within
    out = []
    while rest:
        comp = _reach(g, lowest(rest), rest)
        out.append(comp)
        rest &= ~comp
    return out


def is_dominating(g: Graph, s: VertexSet) -> bool:
    # vertices of s need no neighbour in s
    return closed_neighbourhood(g, s) == g.all


def is_cds(g: Graph, s: VertexSet) -> bool:
    return bool(s) and is_dominating(g, s) and induced_is_connected(g, s)


def full_vertices(g: Graph) -> VertexSet:
    target = g.n - 1
    mask = 0
    for v, row in enumerate(g.adj):
        if row.bit_count() == target:
            mask |= 1 << v
    return mask


def is_complete(g: Graph) -> bool:
    return g.edge_count == g.n * (g.n - 1) // 2


def cut_vertices(g: Graph) -> VertexSet:
    """Articulation points by the iterative lowlink method."""
    if not is_connected(g):
        raise GraphError("graph not connected")
    disc = [-1] * g.n
    low = [0] * g.n
    cuts = 0
    root = 0
    disc[root] = low[root] = 0
    clock = 1
    root_children = 0
    stack = [(root, -1, members(g.adj[root]))]
    while stack:
        v, parent, todo = stack[-1]
        if todo:
            w = todo.pop()
            if disc[w] == -1:
                disc[w] = low[w] = clock
                clock += 1
                if v == root:
                    root_children += 1
                stack.append((w, v, members(g.adj[w])))
            elif w != parent:
                low[v] = min(low[v], disc[w])
            continue
        stack.pop()
        if parent >= 0:
            low[parent] = min(low[parent], low[v])
            if parent != root and low[v] >= disc[parent]:
                cuts |= 1 << parent
    if root_children > 1:
        cuts |= 1 << root
    return cuts


def cut_vertices_bruteforce(g: Graph) -> VertexSet:
    """Articulation points by deleting each vertex and re-checking connectivity.

    K1 has no cut vertex: deleting its only vertex leaves nothing to
    disconnect.
    """
    if not is_connected(g):
        raise GraphError("graph not connected")
    cuts = 0
    for v in range(g.n):
        rest = g.all & ~(1 << v)
        if rest and not induced_is_connected(g, rest):
            cuts |= 1 << v
    return cuts


def parse_adjlist(text: str) -> Graph:
    """Parse ``n`` followed by whitespace-separated 0-indexed edge pairs."""
    tokens = text.split()
    if not tokens:
        raise GraphError("empty adjacency-list input")
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise GraphError(f"non-integer token in adjacency list: {exc}") from None
    n, rest = values[0], values[1:]
    if len(rest) % 2:
        raise GraphError("odd number of endpoints in adjacency list")
    return Graph.from_edges(n, zip(rest[::2], rest[1::2]))
