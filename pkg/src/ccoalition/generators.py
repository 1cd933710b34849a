"""Graph families, products and exhaustive small-graph enumeration."""
from __future__ import annotations

from itertools import combinations, permutations, product
from typing import Callable, Iterable, Iterator

from .graph import Graph, GraphError, full_vertices, is_complete, is_connected, members
from .graph6 import read_graph6_file


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star(k: int) -> Graph:
    """K_{1,k} with centre 0."""
    if k < 1:
        raise GraphError("star needs k >= 1")
    return Graph.from_edges(k + 1, ((0, i) for i in range(1, k + 1)))


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Graph.from_edges(n, combinations(range(n), 2))


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_bipartite(m: int, n: int) -> Graph:
    if m < 1 or n < 1:
        raise GraphError("complete bipartite graph needs m, n >= 1")
    return Graph.from_edges(m + n, product(range(m), range(m, m + n)))


def family_G(k: int) -> Graph:
    """Triangle 0-1-2 with ``k`` pendant vertices hung on vertex 0."""
    if k < 1:
        raise GraphError("family_G needs k >= 1")
    edges = [(0, 1), (1, 2), (0, 2)] + [(0, 3 + i) for i in range(k)]
    return Graph.from_edges(3 + k, edges)


def c4_plus_e() -> Graph:
    """C4 on 0..3 with pendant vertex 4 attached to 0."""
    return Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])


def add_pendant(g: Graph, v: int) -> Graph:
    """Attach a new vertex ``g.n`` to ``v``."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    return Graph.from_edges(g.n + 1, [*g.edges(), (v, g.n)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    return Graph.from_edges(g.n + h.n, [*g.edges(), *((u + shift, v + shift) for u, v in h.edges())])


def corona(g: Graph, h: Graph) -> Graph:
    """Vertices of g first, then copy i of h as a block joined to vertex i of g."""
    if g.n < 1:
        raise GraphError("corona needs a nonempty first factor")
    edges = list(g.edges())
    for i in range(g.n):
        base = g.n + i * h.n
        edges += [(base + u, base + v) for u, v in h.edges()]
        edges += [(i, base + u) for u in range(h.n)]
    return Graph.from_edges(g.n * (1 + h.n), edges)


def join(g: Graph, h: Graph) -> Graph:
    shift = g.n
    edges = [*g.edges(), *((u + shift, v + shift) for u, v in h.edges())]
    edges += [(u, shift + v) for u in range(g.n) for v in range(h.n)]
    return Graph.from_edges(g.n + h.n, edges)


def _pair_id(h: Graph, u: int, v: int) -> int:
    return u * h.n + v


def cartesian(g: Graph, h: Graph) -> Graph:
    """Vertex (u, v) is ``u * h.n + v``; adjacent when one coordinate agrees and the other is adjacent."""
    if g.n < 1 or h.n < 1:
        raise GraphError("products need nonempty factors")
    edges = []
    for u in range(g.n):
        edges += [(_pair_id(h, u, a), _pair_id(h, u, b)) for a, b in h.edges()]
    for v in range(h.n):
        edges += [(_pair_id(h, a, v), _pair_id(h, b, v)) for a, b in g.edges()]
    return Graph.from_edges(g.n * h.n, edges)


def lexicographic(g: Graph, h: Graph) -> Graph:
    """(u1, v1) ~ (u2, v2) when u1 ~ u2 in g, or u1 = u2 and v1 ~ v2 in h."""
    if g.n < 1 or h.n < 1:
        raise GraphError("products need nonempty factors")
    edges = []
    for u in range(g.n):
        edges += [(_pair_id(h, u, a), _pair_id(h, u, b)) for a, b in h.edges()]
    for a, b in g.edges():
        edges += [(_pair_id(h, a, x), _pair_id(h, b, y)) for x in range(h.n) for y in range(h.n)]
    return Graph.from_edges(g.n * h.n, edges)


# --- enumeration -----------------------------------------------------------

MAX_ENUM_N = 9


def is_tree(g: Graph) -> bool:
    return is_connected(g) and g.edge_count == g.n - 1


def is_unicyclic(g: Graph) -> bool:
    return is_connected(g) and g.edge_count == g.n


FILTERS: dict[str, Callable[[Graph], bool]] = {
    "all": lambda g: True,
    "connected": is_connected,
    "trees": is_tree,
    "unicyclic": is_unicyclic,
    "no-full-vertex": lambda g: not full_vertices(g),
    "non-complete": lambda g: not is_complete(g),
}


def prufer_trees(n: int) -> Iterator[Graph]:
    """Every labelled tree on ``n`` vertices, once each (Cayley: n^(n-2))."""
    if n == 1:
        yield Graph(1, (0,))
        return
    if n == 2:
        yield Graph(2, (2, 1))
        return
    for seq in product(range(n), repeat=n - 2):
        yield _prufer_decode(n, seq)


def _prufer_decode(n: int, seq: tuple[int, ...]) -> Graph:
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    rows = [0] * n
    ptr = degree.index(1)
    leaf = ptr
    for v in seq:
        rows[leaf] |= 1 << v
        rows[v] |= 1 << leaf
        degree[v] -= 1
        if v < ptr and degree[v] == 1:
            leaf = v
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    last = n - 1
    rows[leaf] |= 1 << last
    rows[last] |= 1 << leaf
    return Graph.trusted(n, tuple(rows), n - 1)


def _rooted_forests(n: int, roots: int) -> Iterator[list[int]]:
    """Parent arrays (``-1`` on roots) of every forest on 0..n-1 whose roots are ``roots``.

    Each non-root vertex points at a parent; a choice is rejected when it
    would close a cycle among non-root vertices.
    """
    others = [v for v in range(n) if not roots >> v & 1]
    parent = [-1] * n

    def leads_to(v: int, target: int) -> bool:
        while v != -1:
            if v == target:
                return True
            v = parent[v]
        return False

    def rec(i: int) -> Iterator[list[int]]:
        if i == len(others):
            yield parent
            return
        v = others[i]
        for p in range(n):
            if p == v:
                continue
            # the chain from p must not come back to v
            if not roots >> p & 1 and leads_to(p, v):
                continue
            parent[v] = p
            yield from rec(i + 1)
        parent[v] = -1

    return rec(0)


def labelled_unicyclic(n: int) -> Iterator[Graph]:
    """Every labelled connected unicyclic graph on ``n`` vertices, once each."""
    for m in range(3, n + 1):
        for cyc in combinations(range(n), m):
            first = cyc[0]
            rest = cyc[1:]
            cycles = []
            for perm in permutations(rest):
                if perm[0] < perm[-1]:
                    cycles.append((first, *perm))
            roots = 0
            for v in cyc:
                roots |= 1 << v
            for parent in _rooted_forests(n, roots):
                base = [0] * n
                for v, p in enumerate(parent):
                    if p >= 0:
                        base[v] |= 1 << p
                        base[p] |= 1 << v
                for order in cycles:
                    rows = list(base)
                    for a, b in zip(order, order[1:] + order[:1]):
                        rows[a] |= 1 << b
                        rows[b] |= 1 << a
                    yield Graph.trusted(n, tuple(rows), n)


def labelled_graphs(n: int) -> Iterator[Graph]:
    """All 2^(n(n-1)/2) labelled graphs on ``n`` vertices.

    Vertex ``v`` picks its neighbours among 0..v-1; the last vertex varies fastest.
    """
    rows = [0] * n

    def rec(v: int, edges: int) -> Iterator[Graph]:
        if v == n:
            yield Graph.trusted(n, tuple(rows), edges)
            return
        for mask in range(1 << v):
            rows[v] = mask
            rest = mask
            while rest:
                low = rest & -rest
                rows[low.bit_length() - 1] |= 1 << v
                rest ^= low
            yield from rec(v + 1, edges + mask.bit_count())
            rest = mask
            while rest:
                low = rest & -rest
                rows[low.bit_length() - 1] &= ~(1 << v)
                rest ^= low
        rows[v] = 0

    return rec(0, 0)


def unlabelled_trees(n: int) -> Iterator[Graph]:
    """One tree per isomorphism class (networkx generator)."""
    if n == 1:
        yield Graph(1, (0,))
        return
    from networkx import nonisomorphic_trees

    for t in nonisomorphic_trees(n):
        yield Graph.from_edges(n, t.edges())


def unlabelled_unicyclic(n: int) -> Iterator[Graph]:
    """One connected unicyclic graph per isomorphism class: a tree plus one edge, deduplicated."""
    seen: set[bytes] = set()
    for t in unlabelled_trees(n):
        for u, v in combinations(range(n), 2):
            if t.adj[u] >> v & 1:
                continue
            rows = list(t.adj)
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            g = Graph.trusted(n, tuple(rows), n)
            key = canonical_key(g)
            if key not in seen:
                seen.add(key)
                yield g


def canonical_key(g: Graph) -> bytes:
    """Isomorphism-invariant key: equal keys exactly for isomorphic graphs."""
    import pynauty

    # Graph rows are already validated, so skip pynauty's per-call checks.
    ng = pynauty.Graph.__new__(pynauty.Graph)
    ng.number_of_vertices = g.n
    ng.directed = False
    ng._adjacency_dict = {v: members(row) for v, row in enumerate(g.adj)}
    ng._vertex_coloring = []
    return bytes([g.n]) + pynauty.certificate(ng)


def enumerate_graphs(
    n: int,
    filters: str | Iterable[str] = "all",
    *,
    source=None,
    dedup: bool = False,
) -> Iterator[Graph]:
    """Deterministic stream of labelled graphs on ``n`` vertices passing every filter.

    ``filters`` names entries of FILTERS (a comma-separated string or an
    iterable). ``source`` replaces the built-in enumeration with a graph6
    file; its graphs are kept when they have ``n`` vertices (``n=None``
    keeps all). ``dedup`` keeps one graph per isomorphism class.
    """
    names = [f for f in filters.split(",")] if isinstance(filters, str) else list(filters)
    for name in names:
        if name not in FILTERS:
            raise ValueError(f"unknown filter {name!r}; choose from {sorted(FILTERS)}")
    checks = [FILTERS[name] for name in names]
    if source is not None:
        stream = (g for g in read_graph6_file(source) if n is None or g.n == n)
    elif n > MAX_ENUM_N:
        raise GraphError(f"built-in enumeration limited to n <= {MAX_ENUM_N}; pass an external graph6 source")
    elif "trees" in names:
        if dedup:
            stream, dedup = (unlabelled_trees(n) if n >= 1 else iter(())), False
        else:
            stream = prufer_trees(n) if n >= 1 else iter(())
    elif "unicyclic" in names:
        if dedup:
            stream, dedup = (unlabelled_unicyclic(n) if n >= 3 else iter(())), False
        else:
            stream = labelled_unicyclic(n)
    elif dedup and 1 <= n <= 7:
        stream, dedup = (g for g in atlas_graphs(n) if g.n == n), False
    else:
        stream = labelled_graphs(n)
    seen: set[bytes] = set()
    for g in stream:
        if all(check(g) for check in checks):
            if dedup:
                key = canonical_key(g)
                if key in seen:
                    continue
                seen.add(key)
            yield g


def atlas_graphs(max_n: int = 7) -> Iterator[Graph]:
    """One graph per isomorphism class on 1..max_n vertices (max_n <= 7), from the networkx atlas."""
    if max_n > 7:
        raise GraphError("the graph atlas stops at 7 vertices")
    from networkx.generators.atlas import graph_atlas_g

    for nxg in graph_atlas_g():
        k = nxg.number_of_nodes()
        if 1 <= k <= max_n:
            yield Graph.from_edges(k, nxg.edges())
