"""Closed-form CC values for graph families, product lower bounds and the dispatcher."""
from __future__ import annotations

from dataclasses import dataclass, field

from .coalition import (
    CCResult,
    Certificate,
    Partition,
    _oracle_cap,
    cc_oracle,
    cc_zero_family_check,
    partition_cds,
    reduce_full_vertices,
    split_cds,
    validate_partition,
)
from .generators import cartesian, is_tree, is_unicyclic, lexicographic
from .graph import (
    Graph,
    GraphError,
    VertexSet,
    cut_vertices,
    full_vertices,
    induced_is_connected,
    is_cds,
    is_complete,
    is_connected,
    lowest,
    members,
    vset,
)


class Inapplicable(ValueError):
    pass


class Undecided(Exception):
    """No closed form applies and the graph is beyond the oracle cap."""

    def __init__(self, n: int, cap: int, lower_bound: int):
        super().__init__(f"undecided: no formula applies and n={n} exceeds oracle cap {cap}; CC >= {lower_bound}")
        self.n = n
        self.cap = cap
        self.lower_bound = lower_bound


@dataclass(frozen=True)
class FormulaReport:
    applicable: bool
    value: int | None = None
    case: str = ""
    inputs: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"applicable": self.applicable, "value": self.value, "case": self.case, "inputs": self.inputs}


def _na(reason: str) -> FormulaReport:
    return FormulaReport(False, None, "inapplicable", {"reason": reason})


def cc_two_characterization(g: Graph) -> FormulaReport:
    """For connected g without full vertex: CC = 2 exactly when the cut vertices form a CDS."""
    if not is_connected(g):
        return _na("graph not connected")
    if full_vertices(g):
        return _na("graph has a full vertex")
    x = cut_vertices(g)
    inputs = {"cut_vertices": members(x)}
    if is_cds(g, x):
        return FormulaReport(True, 2, "cut-set-cds", inputs)
    return FormulaReport(True, None, "not-two", inputs)


def cc_tree(g: Graph) -> FormulaReport:
    if not is_tree(g):
        return _na("not a tree")
    if g.n == 1:
        return FormulaReport(True, 1, "K1", {"n": 1})
    if g.n == 2:
        return FormulaReport(True, 2, "K2", {"n": 2})
    if full_vertices(g):
        return FormulaReport(True, 0, "star", {"n": g.n})
    return FormulaReport(True, 2, "no-full-vertex", {"n": g.n})


def cc_cycle(n: int) -> int:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return 4 if n == 4 else 3


def unicyclic_cycle(g: Graph) -> VertexSet:
    """Vertices on the unique cycle, found by stripping degree-1 vertices."""
    alive = g.all
    deg = [g.adj[v].bit_count() for v in range(g.n)]
    leaves = [v for v in range(g.n) if deg[v] == 1]
    while leaves:
        v = leaves.pop()
        alive &= ~(1 << v)
        for u in members(g.adj[v] & alive):
            deg[u] -= 1
            if deg[u] == 1:
                leaves.append(u)
    return alive


def in_family_G(g: Graph) -> bool:
    """Triangle with at least one pendant, all pendants on one triangle vertex."""
    if g.n < 4 or g.edge_count != g.n or not is_connected(g):
        return False
    return _family_G_shape(g)


def _family_G_shape(g: Graph) -> bool:
    # g is known to be connected with n edges and n >= 4
    full = full_vertices(g)
    if full.bit_count() != 1:
        return False
    rest = g.all & ~full
    inner = [u for u in members(rest) if g.adj[u] & rest]
    return len(inner) == 2 and g.has_edge(*inner)


def unicyclic_y(g: Graph, cyc: VertexSet) -> VertexSet:
    """Cycle vertices whose deletion leaves g connected.

    The cycle of a unicyclic graph has no chord, so such a vertex is exactly
    one of degree 2: any third neighbour roots a tree that reaches the cycle
    only through it.
    """
    y = 0
    rest = cyc
    while rest:
        low = rest & -rest
        if g.adj[low.bit_length() - 1].bit_count() == 2:
            y |= low
        rest ^= low
    return y


def cc_unicyclic(g: Graph) -> FormulaReport:
    if not is_unicyclic(g):
        return _na("not unicyclic")
    cyc = unicyclic_cycle(g)
    y = unicyclic_y(g, cyc)
    inputs = {"n": g.n, "cycle": members(cyc), "Y": members(y)}
    if g.n == 4 and cyc.bit_count() == 4:
        return FormulaReport(True, 4, "C4", inputs)
    if g.n >= 4 and _family_G_shape(g):
        return FormulaReport(True, 0, "family-G", inputs)
    ny = y.bit_count()
    if g.n >= 5 and (ny <= 1 or (ny == 2 and g.has_edge(*members(y)))):
        return FormulaReport(True, 2, "Y-small", inputs)
    return FormulaReport(True, 3, "other", inputs)


def _cc_value(g: Graph, cc: int | None, max_n: int | None) -> int:
    return cc if cc is not None else cc_auto(g, max_n, certificate=False).value


def cc_corona(g: Graph, h: Graph, cc_h: int | None = None, max_n: int | None = None) -> FormulaReport:
    if not is_connected(g):
        return _na("first factor not connected")
    if h.n < 1:
        return _na("second factor is empty")
    if g.n >= 2:
        return FormulaReport(True, 2, "G-nontrivial", {"n_G": g.n})
    value = _cc_value(h, cc_h, max_n)
    if value == 0:
        return FormulaReport(True, 0, "K1-and-CC(H)=0", {"n_G": 1, "CC(H)": 0})
    return FormulaReport(True, 1 + value, "K1-and-CC(H)>0", {"n_G": 1, "CC(H)": value})


def cc_join(
    g: Graph,
    h: Graph,
    cc_g: int | None = None,
    cc_h: int | None = None,
    max_n: int | None = None,
) -> FormulaReport:
    """Three cases: neither factor complete; one complete and the other with CC 0; everything else."""
    if g.n == 0 and h.n == 0:
        raise GraphError("both graphs empty")
    g_complete, h_complete = is_complete(g), is_complete(h)
    inputs: dict = {"n_G": g.n, "n_H": h.n, "G_complete": g_complete, "H_complete": h_complete}
    if not g_complete and not h_complete:
        return FormulaReport(True, g.n + h.n, "neither-complete", inputs)
    a = _cc_value(g, cc_g, max_n)
    b = _cc_value(h, cc_h, max_n)
    inputs.update({"CC(G)": a, "CC(H)": b})
    if (g_complete and b == 0) or (h_complete and a == 0):
        return FormulaReport(True, 0, "complete-with-CC-zero", inputs)
    return FormulaReport(True, a + b, "sum", inputs)


def _require_product_factors(g: Graph, h: Graph, connected: bool) -> None:
    for name, f in (("G", g), ("H", h)):
        if f.n < 2:
            raise GraphError(f"{name} needs at least two vertices")
        if connected and not is_connected(f):
            raise GraphError(f"{name} not connected")


def cc_cartesian_lower_bound(g: Graph, h: Graph, max_n: int | None = None) -> int:
    _require_product_factors(g, h, connected=True)
    a = cc_auto(g, max_n, certificate=False).value + full_vertices(g).bit_count()
    b = cc_auto(h, max_n, certificate=False).value + full_vertices(h).bit_count()
    return max(a, b)


def cc_lexicographic_lower_bound(g: Graph, h: Graph, max_n: int | None = None) -> int:
    _require_product_factors(g, h, connected=False)
    return cc_auto(g, max_n, certificate=False).value + full_vertices(g).bit_count()


def _hub(g: Graph) -> int | None:
    """Lowest full vertex whose deletion leaves a connected graph."""
    for v in members(full_vertices(g)):
        rest = g.all & ~(1 << v)
        if rest and induced_is_connected(g, rest):
            return v
    return None


def cc_cartesian_full_pair_bound(g: Graph, h: Graph) -> tuple[int, Partition]:
    """Bound n + m - 1 on CC(g □ h) with its witness partition of V(g □ h).

    Needs, in each factor, a full vertex whose deletion keeps the factor
    connected. Cell 0 holds the hub pair and every pair avoiding both hubs;
    the remaining cells are the singletons sharing exactly one hub coordinate.
    """
    if g.n < 2 or h.n < 2:
        raise Inapplicable("both factors need at least two vertices")
    u, v = _hub(g), _hub(h)
    if u is None or v is None:
        raise Inapplicable("each factor needs a full vertex whose deletion keeps it connected")
    m = h.n

    def pid(x: int, y: int) -> int:
        return x * m + y

    first = 1 << pid(u, v)
    for x in range(g.n):
        for y in range(m):
            if x != u and y != v:
                first |= 1 << pid(x, y)
    cells = [first]
    cells += [1 << pid(x, v) for x in range(g.n) if x != u]
    cells += [1 << pid(u, y) for y in range(m) if y != v]
    return g.n + m - 1, tuple(cells)


def _blowup_witness(g: Graph, h: Graph, product: Graph, cert: Certificate | None) -> Partition:
    """Lift a CC(g)-partition (or the full vertices when CC(g) = 0) to the product.

    Each cell A becomes A x V(h); each full-vertex singleton of g becomes a
    connected dominating set of the product and is split further so every
    piece has a coalition partner.
    """
    m = h.n

    def lift(a: VertexSet) -> VertexSet:
        return vset(x * m + y for x in members(a) for y in range(m))

    full = full_vertices(g)
    if cert is None:
        hubs = members(full)
        blocks = [lift(1 << x) for x in hubs[:-1]]
        blocks.append(product.all & ~vset(p for b in blocks for p in members(b)))
        cells: list[VertexSet] = []
        for b in blocks:
            cells += split_cds(product, b)
        return tuple(cells)
    cells = []
    for a, w in zip(cert.cells, cert.witness):
        if w is None:
            cells += split_cds(product, lift(a))
        else:
            cells.append(lift(a))
    return tuple(cells)


def cartesian_bound_witness(g: Graph, h: Graph, max_n: int | None = None) -> Partition:
    """A connected coalition partition of g □ h with at least CC(g) + k_g cells (g as the first factor)."""
    _require_product_factors(g, h, connected=True)
    res = cc_auto(g, max_n)
    return _blowup_witness(g, h, cartesian(g, h), res.certificate)


def lexicographic_bound_witness(g: Graph, h: Graph, max_n: int | None = None) -> Partition:
    """Witness for CC(g ∘ h) >= CC(g) + k_g.

    Non-full cells A of an optimal partition of g become A x V(h). The layer
    of a full vertex u splits into singletons: (u, y) dominates every other
    layer and is adjacent to all of them, so it pairs with any lifted
    non-full cell, or with a singleton of another layer when g is complete.
    When CC(g) = 0 the layers are split as connected dominating sets, which
    can fail (then Inapplicable is raised).
    """
    _require_product_factors(g, h, connected=False)
    res = cc_auto(g, max_n)
    product = lexicographic(g, h)
    m = h.n
    if res.certificate is None:
        if full_vertices(g) and not is_connected(h):
            raise Inapplicable("full-vertex layers are only connected when h is connected")
        try:
            return _blowup_witness(g, h, product, None)
        except GraphError as exc:
            raise Inapplicable(f"no witness when CC(g) = 0: {exc}") from None
    cells: list[VertexSet] = []
    for a, w in zip(res.certificate.cells, res.certificate.witness):
        if w is None:
            x = lowest(a)
            cells += [1 << (x * m + y) for y in range(m)]
        else:
            cells.append(vset(x * m + y for x in members(a) for y in range(m)))
    return tuple(cells)


# --- dispatcher ------------------------------------------------------------


def bipartition(g: Graph) -> tuple[VertexSet, VertexSet] | None:
    """Sides of a connected bipartite graph (side containing 0 first), else None."""
    if not is_connected(g):
        return None
    colour = {0: 0}
    queue = [0]
    for v in queue:
        for u in members(g.adj[v]):
            if u not in colour:
                colour[u] = 1 - colour[v]
                queue.append(u)
            elif colour[u] == colour[v]:
                return None
    left = vset(v for v, c in colour.items() if c == 0)
    return left, g.all & ~left


def cc_complete_bipartite(g: Graph) -> FormulaReport:
    sides = bipartition(g)
    if sides is None:
        return _na("not connected bipartite")
    a, b = (s.bit_count() for s in sides)
    if g.edge_count != a * b or min(a, b) < 2:
        return _na("not K_{m,n} with 2 <= m <= n")
    return FormulaReport(True, a + b, "K_mn", {"m": min(a, b), "n": max(a, b)})


def _cert(g: Graph, cells) -> Certificate:
    return validate_partition(g, tuple(sorted(cells, key=lowest)))


def _singletons(g: Graph) -> Certificate:
    return _cert(g, [1 << v for v in range(g.n)])


def _unicyclic_three(g: Graph, y: list[int]) -> Certificate:
    for i, a in enumerate(y):
        for b in y[i + 1:]:
            if not g.has_edge(a, b):
                pair = 1 << a | 1 << b
                return _cert(g, [1 << a, 1 << b, g.all & ~pair])
    raise AssertionError("no non-adjacent pair in Y")


def _lift_certificate(original: Graph, kept: list[int], inner: Certificate | None, removed: list[int]) -> Certificate:
    cells = [vset(kept[v] for v in members(c)) for c in inner.cells]
    cells += [1 << v for v in removed]
    return _cert(original, cells)


def _is_cycle(g: Graph) -> bool:
    return g.n >= 3 and is_connected(g) and all(g.degree(v) == 2 for v in range(g.n))


def _formula_rules(g: Graph) -> dict[str, int]:
    """Every formula rule that applies to connected ``g``, with its value."""
    out = {}
    if g.n == 1:
        out["K1"] = 1
    if is_complete(g):
        out["complete"] = g.n
    if cc_zero_family_check(g):
        out["zero-family"] = 0
    rep = cc_tree(g)
    if rep.applicable:
        out["tree-formula"] = rep.value
    if _is_cycle(g):
        out["cycle-formula"] = cc_cycle(g.n)
    rep = cc_unicyclic(g)
    if rep.applicable:
        out["unicyclic-formula"] = rep.value
    rep = cc_complete_bipartite(g)
    if rep.applicable:
        out["complete-bipartite"] = rep.value
    rep = cc_two_characterization(g)
    if rep.applicable and rep.value == 2:
        out["cut-set"] = 2
    return out


def applicable_rules(g: Graph) -> dict[str, int]:
    """All closed-form rules that fire on ``g`` (used to cross-check the dispatcher)."""
    if g.n == 0:
        return {"empty": 0}
    if not is_connected(g):
        return {"disconnected": 0}
    return _formula_rules(g)


def cc_auto(g: Graph, max_n: int | None = None, *, certificate: bool = True) -> CCResult:
    """CC(g) from the first closed form that applies, else the oracle.

    Rule order: empty, K1, disconnected, complete, zero family, full-vertex
    reduction, tree, cycle, unicyclic, complete bipartite, cut-set, oracle.
    The result's ``method`` names the rule that fired.
    """
    if g.n == 0:
        return CCResult(0, "empty")
    if g.n == 1:
        return CCResult(1, "K1", _singletons(g) if certificate else None)
    if not is_connected(g):
        return CCResult(0, "disconnected")
    if is_complete(g):
        return CCResult(g.n, "complete", _singletons(g) if certificate else None)
    full = full_vertices(g)
    if full:
        if cc_zero_family_check(g):
            return CCResult(0, "zero-family")
        stripped, kept = reduce_full_vertices(g)
        k = g.n - len(kept)
        inner = cc_auto(stripped, max_n, certificate=certificate)
        if inner.value == 0:
            return CCResult(0, "full-vertex-reduction")
        cert = None
        if certificate:
            removed = g.all & ~vset(kept)
            cert = _lift_certificate(g, kept, inner.certificate, members(removed))
        return CCResult(k + inner.value, "full-vertex-reduction", cert)
    # connected, n >= 2, no full vertex from here on
    if g.edge_count == g.n - 1:
        return CCResult(2, "tree-formula", _two_cells(g) if certificate else None)
    if _is_cycle(g):
        value = cc_cycle(g.n)
        cert = None
        if certificate:
            # the two neighbours of vertex 0 as singletons, everything else in one cell
            a, b = members(g.adj[0])
            cert = _singletons(g) if value == 4 else _cert(g, [1 << a, 1 << b, g.all & ~(1 << a | 1 << b)])
        return CCResult(value, "cycle-formula", cert)
    rep = cc_unicyclic(g)
    if rep.applicable:
        cert = None
        if certificate:
            if rep.value == 2:
                cert = _two_cells(g)
            elif rep.value == 3:
                cert = _unicyclic_three(g, rep.inputs["Y"])
            elif rep.value == 4:
                cert = _singletons(g)
        return CCResult(rep.value, "unicyclic-formula", cert)
    rep = cc_complete_bipartite(g)
    if rep.applicable:
        return CCResult(rep.value, "complete-bipartite", _singletons(g) if certificate else None)
    rep = cc_two_characterization(g)
    if rep.applicable and rep.value == 2:
        return CCResult(2, "cut-set", _two_cells(g) if certificate else None)
    cap = _oracle_cap(max_n)
    if g.n > cap:
        raise Undecided(g.n, cap, 2)
    return cc_oracle(g, cap)


def _two_cells(g: Graph) -> Certificate:
    # only called when CC(g) = 2, so this valid split of V has exactly two cells
    return _cert(g, partition_cds(g, g.all))
