from collections import Counter

import pytest
from hypothesis import given, settings

from ccoalition.generators import (
    atlas_graphs,
    c4_plus_e,
    canonical_key,
    cartesian,
    complete,
    complete_bipartite,
    corona,
    cycle,
    enumerate_graphs,
    family_G,
    is_tree,
    is_unicyclic,
    join,
    labelled_graphs,
    labelled_unicyclic,
    lexicographic,
    path,
    prufer_trees,
    star,
    unlabelled_trees,
    unlabelled_unicyclic,
)
from ccoalition.graph import Graph, GraphError, cut_vertices, full_vertices, is_connected
from strategies import graphs

K1 = Graph(1, (0,))


def test_family_constructors():
    assert set(cycle(4).edges()) == {(0, 1), (1, 2), (2, 3), (0, 3)}
    assert star(3).degree(0) == 3 and star(3).n == 4
    assert complete_bipartite(2, 3).edge_count == 6
    assert path(1) == K1


@pytest.mark.parametrize(
    "build", [lambda: path(0), lambda: cycle(2), lambda: star(0), lambda: complete(0), lambda: complete_bipartite(0, 2), lambda: family_G(0)]
)
def test_constructor_ranges(build):
    with pytest.raises(GraphError):
        build()


def test_family_g_and_c4e():
    g1, g2 = family_G(1), family_G(2)
    assert g1.n == 4 and full_vertices(g1) == 1
    assert g2.n == 5 and g2.degree(0) == 4
    g = c4_plus_e()
    assert sorted((g.degree(v) for v in range(5)), reverse=True) == [3, 2, 2, 2, 1]
    assert cut_vertices(g) == 1


def test_product_examples():
    k2 = complete(2)
    assert cartesian(k2, k2) == Graph.from_edges(4, [(0, 1), (2, 3), (0, 2), (1, 3)])
    assert canonical_key(cartesian(k2, k2)) == canonical_key(cycle(4))
    assert lexicographic(k2, k2) == complete(4)
    wheel = join(K1, cycle(4))
    assert wheel == corona(K1, cycle(4))
    assert wheel.edge_count == 8


def test_corona_examples():
    assert canonical_key(corona(path(2), K1)) == canonical_key(path(4))
    g = corona(complete(3), K1)
    assert g.n == 6 and sum(1 for v in range(6) if g.degree(v) == 1) == 3
    # copy i sits in a contiguous block joined to vertex i
    g = corona(path(2), path(2))
    assert g.adj[0] >> 2 & 0b11 == 0b11 and g.adj[1] >> 4 & 0b11 == 0b11


@settings(max_examples=60)
@given(graphs(max_n=4), graphs(max_n=4))
def test_product_edge_counts(g, h):
    assert join(g, h).edge_count == g.edge_count + h.edge_count + g.n * h.n
    assert cartesian(g, h).edge_count == g.n * h.edge_count + h.n * g.edge_count
    assert lexicographic(g, h).edge_count == g.n * h.edge_count + h.n**2 * g.edge_count
    assert corona(g, h).n == g.n * (1 + h.n)


@settings(max_examples=60)
@given(graphs(max_n=4), graphs(max_n=4))
def test_cartesian_and_join_commute_under_coordinate_swap(g, h):
    # (u, v) -> (v, u) maps g x h onto h x g
    swap = [v * g.n + u for u in range(g.n) for v in range(h.n)]
    assert cartesian(g, h).relabel(swap) == cartesian(h, g)
    shift = [h.n + u for u in range(g.n)] + list(range(h.n))
    assert join(g, h).relabel(shift) == join(h, g)


def test_lexicographic_is_not_symmetric():
    assert lexicographic(path(3), complete(2)).edge_count != lexicographic(complete(2), path(3)).edge_count


def test_cayley_counts():
    assert [sum(1 for _ in prufer_trees(n)) for n in range(1, 8)] == [1, 1, 3, 16, 125, 1296, 16807]
    assert all(is_tree(t) for t in prufer_trees(6))


def test_prufer_trees_distinct():
    trees = [t.adj for t in prufer_trees(6)]
    assert len(set(trees)) == len(trees)


def test_labelled_unicyclic_counts():
    # labelled connected unicyclic graphs (OEIS A057500)
    assert [sum(1 for _ in labelled_unicyclic(n)) for n in range(3, 8)] == [1, 15, 222, 3660, 68295]
    gs = [g.adj for g in labelled_unicyclic(6)]
    assert len(set(gs)) == len(gs)
    assert all(is_unicyclic(g) for g in labelled_unicyclic(6))


def test_labelled_unicyclic_matches_filter():
    by_filter = {g.adj for g in labelled_graphs(5) if is_unicyclic(g)}
    assert {g.adj for g in labelled_unicyclic(5)} == by_filter


def test_labelled_graphs():
    assert sum(1 for _ in labelled_graphs(4)) == 64
    gs = list(labelled_graphs(4))
    assert all(g == Graph(g.n, g.adj) for g in gs)
    assert len({g.adj for g in gs}) == 64


def test_enumerate_examples():
    assert sum(1 for _ in enumerate_graphs(4, "trees")) == 16
    assert sum(1 for _ in enumerate_graphs(3, "connected")) == 4
    uni = list(enumerate_graphs(5, "unicyclic"))
    assert len(uni) == 222 and all(g.edge_count == 5 and is_connected(g) for g in uni)


def test_enumerate_composes_filters():
    got = list(enumerate_graphs(5, "connected,no-full-vertex"))
    assert all(is_connected(g) and not full_vertices(g) for g in got)
    assert len(got) == sum(1 for g in labelled_graphs(5) if is_connected(g) and not full_vertices(g))
    assert list(enumerate_graphs(4, ["trees", "no-full-vertex"])) == [t for t in prufer_trees(4) if not full_vertices(t)]


def test_enumerate_is_deterministic():
    assert list(enumerate_graphs(5, "connected")) == list(enumerate_graphs(5, "connected"))


def test_enumerate_errors():
    with pytest.raises(GraphError):
        list(enumerate_graphs(10, "trees"))
    with pytest.raises(ValueError):
        list(enumerate_graphs(4, "bogus"))


def test_dedup_counts():
    assert [sum(1 for _ in enumerate_graphs(n, "trees", dedup=True)) for n in range(1, 10)] == [1, 1, 1, 2, 3, 6, 11, 23, 47]
    assert [sum(1 for _ in enumerate_graphs(n, "unicyclic", dedup=True)) for n in range(3, 10)] == [1, 2, 5, 13, 33, 89, 240]
    assert [sum(1 for _ in enumerate_graphs(n, "connected", dedup=True)) for n in range(1, 8)] == [1, 1, 2, 6, 21, 112, 853]


def test_dedup_matches_labelled_classes():
    labelled = {canonical_key(g) for g in enumerate_graphs(6, "connected,no-full-vertex")}
    deduped = [canonical_key(g) for g in enumerate_graphs(6, "connected,no-full-vertex", dedup=True)]
    assert len(deduped) == len(set(deduped)) and set(deduped) == labelled
    assert {canonical_key(g) for g in unlabelled_unicyclic(6)} == {canonical_key(g) for g in labelled_unicyclic(6)}
    assert {canonical_key(g) for g in unlabelled_trees(7)} == {canonical_key(g) for g in prufer_trees(7)}


def test_external_source(tmp_path):
    f = tmp_path / "in.g6"
    f.write_text("Cl\nC~\nDhc\nCl\n")
    assert list(enumerate_graphs(4, "all", source=f)) == [cycle(4), complete(4), cycle(4)]
    assert list(enumerate_graphs(4, "all", source=f, dedup=True)) == [cycle(4), complete(4)]
    assert len(list(enumerate_graphs(None, "connected", source=f))) == 4
    assert list(enumerate_graphs(4, "non-complete", source=f)) == [cycle(4), cycle(4)]


def test_canonical_key_is_label_invariant():
    g = c4_plus_e()
    assert canonical_key(g) == canonical_key(g.relabel([4, 3, 2, 1, 0]))
    assert canonical_key(cycle(6)) != canonical_key(cartesian(path(3), complete(2)))
    assert canonical_key(Graph(2, (0, 0))) != canonical_key(Graph(3, (0, 0, 0)))


def test_atlas():
    counts = Counter(g.n for g in atlas_graphs(7))
    assert [counts[n] for n in range(1, 8)] == [1, 2, 4, 11, 34, 156, 1044]
    with pytest.raises(GraphError):
        next(atlas_graphs(8))
