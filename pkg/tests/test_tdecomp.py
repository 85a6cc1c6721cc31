from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import small_corpus
from onepl.embed import add_kite_edges
from onepl.layers import assemble_window, augment_window, bfs_layering, build_aux, window_indices
from onepl.planar import crossed_edge_map, radial_planarization
from onepl.search import window_width
from onepl.tdecomp import (FORGET, INTRODUCE, JOIN, LEAF, TreeDecomposition, augment_decomposition,
                           contract, make_nice, min_degree_decomposition, radial_decomposition,
                           radial_width_bound, restrict, tree_decompose, validate_decomposition)


def adj_of(g: nx.Graph):
    g = nx.convert_node_labels_to_integers(g)
    return [set(g[v]) for v in range(g.number_of_nodes())], g


@pytest.mark.parametrize("graph,width", [
    (nx.path_graph(6), 1),
    (nx.cycle_graph(7), 2),
    (nx.complete_graph(4), 3),
    (nx.star_graph(5), 1),
    (nx.grid_2d_graph(3, 3), 3),
])
def test_min_degree_known_widths(graph, width):
    adj, g = adj_of(graph)
    t = min_degree_decomposition(adj)
    assert validate_decomposition(t, (len(adj), list(g.edges)))
    assert t.width == width


def test_validation_rejects_broken_decompositions():
    adj, g = adj_of(nx.cycle_graph(5))
    host = (len(adj), list(g.edges))
    t = min_degree_decomposition(adj)
    # drop a vertex from every bag: vertex coverage fails
    bad = TreeDecomposition([b - {0} for b in t.bags], t.tree)
    assert not validate_decomposition(bad, host)
    # two bags for a path with a gap: contiguity fails
    split = TreeDecomposition([frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2})],
                              [[1], [0, 2], [1]])
    assert not validate_decomposition(split, (3, [(0, 1), (1, 2), (0, 2)]))


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=4, max_value=18), st.integers(min_value=0, max_value=10**6))
def test_min_degree_valid_on_random_planar(n, seed):
    g = nx.random_geometric_graph(n, 0.45, seed=seed)
    adj, g = adj_of(g)
    t = min_degree_decomposition(adj)
    assert validate_decomposition(t, (len(adj), list(g.edges)))


def corpus_windows(k, limit=10):
    w = window_width(k)
    for e in small_corpus()[:limit]:
        e2 = add_kite_edges(e)
        lg = radial_planarization(e2)
        bl = bfs_layering(lg)
        aux = build_aux(bl)
        crossed = crossed_edge_map(e2, lg)
        for i in window_indices(bl, w):
            win = assemble_window(bl, aux, i, w)
            yield win, augment_window(win, crossed)


@pytest.mark.parametrize("method", ["min-degree", "radial", "auto"])
def test_window_decompositions_valid(method):
    for win, wp in corpus_windows(1):
        t = tree_decompose(win, method)
        assert validate_decomposition(t, win)
        tp = augment_decomposition(t, wp)
        assert validate_decomposition(tp, wp)
        assert tp.width <= 5 * (t.width + 1) - 1


def test_radial_width_bound():
    for k in (1, 2):
        for win, _ in corpus_windows(k, limit=6):
            r = radial_decomposition(win)
            assert r.width <= radial_width_bound(win.width)


def test_restrict_and_contract():
    adj, g = adj_of(nx.grid_2d_graph(3, 4))
    t = min_degree_decomposition(adj)
    keep = set(range(0, 12, 2)) | {1}
    sub = g.subgraph(keep)
    tr = restrict(t, keep)
    relabel = {v: i for i, v in enumerate(sorted(keep))}
    tr2 = TreeDecomposition([frozenset(relabel[v] for v in b) for b in tr.bags], tr.tree)
    assert validate_decomposition(tr2, (len(keep), [(relabel[a], relabel[b]) for a, b in sub.edges]))
    # contract the first row (connected) into one vertex
    row = {0, 1, 2, 3}
    image, nxt = [], 1
    for v in range(12):
        if v in row:
            image.append(0)
        else:
            image.append(nxt)
            nxt += 1
    edges = {(min(image[a], image[b]), max(image[a], image[b])) for a, b in g.edges if image[a] != image[b]}
    assert validate_decomposition(contract(t, image), (nxt, sorted(edges)))


@pytest.mark.parametrize("graph", [nx.grid_2d_graph(3, 3), nx.complete_graph(5), nx.path_graph(4)])
def test_make_nice_shape(graph):
    adj, g = adj_of(graph)
    t = min_degree_decomposition(adj)
    nice = make_nice(t)
    assert nice.check_shape()
    assert nice.width == t.width
    assert nice.kinds[nice.root] == FORGET and not nice.bags[nice.root]
    assert validate_decomposition(nice.as_tree_decomposition(), (len(adj), list(g.edges)))
    # each vertex is introduced exactly as often as it is forgotten
    for v in range(len(adj)):
        intro = sum(1 for k, x in zip(nice.kinds, nice.vertex) if k == INTRODUCE and x == v)
        forget = sum(1 for k, x in zip(nice.kinds, nice.vertex) if k == FORGET and x == v)
        assert forget == 1 and intro >= 1
    assert set(nice.kinds) <= {LEAF, INTRODUCE, FORGET, JOIN}


def test_make_nice_on_windows():
    for win, wp in itertools.islice(corpus_windows(1, limit=4), 6):
        tp = augment_decomposition(tree_decompose(win), wp)
        nice = make_nice(tp)
        assert nice.check_shape()
        assert validate_decomposition(nice.as_tree_decomposition(), wp)
