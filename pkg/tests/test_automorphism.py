import itertools
from math import factorial

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from distnum.automorphism import automorphism_group, color_automorphism_group, refine
from distnum.budget import Budget
from distnum.errors import BudgetExceeded, PreconditionError
from distnum.graph import Graph, complement, complete_graph, cycle_graph, disjoint_copies, path_graph
from distnum.strip import strip_ball, strip_window
from oracles import brute_automorphisms, group_elements, vf2_color_automorphisms
from test_graph import graphs


VF2_CAP = 5000


def petersen():
    g = nx.petersen_graph()
    return Graph.from_edges(10, g.edges())


def octahedron():
    return complement(disjoint_copies(complete_graph(2), 3))


@pytest.mark.parametrize("n", range(1, 8))
def test_complete_graph(n):
    assert automorphism_group(complete_graph(n)).order() == factorial(n)


@pytest.mark.parametrize("g, order", [
    (octahedron(), 48),
    (petersen(), 120),
    (cycle_graph(6), 12),
    (path_graph(5), 2),
    (disjoint_copies(complete_graph(3), 2), 72),
    (disjoint_copies(complete_graph(5), 6), factorial(5) ** 6 * factorial(6)),
    (Graph(0, ()), 1),
])
def test_known_orders(g, order):
    assert automorphism_group(g).order() == order


def test_octahedron_matches_filter():
    g = octahedron()
    assert automorphism_group(g).order() == len(brute_automorphisms(g.n, g.edges()))


@given(graphs(max_n=7))
@settings(max_examples=120, deadline=None)
def test_group_equals_filtered_permutations(g):
    group = automorphism_group(g)
    brute = set(brute_automorphisms(g.n, g.edges()))
    assert group.order() == len(brute)
    assert group_elements(g.n, group.generators) == brute


@given(graphs(max_n=12))
@settings(max_examples=60, deadline=None)
def test_order_matches_vf2(g):
    group = automorphism_group(g)
    assert all(g.is_automorphism(s) for s in group.generators)
    cap = min(group.order(), VF2_CAP) + 1
    found = vf2_color_automorphisms(g.n, g.edges(), stop_after=cap)
    if group.order() <= VF2_CAP:
        assert found == group.order()
    else:
        assert found == cap


@given(graphs(max_n=7), st.data())
@settings(max_examples=80, deadline=None)
def test_colour_automorphisms(g, data):
    colors = data.draw(st.lists(st.integers(0, 2), min_size=g.n, max_size=g.n))
    group = color_automorphism_group(g, colors)
    brute = [p for p in brute_automorphisms(g.n, g.edges())
             if all(colors[p[x]] == colors[x] for x in range(g.n))]
    assert group.order() == len(brute)


def test_small_strip_window_order_matches_vf2():
    w = strip_window(3, 0, 1)
    assert automorphism_group(w.graph).order() == vf2_color_automorphisms(w.graph.n, w.graph.edges())


@pytest.mark.parametrize("k, m", [(3, 3), (3, 4), (4, 3)])
def test_strip_ball_order_is_product_over_layers(k, m):
    # every automorphism keeps layers, and each layer contributes its own group
    w, _ = strip_ball(k, 0, m)
    expected = 1
    for n, layer in zip(range(w.lo, w.hi + 1), w.layers()):
        s = len(layer)
        expected *= factorial(s) if n % 3 != 1 else 2 ** (s // 2) * factorial(s // 2)
    assert automorphism_group(w.graph).order() == expected


def test_refine_is_equitable():
    g = path_graph(5)
    cells = refine(g, [list(range(5))])
    assert sorted(map(sorted, cells)) == [[0, 4], [1, 3], [2]]
    for a, b in itertools.product(cells, repeat=2):
        counts = {sum(g.has_edge(v, u) for u in b) for v in a}
        assert len(counts) == 1


def test_refine_rejects_non_partition():
    with pytest.raises(PreconditionError):
        refine(path_graph(3), [[0, 1]])


def test_budget_exceeded_is_raised():
    with pytest.raises(BudgetExceeded):
        automorphism_group(petersen(), Budget(5))


def test_disconnected_accepted():
    g = disjoint_copies(path_graph(3), 3)
    assert automorphism_group(g).order() == 2 ** 3 * 6


def test_strip_window_keeps_layers():
    w = strip_window(3, -2, 2)
    group = automorphism_group(w.graph)
    for s in group.generators:
        assert all(w.layer_of[s[v]] == w.layer_of[v] for v in range(w.graph.n))
