import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from distnum.automorphism import automorphism_group
from distnum.balls import build_chain, extend_coloring, extension_steps, verify_ball_extension
from distnum.distinguishing import anchored_distinguishing_coloring, distinguishing_number
from distnum.errors import PreconditionError
from distnum.graph import Graph, cycle_graph, disjoint_copies, path_graph
from distnum.strip import strip_window
from oracles import group_elements, is_distinguishing_brute


def random_tree(n, seed):
    t = nx.random_labeled_tree(n, seed=seed) if hasattr(nx, "random_labeled_tree") else nx.random_tree(n, seed=seed)
    return Graph.from_edges(n, t.edges())


def rooted_tree(depth):
    """Vertex at depth d has d + 1 children."""
    edges, frontier, n = [], [0], 1
    for d in range(depth):
        nxt = []
        for v in frontier:
            for _ in range(d + 1):
                edges.append((v, n))
                nxt.append(n)
                n += 1
        frontier = nxt
    return Graph.from_edges(n, edges)


def anchored_for(chain, k):
    groups = chain.groups()
    return [anchored_distinguishing_coloring(g, vmap.center, k) for g, (_, vmap) in zip(groups, chain.balls)]


def check_extension(g, x, radii, k):
    chain = build_chain(g, x, radii)
    steps = extension_steps(chain, anchored_for(chain, k), k)
    prev = {}
    for (b, vmap), psi in zip(chain.balls, steps):
        elems = group_elements(b.n, automorphism_group(b).generators) if b.n <= 9 else None
        if elems is not None:
            assert is_distinguishing_brute(elems, psi)
        host = dict(zip(vmap.to_host, psi))
        assert all(host[h] == c for h, c in prev.items())
        prev = host
    return steps


def test_chain_on_path():
    chain = build_chain(path_graph(9), 4, [1, 2, 3])
    assert [b.n for b, _ in chain.balls] == [3, 5, 7]


def test_chain_rejects_non_increasing():
    with pytest.raises(PreconditionError):
        build_chain(path_graph(9), 4, [2, 2])


def test_chain_rejects_stalled_growth():
    with pytest.raises(PreconditionError):
        build_chain(path_graph(3), 1, [1, 2])


def test_extension_on_path():
    steps = check_extension(path_graph(9), 4, [1, 2, 3], 3)
    assert steps[-1].count(0) == 1


def test_extension_on_rooted_tree():
    check_extension(rooted_tree(3), 0, [1, 2, 3], 4)


def test_anchor_must_be_unique():
    chain = build_chain(path_graph(5), 2, [1, 2])
    with pytest.raises(PreconditionError):
        extension_steps(chain, [(0, 0, 1), (1, 1, 0, 2, 2)], 3)


def test_anchor_palette_checked():
    chain = build_chain(path_graph(5), 2, [1])
    with pytest.raises(PreconditionError):
        extension_steps(chain, [(1, 0, 5)], 3)


def test_needs_one_colouring_per_ball():
    chain = build_chain(path_graph(5), 2, [1, 2])
    with pytest.raises(PreconditionError):
        extension_steps(chain, [(1, 0, 2)], 3)


@given(st.integers(7, 11), st.integers(0, 10 ** 6))
@settings(max_examples=25, deadline=None)
def test_extension_on_random_trees(n, seed):
    g = random_tree(n, seed)
    x = random.Random(seed).randrange(n)
    ecc = max(nx.single_source_shortest_path_length(nx.Graph(g.edges()), x).values())
    if ecc < 3:
        return
    chain = build_chain(g, x, [1, 2, 3])
    k = max(distinguishing_number(gr).value for gr in chain.groups()) + 1
    check_extension(g, x, [1, 2, 3], k)


def test_strip_window_extension():
    w = strip_window(3, -4, 4)
    x = w.layer(0)[0]
    steps = check_extension(w.graph, x, [1, 2, 3], 4)
    assert max(steps[-1]) == 3


def test_report_extended_on_cycle():
    report = verify_ball_extension(cycle_graph(9), 0, 3, [1, 2, 3])
    assert report["status"] == "extended"
    assert all(level["extended"] for level in report["levels"])
    assert report["coloring"][report["coloring_hosts"].index(0)] == 0


def test_report_obstructed_on_strip():
    w = strip_window(3, -3, 3)
    report = verify_ball_extension(w.graph, w.layer(0)[0], 3, [1, 2, 3])
    assert report["status"] == "obstructed"
    assert report["obstructions"] == [1, 2, 3]
    assert [level["D"] for level in report["levels"]] == [3, 3, 3]


def test_report_needs_connected_graph():
    with pytest.raises(PreconditionError):
        verify_ball_extension(disjoint_copies(path_graph(3), 2), 0, 3)


def test_extend_coloring_returns_last_step():
    g = path_graph(7)
    chain = build_chain(g, 3, [1, 2])
    anchored = anchored_for(chain, 3)
    assert extend_coloring(chain, anchored, 3) == extension_steps(chain, anchored, 3)[-1]
