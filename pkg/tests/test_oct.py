import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import min_oct_nx
from vhembed.chimera import ChimeraSpec
from vhembed.framework import Deadline, DeadlineExceeded, Fail
from vhembed.generators import gnp, grid_graph, random_series_parallel, triangle_leaf_tree
from vhembed.graph import Graph, degeneracy_order, find_bridges
from vhembed.oct import (
    OctDecomposition,
    best_of_greedy,
    ear_decompose_sp,
    greedy_bipartite,
    lower_bound_witness,
    oct_brute_force,
    oct_exact,
    oct_series_parallel,
    oct_upper_lower_bounds,
    oct_via_components,
    odd_ear_runs,
    validate_nested_ears,
)


def theta(k=3, length=2):
    """k internally disjoint s-t paths of ``length`` edges each (s=0, t=1)."""
    edges, nxt = [], 2
    for _ in range(k):
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph(nxt, edges)


def test_brute_examples():
    assert oct_brute_force(Graph.complete(5)).size == 3
    assert oct_brute_force(Graph.cycle(5)).size == 1
    assert oct_brute_force(Graph.cycle(6)).size == 0
    assert oct_brute_force(grid_graph(3, 3)).size == 0
    with pytest.raises(ValueError):
        oct_brute_force(Graph(21))


def test_decomposition_validity_check():
    g = Graph.complete(3)
    assert OctDecomposition(frozenset({0}), frozenset({1}), frozenset({2})).is_valid_for(g)
    assert not OctDecomposition(frozenset(), frozenset({0, 1}), frozenset({2})).is_valid_for(g)
    assert not OctDecomposition(frozenset(), frozenset({0}), frozenset({1})).is_valid_for(g)


def test_exact_budget():
    assert oct_exact(Graph.complete(5), 4).size == 3
    assert oct_exact(Graph.complete(5), 2) == Fail("oct-budget", "OCT exceeds 2")
    with pytest.raises(ValueError):
        oct_exact(Graph.complete(3), -1)
    with pytest.raises(DeadlineExceeded):
        oct_exact(Graph.complete(8), deadline=Deadline(0.0))


@pytest.mark.parametrize("p", [0.25, 0.5, 0.75])
def test_exact_matches_brute_on_gnp(p):
    rng = np.random.default_rng(int(p * 100))
    for _ in range(17):
        g = gnp(12, p, rng)
        want = oct_brute_force(g).size
        dec = oct_exact(g, restarts=20)
        assert dec.is_valid_for(g) and dec.size == want
        merged = oct_via_components(g, lambda c: oct_exact(c, restarts=20))
        assert merged.is_valid_for(g) and merged.size == want


def test_brute_agrees_with_networkx_oracle():
    rng = np.random.default_rng(5)
    for _ in range(10):
        g = gnp(9, 0.5, rng)
        assert oct_brute_force(g).size == min_oct_nx(g.n, g.edges)


def test_components_examples():
    two_tri = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
    dec = oct_via_components(two_tri, oct_brute_force)
    assert dec.size == 2 and dec.is_valid_for(two_tri)
    tree = Graph(6, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)])
    calls = []
    dec = oct_via_components(tree, lambda c: calls.append(c) or oct_brute_force(c))
    assert dec.size == 0 and dec.is_valid_for(tree) and not calls
    pendant = Graph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5)])
    dec = oct_via_components(pendant, oct_brute_force)
    assert dec.size == 1 and dec.is_valid_for(pendant)


def test_components_propagate_fail():
    g = Graph.complete(4)
    assert oct_via_components(g, lambda c: Fail("x")) == Fail("x")


def test_ear_runs_on_simple_shapes():
    assert odd_ear_runs(ear_decompose_sp(Graph.cycle(5))) == 1
    assert odd_ear_runs(ear_decompose_sp(Graph.cycle(6))) == 0
    assert odd_ear_runs(ear_decompose_sp(theta(3, 3))) == 0
    book = Graph(4, [(0, 1), (0, 2), (2, 1), (0, 3), (3, 1)])  # two triangles on one edge
    assert odd_ear_runs(ear_decompose_sp(book)) == 1 == oct_brute_force(book).size


def test_ear_decomposition_examples():
    cyc = Graph.cycle(6)
    dec = ear_decompose_sp(cyc)
    assert len(dec.ears) == 2 and validate_nested_ears(cyc, dec)
    s, t = dec.terminals
    assert {dec.ears[1][0], dec.ears[1][-1]} == {s, t}
    assert ear_decompose_sp(Graph.complete(4)) == Fail("not-series-parallel")
    th = theta(3, 2)
    dec = ear_decompose_sp(th)
    assert len(dec.ears) == 3 and validate_nested_ears(th, dec)
    assert dec.parent[1] == 0 and dec.parent[2] == 0


def test_ear_validator_rejects_broken_decompositions():
    th = theta(3, 2)
    dec = ear_decompose_sp(th)
    bad = type(dec)(dec.ears[:2], dec.parent[:2], dec.interval[:2], dec.odd[:2])
    assert not validate_nested_ears(th, bad)  # edges left over
    flipped = type(dec)(dec.ears, dec.parent, dec.interval, [not o for o in dec.odd])
    assert not validate_nested_ears(th, flipped)


def test_series_parallel_examples():
    assert oct_series_parallel(Graph.complete(3)).size == 1
    assert oct_series_parallel(Graph.cycle(8)).size == 0
    assert oct_series_parallel(Graph.cycle(7)).size == 1
    assert oct_series_parallel(Graph.complete(4)) == Fail("not-series-parallel")
    assert oct_series_parallel(theta(3, 2)).size == 0
    assert oct_series_parallel(Graph.complete(1)).size == 0


@settings(max_examples=120, deadline=None)
@given(st.integers(2, 14), st.integers(0, 2**32 - 1))
def test_series_parallel_matches_brute(n, seed):
    g = random_series_parallel(n, np.random.default_rng(seed))
    want = oct_brute_force(g).size
    dec = oct_series_parallel(g)
    assert not isinstance(dec, Fail)
    assert dec.is_valid_for(g) and dec.size == want
    # every 2-edge-connected piece also yields a checkable nested ear decomposition
    rest = g.without_edges(find_bridges(g))
    for comp in rest.connected_components():
        if len(comp) > 1:
            sub, _ = g.induced(comp)
            ears = ear_decompose_sp(sub)
            assert validate_nested_ears(sub, ears)
            assert odd_ear_runs(ears) >= oct_brute_force(sub).size


def test_structure_families():
    assert oct_exact(grid_graph(5, 6)).size == 0
    rng = np.random.default_rng(2)
    for leaves in (2, 3, 5):
        g = triangle_leaf_tree(leaves, rng)
        core = max(leaves, 2)
        assert oct_exact(g).size == (g.n - core) // 2


def test_greedy_examples():
    c4 = greedy_bipartite(Graph.cycle(4), seed=1)
    assert c4.size == 0 and len(c4.left) == 2 and len(c4.right) == 2
    assert greedy_bipartite(Graph.complete(3)).size == 1
    e = greedy_bipartite(Graph(5))
    assert e.left == set(range(5)) and not e.oct_set
    assert best_of_greedy(Graph.complete(5), 100).size == 3
    g = gnp(15, 0.4, np.random.default_rng(0))
    for seed in range(5):
        assert best_of_greedy(g, 1, seed) == greedy_bipartite(g, seed)
    with pytest.raises(ValueError):
        best_of_greedy(g, 0)


def test_greedy_deterministic_and_monotone():
    g = gnp(30, 0.3, np.random.default_rng(4))
    assert best_of_greedy(g, 200, 9) == best_of_greedy(g, 200, 9)
    sizes = [best_of_greedy(g, r, 9).size for r in (1, 10, 100, 1000)]
    assert sizes == sorted(sizes, reverse=True)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 14), st.floats(0.1, 0.9), st.integers(0, 2**32 - 1))
def test_greedy_soundness_and_degeneracy_bound(n, p, seed):
    g = gnp(n, p, np.random.default_rng(seed))
    dec = greedy_bipartite(g, seed)
    assert dec.is_valid_for(g) and dec.size <= n
    _, d = degeneracy_order(g)
    # each min-degree pick removes at most d + 1 vertices
    assert len(dec.left) * (d + 1) >= n
    best_bip = n - oct_brute_force(g).size
    assert (n - dec.size) * (d + 1) >= best_bip


def test_greedy_not_exact_on_forests():
    # a path can lose a vertex: picking both ends first leaves an edge for R
    sizes = {greedy_bipartite(Graph.path(4), seed).size for seed in range(40)}
    assert sizes == {0, 1}


def test_bounds_witness():
    g, upper = oct_upper_lower_bounds(ChimeraSpec(2, 2, 2))
    assert upper == 8 and g.n == 12
    assert oct_brute_force(g).size >= 4
    tri = lower_bound_witness(ChimeraSpec(2, 1, 1))
    assert nx.is_isomorphic(nx.Graph(list(tri.edges)), nx.complete_graph(3))
    assert oct_brute_force(tri).size == 1
    one = lower_bound_witness(ChimeraSpec(1, 1, 1))
    assert (one.n, one.m) == (2, 1) and oct_brute_force(one).size == 0
