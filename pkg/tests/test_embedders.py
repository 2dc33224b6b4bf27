import numpy as np
import pytest

from oracles import chimera_nx, is_minor_embedding
from vhembed.chimera import ChimeraSpec, h, v
from vhembed.embedders import (
    balance,
    embed_decomposition,
    exact_decomposition,
    fast_decomposition,
    fast_oct_embed,
    hardware,
    klymko_embed,
    native_embed,
    oct_embed,
    pipeline,
)
from vhembed.framework import EmbeddingError, Fail, compose, validate_minor_embedding
from vhembed.generators import FAMILIES, GeneratorConfig, generate, gnp
from vhembed.graph import Graph
from vhembed.oct import OctDecomposition
from vhembed.reducers import qubit_reduce


def biclique(a, b):
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def check(p, spec, phi, kept=None):
    hw, lab, vh = hardware(spec)
    chi = compose(phi, vh, kept)
    ok, rep = validate_minor_embedding(p, hw, chi, lab)
    assert ok, str(rep)
    return chi


def test_native_examples(hw433, spec433):
    _, _, vh = hw433
    p = Graph.complete(3)
    phi = native_embed(p, vh)
    assert phi.phi == {u: frozenset({v(u + 1), h(u + 1)}) for u in range(3)}
    check(p, spec433, phi)
    assert native_embed(Graph.complete(13), vh).reason == "capacity"
    empty = native_embed(Graph(0), vh)
    assert len(empty) == 0
    assert compose(empty, vh).chi == {}


def test_klymko_examples(hw433, spec433):
    _, _, vh = hw433
    p = Graph.complete(13)
    phi = klymko_embed(p, vh)
    assert phi.phi[11] == {v(12)} and phi.phi[12] == {h(12)}
    assert all(phi.phi[u] == {v(u + 1), h(u + 1)} for u in range(11))
    chi = check(p, spec433, phi)
    assert p.m == 78
    assert is_minor_embedding(p.edges, p.n, chimera_nx(4, 3, 3), chi.chi)
    assert klymko_embed(Graph.complete(14), vh).reason == "capacity"
    small = Graph.complete(11)
    assert klymko_embed(small, vh) == native_embed(small, vh)
    _, _, vh_rect = hardware(ChimeraSpec(4, 3, 2))
    with pytest.raises(EmbeddingError):
        klymko_embed(small, vh_rect)


def test_klymko_reduction_keeps_plus_chains(hw433, spec433):
    _, _, vh = hw433
    p = Graph.complete(13)
    phi, reduced = qubit_reduce(p, vh, klymko_embed(p, vh))
    chi = check(p, spec433, phi, reduced.edges)
    assert all(len(chi.chi[u]) >= 2 for u in range(11))


def test_oct_embed_fig5_shape():
    spec = ChimeraSpec(4, 2, 2)
    _, _, vh = hardware(spec)
    # two triangles hung on an even cycle: OCT 2
    p = Graph(8, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 6), (6, 5), (5, 7), (7, 2)])
    phi = oct_embed(p, vh)
    sizes = sorted(len(xs) for xs in phi.phi.values())
    assert sizes == [1] * 6 + [2] * 2
    check(p, spec, phi)


def test_oct_embed_capacity_and_budget(hw433):
    _, _, vh = hw433
    assert oct_embed(biclique(13, 5), vh).reason == "capacity"
    assert oct_embed(Graph.complete(6), vh, k_max=3).reason == "oct-budget"


def test_oct_embed_complete_bipartite(hw433, spec433):
    _, _, vh = hw433
    p = biclique(5, 5)
    assert exact_decomposition(p).size == 0
    phi = oct_embed(p, vh)
    assert all(len(xs) == 1 for xs in phi.phi.values())
    chi = check(p, spec433, phi)
    for qs in chi.chi.values():
        assert len({q.partite for q in qs}) == 1


def test_fast_oct_embed_k4(hw433, spec433):
    _, _, vh = hw433
    p = Graph.complete(4)
    phi = fast_oct_embed(p, vh, restarts=10)
    assert sorted(len(xs) for xs in phi.phi.values()) == [1, 1, 2, 2]
    check(p, spec433, phi)


def test_fast_oct_embed_deterministic(hw488):
    _, _, vh = hw488
    p = gnp(30, 0.3, np.random.default_rng(1))
    assert fast_oct_embed(p, vh, 1, seed=7) == fast_oct_embed(p, vh, 1, seed=7)
    a, _ = pipeline(p, ChimeraSpec(4, 8, 8), "oct-fast", ("qubit", "2ex"), 3, restarts=50)
    b, _ = pipeline(p, ChimeraSpec(4, 8, 8), "oct-fast", ("qubit", "2ex"), 3, restarts=50)
    assert a.to_text() == b.to_text()


def test_fast_decomposition_restarts_monotone():
    p = gnp(40, 0.2, np.random.default_rng(2))
    sizes = [fast_decomposition(p, r, 5).size for r in (1, 10, 100, 1000)]
    assert sizes == sorted(sizes, reverse=True)
    with pytest.raises(ValueError):
        fast_decomposition(p, 0)


def test_balance_keeps_oct_and_evens_sides():
    star = Graph(5, [(0, 1), (0, 2), (0, 3)])
    d = OctDecomposition(frozenset(), frozenset({1, 2, 3, 4}), frozenset({0}))
    b = balance(star, d)
    assert b.is_valid_for(star) and b.oct_set == d.oct_set
    assert {len(b.left), len(b.right)} == {2, 3}
    tri = Graph(5, [(0, 1), (1, 2), (0, 2)])
    d = OctDecomposition(frozenset({0}), frozenset({1, 3, 4}), frozenset({2}))
    b = balance(tri, d)
    assert b.is_valid_for(tri) and b.oct_set == {0} and abs(len(b.left) - len(b.right)) <= 1


def test_orientation_flip():
    spec = ChimeraSpec(1, 2, 3)  # 3 vertical, 2 horizontal slots
    _, _, vh = hardware(spec)
    p = biclique(3, 2)
    dec = OctDecomposition(frozenset(), frozenset({3, 4}), frozenset({0, 1, 2}))
    phi = embed_decomposition(p, vh, dec)
    assert all(next(iter(phi.phi[u])).side == "v" for u in (0, 1, 2))
    check(p, spec, phi)
    assert embed_decomposition(biclique(4, 2), vh, OctDecomposition(
        frozenset(), frozenset({0, 1, 2, 3}), frozenset({4, 5}))).reason == "capacity"


def test_exact_never_fails_where_fast_succeeds(hw488):
    _, _, vh = hw488
    rng = np.random.default_rng(11)
    for _ in range(6):
        p = gnp(36, 0.08, rng)
        fast = fast_oct_embed(p, vh, 200)
        if not isinstance(fast, Fail):
            assert not isinstance(oct_embed(p, vh), Fail)


def test_pipeline_k12(spec433):
    p = Graph.complete(12)
    _, m = pipeline(p, spec433, "native")
    assert m["qubits"] == 72 and m["success"]
    _, m = pipeline(p, spec433, "triad")
    assert m["qubits"] == 48
    _, m = pipeline(p, spec433, "oct-fast", ("qubit", "2ex"), restarts=100)
    assert m["success"] and m["qubits"] <= 48
    hist = m["exchange_history"]
    assert all(a > b for a, b in zip(hist, hist[1:]))
    with pytest.raises(ValueError):
        pipeline(p, spec433, "cmr")
    with pytest.raises(ValueError):
        pipeline(p, spec433, "native", ("4ex",))


def test_pipeline_timeout_and_capacity(spec433):
    chi, m = pipeline(gnp(20, 0.5, np.random.default_rng(0)), spec433, "oct-exact", timeout_ms=0)
    assert chi == Fail("timeout", "exceeded 0 ms") and m["fail_reason"] == "timeout" and m["qubits"] is None
    chi, m = pipeline(Graph.complete(13), spec433, "triad")
    assert isinstance(chi, Fail) and m["fail_reason"] == "capacity"


def test_master_property_against_independent_oracle(spec488):
    """Every success is a minor embedding of the explicit Chimera graph."""
    ref = chimera_nx(4, 8, 8)
    count = 0
    for fam in FAMILIES:
        for dens in ("low", "high"):
            for n in (8, 24, 33):
                p = generate(GeneratorConfig(fam, dens, n, 1))
                for alg, reds in (("native", ()), ("triad", ()), ("klymko", ("qubit",)),
                                  ("oct-fast", ()), ("oct-fast", ("qubit", "2ex"))):
                    chi, m = pipeline(p, spec488, alg, reds, restarts=200)
                    if m["success"]:
                        count += 1
                        assert is_minor_embedding(p.edges, p.n, ref, chi.chi)
                        assert m["qubits"] == len(chi.qubits())
    assert count > 40
