"""Embedding subroutines onto the biclique virtual hardware, and the
end-to-end pipeline (embed, reduce, compose, validate)."""

from __future__ import annotations

import functools
import logging
import time
from typing import Iterable

from .chimera import ChimeraSpec, VirtualHardware, biclique_virtual_hardware, chimera_graph
from .framework import (
    CAPACITY,
    NO_DEADLINE,
    OCT_BUDGET,
    TIMEOUT,
    Deadline,
    DeadlineExceeded,
    EmbeddingError,
    Fail,
    PhysicalEmbedding,
    VirtualEmbedding,
    compose,
    validate_minor_embedding,
)
from .graph import Graph
from .oct import DEFAULT_RESTARTS, OctDecomposition, best_of_greedy, oct_exact, oct_via_components
from .reducers import fast_qubit_evaluation, k_exchange_search, qubit_reduce

log = logging.getLogger(__name__)

ALGORITHMS = ("native", "triad", "klymko", "oct-exact", "oct-fast")
REDUCTIONS = ("qubit", "2ex")
INVALID = "invalid-embedding"


def native_embed(p: Graph, vh: VirtualHardware) -> VirtualEmbedding | Fail:
    cap = min(vh.spec.vertical_size, vh.spec.horizontal_size)
    if p.n > cap:
        return Fail(CAPACITY, f"{p.n} vertices exceed native capacity {cap}")
    return VirtualEmbedding.from_slots({u: (u + 1, u + 1) for u in p.vertices()})


def klymko_embed(p: Graph, vh: VirtualHardware) -> VirtualEmbedding | Fail:
    """Native layout that splits the last chain to fit one extra vertex."""
    s = vh.spec
    if s.vertical_size != s.horizontal_size:
        raise EmbeddingError("klymko_embed needs a square biclique (L*M == L*N)")
    ln = s.horizontal_size
    if p.n > ln + 1:
        return Fail(CAPACITY, f"{p.n} vertices exceed {ln + 1}")
    if p.n < ln:
        return native_embed(p, vh)
    slots = {u: (u + 1, u + 1) for u in range(ln - 1)}
    slots[ln - 1] = (ln, None)
    if p.n == ln + 1:
        slots[ln] = (None, ln)
    return VirtualEmbedding.from_slots(slots)


def balance(g: Graph, dec: OctDecomposition) -> OctDecomposition:
    """Flip whole connected pieces of ``g - S`` to even out |L| and |R|.

    Any piece of the bipartite remainder can be recolored independently,
    so pieces are placed largest-imbalance first on whichever side is
    currently lighter.
    """
    rest, ids = g.induced(v for v in g.vertices() if v not in dec.oct_set)
    pieces = []
    for comp in rest.connected_components():
        l = sorted(ids[v] for v in comp if ids[v] in dec.left)
        r = sorted(ids[v] for v in comp if ids[v] in dec.right)
        pieces.append((l, r))
    pieces.sort(key=lambda lr: (-abs(len(lr[0]) - len(lr[1])), min(lr[0] + lr[1])))
    left, right = set(), set()
    for l, r in pieces:
        big, small = (l, r) if len(l) >= len(r) else (r, l)
        if len(left) <= len(right):
            left.update(big)
            right.update(small)
        else:
            left.update(small)
            right.update(big)
    return OctDecomposition(dec.oct_set, frozenset(left), frozenset(right))


def embed_decomposition(p: Graph, vh: VirtualHardware, dec: OctDecomposition) -> VirtualEmbedding | Fail:
    """Map S to "+" chains, L to vertical and R to horizontal qubits.

    Vertices are taken in (S, L, R) order, each class sorted by id: S
    gets slots 1..|S| on both sides, L continues the vertical slots and R
    the horizontal ones.  The larger side goes on the larger partite;
    the other orientation is tried before giving up.
    """
    nv, nh = vh.spec.vertical_size, vh.spec.horizontal_size
    s = sorted(dec.oct_set)
    l, r = sorted(dec.left), sorted(dec.right)
    if (len(l) >= len(r)) != (nv >= nh):
        l, r = r, l
    for left, right in ((l, r), (r, l)):
        if len(s) + len(left) <= nv and len(s) + len(right) <= nh:
            slots = {u: (t + 1, t + 1) for t, u in enumerate(s)}
            slots.update({u: (len(s) + t + 1, None) for t, u in enumerate(left)})
            slots.update({u: (None, len(s) + t + 1) for t, u in enumerate(right)})
            return VirtualEmbedding.from_slots(slots)
    return Fail(
        CAPACITY,
        f"|S|={len(s)}, sides {len(l)}/{len(r)} do not fit {nv}x{nh}",
    )


def exact_decomposition(
    p: Graph, k_max: int | None = None, *, deadline: Deadline = NO_DEADLINE, seed=0, restarts=DEFAULT_RESTARTS
) -> OctDecomposition | Fail:
    """Minimum OCT decomposition with bridge preprocessing."""
    def solver(c: Graph):
        return oct_exact(c, k_max, restarts=restarts, seed=seed, deadline=deadline)

    dec = oct_via_components(p, solver)
    if isinstance(dec, Fail):
        return dec
    if k_max is not None and dec.size > k_max:
        return Fail(OCT_BUDGET, f"OCT {dec.size} exceeds {k_max}")
    return balance(p, dec)


def oct_embed(
    p: Graph,
    vh: VirtualHardware,
    k_max: int | None = None,
    *,
    deadline: Deadline = NO_DEADLINE,
    seed=0,
) -> VirtualEmbedding | Fail:
    """Embed via a minimum OCT; ``k_max`` defaults to the smaller partite."""
    if k_max is None:
        k_max = min(vh.spec.vertical_size, vh.spec.horizontal_size)
    dec = exact_decomposition(p, k_max, deadline=deadline, seed=seed)
    if isinstance(dec, Fail):
        return dec
    return embed_decomposition(p, vh, dec)


def fast_decomposition(p: Graph, restarts: int = DEFAULT_RESTARTS, seed=0) -> OctDecomposition:
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    return balance(p, best_of_greedy(p, restarts, seed))


def fast_oct_embed(p: Graph, vh: VirtualHardware, restarts: int = DEFAULT_RESTARTS, seed=0) -> VirtualEmbedding | Fail:
    return embed_decomposition(p, vh, fast_decomposition(p, restarts, seed))


# ---------------------------------------------------------------------------
# pipeline

@functools.lru_cache(maxsize=8)
def hardware(spec: ChimeraSpec):
    """Cached (Chimera graph, labeling, biclique template) for ``spec``."""
    hw, labeling = chimera_graph(spec)
    return hw, labeling, biclique_virtual_hardware(spec)


def pipeline(
    p: Graph,
    spec: ChimeraSpec,
    algorithm: str = "oct-fast",
    reductions: Iterable[str] = (),
    seed=0,
    *,
    restarts: int = DEFAULT_RESTARTS,
    k: int = 2,
    timeout_ms: float | None = None,
) -> tuple[PhysicalEmbedding | Fail, dict]:
    """Embed, reduce, compose and validate.

    ``metrics`` holds ``success``, ``fail_reason``, ``qubits`` (validated
    physical qubit count or None), ``oct_size`` (OCT algorithms only),
    ``runtime_ms`` and ``exchange_history`` (2-exchange scores).
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")
    reductions = tuple(reductions)
    bad = [r for r in reductions if r not in REDUCTIONS]
    if bad:
        raise ValueError(f"unknown reductions {bad}; expected a subset of {REDUCTIONS}")
    deadline = Deadline.from_ms(timeout_ms)
    metrics = {"success": False, "fail_reason": "", "qubits": None, "oct_size": None,
               "runtime_ms": 0.0, "exchange_history": ()}
    t0 = time.perf_counter()
    try:
        result = _run(p, spec, algorithm, reductions, seed, restarts, k, deadline, metrics)
    except DeadlineExceeded:
        result = Fail(TIMEOUT, f"exceeded {timeout_ms} ms")
    metrics["runtime_ms"] = (time.perf_counter() - t0) * 1000.0
    if isinstance(result, Fail):
        metrics["fail_reason"] = result.reason
    else:
        metrics["success"] = True
        metrics["qubits"] = len(result.qubits())
    return result, metrics


def _run(p, spec, algorithm, reductions, seed, restarts, k, deadline, metrics):
    hw, labeling, vh = hardware(spec)
    if algorithm in ("native", "triad"):
        phi = native_embed(p, vh)
    elif algorithm == "klymko":
        phi = klymko_embed(p, vh)
    else:
        if algorithm == "oct-exact":
            cap = min(spec.vertical_size, spec.horizontal_size)
            dec = exact_decomposition(p, cap, deadline=deadline, seed=seed, restarts=restarts)
        else:
            dec = fast_decomposition(p, restarts, seed)
        if isinstance(dec, Fail):
            return dec
        metrics["oct_size"] = dec.size
        phi = embed_decomposition(p, vh, dec)
    if isinstance(phi, Fail):
        return phi
    deadline.check()

    kept = None
    if algorithm == "triad" or "qubit" in reductions:
        phi, reduced = qubit_reduce(p, vh, phi)
        kept = reduced.edges
    if "2ex" in reductions:
        # exchanges are scored against the full template; the final kept
        # set is the fast evaluation of the exchanged slots
        res = k_exchange_search(p, vh, phi, k, deadline=deadline)
        metrics["exchange_history"] = res.history
        phi = res.phi
        kept = fast_qubit_evaluation(p, vh, phi)
    chi = compose(phi, vh, kept)
    ok, report = validate_minor_embedding(p, hw, chi, labeling)
    if not ok:
        log.error("pipeline produced an invalid embedding: %s", report)
        return Fail(INVALID, str(report))
    return chi


__all__ = [
    "ALGORITHMS",
    "REDUCTIONS",
    "balance",
    "embed_decomposition",
    "exact_decomposition",
    "fast_decomposition",
    "fast_oct_embed",
    "hardware",
    "klymko_embed",
    "native_embed",
    "oct_embed",
    "pipeline",
]
