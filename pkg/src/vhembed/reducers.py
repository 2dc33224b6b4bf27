"""Qubit scoring and the reduction subroutines.

A template edge ``(i, j)`` stands for the virtual edge ``(v_i, h_j)``.
Its witness sits in cell row ceil(j/L) of v_i's column and cell column
ceil(i/L) of h_j's row, so a virtual qubit only needs the stretch of its
wire between the extreme cells of its kept edges.  Reducers prune the
template to the edges the embedding actually uses, then optionally
permute vertex slots to shrink those stretches further.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from . import _kernels
from .chimera import ChimeraSpec, VirtualHardware, VirtualQubit, cell
from .framework import NO_DEADLINE, Deadline, EmbeddingError, VirtualEmbedding
from .graph import Graph

log = logging.getLogger(__name__)

DEFAULT_EXACT_BUDGET = 20


@dataclass(frozen=True)
class ScoreReport:
    index_sets: dict[VirtualQubit, frozenset[int]]
    scores: dict[VirtualQubit, int]
    total: int


def qubit_score(edges: Iterable[tuple[int, int]], spec: ChimeraSpec) -> ScoreReport:
    """Cells spanned by each virtual qubit's kept edges, summed.

    Qubits with no kept edge score 0 and are left out of the report.
    """
    L = spec.L
    idx: dict[VirtualQubit, set[int]] = {}
    for i, j in edges:
        idx.setdefault(VirtualQubit("v", i), set()).add(j)
        idx.setdefault(VirtualQubit("h", j), set()).add(i)
    scores = {x: cell(max(s), L) - cell(min(s), L) + 1 for x, s in idx.items()}
    return ScoreReport(
        {x: frozenset(s) for x, s in idx.items()},
        scores,
        sum(scores.values()),
    )


def embedding_score(edges, spec: ChimeraSpec, phi: VirtualEmbedding) -> int:
    """Physical qubits ``compose`` will use: the edge score plus one qubit
    for every occupied virtual qubit that keeps no edge."""
    rep = qubit_score(edges, spec)
    idle = sum(1 for x in phi.occupied() if x not in rep.scores)
    return rep.total + idle


class KeptEdges(frozenset):
    """Kept template edges; ``exact`` is False when a heuristic chose them."""

    exact: bool

    def __new__(cls, edges=(), exact: bool = True):
        obj = super().__new__(cls, edges)
        obj.exact = exact
        return obj


@dataclass(frozen=True)
class _Candidates:
    forced: frozenset[tuple[int, int]]
    pairs: tuple[tuple[tuple[int, int], tuple[int, int]], ...]  # redundant choices


def _candidates(p: Graph, vh: VirtualHardware, phi: VirtualEmbedding) -> _Candidates:
    slots = phi.slots()
    forced = set()
    for u, (a, b) in slots.items():
        if a is not None and b is not None:
            if (a, b) not in vh.edges:
                raise EmbeddingError(f"intra edge (v{a}, h{b}) of vertex {u} missing from template")
            forced.add((a, b))
    pairs = []
    for x, y in p.sorted_edges():
        if x not in slots or y not in slots:
            raise EmbeddingError(f"edge ({x}, {y}) has an unmapped endpoint")
        opts = []
        for s, t in ((x, y), (y, x)):
            a, b = slots[s][0], slots[t][1]
            if a is not None and b is not None and (a, b) in vh.edges:
                opts.append((a, b))
        if not opts:
            raise EmbeddingError(f"edge ({x}, {y}) has no representing template edge")
        if len(opts) == 1:
            forced.add(opts[0])
        else:
            pairs.append(_order_pair(*opts))
    return _Candidates(frozenset(forced), tuple(pairs))


def _order_pair(e1, e2):
    """Preferred option first: a <= b wins, otherwise lexicographic."""
    p1, p2 = e1[0] <= e1[1], e2[0] <= e2[1]
    if p1 != p2:
        return (e1, e2) if p1 else (e2, e1)
    return (e1, e2) if e1 <= e2 else (e2, e1)


def fast_qubit_evaluation(p: Graph, vh: VirtualHardware, phi: VirtualEmbedding) -> KeptEdges:
    """Linear-time pruning: one preferred edge per redundant pair.

    Intra-chain edges ``(v_a, h_b)`` with both in one image are always
    kept so chains stay connected.
    """
    c = _candidates(p, vh, phi)
    return KeptEdges(c.forced | {first for first, _ in c.pairs}, exact=False)


def qubit_evaluation(
    p: Graph,
    vh: VirtualHardware,
    phi: VirtualEmbedding,
    budget: int = DEFAULT_EXACT_BUDGET,
    deadline: Deadline = NO_DEADLINE,
) -> KeptEdges:
    """Minimum-score choice over all redundant pairs (branch and bound).

    With more than ``budget`` redundant pairs the fast evaluation is
    returned instead, flagged ``exact=False``.
    """
    c = _candidates(p, vh, phi)
    if len(c.pairs) > budget:
        log.info("%d redundant pairs exceed budget %d; using fast evaluation", len(c.pairs), budget)
        return fast_qubit_evaluation(p, vh, phi)
    L = vh.spec.L
    # spans as [lo, hi] cell per virtual qubit, updated incrementally
    span: dict[VirtualQubit, list[int]] = {}

    def push(e, undo):
        i, j = e
        for x, cc in ((VirtualQubit("v", i), cell(j, L)), (VirtualQubit("h", j), cell(i, L))):
            s = span.get(x)
            if s is None:
                span[x] = [cc, cc]
                undo.append((x, None))
            elif cc < s[0] or cc > s[1]:
                undo.append((x, (s[0], s[1])))
                s[0], s[1] = min(s[0], cc), max(s[1], cc)

    def pop(undo):
        for x, old in reversed(undo):
            if old is None:
                del span[x]
            else:
                span[x][:] = old

    def total():
        return sum(h - lo + 1 for lo, h in span.values())

    for e in sorted(c.forced):
        push(e, [])
    fast = fast_qubit_evaluation(p, vh, phi)
    best = [qubit_score(fast, vh.spec).total, set(fast)]
    chosen: list[tuple[int, int]] = []

    def search(k):
        cur = total()
        if cur >= best[0]:
            return
        if k == len(c.pairs):
            best[0], best[1] = cur, c.forced | set(chosen)
            return
        deadline.check()
        for e in c.pairs[k]:
            undo: list = []
            push(e, undo)
            chosen.append(e)
            search(k + 1)
            chosen.pop()
            pop(undo)

    search(0)
    return KeptEdges(best[1], exact=True)


Evaluator = Callable[[Graph, VirtualHardware, VirtualEmbedding], frozenset]


def qubit_reduce(
    p: Graph,
    vh: VirtualHardware,
    phi: VirtualEmbedding,
    evaluator: Evaluator = fast_qubit_evaluation,
) -> tuple[VirtualEmbedding, VirtualHardware]:
    kept = evaluator(p, vh, phi)
    return phi, vh.with_edges(kept)


# ---------------------------------------------------------------------------
# k-exchange local search

@dataclass(frozen=True)
class ExchangeResult:
    phi: VirtualEmbedding
    history: tuple[int, ...]  # score before the first move, then after each move
    moves: tuple[tuple[str, tuple[int, ...], tuple[int, ...]], ...]

    @property
    def score(self) -> int:
        return self.history[-1]


def _slot_arrays(phi: VirtualEmbedding, order: list[int]):
    slots = phi.slots()
    vs = np.array([-1 if slots[u][0] is None else slots[u][0] - 1 for u in order], np.int64)
    hs = np.array([-1 if slots[u][1] is None else slots[u][1] - 1 for u in order], np.int64)
    return vs, hs


def _edge_arrays(p: Graph, pos: dict[int, int]):
    es = p.sorted_edges()
    eu = np.array([pos[a] for a, _ in es], np.int64)
    ew = np.array([pos[b] for _, b in es], np.int64)
    return eu, ew


def _from_arrays(order, vs, hs) -> VirtualEmbedding:
    return VirtualEmbedding.from_slots(
        {u: (None if a < 0 else int(a) + 1, None if b < 0 else int(b) + 1) for u, a, b in zip(order, vs, hs)}
    )


def k_exchange_search(
    p: Graph,
    vh: VirtualHardware,
    phi: VirtualEmbedding,
    k: int = 2,
    evaluator: Evaluator = fast_qubit_evaluation,
    deadline: Deadline = NO_DEADLINE,
) -> ExchangeResult:
    """Steepest descent over permutations of k slot positions on one side.

    A move permutes the contents of k vertical (or k horizontal) slots;
    empty slots take part too, so a vertex can also move onto a free
    slot.  Each sweep takes the strictly best move, first in (side,
    slots, permutation) order on ties, and the search stops when nothing
    improves.  Moves are recorded as (side, slots, sources): the vertex
    in slot ``sources[t]`` moves to ``slots[t]`` (1-based).
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if k > len(phi):
        raise EmbeddingError(f"k={k} exceeds the {len(phi)} mapped vertices")
    order = sorted(phi.phi)
    pos = {u: i for i, u in enumerate(order)}
    vs, hs = _slot_arrays(phi, order)
    spec = vh.spec
    nv, nh = spec.vertical_size, spec.horizontal_size
    full = len(vh.edges) == nv * nh
    use_kernel = evaluator is fast_qubit_evaluation and full
    eu, ew = _edge_arrays(p, pos)
    if use_kernel:
        buf = [np.empty(nv, np.int64), np.empty(nv, np.int64), np.empty(nh, np.int64), np.empty(nh, np.int64)]

        def score() -> int:
            return int(_kernels.fast_score(vs, hs, eu, ew, spec.L, *buf))
    else:
        def score() -> int:
            cur = _from_arrays(order, vs, hs)
            try:
                return embedding_score(evaluator(p, vh, cur), spec, cur)
            except EmbeddingError:
                return -1

    history = [score()]
    if history[0] < 0:
        raise EmbeddingError("initial embedding does not represent every problem edge")
    moves = []
    while True:
        deadline.check()
        if use_kernel and k == 2:
            s, side, a, b = _kernels.best_two_exchange(vs, hs, eu, ew, spec.L, nv, nh)
            s = int(s)
            move = None if side < 0 or s >= history[-1] else (int(side), (int(a), int(b)), (int(b), int(a)))
        else:
            s, move = _best_k_move(vs, hs, (nv, nh), k, score, history[-1], deadline)
        if move is None:
            break
        side, idx, src = move
        _apply(vs if side == 0 else hs, idx, src)
        history.append(s)
        moves.append(("v" if side == 0 else "h", tuple(t + 1 for t in idx), tuple(t + 1 for t in src)))
    return ExchangeResult(_from_arrays(order, vs, hs), tuple(history), tuple(moves))


def _apply(arr, idx, src):
    """Move the vertex in slot src[t] to slot idx[t] (0-based slots)."""
    dest = dict(zip(src, idx))
    for u in range(arr.shape[0]):
        if arr[u] in dest:
            arr[u] = dest[arr[u]]


def _best_k_move(vs, hs, sizes, k, score, current, deadline):
    best, best_move = current, None
    for side, arr in ((0, vs), (1, hs)):
        owned = set(arr[arr >= 0].tolist())
        saved = arr.copy()
        for idx in itertools.combinations(range(sizes[side]), k):
            if not owned.intersection(idx):
                continue
            deadline.check()
            for src in itertools.permutations(idx):
                if all(a == b or (a not in owned and b not in owned) for a, b in zip(idx, src)):
                    continue  # identity up to empty slots
                _apply(arr, idx, src)
                s = score()
                arr[:] = saved
                if 0 <= s < best:
                    best, best_move = s, (side, idx, src)
    return best, best_move


def k_exchange_reduce(
    p: Graph,
    vh: VirtualHardware,
    phi: VirtualEmbedding,
    k: int = 2,
    evaluator: Evaluator = fast_qubit_evaluation,
    deadline: Deadline = NO_DEADLINE,
) -> VirtualEmbedding:
    return k_exchange_search(p, vh, phi, k, evaluator, deadline).phi


__all__ = [
    "DEFAULT_EXACT_BUDGET",
    "ExchangeResult",
    "KeptEdges",
    "ScoreReport",
    "embedding_score",
    "fast_qubit_evaluation",
    "k_exchange_reduce",
    "k_exchange_search",
    "qubit_evaluation",
    "qubit_reduce",
    "qubit_score",
]
