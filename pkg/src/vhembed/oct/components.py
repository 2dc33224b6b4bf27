"""Solve OCT per 2-edge-connected component and stitch along the bridges."""

from __future__ import annotations

from collections import deque
from typing import Callable

from ..framework import Fail
from ..graph import Graph, bridge_decompose
from .decomposition import OctDecomposition

Solver = Callable[[Graph], "OctDecomposition | Fail"]


def oct_via_components(g: Graph, solver: Solver) -> OctDecomposition | Fail:
    """Run ``solver`` on each maximal 2-edge-connected piece and merge.

    Pieces are visited in BFS order over the block tree; when a bridge
    joins two vertices that ended up on the same side, the newly attached
    piece has its sides swapped, which leaves its OCT untouched.
    """
    dec = bridge_decompose(g)
    side: dict[int, int] = {}
    local: list[dict[int, int]] = []
    for comp in dec.components:
        if len(comp) == 1:
            local.append({comp[0]: 0})
            continue
        sub, names = g.induced(comp)
        res = solver(sub)
        if isinstance(res, Fail):
            return res
        local.append({names[u]: res.side_of(u) for u in range(sub.n)})

    tree: list[list[tuple[int, int, int]]] = [[] for _ in dec.components]
    for a, b in dec.bridges:
        ca, cb = dec.component_of[a], dec.component_of[b]
        tree[ca].append((cb, a, b))
        tree[cb].append((ca, b, a))

    done = [False] * len(dec.components)
    for root in range(len(dec.components)):
        if done[root]:
            continue
        done[root] = True
        side.update(local[root])
        queue = deque([root])
        while queue:
            c = queue.popleft()
            for nxt, here, there in tree[c]:
                if done[nxt]:
                    continue
                done[nxt] = True
                piece = local[nxt]
                if side[here] != 2 and side[here] == piece[there]:
                    piece = {u: (s if s == 2 else 1 - s) for u, s in piece.items()}
                side.update(piece)
                queue.append(nxt)
    return OctDecomposition.from_sides(side)
