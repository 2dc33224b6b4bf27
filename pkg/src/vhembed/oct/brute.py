"""Exhaustive minimum OCT, used as the reference oracle for the other solvers."""

from itertools import combinations

from ..graph import Graph
from .decomposition import OctDecomposition

MAX_VERTICES = 20


def _bipartition(adj: list[int], keep: int):
    """2-color the vertices in bitmask ``keep``; None on an odd cycle."""
    left = right = 0
    todo = keep
    while todo:
        low = todo & -todo
        frontier, side = low, 0
        left |= low
        seen = low
        while frontier:
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                f ^= b
                nxt |= adj[b.bit_length() - 1]
            nxt &= keep
            same = left if side == 0 else right
            if nxt & same:
                return None
            nxt &= ~seen
            seen |= nxt
            if side == 0:
                right |= nxt
            else:
                left |= nxt
            side ^= 1
            frontier = nxt
        todo &= ~seen
    return left, right


def oct_brute_force(g: Graph) -> OctDecomposition:
    """Try every vertex subset in order of increasing size."""
    n = g.n
    if n > MAX_VERTICES:
        raise ValueError(f"brute-force OCT limited to {MAX_VERTICES} vertices, got {n}")
    adj = [sum(1 << w for w in g.adjacency[u]) for u in range(n)]
    full = (1 << n) - 1
    for k in range(n + 1):
        for removed in combinations(range(n), k):
            mask = full
            for u in removed:
                mask &= ~(1 << u)
            sides = _bipartition(adj, mask)
            if sides is None:
                continue
            left, right = sides
            return OctDecomposition(
                frozenset(removed),
                frozenset(u for u in range(n) if left >> u & 1),
                frozenset(u for u in range(n) if right >> u & 1),
            )
    raise AssertionError("unreachable: removing every vertex is bipartite")
