"""Min-degree greedy maximal bipartite subgraph and its restart wrapper."""

from __future__ import annotations

import numpy as np

from .._kernels import best_greedy_bipartite
from ..graph import Graph
from .decomposition import OctDecomposition

DEFAULT_RESTARTS = 10_000


def csr(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    indptr = np.zeros(g.n + 1, np.int64)
    indices = []
    for u in range(g.n):
        nb = sorted(g.adjacency[u])
        indices.extend(nb)
        indptr[u + 1] = indptr[u] + len(nb)
    return indptr, np.asarray(indices, np.int64)


def _draws(n: int, restarts: int, seed) -> np.ndarray:
    # row r drives restart r; row 0 equals a single run with the same seed
    return np.random.default_rng(seed).random((restarts, n))


def greedy_bipartite(g: Graph, seed=0) -> OctDecomposition:
    """Two rounds of min-degree greedy independent set.

    The first independent set becomes ``left``, the second (computed on
    what is left after removing ``left``) becomes ``right``; everything
    else is the OCT set.  Ties between minimum-degree vertices are broken
    uniformly using a PCG64 stream seeded by ``seed``.
    """
    return best_of_greedy(g, 1, seed)


def best_of_greedy(g: Graph, restarts: int = DEFAULT_RESTARTS, seed=0) -> OctDecomposition:
    """Smallest OCT over ``restarts`` seeded greedy runs (first run wins ties)."""
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    if g.n == 0:
        return OctDecomposition(frozenset(), frozenset(), frozenset())
    indptr, indices = csr(g)
    side, _ = best_greedy_bipartite(indptr, indices, _draws(g.n, restarts, seed))
    return OctDecomposition.from_sides(side.tolist())
