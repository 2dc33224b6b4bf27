"""Seeded random problem graphs.

Every generator draws from a PCG64 stream (``numpy.random.default_rng``)
seeded by the caller, so a seed reproduces the same graph on any
platform.  Density levels follow the benchmark table: edge probability
0.25 / 0.5 / 0.75 for the probabilistic families and degree (or seed
size) 0.25n / 0.5n / 0.75n for the regular and Barabasi-Albert ones.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .oct.bounds import lower_bound_witness

log = logging.getLogger(__name__)

FAMILIES = ("noisy-bipartite", "gnp", "regular", "barabasi-albert")
DENSITIES = ("low", "medium", "high")
DENSITY_LEVEL = {"low": 0.25, "medium": 0.50, "high": 0.75}
REGULAR_RETRIES = 1000


@dataclass(frozen=True)
class GeneratorConfig:
    family: str
    density: str
    n: int
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.density not in DENSITIES:
            raise ValueError(f"unknown density {self.density!r}; expected one of {DENSITIES}")
        if self.n < 0:
            raise ValueError("n must be non-negative")

    @property
    def level(self) -> float:
        return DENSITY_LEVEL[self.density]

    def filename(self) -> str:
        return f"{self.family}_{self.density}_n{self.n}_s{self.seed}.txt"


def generate(cfg: GeneratorConfig) -> Graph:
    rng = np.random.default_rng(cfg.seed)
    if cfg.family == "gnp":
        return gnp(cfg.n, cfg.level, rng)
    if cfg.family == "noisy-bipartite":
        return noisy_bipartite(cfg.n, cfg.level, rng)
    k = round(cfg.level * cfg.n)
    if cfg.family == "regular":
        return random_regular(cfg.n, feasible_degree(cfg.n, k), rng)
    return barabasi_albert(cfg.n, max(k, 1), rng)


def _rng(rng) -> np.random.Generator:
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


def gnp(n: int, p: float, rng=None) -> Graph:
    rng = _rng(rng)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p
    return Graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def noisy_bipartite(n: int, p: float, rng=None) -> Graph:
    """Two near-equal sides; cross pairs at ``p``, same-side pairs at ``p / 5``."""
    rng = _rng(rng)
    half = (n + 1) // 2
    iu, ju = np.triu_indices(n, 1)
    cross = (iu < half) != (ju < half)
    prob = np.where(cross, p, p / 5)
    keep = rng.random(iu.size) < prob
    return Graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def feasible_degree(n: int, k: int) -> int:
    """Closest degree with k < n and k*n even (ties go down)."""
    if n <= 1:
        return 0
    for cand in sorted(range(n), key=lambda c: (abs(c - k), c)):
        if (cand * n) % 2 == 0:
            if cand != k:
                log.info("regular degree %d infeasible for n=%d, using %d", k, n, cand)
            return cand
    raise ValueError(f"no feasible regular degree for n={n}")


def random_regular(n: int, k: int, rng=None) -> Graph:
    """Uniform-ish k-regular graph from the pairing model.

    Stubs are matched one pair at a time, redrawing any pair that would
    create a loop or a repeated edge; when no valid pair remains the
    attempt restarts.  Dense degrees are generated as the complement of
    the sparse (n - 1 - k)-regular graph.
    """
    if k < 0 or k >= max(n, 1) or (k * n) % 2:
        raise ValueError(f"no {k}-regular graph on {n} vertices")
    rng = _rng(rng)
    if k > (n - 1) // 2:
        comp = random_regular(n, n - 1 - k, rng)
        return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n) if not comp.has_edge(i, j)))
    for _ in range(REGULAR_RETRIES):
        edges = _try_pairing(n, k, rng)
        if edges is not None:
            return Graph(n, edges)
    raise RuntimeError(f"pairing model failed {REGULAR_RETRIES} times for n={n}, k={k}")


def _try_pairing(n: int, k: int, rng: np.random.Generator):
    stubs = [v for v in range(n) for _ in range(k)]
    edges: set[tuple[int, int]] = set()
    while stubs:
        order = rng.permutation(len(stubs))
        pool = [stubs[i] for i in order]
        leftover = []
        while len(pool) >= 2:
            a, b = pool.pop(), pool.pop()
            e = (min(a, b), max(a, b))
            if a == b or e in edges:
                leftover.extend((a, b))
            else:
                edges.add(e)
        leftover.extend(pool)
        if len(leftover) == len(stubs):
            # nothing paired this round: check whether any valid pair exists at all
            if not _has_valid_pair(leftover, edges):
                return None
        stubs = leftover
    return edges


def _has_valid_pair(stubs, edges) -> bool:
    vs = sorted(set(stubs))
    return any(
        (a, b) not in edges for i, a in enumerate(vs) for b in vs[i + 1 :]
    )


def barabasi_albert(n: int, k: int, rng=None) -> Graph:
    """Preferential attachment of n - k vertices onto a GNP(k, 0.25) seed.

    Each new vertex links to ``k`` distinct earlier vertices drawn with
    probability proportional to degree + 1.
    """
    rng = _rng(rng)
    k = min(k, n)
    seed_graph = gnp(k, 0.25, rng)
    edges = set(seed_graph.edges)
    deg = np.zeros(n, np.float64)
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    for v in range(k, n):
        w = deg[:v] + 1.0
        targets = rng.choice(v, size=min(k, v), replace=False, p=w / w.sum())
        for t in targets.tolist():
            edges.add((t, v))
            deg[t] += 1
            deg[v] += 1
    return Graph(n, edges)


def random_series_parallel(n: int, rng=None) -> Graph:
    """Two-terminal series-parallel graph on ``n`` vertices.

    Built bottom-up: each step either subdivides a random edge (series)
    or adds a new length-2 path beside it (parallel); occasionally a
    whole piece is chained on at a terminal so the result can have cut
    vertices.
    """
    rng = _rng(rng)
    if n < 2:
        return Graph(n)
    edges = [(0, 1)]
    terminal = 1
    nxt = 2
    while nxt < n:
        r = rng.random()
        if r < 0.1:
            # series composition with a fresh edge at the current terminal
            edges.append((terminal, nxt))
            terminal = nxt
        else:
            a, b = edges[int(rng.integers(len(edges)))]
            if r < 0.55:
                edges.remove((a, b))
                edges.extend([(a, nxt), (nxt, b)])
            else:
                edges.extend([(a, nxt), (nxt, b)])
        nxt += 1
    return Graph(n, edges)


def triangle_leaf_tree(leaves: int, rng=None) -> Graph:
    """Random tree whose leaves are each replaced by a triangle."""
    rng = _rng(rng)
    core = max(leaves, 2)
    edges = [(int(rng.integers(v)), v) for v in range(1, core)]
    deg = np.zeros(core, int)
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    nxt = core
    for v in [v for v in range(core) if deg[v] <= 1]:
        edges += [(v, nxt), (v, nxt + 1), (nxt, nxt + 1)]
        nxt += 2
    return Graph(nxt, edges)


def grid_graph(rows: int, cols: int) -> Graph:
    idx = lambda r, c: r * cols + c
    edges = []
    for r in range(rows):
        for c in range(cols):
            if r + 1 < rows:
                edges.append((idx(r, c), idx(r + 1, c)))
            if c + 1 < cols:
                edges.append((idx(r, c), idx(r, c + 1)))
    return Graph(rows * cols, edges)


__all__ = [
    "DENSITIES",
    "FAMILIES",
    "GeneratorConfig",
    "barabasi_albert",
    "feasible_degree",
    "generate",
    "gnp",
    "grid_graph",
    "lower_bound_witness",
    "noisy_bipartite",
    "random_regular",
    "random_series_parallel",
    "triangle_leaf_tree",
]
