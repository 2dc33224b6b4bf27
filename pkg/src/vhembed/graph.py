"""Simple undirected graphs with dense integer vertex ids.

Besides the container itself this module holds the structural
decompositions the OCT solvers lean on: bridges / 2-edge-connected
components and min-degree (degeneracy) orderings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs or out-of-range vertex ids."""


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("_n", "_edges", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        es = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop on vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            e = _norm(u, v)
            if e in es:
                continue
            es.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self._n = n
        self._edges = frozenset(es)
        self._adj = tuple(frozenset(a) for a in adj)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, ((i, j) for i in range(n) for j in range(i + 1, n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls(a + b, ((i, a + j) for i in range(a) for j in range(b)))

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        """Edges as ``(u, v)`` pairs with ``u < v``."""
        return self._edges

    def vertices(self) -> range:
        return range(self._n)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    def neighbors(self, v: int) -> frozenset[int]:
        if not 0 <= v < self._n:
            raise GraphError(f"vertex {v} out of range for n={self._n}")
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self._edges

    @property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return self._adj

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled densely.

        Returns the subgraph and the list mapping new ids to old ids.
        """
        old = sorted(set(vertices))
        new_id = {v: i for i, v in enumerate(old)}
        es = [
            (new_id[u], new_id[w])
            for u in old
            for w in self._adj[u]
            if w in new_id and u < w
        ]
        return Graph(len(old), es), old

    def without_edges(self, removed: Iterable[tuple[int, int]]) -> "Graph":
        drop = {_norm(u, v) for u, v in removed}
        return Graph(self._n, (e for e in self._edges if e not in drop))

    def connected_components(self) -> list[list[int]]:
        seen = [False] * self._n
        comps = []
        for s in range(self._n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], [s]
            while stack:
                u = stack.pop()
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
                        comp.append(w)
            comps.append(sorted(comp))
        return comps

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"


def two_coloring(g: Graph, removed: Iterable[int] = ()) -> dict[int, int] | None:
    """BFS 2-coloring of ``g`` minus ``removed``; None if an odd cycle remains."""
    gone = set(removed)
    color: dict[int, int] = {}
    for s in g.vertices():
        if s in gone or s in color:
            continue
        color[s] = 0
        queue = [s]
        for u in queue:
            cu = color[u]
            for w in g.adjacency[u]:
                if w in gone:
                    continue
                cw = color.get(w)
                if cw is None:
                    color[w] = 1 - cu
                    queue.append(w)
                elif cw == cu:
                    return None
    return color


def is_bipartite(g: Graph, removed: Iterable[int] = ()) -> bool:
    return two_coloring(g, removed) is not None


# ---------------------------------------------------------------------------
# bridges

@dataclass(frozen=True)
class BridgeDecomposition:
    bridges: frozenset[tuple[int, int]]
    components: list[list[int]]
    # block tree: component index pairs, one per bridge, in bridge order
    block_tree: list[tuple[int, int]]
    component_of: list[int]

    def tree_edges(self) -> Iterator[tuple[int, int, tuple[int, int]]]:
        """Yield ``(component_a, component_b, bridge)`` triples."""
        for (a, b), e in zip(self.block_tree, sorted(self.bridges)):
            yield a, b, e


def find_bridges(g: Graph) -> set[tuple[int, int]]:
    """Bridges via iterative low-link DFS, O(n + m)."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    bridges = set()
    timer = 0
    adj = [list(a) for a in g.adjacency]
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # frames: (vertex, parent, neighbour iterator position)
        stack = [(root, -1, 0)]
        while stack:
            u, parent, i = stack[-1]
            if i < len(adj[u]):
                stack[-1] = (u, parent, i + 1)
                w = adj[u][i]
                if w == parent:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, u, 0))
                else:
                    low[u] = min(low[u], disc[w])
            else:
                stack.pop()
                if parent >= 0:
                    low[parent] = min(low[parent], low[u])
                    if low[u] > disc[parent]:
                        bridges.add(_norm(parent, u))
    return bridges


def bridge_decompose(g: Graph) -> BridgeDecomposition:
    bridges = find_bridges(g)
    rest = g.without_edges(bridges)
    comps = rest.connected_components()
    comp_of = [0] * g.n
    for i, c in enumerate(comps):
        for v in c:
            comp_of[v] = i
    tree = [(comp_of[u], comp_of[v]) for u, v in sorted(bridges)]
    return BridgeDecomposition(frozenset(bridges), comps, tree, comp_of)


# ---------------------------------------------------------------------------
# degeneracy

def degeneracy_order(g: Graph, rng: random.Random | None = None) -> tuple[list[int], int]:
    """Repeatedly remove a minimum-degree vertex.

    Bucketed degrees keep this O(n + m).  With ``rng`` ties are broken
    uniformly at random, otherwise the smallest id in the bucket wins.
    """
    n = g.n
    deg = [len(a) for a in g.adjacency]
    maxd = max(deg, default=0)
    buckets: list[set[int]] = [set() for _ in range(maxd + 1)]
    for v, d in enumerate(deg):
        buckets[d].add(v)
    removed = [False] * n
    order = []
    k = 0
    lo = 0
    for _ in range(n):
        while not buckets[lo]:
            lo += 1
        b = buckets[lo]
        v = rng.choice(sorted(b)) if rng is not None else min(b)
        b.remove(v)
        removed[v] = True
        order.append(v)
        k = max(k, lo)
        for w in g.adjacency[v]:
            if not removed[w]:
                buckets[deg[w]].remove(w)
                deg[w] -= 1
                buckets[deg[w]].add(w)
                if deg[w] < lo:
                    lo = deg[w]
    return order, k


# ---------------------------------------------------------------------------
# edge-list text format

def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` header followed by ``u v`` lines; ``#`` starts a comment line."""
    lines = [
        (i, ln.split())
        for i, ln in enumerate(text.splitlines(), 1)
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise GraphError("empty edge list")
    lineno, head = lines[0]
    if len(head) != 2:
        raise GraphError(f"line {lineno}: expected 'n m' header")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GraphError(f"line {lineno}: bad header") from exc
    edges = []
    for lineno, parts in lines[1:]:
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v'")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise GraphError(f"line {lineno}: non-integer vertex id") from exc
    if len(edges) != m:
        raise GraphError(f"header declares {m} edges, found {len(edges)}")
    return Graph(n, edges)


def format_edge_list(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(out) + "\n"


def relabel(g: Graph, order: Sequence[int]) -> Graph:
    """Graph with vertex ``order[i]`` renamed to ``i``."""
    pos = {v: i for i, v in enumerate(order)}
    return Graph(g.n, ((pos[u], pos[v]) for u, v in g.edges))
