"""Exact minimum odd cycle transversal by iterative compression.

Vertices are added one at a time to a growing induced subgraph whose
minimum OCT is maintained.  Adding a vertex raises the optimum by at most
one, so each step only has to decide whether ``S + v`` (size s) can be
compressed to size ``s - 1``.  A compression guesses, for every vertex of
``S + v``, whether it is deleted or which side it keeps; what is left is
a minimum vertex cut in the bipartite remainder between the vertices
that must keep their color and those that must flip it.  That is
O(3^k) max-flow calls per step.

The greedy bipartite subgraph seeds the process: its vertices form the
starting (bipartite) subgraph, so only the greedy OCT vertices need
compression steps.
"""

from __future__ import annotations

from collections import deque

from ..framework import NO_DEADLINE, OCT_BUDGET, Deadline, Fail
from ..graph import Graph, two_coloring
from .decomposition import OctDecomposition
from .greedy import DEFAULT_RESTARTS, best_of_greedy


def oct_exact(
    g: Graph,
    k_max: int | None = None,
    *,
    restarts: int = DEFAULT_RESTARTS,
    seed=0,
    deadline: Deadline = NO_DEADLINE,
) -> OctDecomposition | Fail:
    """Minimum OCT decomposition, or ``Fail("oct-budget")`` when OCT(g) > k_max."""
    if k_max is not None and k_max < 0:
        raise ValueError("k_max must be non-negative")
    if g.n == 0:
        return OctDecomposition(frozenset(), frozenset(), frozenset())
    start = best_of_greedy(g, restarts, seed)
    active = set(start.left | start.right)
    sol: set[int] = set()
    for v in sorted(start.oct_set):
        deadline.check()
        active.add(v)
        cand = sol | {v}
        better = compress(g, active, cand, deadline)
        sol = better if better is not None else cand
        if k_max is not None and len(sol) > k_max:
            return Fail(OCT_BUDGET, f"OCT exceeds {k_max}")
    color = two_coloring(g, sol)
    assert color is not None
    return OctDecomposition(
        frozenset(sol),
        frozenset(u for u, c in color.items() if c == 0),
        frozenset(u for u, c in color.items() if c == 1),
    )


def compress(g: Graph, active: set[int], sol: set[int], deadline: Deadline = NO_DEADLINE) -> set[int] | None:
    """An OCT of ``g[active]`` smaller than ``sol`` (itself an OCT), or None."""
    target = len(sol) - 1
    sol_list = sorted(sol)
    rest = active - sol
    color = two_coloring(g, set(g.vertices()) - rest)
    assert color is not None, "sol must be an OCT of the active subgraph"
    adj = {u: g.adjacency[u] & active for u in active}

    assign: dict[int, int] = {}  # kept solution vertex -> side 0/1

    def search(i: int, deleted: list[int]):
        if len(deleted) > target:
            return None
        if i == len(sol_list):
            if not assign:
                return None
            deadline.check()
            cut = _solve_assignment(adj, rest, color, assign, target - len(deleted))
            return None if cut is None else set(deleted) | cut
        u = sol_list[i]
        for side in (0, 1):
            # first kept vertex fixes the global color swap symmetry
            if side == 1 and not assign:
                continue
            if any(assign.get(w) == side for w in adj[u]):
                continue
            assign[u] = side
            found = search(i + 1, deleted)
            del assign[u]
            if found is not None:
                return found
        deleted.append(u)
        found = search(i + 1, deleted)
        deleted.pop()
        return found

    return search(0, [])


def _solve_assignment(adj, rest, color, assign, budget):
    """Vertices of ``rest`` to delete so every kept vertex fits ``assign``.

    Each component of the remainder either keeps its bipartite coloring
    or flips it as a whole.  A neighbour of a kept vertex on side s must
    end up on side 1 - s, which pins it to "keep" or "flip".  Pinned-both
    vertices are deleted outright; the rest is a minimum vertex cut.
    """
    keep, flip = set(), set()
    for s, side in assign.items():
        for w in adj[s]:
            if w not in rest:
                continue
            (keep if color[w] != side else flip).add(w)
    forced = keep & flip
    if len(forced) > budget:
        return None
    keep -= forced
    flip -= forced
    cut = _min_vertex_cut(adj, rest - forced, keep, flip, budget - len(forced))
    return None if cut is None else forced | cut


def _min_vertex_cut(adj, alive, sources, sinks, budget):
    """Smallest vertex set separating ``sources`` from ``sinks`` (terminals deletable).

    Unit-capacity augmenting paths on the split-vertex network; gives up
    once the flow exceeds ``budget``.
    """
    if not sources or not sinks:
        return set()
    # node encoding: (v, 0) = in, (v, 1) = out; "s" / "t" super terminals
    flow_through: dict[int, bool] = {}  # vertex arc v_in -> v_out saturated
    # residual of infinite arcs is never exhausted, so only track unit arcs
    # and the direction of flow along graph edges
    edge_flow: dict[tuple[int, int], int] = {}  # (u, w): net flow u_out -> w_in

    def neighbours(node):
        v, part = node
        if part == 0:  # v_in
            if not flow_through.get(v):
                yield (v, 1)
            # back along incoming flow: u_out -> v_in carried flow
            for u in adj[v]:
                if u in alive and edge_flow.get((u, v), 0) > 0:
                    yield (u, 1)
        else:  # v_out
            if flow_through.get(v):
                yield (v, 0)
            for w in adj[v]:
                if w in alive:
                    yield (w, 0)
            if v in sinks:
                yield "t"

    flow = 0
    while True:
        if flow > budget:
            return None
        parent: dict = {}
        queue = deque()
        for s in sources:
            node = (s, 0)
            if node not in parent:
                parent[node] = "s"
                queue.append(node)
        found = None
        while queue and found is None:
            node = queue.popleft()
            for nxt in neighbours(node):
                if nxt == "t":
                    found = node
                    break
                if nxt not in parent:
                    parent[nxt] = node
                    queue.append(nxt)
        if found is None:
            break
        flow += 1
        node = found
        while parent[node] != "s":
            prev = parent[node]
            (a, pa), (b, pb) = prev, node
            if a == b:
                flow_through[a] = pa == 0  # in->out saturates, out->in cancels
            elif pa == 1 and pb == 0:
                edge_flow[(a, b)] = edge_flow.get((a, b), 0) + 1
            else:  # prev is v_in, node is u_out: cancel flow u_out -> v_in
                edge_flow[(b, a)] -= 1
            node = prev
    if flow > budget:
        return None
    # min cut: vertices whose in-node is reachable but out-node is not
    reach = set(parent)
    return {v for (v, part) in reach if part == 0 and (v, 1) not in reach}
