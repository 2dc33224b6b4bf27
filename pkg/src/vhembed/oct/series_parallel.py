"""Series-parallel recognition, nested ear decompositions and linear-time OCT.

Recognition repeatedly applies series reductions (suppress a degree-2
vertex) and parallel reductions (merge two edges with the same ends) on a
multigraph workspace, recording every reduction as a node of a parse
tree.  The graph is two-terminal series-parallel iff this ends in a
single edge, whose endpoints become the terminals.

The parse tree drives both the ear decomposition (first ear = path
through the first branch of every parallel node, every other branch
becomes an ear nested on it) and the OCT computation, a 3x3 table per
node indexed by the states of its two terminals (left, right, deleted).
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass

from ..framework import NOT_SERIES_PARALLEL, Fail
from ..graph import Graph
from .components import oct_via_components
from .decomposition import OctDecomposition

INF = float("inf")
EDGE, SERIES, PARALLEL = "e", "s", "p"


@dataclass
class ParseTree:
    kind: list[str]
    ends: list[tuple[int, int]]  # (s, t) of each node
    children: list[tuple[int, ...]]
    middle: list[int]  # series nodes: the suppressed vertex, else -1

    @property
    def root(self) -> int:
        return len(self.kind) - 1

    def add(self, kind, s, t, children=(), middle=-1) -> int:
        self.kind.append(kind)
        self.ends.append((s, t))
        self.children.append(tuple(children))
        self.middle.append(middle)
        return len(self.kind) - 1


def sp_parse(g: Graph) -> ParseTree | None:
    """Parse tree of a connected graph, or None if it does not reduce to an edge."""
    if g.m == 0 or len(g.connected_components()) != 1:
        return None
    tree = ParseTree([], [], [], [])
    inc: dict[int, dict[int, int]] = defaultdict(dict)  # vertex -> neighbour -> node

    def link(a: int, b: int, node: int) -> None:
        old = inc[a].get(b)
        if old is not None:
            node = tree.add(PARALLEL, a, b, (old, node))
        inc[a][b] = node
        inc[b][a] = node

    for a, b in g.sorted_edges():
        inc[a][b] = inc[b][a] = tree.add(EDGE, a, b)

    queue = deque(u for u in g.vertices() if len(inc[u]) == 2)
    alive = g.n
    while queue:
        x = queue.popleft()
        if x not in inc or len(inc[x]) != 2:
            continue
        (a, c1), (b, c2) = sorted(inc[x].items())
        del inc[a][x], inc[b][x], inc[x]
        alive -= 1
        node = tree.add(SERIES, a, b, (c1, c2), middle=x)
        link(a, b, node)
        for y in (a, b):
            if len(inc[y]) == 2:
                queue.append(y)
    if alive != 2:
        return None
    return tree


def _oriented(tree: ParseTree, node: int, s: int, t: int) -> bool:
    """True if ``node`` is stored as (s, t), False if as (t, s)."""
    ns, nt = tree.ends[node]
    if (ns, nt) == (s, t):
        return True
    assert (ns, nt) == (t, s)
    return False


# ---------------------------------------------------------------------------
# OCT by dynamic programming over the parse tree

def _sp_oct_component(g: Graph) -> OctDecomposition | Fail:
    if g.n == 1:
        return OctDecomposition(frozenset(), frozenset({0}), frozenset())
    tree = sp_parse(g)
    if tree is None:
        return Fail(NOT_SERIES_PARALLEL)
    n_nodes = len(tree.kind)
    table: list[list[list[float]]] = [None] * n_nodes  # type: ignore[list-item]
    choice: dict[int, list[list[int]]] = {}

    def view(node, s, t):
        tab = table[node]
        if _oriented(tree, node, s, t):
            return tab
        return [[tab[j][i] for j in range(3)] for i in range(3)]

    # nodes are created after their children, so id order is a post-order
    for node in range(n_nodes):
        kind = tree.kind[node]
        s, t = tree.ends[node]
        if kind == EDGE:
            table[node] = [[INF if (i == j and i < 2) else 0 for j in range(3)] for i in range(3)]
        elif kind == SERIES:
            x = tree.middle[node]
            t1 = view(tree.children[node][0], s, x)
            t2 = view(tree.children[node][1], x, t)
            tab = [[INF] * 3 for _ in range(3)]
            arg = [[0] * 3 for _ in range(3)]
            for i in range(3):
                for j in range(3):
                    for k in range(3):
                        val = t1[i][k] + t2[k][j] + (k == 2)
                        if val < tab[i][j]:
                            tab[i][j], arg[i][j] = val, k
            table[node] = tab
            choice[node] = arg
        else:
            t1 = view(tree.children[node][0], s, t)
            t2 = view(tree.children[node][1], s, t)
            table[node] = [[t1[i][j] + t2[i][j] for j in range(3)] for i in range(3)]

    root = tree.root
    rs, rt = tree.ends[root]
    best, bi, bj = min(
        (table[root][i][j] + (i == 2) + (j == 2), i, j) for i in range(3) for j in range(3)
    )
    state = {rs: bi, rt: bj}
    pending: dict[int, tuple[int, int]] = {root: (bi, bj)}
    for node in range(root, -1, -1):
        if node not in pending:
            continue
        i, j = pending.pop(node)
        s, t = tree.ends[node]
        kind = tree.kind[node]
        if kind == EDGE:
            continue
        if kind == SERIES:
            x = tree.middle[node]
            k = choice[node][i][j]
            state[x] = k
            parts = ((tree.children[node][0], s, x, i, k), (tree.children[node][1], x, t, k, j))
        else:
            parts = tuple((c, s, t, i, j) for c in tree.children[node])
        for c, a, b, sa, sb in parts:
            pending[c] = (sa, sb) if _oriented(tree, c, a, b) else (sb, sa)
    dec = OctDecomposition.from_sides(state)
    assert dec.size == best
    return dec


def oct_series_parallel(g: Graph) -> OctDecomposition | Fail:
    """Minimum OCT when every 2-edge-connected piece is series-parallel.

    Bridges are split off first; each remaining piece is solved on its
    parse tree in linear time.  A piece that is not series-parallel gives
    ``Fail("not-series-parallel")``.
    """
    return oct_via_components(g, _sp_oct_component)


# ---------------------------------------------------------------------------
# nested ear decompositions

@dataclass(frozen=True)
class NestedEarDecomposition:
    ears: list[list[int]]
    parent: list[int | None]
    interval: list[list[int] | None]  # nest interval on the parent ear
    odd: list[bool]

    @property
    def terminals(self) -> tuple[int, int]:
        first = self.ears[0]
        return first[0], first[-1]


def _main_path(tree: ParseTree, node: int, s: int, t: int) -> list[int]:
    """Vertices from s to t following the first branch of every parallel node.

    Works in either direction of the stored node ends.
    """
    out = [s]
    stack = [(node, s, t)]
    while stack:
        nd, a, b = stack.pop()
        kind = tree.kind[nd]
        if kind == EDGE:
            out.append(b)
        elif kind == SERIES:
            x = tree.middle[nd]
            # child 1 joins the stored s to x, child 2 joins x to the stored t
            c1, c2 = tree.children[nd]
            if tree.ends[nd][0] != a:
                c1, c2 = c2, c1
            stack.append((c2, x, b))
            stack.append((c1, a, x))
        else:
            stack.append((tree.children[nd][0], a, b))
    return out


def ear_decompose_sp(g: Graph) -> NestedEarDecomposition | Fail:
    """Nested ear decomposition of a 2-edge-connected series-parallel graph."""
    tree = sp_parse(g)
    if tree is None:
        return Fail(NOT_SERIES_PARALLEL)
    root = tree.root
    s, t = tree.ends[root]
    ears = [_main_path(tree, root, s, t)]
    parent: list[int | None] = [None]
    interval: list[list[int] | None] = [None]
    work = deque([(root, s, t, 0)])
    while work:
        nd, a, b, ear = work.popleft()
        kind = tree.kind[nd]
        if kind == SERIES:
            x = tree.middle[nd]
            c1, c2 = tree.children[nd]
            if tree.ends[nd][0] == a:
                work.append((c1, a, x, ear))
                work.append((c2, x, b, ear))
            else:
                work.append((c1, b, x, ear))
                work.append((c2, x, a, ear))
        elif kind == PARALLEL:
            first, *others = _flatten_parallel(tree, nd)
            base = _main_path(tree, first, a, b)
            work.append((first, a, b, ear))
            for c in others:
                ears.append(_main_path(tree, c, a, b))
                parent.append(ear)
                interval.append(base)
                work.append((c, a, b, len(ears) - 1))
    odd = [False] + [(len(e) + len(iv)) % 2 == 1 for e, iv in zip(ears[1:], interval[1:])]
    return NestedEarDecomposition(ears, parent, interval, odd)


def _flatten_parallel(tree: ParseTree, node: int) -> list[int]:
    """Branches of a maximal run of nested parallel nodes, in creation order."""
    out, stack = [], [node]
    while stack:
        nd = stack.pop()
        if tree.kind[nd] == PARALLEL:
            c1, c2 = tree.children[nd]
            stack.append(c2)
            stack.append(c1)
        else:
            out.append(nd)
    return out


def validate_nested_ears(g: Graph, dec: NestedEarDecomposition) -> bool:
    """Check the ear, nesting and parity clauses against ``g``."""
    used: set[tuple[int, int]] = set()
    seen: set[int] = set()
    for k, ear in enumerate(dec.ears):
        if len(ear) < 2:
            return False
        interior = ear[1:-1]
        if len(set(interior)) != len(interior) or set(interior) & {ear[0], ear[-1]}:
            return False
        if k == 0:
            if ear[0] == ear[-1] and len(ear) > 2:
                return False
        else:
            if ear[0] not in seen or ear[-1] not in seen or set(interior) & seen:
                return False
            p = dec.parent[k]
            iv = dec.interval[k]
            if p is None or p >= k or iv is None:
                return False
            if not _is_subpath(dec.ears[p], iv) or {iv[0], iv[-1]} != {ear[0], ear[-1]}:
                return False
            if dec.odd[k] != ((len(ear) + len(iv)) % 2 == 1):
                return False
        for a, b in zip(ear, ear[1:]):
            e = (min(a, b), max(a, b))
            if e in used or not g.has_edge(a, b):
                return False
            used.add(e)
        seen.update(ear)
    if used != set(g.edges):
        return False
    # siblings on one parent: intervals nested or edge-disjoint
    for p in range(len(dec.ears)):
        spans = []
        pos = {v: i for i, v in enumerate(dec.ears[p])}
        for k in range(1, len(dec.ears)):
            if dec.parent[k] == p:
                i, j = sorted((pos[dec.interval[k][0]], pos[dec.interval[k][-1]]))
                spans.append((i, j))
        for x in range(len(spans)):
            for y in range(x + 1, len(spans)):
                (a1, b1), (a2, b2) = spans[x], spans[y]
                nested = (a1 <= a2 and b2 <= b1) or (a2 <= a1 and b1 <= b2)
                disjoint = b1 <= a2 or b2 <= a1
                if not (nested or disjoint):
                    return False
    return True


def _is_subpath(path: list[int], sub: list[int]) -> bool:
    k = len(sub)
    return any(path[i : i + k] == sub or path[i : i + k] == sub[::-1] for i in range(len(path) - k + 1))


def odd_ear_runs(dec: NestedEarDecomposition) -> int:
    """Sum over maximal nest intervals of the number of runs of odd ears.

    Ears on one parent are grouped under the maximal intervals containing
    them and ordered outermost first; consecutive odd ears form one run.
    Removing one endpoint per run leaves no odd cycle, so this is an upper
    bound on OCT.  It is not always tight (odd ears nested at different
    depths can share an endpoint), which is why the solver uses the
    parse-tree table instead.
    """
    total = 0
    for p in range(len(dec.ears)):
        pos = {v: i for i, v in enumerate(dec.ears[p])}
        kids = []
        for k in range(1, len(dec.ears)):
            if dec.parent[k] == p:
                i, j = sorted((pos[dec.interval[k][0]], pos[dec.interval[k][-1]]))
                kids.append((i, -j, k))
        kids.sort()
        groups: list[list[tuple[int, int, int]]] = []
        end = -1
        for i, negj, k in kids:
            if i >= end:
                groups.append([])
                end = -negj
            groups[-1].append((i, negj, k))
        for grp in groups:
            grp.sort(key=lambda item: (item[1] + item[0], item[2]))  # longest first
            prev_odd = False
            for _, _, k in grp:
                if dec.odd[k] and not prev_odd:
                    total += 1
                prev_odd = dec.odd[k]
    return total
