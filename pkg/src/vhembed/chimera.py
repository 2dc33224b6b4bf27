"""Chimera hardware graphs and the biclique virtual hardware on top of them.

Qubit coordinates are 1-based ``(row, col, partite, height)`` tuples.
Partite 1 qubits carry the vertical couplers between row-adjacent cells,
partite 2 qubits the horizontal ones.

Virtual qubit ``v_i`` owns the vertical wire in cell column ``ceil(i/L)``
and ``h_i`` the horizontal wire in cell row ``ceil(i/L)``, both at height
``((i - 1) mod L) + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, NamedTuple

from .graph import Graph


class QubitLabel(NamedTuple):
    row: int
    col: int
    partite: int
    height: int

    def __str__(self) -> str:
        return f"({self.row},{self.col},{self.partite},{self.height})"


class VirtualQubit(NamedTuple):
    side: str  # "v" (vertical) or "h" (horizontal)
    index: int  # 1-based

    def __str__(self) -> str:
        return f"{self.side}{self.index}"


def v(i: int) -> VirtualQubit:
    return VirtualQubit("v", i)


def h(i: int) -> VirtualQubit:
    return VirtualQubit("h", i)


@dataclass(frozen=True)
class ChimeraSpec:
    L: int
    M: int
    N: int

    def __post_init__(self):
        for name in ("L", "M", "N"):
            val = getattr(self, name)
            if not isinstance(val, int) or val < 1:
                raise ValueError(f"Chimera parameter {name} must be a positive integer, got {val!r}")

    @classmethod
    def parse(cls, text: str) -> "ChimeraSpec":
        parts = text.replace("x", ",").split(",")
        if len(parts) != 3:
            raise ValueError(f"expected 'L,M,N', got {text!r}")
        return cls(*(int(p) for p in parts))

    @property
    def qubit_count(self) -> int:
        return 2 * self.L * self.M * self.N

    @property
    def edge_count(self) -> int:
        L, M, N = self.L, self.M, self.N
        return L * L * M * N + L * (M - 1) * N + L * M * (N - 1)

    @property
    def vertical_size(self) -> int:
        """Vertical wires: one per column and height (each M qubits long)."""
        return self.L * self.N

    @property
    def horizontal_size(self) -> int:
        """Horizontal wires: one per row and height (each N qubits long)."""
        return self.L * self.M

    def __str__(self) -> str:
        return f"{self.L},{self.M},{self.N}"


def cell(i: int, L: int) -> int:
    """1-based cell block of 1-based virtual index ``i``."""
    return (i + L - 1) // L


def height(i: int, L: int) -> int:
    return (i - 1) % L + 1


def qubit_index(spec: ChimeraSpec, q: QubitLabel) -> int:
    L, N = spec.L, spec.N
    return ((q.row - 1) * N + (q.col - 1)) * 2 * L + (q.partite - 1) * L + (q.height - 1)


def label_valid(spec: ChimeraSpec, q: QubitLabel) -> bool:
    return (
        1 <= q.row <= spec.M
        and 1 <= q.col <= spec.N
        and q.partite in (1, 2)
        and 1 <= q.height <= spec.L
    )


@dataclass(frozen=True)
class ChimeraLabeling:
    """Bijection between Chimera vertex ids and qubit labels."""

    spec: ChimeraSpec
    labels: tuple[QubitLabel, ...]

    def id_of(self, q: QubitLabel) -> int:
        if not label_valid(self.spec, q):
            raise KeyError(q)
        return qubit_index(self.spec, q)

    def label_of(self, i: int) -> QubitLabel:
        return self.labels[i]

    def __len__(self) -> int:
        return len(self.labels)


def chimera_graph(spec: ChimeraSpec) -> tuple[Graph, ChimeraLabeling]:
    L, M, N = spec.L, spec.M, spec.N
    labels = [QubitLabel(0, 0, 0, 0)] * spec.qubit_count
    for r, c, p, k in product(range(1, M + 1), range(1, N + 1), (1, 2), range(1, L + 1)):
        q = QubitLabel(r, c, p, k)
        labels[qubit_index(spec, q)] = q
    idx = lambda *t: qubit_index(spec, QubitLabel(*t))
    edges = []
    for r, c in product(range(1, M + 1), range(1, N + 1)):
        for a, b in product(range(1, L + 1), repeat=2):
            edges.append((idx(r, c, 1, a), idx(r, c, 2, b)))
        for k in range(1, L + 1):
            if r < M:
                edges.append((idx(r, c, 1, k), idx(r + 1, c, 1, k)))
            if c < N:
                edges.append((idx(r, c, 2, k), idx(r, c + 1, 2, k)))
    return Graph(spec.qubit_count, edges), ChimeraLabeling(spec, tuple(labels))


# ---------------------------------------------------------------------------
# biclique virtual hardware

PhysicalEdge = tuple[QubitLabel, QubitLabel]


@dataclass(frozen=True)
class VirtualHardware:
    """Biclique template (LN vertical by LM horizontal wires) with its physical allocation.

    ``edges`` holds the template edge set as ``(i, j)`` pairs meaning
    ``(v_i, h_j)``.  Reduced hardware shares ``psi`` and ``edge_witness``
    with the full one and only drops edges.
    """

    spec: ChimeraSpec
    edges: frozenset[tuple[int, int]]
    psi: dict[VirtualQubit, tuple[QubitLabel, ...]] = field(repr=False)
    edge_witness: dict[tuple[int, int], PhysicalEdge] = field(repr=False)

    @property
    def vertical(self) -> list[VirtualQubit]:
        return [v(i) for i in range(1, self.spec.vertical_size + 1)]

    @property
    def horizontal(self) -> list[VirtualQubit]:
        return [h(j) for j in range(1, self.spec.horizontal_size + 1)]

    def template_graph(self) -> Graph:
        """Template as a plain graph: ``v_i -> i-1``, ``h_j -> LM + j-1``."""
        nv = self.spec.vertical_size
        return Graph(nv + self.spec.horizontal_size, ((i - 1, nv + j - 1) for i, j in self.edges))

    def has_qubit(self, x: VirtualQubit) -> bool:
        return x in self.psi

    def with_edges(self, edges: Iterable[tuple[int, int]]) -> "VirtualHardware":
        kept = frozenset(edges)
        extra = kept - self.edges
        if extra:
            raise ValueError(f"edges not in template: {sorted(extra)[:5]}")
        return VirtualHardware(self.spec, kept, self.psi, self.edge_witness)


def witness_cell(i: int, j: int, L: int) -> tuple[int, int]:
    """Cell (row, col) holding the physical coupler for virtual edge (v_i, h_j)."""
    return cell(j, L), cell(i, L)


def biclique_virtual_hardware(spec: ChimeraSpec) -> VirtualHardware:
    L, M, N = spec.L, spec.M, spec.N
    psi: dict[VirtualQubit, tuple[QubitLabel, ...]] = {}
    for i in range(1, spec.vertical_size + 1):
        psi[v(i)] = tuple(QubitLabel(r, cell(i, L), 1, height(i, L)) for r in range(1, M + 1))
    for i in range(1, spec.horizontal_size + 1):
        psi[h(i)] = tuple(QubitLabel(cell(i, L), c, 2, height(i, L)) for c in range(1, N + 1))
    witness = {}
    for i in range(1, spec.vertical_size + 1):
        for j in range(1, spec.horizontal_size + 1):
            r, c = witness_cell(i, j, L)
            witness[(i, j)] = (QubitLabel(r, c, 1, height(i, L)), QubitLabel(r, c, 2, height(j, L)))
    return VirtualHardware(spec, frozenset(witness), psi, witness)


def validate_virtual_hardware(vh: VirtualHardware, spec: ChimeraSpec) -> bool:
    """Mechanically check the biclique allocation against ``chimera_graph(spec)``."""
    if vh.spec != spec:
        return False
    L = spec.L
    graph, labeling = chimera_graph(spec)
    expected = {v(i) for i in range(1, spec.vertical_size + 1)}
    expected |= {h(j) for j in range(1, spec.horizontal_size + 1)}
    if set(vh.psi) != expected:
        return False

    owner: dict[QubitLabel, VirtualQubit] = {}
    for x, path in vh.psi.items():
        if not path:
            return False
        for q in path:
            if not label_valid(spec, q) or q in owner:
                return False
            owner[q] = x
        ids = [labeling.id_of(q) for q in path]
        if not _connected(graph, ids):
            return False

    full = {(i, j) for i in range(1, spec.vertical_size + 1) for j in range(1, spec.horizontal_size + 1)}
    if not vh.edges <= full or set(vh.edge_witness) != full:
        return False
    seen = set()
    for (i, j), (a, b) in vh.edge_witness.items():
        key = frozenset((a, b))
        if key in seen:
            return False
        seen.add(key)
        if owner.get(a) != v(i) or owner.get(b) != h(j):
            return False
        if a.partite != 1 or b.partite != 2:
            return False
        if (a.row, a.col) != witness_cell(i, j, L) or (b.row, b.col) != witness_cell(i, j, L):
            return False
        if not graph.has_edge(labeling.id_of(a), labeling.id_of(b)):
            return False
    return True


def _connected(graph: Graph, ids: list[int]) -> bool:
    if not ids:
        return False
    want = set(ids)
    seen = {ids[0]}
    stack = [ids[0]]
    while stack:
        u = stack.pop()
        for w in graph.adjacency[u]:
            if w in want and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == want
