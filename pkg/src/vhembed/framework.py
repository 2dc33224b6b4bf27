"""Glue between the virtual layer and the physical Chimera graph.

An embedding subroutine produces a :class:`VirtualEmbedding` (problem
vertex -> virtual qubits), reducers prune template edges, and
:func:`compose` turns both into a physical embedding whose chains only
use the wire segments the kept edges actually need.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .chimera import (
    ChimeraLabeling,
    QubitLabel,
    VirtualHardware,
    VirtualQubit,
    cell,
)
from .graph import Graph


class EmbeddingError(ValueError):
    """Inputs that violate an embedding contract (bad ids, broken chains)."""


class DeadlineExceeded(Exception):
    pass


class Deadline:
    """Cooperative wall-clock budget checked at iteration boundaries."""

    def __init__(self, seconds: float | None = None):
        self._end = None if seconds is None else time.perf_counter() + seconds

    @classmethod
    def from_ms(cls, ms: float | None) -> "Deadline":
        return cls(None if ms is None else ms / 1000.0)

    def expired(self) -> bool:
        return self._end is not None and time.perf_counter() >= self._end

    def check(self) -> None:
        if self.expired():
            raise DeadlineExceeded


NO_DEADLINE = Deadline()


@dataclass(frozen=True)
class Fail:
    """Unsuccessful subroutine result.  ``reason`` is a short code."""

    reason: str
    detail: str = ""

    def __str__(self) -> str:
        return f"FAIL({self.reason}{': ' + self.detail if self.detail else ''})"


CAPACITY = "capacity"
OCT_BUDGET = "oct-budget"
TIMEOUT = "timeout"
NOT_SERIES_PARALLEL = "not-series-parallel"


# ---------------------------------------------------------------------------
# embeddings

@dataclass(frozen=True)
class VirtualEmbedding:
    phi: Mapping[int, frozenset[VirtualQubit]]

    def __post_init__(self):
        seen: dict[VirtualQubit, int] = {}
        for u, xs in self.phi.items():
            if not xs:
                raise EmbeddingError(f"problem vertex {u} has an empty image")
            for x in xs:
                if x in seen:
                    raise EmbeddingError(f"virtual qubit {x} shared by {seen[x]} and {u}")
                seen[x] = u

    @classmethod
    def from_slots(cls, slots: Mapping[int, tuple[int | None, int | None]]) -> "VirtualEmbedding":
        """Build from per-vertex ``(vertical index, horizontal index)`` pairs."""
        phi = {}
        for u, (a, b) in slots.items():
            xs = set()
            if a is not None:
                xs.add(VirtualQubit("v", a))
            if b is not None:
                xs.add(VirtualQubit("h", b))
            phi[u] = frozenset(xs)
        return cls(phi)

    def slots(self) -> dict[int, tuple[int | None, int | None]]:
        """Per-vertex ``(vertical, horizontal)`` indices; assumes at most one per side."""
        out = {}
        for u, xs in self.phi.items():
            a = b = None
            for x in xs:
                if x.side == "v":
                    if a is not None:
                        raise EmbeddingError(f"vertex {u} holds several vertical qubits")
                    a = x.index
                else:
                    if b is not None:
                        raise EmbeddingError(f"vertex {u} holds several horizontal qubits")
                    b = x.index
            out[u] = (a, b)
        return out

    def occupied(self) -> set[VirtualQubit]:
        return {x for xs in self.phi.values() for x in xs}

    def __len__(self) -> int:
        return len(self.phi)


@dataclass(frozen=True)
class PhysicalEmbedding:
    chi: Mapping[int, frozenset[QubitLabel]]

    def qubits(self) -> set[QubitLabel]:
        return {q for qs in self.chi.values() for q in qs}

    @property
    def qubit_count(self) -> int:
        return sum(len(qs) for qs in self.chi.values())

    def to_text(self) -> str:
        lines = []
        for u in sorted(self.chi):
            labels = " ".join(str(q) for q in sorted(self.chi[u]))
            lines.append(f"{u}: {labels}" if labels else f"{u}:")
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text: str) -> "PhysicalEmbedding":
        chi = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            head, _, rest = line.partition(":")
            try:
                u = int(head)
                labels = []
                for tok in rest.split():
                    parts = tok.strip("()").split(",")
                    labels.append(QubitLabel(*(int(p) for p in parts)))
            except (TypeError, ValueError) as exc:
                raise EmbeddingError(f"line {lineno}: malformed embedding entry") from exc
            chi[u] = frozenset(labels)
        return cls(chi)


def chimera_adjacent(a: QubitLabel, b: QubitLabel) -> bool:
    """Coupler test by coordinate arithmetic (no graph needed)."""
    if (a.row, a.col) == (b.row, b.col):
        return a.partite != b.partite
    if a.partite != b.partite or a.height != b.height:
        return False
    if a.partite == 1:
        return a.col == b.col and abs(a.row - b.row) == 1
    return a.row == b.row and abs(a.col - b.col) == 1


def _span_cells(vh: VirtualHardware, edges: Iterable[tuple[int, int]]):
    lo: dict[VirtualQubit, int] = {}
    hi: dict[VirtualQubit, int] = {}
    L = vh.spec.L
    for i, j in edges:
        for x, c in ((VirtualQubit("v", i), cell(j, L)), (VirtualQubit("h", j), cell(i, L))):
            if x in lo:
                lo[x] = min(lo[x], c)
                hi[x] = max(hi[x], c)
            else:
                lo[x] = hi[x] = c
    return lo, hi


def compose(
    phi: VirtualEmbedding,
    vh: VirtualHardware,
    reduced_edges: Iterable[tuple[int, int]] | None = None,
) -> PhysicalEmbedding:
    """Physical chains from a virtual embedding and a (reduced) template.

    Each virtual qubit keeps the contiguous segment of its wire spanning
    the witness cells of its kept edges.  A qubit without kept edges keeps
    the qubit where its wire crosses its chain partner, or the first qubit
    of its wire when it has no partner.
    """
    edges = vh.edges if reduced_edges is None else frozenset(reduced_edges)
    lo, hi = _span_cells(vh, edges)
    L = vh.spec.L
    chi = {}
    for u, xs in phi.phi.items():
        chain: set[QubitLabel] = set()
        for x in xs:
            path = vh.psi.get(x)
            if path is None:
                raise EmbeddingError(f"virtual qubit {x} not in hardware")
            if x in lo:
                chain.update(path[lo[x] - 1 : hi[x]])
                continue
            partners = sorted(y for y in xs if y.side != x.side)
            if partners:
                # wire of v_i crosses wire of h_j in cell row ceil(j/L), col ceil(i/L)
                chain.add(path[cell(partners[0].index, L) - 1])
            else:
                chain.add(path[0])
        if not _chain_connected(chain):
            raise EmbeddingError(f"chain of problem vertex {u} is disconnected after pruning")
        chi[u] = frozenset(chain)
    return PhysicalEmbedding(chi)


def _chain_connected(chain: set[QubitLabel]) -> bool:
    if not chain:
        return False
    items = list(chain)
    seen = {items[0]}
    stack = [items[0]]
    while stack:
        a = stack.pop()
        for b in items:
            if b not in seen and chimera_adjacent(a, b):
                seen.add(b)
                stack.append(b)
    return len(seen) == len(items)


# ---------------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class Violation:
    clause: int  # 0 = malformed input, 1 = overlap, 2 = connectivity, 3 = edge
    message: str
    items: tuple = ()


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def clauses(self) -> set[int]:
        return {v.clause for v in self.violations}

    def __str__(self) -> str:
        if self.ok:
            return "valid minor embedding"
        return "\n".join(f"clause {v.clause}: {v.message}" for v in self.violations)


def validate_minor_embedding(
    p: Graph,
    hw: Graph,
    chi: PhysicalEmbedding | Mapping[int, Iterable],
    labeling: ChimeraLabeling | None = None,
) -> tuple[bool, ValidationReport]:
    """Check the three minor-embedding clauses of ``chi`` against ``hw``.

    Chains may hold hardware vertex ids or, with ``labeling``, qubit labels.
    Problems are reported, never raised.
    """
    chains = chi.chi if isinstance(chi, PhysicalEmbedding) else chi
    report = ValidationReport()
    ids: dict[int, set[int]] = {}
    for u in p.vertices():
        raw = chains.get(u)
        if raw is None:
            report.violations.append(Violation(2, f"vertex {u} has no chain", (u,)))
            ids[u] = set()
            continue
        s = set()
        for q in raw:
            try:
                qi = labeling.id_of(q) if labeling is not None and not isinstance(q, int) else int(q)
            except (KeyError, TypeError, ValueError):
                report.violations.append(Violation(0, f"vertex {u}: unknown qubit {q}", (u, q)))
                continue
            if not 0 <= qi < hw.n:
                report.violations.append(Violation(0, f"vertex {u}: qubit {q} outside hardware", (u, q)))
                continue
            s.add(qi)
        ids[u] = s
    extra = set(chains) - set(p.vertices())
    for u in sorted(extra, key=repr):
        report.violations.append(Violation(0, f"chain for unknown problem vertex {u}", (u,)))

    owner: dict[int, int] = {}
    for u in sorted(ids):
        for q in ids[u]:
            if q in owner:
                report.violations.append(
                    Violation(1, f"vertices {owner[q]} and {u} share qubit {q}", (owner[q], u, q))
                )
            else:
                owner[q] = u

    for u in sorted(ids):
        s = ids[u]
        if u in chains and not _connected_ids(hw, s):
            what = "is empty" if not s else "is disconnected"
            report.violations.append(Violation(2, f"chain of vertex {u} {what}", (u,)))

    for a, b in p.sorted_edges():
        sa, sb = ids[a], ids[b]
        small, big = (sa, sb) if len(sa) <= len(sb) else (sb, sa)
        if not any(hw.adjacency[q] & big for q in small):
            report.violations.append(Violation(3, f"edge ({a}, {b}) not represented", (a, b)))
    return report.ok, report


def _connected_ids(hw: Graph, s: set[int]) -> bool:
    if not s:
        return False
    start = next(iter(s))
    seen = {start}
    stack = [start]
    while stack:
        q = stack.pop()
        for w in hw.adjacency[q]:
            if w in s and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == s
