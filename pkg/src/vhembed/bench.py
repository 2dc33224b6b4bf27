"""QUBO ingestion and the benchmark sweep harness."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
import statistics
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Iterator

from .chimera import ChimeraSpec
from .embedders import ALGORITHMS, REDUCTIONS, hardware, pipeline
from .framework import validate_minor_embedding
from .generators import DENSITIES, FAMILIES, GeneratorConfig, generate
from .graph import Graph
from .oct import DEFAULT_RESTARTS

log = logging.getLogger(__name__)

CSV_HEADER = (
    "instance,family,density,n,m,algorithm,reductions,L,M,N,seed,"
    "success,fail_reason,qubits,oct_size,runtime_ms"
).split(",")
SUMMARY_HEADER = ["algorithm", "reductions", "n", "runs", "successes", "median_qubits", "median_runtime_ms"]


class QuboError(ValueError):
    pass


def parse_qubo(text: str) -> Graph:
    """Problem graph of a QUBO given as "i j c" triplets.

    Every off-diagonal nonzero becomes an edge; diagonal terms only count
    towards the vertex range.  Blank lines and ``#`` comments are skipped.
    """
    coeff: dict[tuple[int, int], float] = {}
    top = -1
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) != 3:
            raise QuboError(f"line {lineno}: expected 'i j c', got {s!r}")
        try:
            i, j, c = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError as exc:
            raise QuboError(f"line {lineno}: {exc}") from None
        if i < 0 or j < 0:
            raise QuboError(f"line {lineno}: negative variable index")
        if not math.isfinite(c):
            raise QuboError(f"line {lineno}: coefficient must be finite")
        key = (min(i, j), max(i, j))
        if key in coeff and coeff[key] != c:
            raise QuboError(f"line {lineno}: conflicting coefficient for {key}")
        coeff[key] = c
        top = max(top, i, j)
    return Graph(top + 1, (k for k, c in coeff.items() if k[0] != k[1] and c != 0))


# ---------------------------------------------------------------------------
# plans

def _algo_key(spec: str) -> tuple[str, tuple[str, ...]]:
    """Split "oct-fast+qubit+2ex" into the algorithm and its reductions."""
    name, *reds = spec.split("+")
    if name not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {name!r}")
    for r in reds:
        if r not in REDUCTIONS:
            raise ValueError(f"unknown reduction {r!r}")
    return name, tuple(reds)


@dataclass(frozen=True)
class Cell:
    instance: str
    family: str
    density: str
    n: int
    instance_seed: int
    algorithm: str
    reductions: tuple[str, ...]
    seed: int

    def key(self):
        return (self.family, self.density, self.n, self.instance_seed, self.instance,
                self.algorithm, self.reductions, self.seed)


@dataclass
class SweepPlan:
    """Cross product of generator settings, instance seeds, algorithm seeds
    and algorithms (written "name+reduction+...")."""

    families: list[str] = field(default_factory=lambda: list(FAMILIES))
    densities: list[str] = field(default_factory=lambda: list(DENSITIES))
    sizes: list[int] = field(default_factory=lambda: list(range(8, 49, 4)))
    instance_seeds: list[int] = field(default_factory=lambda: list(range(25)))
    algo_seeds: list[int] = field(default_factory=lambda: list(range(10)))
    algorithms: list[str] = field(default_factory=lambda: ["triad", "oct-fast", "oct-fast+qubit+2ex"])
    chimera: str = "4,8,8"
    timeout_ms: float | None = None
    restarts: int = DEFAULT_RESTARTS
    record_runtime: bool = True

    def __post_init__(self):
        for f in self.families:
            if f not in FAMILIES:
                raise ValueError(f"unknown family {f!r}")
        for d in self.densities:
            if d not in DENSITIES:
                raise ValueError(f"unknown density {d!r}")
        for a in self.algorithms:
            _algo_key(a)
        ChimeraSpec.parse(self.chimera)

    @property
    def spec(self) -> ChimeraSpec:
        return ChimeraSpec.parse(self.chimera)

    @classmethod
    def from_json(cls, text: str) -> "SweepPlan":
        data = json.loads(text)
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown plan keys: {sorted(unknown)}")
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    def cells(self) -> list[Cell]:
        out = []
        for fam in self.families:
            for den in self.densities:
                for n in self.sizes:
                    for s in self.instance_seeds:
                        inst = GeneratorConfig(fam, den, n, s).filename()[: -len(".txt")]
                        for a in self.algorithms:
                            name, reds = _algo_key(a)
                            # deterministic algorithms need a single seed
                            seeds = self.algo_seeds if name.startswith("oct") else self.algo_seeds[:1]
                            for seed in seeds:
                                out.append(Cell(inst, fam, den, n, s, name, reds, seed))
        return sorted(out, key=Cell.key)


# ---------------------------------------------------------------------------
# records

@dataclass(frozen=True)
class RunRecord:
    instance: str
    family: str
    density: str
    n: int
    m: int
    algorithm: str
    reductions: str
    L: int
    M: int
    N: int
    seed: int
    success: bool
    fail_reason: str
    qubits: int | None
    oct_size: int | None
    runtime_ms: float

    def row(self) -> list[str]:
        out = []
        for name in CSV_HEADER:
            v = getattr(self, name)
            if v is None:
                out.append("")
            elif isinstance(v, bool):
                out.append("1" if v else "0")
            elif isinstance(v, float):
                out.append(f"{v:.3f}")
            else:
                out.append(str(v))
        return out


def run_cell(
    cell: Cell,
    spec: ChimeraSpec,
    graph: Graph | None = None,
    *,
    timeout_ms: float | None = None,
    restarts: int = DEFAULT_RESTARTS,
    record_runtime: bool = True,
) -> RunRecord:
    if graph is None:
        graph = generate(GeneratorConfig(cell.family, cell.density, cell.n, cell.instance_seed))
    chi, metrics = pipeline(
        graph, spec, cell.algorithm, cell.reductions, cell.seed,
        restarts=restarts, timeout_ms=timeout_ms,
    )
    qubits = metrics["qubits"]
    if metrics["success"]:
        # never report a number the validator has not seen
        hw, labeling, _ = hardware(spec)
        ok, report = validate_minor_embedding(graph, hw, chi, labeling)
        if not ok:
            raise AssertionError(f"{cell.instance}: pipeline returned an invalid embedding\n{report}")
    return RunRecord(
        instance=cell.instance,
        family=cell.family,
        density=cell.density,
        n=graph.n,
        m=graph.m,
        algorithm=cell.algorithm,
        reductions="+".join(cell.reductions),
        L=spec.L,
        M=spec.M,
        N=spec.N,
        seed=cell.seed,
        success=metrics["success"],
        fail_reason=metrics["fail_reason"],
        qubits=qubits,
        oct_size=metrics["oct_size"],
        runtime_ms=metrics["runtime_ms"] if record_runtime else 0.0,
    )


def _run_star(args):
    cell, spec, graph, kw = args
    return run_cell(cell, spec, graph, **kw)


def run_sweep(
    plan: SweepPlan | Iterable[Cell],
    spec: ChimeraSpec | None = None,
    timeout_ms: float | None = None,
    *,
    out: str | os.PathLike | None = None,
    graphs: dict[str, Graph] | None = None,
    workers: int = 1,
    restarts: int | None = None,
    record_runtime: bool | None = None,
) -> list[RunRecord]:
    """Run every cell, sorted by cell key, and optionally write the CSV.

    ``graphs`` supplies explicit instances by instance id (cells whose id
    is found there skip the generator).  The CSV is written to a
    temporary file and moved into place at the end, so an interrupted
    sweep never leaves a truncated table; the output path is checked for
    writability before any run starts.
    """
    if isinstance(plan, SweepPlan):
        cells = plan.cells()
        spec = spec or plan.spec
        timeout_ms = plan.timeout_ms if timeout_ms is None else timeout_ms
        restarts = plan.restarts if restarts is None else restarts
        record_runtime = plan.record_runtime if record_runtime is None else record_runtime
    else:
        cells = sorted(plan, key=Cell.key)
    if spec is None:
        raise ValueError("a Chimera spec is required")
    restarts = DEFAULT_RESTARTS if restarts is None else restarts
    record_runtime = True if record_runtime is None else record_runtime
    graphs = graphs or {}

    tmp = None
    if out is not None:
        d = os.path.dirname(os.path.abspath(out))
        fd, tmp = tempfile.mkstemp(prefix=".sweep-", suffix=".csv", dir=d)  # raises OSError early
        os.close(fd)
    try:
        kw = {"timeout_ms": timeout_ms, "restarts": restarts, "record_runtime": record_runtime}
        jobs = [(c, spec, graphs.get(c.instance), kw) for c in cells]
        if workers > 1:
            with ProcessPoolExecutor(workers) as pool:
                records = list(pool.map(_run_star, jobs, chunksize=4))
        else:
            records = [_run_star(j) for j in jobs]
        if tmp is not None:
            with open(tmp, "w", newline="") as fh:
                fh.write(records_to_csv(records))
            os.replace(tmp, out)
            tmp = None
        return records
    finally:
        if tmp is not None and os.path.exists(tmp):
            os.unlink(tmp)


def records_to_csv(records: Iterable[RunRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def iter_csv(text: str) -> Iterator[dict[str, str]]:
    yield from csv.DictReader(io.StringIO(text))


@dataclass(frozen=True)
class SummaryRow:
    algorithm: str
    reductions: str
    n: int
    runs: int
    successes: int
    median_qubits: float | None
    median_runtime_ms: float | None


def summarize(records: Iterable[RunRecord]) -> list[SummaryRow]:
    """Medians per (algorithm, reductions, n) over instances and seeds.

    Qubit medians are taken over successful runs only; runtime medians
    over all runs.
    """
    groups: dict[tuple, list[RunRecord]] = {}
    for r in records:
        groups.setdefault((r.algorithm, r.reductions, r.n), []).append(r)
    out = []
    for (alg, reds, n), rs in sorted(groups.items()):
        ok = [r.qubits for r in rs if r.success]
        out.append(SummaryRow(
            alg, reds, n, len(rs), len(ok),
            statistics.median(ok) if ok else None,
            statistics.median(r.runtime_ms for r in rs),
        ))
    return out


def summary_to_csv(rows: Iterable[SummaryRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_HEADER)
    for r in rows:
        w.writerow([
            r.algorithm, r.reductions, r.n, r.runs, r.successes,
            "" if r.median_qubits is None else f"{r.median_qubits:g}",
            "" if r.median_runtime_ms is None else f"{r.median_runtime_ms:.3f}",
        ])
    return buf.getvalue()


__all__ = [
    "CSV_HEADER",
    "Cell",
    "QuboError",
    "RunRecord",
    "SummaryRow",
    "SweepPlan",
    "parse_qubo",
    "records_to_csv",
    "run_cell",
    "run_sweep",
    "summarize",
    "summary_to_csv",
]
