"""Command-line front end.

Exit codes: 0 success, 1 a run (or sweep cell) failed or an embedding is
invalid, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .bench import QuboError, SweepPlan, parse_qubo, run_sweep, summarize, summary_to_csv
from .chimera import ChimeraSpec
from .embedders import ALGORITHMS, REDUCTIONS, hardware, pipeline
from .framework import EmbeddingError, Fail, PhysicalEmbedding, validate_minor_embedding
from .generators import DENSITIES, FAMILIES, GeneratorConfig, generate, lower_bound_witness
from .graph import GraphError, format_edge_list, parse_edge_list
from .oct import DEFAULT_RESTARTS, best_of_greedy, oct_brute_force, oct_exact, oct_series_parallel, oct_via_components

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _chimera(text: str) -> ChimeraSpec:
    try:
        return ChimeraSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _reductions(text: str) -> tuple[str, ...]:
    reds = tuple(r for r in text.split(",") if r)
    bad = [r for r in reds if r not in REDUCTIONS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown reductions {bad}; choose from {REDUCTIONS}")
    return reds


def _read_graph(path: str, qubo: bool):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_qubo(text) if qubo else parse_edge_list(text)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_generate(args) -> int:
    if args.witness is not None:
        g = lower_bound_witness(args.witness)
    else:
        if args.family is None or args.n is None:
            raise UsageError("generate needs --family and --n (or --witness)")
        cfg = GeneratorConfig(args.family, args.density, args.n, args.seed)
        g = generate(cfg)
        if args.out and Path(args.out).is_dir():
            args.out = str(Path(args.out) / cfg.filename())
    _emit(format_edge_list(g), args.out)
    return EXIT_OK


def cmd_embed(args) -> int:
    g = _read_graph(args.graph, args.qubo)
    chi, metrics = pipeline(
        g, args.chimera, args.algorithm, args.reduce, args.seed,
        restarts=args.restarts, timeout_ms=args.timeout_ms,
    )
    if isinstance(chi, Fail):
        print(f"{chi}", file=sys.stderr)
        return EXIT_FAIL
    _emit(chi.to_text(), args.out)
    extra = f" oct_size={metrics['oct_size']}" if metrics["oct_size"] is not None else ""
    print(f"qubits={metrics['qubits']}{extra} runtime_ms={metrics['runtime_ms']:.1f}", file=sys.stderr)
    return EXIT_OK


def cmd_oct(args) -> int:
    g = _read_graph(args.graph, args.qubo)
    if args.method == "brute":
        dec = oct_brute_force(g)
    elif args.method == "greedy":
        dec = best_of_greedy(g, args.restarts, args.seed)
    elif args.method == "series-parallel":
        dec = oct_series_parallel(g)
    else:
        dec = oct_via_components(g, lambda c: oct_exact(c, args.k_max, restarts=args.restarts, seed=args.seed))
        if args.k_max is not None and not isinstance(dec, Fail) and dec.size > args.k_max:
            dec = Fail("oct-budget")
    if isinstance(dec, Fail):
        print(f"{dec}", file=sys.stderr)
        return EXIT_FAIL
    fmt = lambda s: " ".join(map(str, sorted(s)))
    _emit(
        f"{dec.size} {len(dec.left)} {len(dec.right)}\n"
        f"S: {fmt(dec.oct_set)}\nL: {fmt(dec.left)}\nR: {fmt(dec.right)}\n",
        args.out,
    )
    return EXIT_OK


def cmd_sweep(args) -> int:
    plan = SweepPlan.from_json(Path(args.plan).read_text())
    if args.chimera is not None:
        plan.chimera = str(args.chimera)
    if args.no_timing:
        plan.record_runtime = False
    if args.restarts is not None:
        plan.restarts = args.restarts
    out = args.out or "sweep.csv"
    records = run_sweep(plan, timeout_ms=args.timeout_ms, out=out, workers=args.workers)
    summary = summary_to_csv(summarize(records))
    if args.summary:
        Path(args.summary).write_text(summary)
    else:
        sys.stdout.write(summary)
    return EXIT_OK if all(r.success for r in records) else EXIT_FAIL


def cmd_validate(args) -> int:
    g = _read_graph(args.graph, args.qubo)
    try:
        emb = PhysicalEmbedding.from_text(Path(args.embedding).read_text())
    except EmbeddingError as exc:
        raise UsageError(str(exc)) from None
    hw, labeling, _ = hardware(args.chimera)
    ok, report = validate_minor_embedding(g, hw, emb, labeling)
    print(report)
    if ok:
        print(f"qubits={len(emb.qubits())}")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vhembed", description="Minor embedding onto Chimera via a biclique template.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, chimera=True):
        if chimera:
            p.add_argument("--chimera", type=_chimera, default=ChimeraSpec(4, 8, 8), metavar="L,M,N")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="output file (default: stdout)")

    p = sub.add_parser("generate", help="write a random problem graph as an edge list")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--density", choices=DENSITIES, default="low")
    p.add_argument("--n", type=int)
    p.add_argument("--witness", type=_chimera, metavar="L,M,N", help="OCT lower-bound witness instead")
    common(p, chimera=False)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("embed", help="embed one problem graph")
    p.add_argument("graph", help="edge-list file, or '-' for stdin")
    p.add_argument("--qubo", action="store_true", help="input is 'i j c' QUBO triplets")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="oct-fast")
    p.add_argument("--reduce", type=_reductions, default=(), metavar="qubit,2ex")
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.add_argument("--timeout-ms", type=float)
    common(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("oct", help="odd cycle transversal of a graph")
    p.add_argument("graph")
    p.add_argument("--qubo", action="store_true")
    p.add_argument("--method", choices=("exact", "greedy", "brute", "series-parallel"), default="exact")
    p.add_argument("--k-max", type=int)
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    common(p, chimera=False)
    p.set_defaults(func=cmd_oct)

    p = sub.add_parser("sweep", help="run a JSON benchmark plan and write CSV")
    p.add_argument("plan")
    p.add_argument("--summary", help="median summary CSV (default: stdout)")
    p.add_argument("--chimera", type=_chimera)
    p.add_argument("--timeout-ms", type=float)
    p.add_argument("--restarts", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="write runtime 0 for bit-identical reruns")
    p.add_argument("--out", help="result CSV (default: sweep.csv)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="check an embedding file against Chimera")
    p.add_argument("graph")
    p.add_argument("embedding")
    p.add_argument("--qubo", action="store_true")
    p.add_argument("--chimera", type=_chimera, default=ChimeraSpec(4, 8, 8), metavar="L,M,N")
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, GraphError, QuboError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
