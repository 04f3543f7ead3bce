"""Command line front end.

Subcommands:
  simulate      estimate the lazy failure rate or a logical error rate
  requirements  decoding hardware and bandwidth requirement table
  benchmark     paired decoder runtime comparison
  bandwidth     average bandwidth per logical qubit, with and without lazy
  graph-dump    emit a decoding graph as JSON

Exit codes: 0 success, 1 usage error, 2 infeasible parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .code_model import CheckBasis, build_rotated_surface_code, build_schedule, build_toric_code
from .decoders import DecoderKind
from .experiments import (
    bandwidth_curve,
    benchmark_runtime,
    estimate_logical_error,
    estimate_p_fail,
    reproduce_table,
)
from .graph import build_decoding_graph, build_perfect_graph
from .noise import NoiseMode, NoiseParams
from .resources import InfeasibleError, render_requirement_table


class _Parser(argparse.ArgumentParser):
    def error(self, message):          # argparse default exits with 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x]


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _emit(rows: list[dict], columns: list[str], out: str):
    if out == "json":
        print(json.dumps(rows, indent=2))
    elif out == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns)
        writer.writeheader()
        for r in rows:
            writer.writerow({c: r.get(c) for c in columns})
        sys.stdout.write(buf.getvalue())
    else:
        widths = [
            max(len(c), *(len(_cell(r.get(c))) for r in rows)) if rows else len(c)
            for c in columns
        ]
        print("  ".join(c.rjust(w) for c, w in zip(columns, widths)))
        for r in rows:
            print("  ".join(_cell(r.get(c)).rjust(w) for c, w in zip(columns, widths)))


def _cell(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lazyqec", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, *, trials=10000):
        sp.add_argument("--p", type=float, default=1e-3, help="physical error rate")
        sp.add_argument("--d", type=int, default=5, help="code distance")
        sp.add_argument("--trials", type=int, default=trials)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--out", choices=("csv", "json", "table"), default="table")

    sp = sub.add_parser("simulate", help="Monte Carlo estimation of failure rates")
    common(sp)
    sp.add_argument("--decoder", choices=[k.value for k in DecoderKind], default="lazy")
    sp.add_argument("--mode", choices=("circuit", "perfect"), default="circuit")

    sp = sub.add_parser("requirements", help="hardware requirement table")
    sp.add_argument("--p", type=_floats, default=[1e-3, 1e-4, 1e-5],
                    help="comma-separated physical error rates")
    sp.add_argument("--k", type=_ints, default=[100, 1000, 10000],
                    help="comma-separated logical qubit counts")
    sp.add_argument("--p-target", type=float, default=1e-15)
    sp.add_argument("--trials", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--tau-ns", type=float, default=1000.0)
    sp.add_argument("--out", choices=("csv", "json", "table"), default="table")

    sp = sub.add_parser("benchmark", help="paired decoder runtime comparison")
    common(sp, trials=100000)
    sp.set_defaults(d=20)
    sp.add_argument("--decoder", type=str,
                    default="mwpm,lazy+mwpm,uf,lazy+uf",
                    help="comma-separated decoder kinds")

    sp = sub.add_parser("bandwidth", help="average bandwidth with and without lazy")
    sp.add_argument("--p", type=_floats, default=[1e-3, 1e-4])
    sp.add_argument("--d", type=_ints, default=[5, 15, 25])
    sp.add_argument("--trials", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--tau-ns", type=float, default=1000.0)
    sp.add_argument("--out", choices=("csv", "json", "table"), default="table")

    sp = sub.add_parser("graph-dump", help="decoding graph as JSON")
    sp.add_argument("--p", type=float, default=1e-3)
    sp.add_argument("--d", type=int, default=3)
    sp.add_argument("--rounds", type=int, default=None)
    sp.add_argument("--mode", choices=("circuit", "perfect"), default="circuit")
    sp.add_argument("--code", choices=("rotated", "toric"), default="rotated")
    sp.add_argument("--basis", choices=("x", "z"), default="x")

    return parser


def _cmd_simulate(args) -> int:
    kind = DecoderKind(args.decoder)
    if kind is DecoderKind.LAZY and args.mode == "circuit":
        est = estimate_p_fail(args.p, args.d, args.trials, args.seed, workers=args.workers)
        row = {"quantity": "p_fail", **est.to_json_dict()}
    else:
        mode = NoiseMode.CIRCUIT_LEVEL if args.mode == "circuit" else NoiseMode.PERFECT_MEASUREMENT
        est = estimate_logical_error(
            kind, args.p, args.d, args.trials, args.seed, mode, workers=args.workers
        )
        row = {"quantity": f"p_logical[{kind.value}]", **est.to_json_dict()}
    row.update(p=args.p, d=args.d)
    cols = ["quantity", "p", "d", "point", "ci_low", "ci_high", "trials", "seed", "censored"]
    _emit([row], cols, args.out)
    return 0


def _cmd_requirements(args) -> int:
    tau = args.tau_ns * 1e-9
    rows = reproduce_table(
        args.p_target, args.p, args.k, args.trials, args.seed, tau=tau, workers=args.workers
    )
    if args.out == "table":
        print(render_requirement_table([(pr, rep) for pr, rep, _ in rows]))
        return 0
    flat = [
        {"p": pr.p, "K": pr.K, "p_fail": pr.p_fail, **rep.to_json_dict()}
        for pr, rep, _ in rows
    ]
    cols = ["p", "K", "p_fail", "d", "p_L", "M", "bw_required", "bw_no_lazy",
            "dec_units_lazy", "dec_units_naive", "savings_fraction"]
    _emit(flat, cols, args.out)
    return 0


def _cmd_benchmark(args) -> int:
    kinds = [DecoderKind(k) for k in args.decoder.split(",") if k]
    stats = benchmark_runtime(kinds, args.p, args.d, args.trials, args.seed)
    rows = [
        {"decoder": k.value, "mean_s": v["mean"], "p99_s": v["p99"], "max_s": v["max"],
         "fallback_fraction": v["fallback_fraction"]}
        for k, v in stats.items()
    ]
    _emit(rows, ["decoder", "mean_s", "p99_s", "max_s", "fallback_fraction"], args.out)
    return 0


def _cmd_bandwidth(args) -> int:
    tau = args.tau_ns * 1e-9
    rows = bandwidth_curve(args.p, args.d, args.trials, args.seed, tau=tau, workers=args.workers)
    cols = ["p", "d", "p_fail", "p_fail_ci_high", "censored", "bw_without", "bw_with",
            "bw_with_upper"]
    _emit(rows, cols, args.out)
    return 0


def _cmd_graph_dump(args) -> int:
    basis = CheckBasis.X if args.basis == "x" else CheckBasis.Z
    layout = (
        build_rotated_surface_code(args.d)
        if args.code == "rotated"
        else build_toric_code(args.d)
    )
    if args.mode == "perfect":
        graph = build_perfect_graph(layout, NoiseParams(args.p, NoiseMode.PERFECT_MEASUREMENT), basis)
    else:
        schedule = build_schedule(layout)
        rounds = args.rounds if args.rounds is not None else args.d
        graph = build_decoding_graph(layout, schedule, rounds, NoiseParams(args.p), basis)
    print(graph.to_json(indent=2))
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "requirements": _cmd_requirements,
    "benchmark": _cmd_benchmark,
    "bandwidth": _cmd_bandwidth,
    "graph-dump": _cmd_graph_dump,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return _COMMANDS[args.command](args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
