"""Command-line interface.

Subcommands: stabilizers, bellop, bound, analyze, mk, simulate, scaling.
Exit codes: 0 success, 2 validation/usage error, 3 capacity error.
Machine-readable output via --format json (and csv where tabular).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

from .analysis import (
    ViolationReport,
    bell_value_from_records,
    load_ghz_summaries,
    load_measurements,
    scaling_table,
    simulate_measurements,
    write_measurements_csv,
)
from .bell import mk_recursive, MeasurementSettings, SignedPauliSum, mk_closed_form
from .errors import CapacityError, GraphBellError, ValidationError
from .lhv import LhvAssignment, lhv_max, mk_bound, mk_bound_bruteforce
from .noise import NoiseSpec
from .pauli import format_pauli
from .presets import (
    preset_bell_operator,
    preset_bound,
    preset_stabilizer_elements,
    resolve_graph_arg,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CAPACITY = 3


def _fmt6(x: float) -> str:
    return f"{x:.6g}"


def _display2(x: float) -> str:
    """Two-decimal display with half-up rounding (0.855 -> 0.86)."""
    return str(Decimal(repr(x)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def _bound_text(bound) -> str:
    exact = f"{bound.exact} " if bound.exact is not None else ""
    return f"{exact}({bound.value:.6g}) [{bound.kind}, method={bound.method}]"


def _witness_lines(witness) -> list[str]:
    if witness is None:
        return []
    if isinstance(witness, LhvAssignment):
        rows = []
        for q, (vx, vy, vz) in enumerate(witness.values):
            rows.append(f"  qubit {q}: X={vx:+d} Y={vy:+d} Z={vz:+d}")
        return rows
    return [f"  {witness}"]


def _cmd_stabilizers(args) -> int:
    spec = resolve_graph_arg(args.graph)
    elements = preset_stabilizer_elements(spec)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "graph": spec.name,
                    "n": spec.n,
                    "elements": [
                        {"subset": e.subset, "word": format_pauli(e.word)}
                        for e in elements
                    ],
                }
            )
        )
    else:
        for e in elements:
            print(format_pauli(e.word))
    return EXIT_OK


def _operator_terms(args) -> tuple[str, int, SignedPauliSum]:
    if args.mk:
        if args.n is None:
            raise ValidationError("--mk needs --n")
        op = mk_recursive(MeasurementSettings.xy(args.n))
        return f"mk{args.n}", args.n, op
    if args.graph is None:
        raise ValidationError("bellop needs --graph or --mk --n")
    spec = resolve_graph_arg(args.graph)
    return spec.name, spec.n, preset_bell_operator(spec)


def _cmd_bellop(args) -> int:
    name, n, op = _operator_terms(args)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "n": n,
                    "terms": [
                        {"coeff": float(c) * w.sign, "word": format_pauli(w)}
                        for c, w in op.terms
                    ],
                }
            )
        )
    else:
        print(f"# {name}: {len(op.terms)} terms")
        for coeff, word in op.terms:
            exact = coeff if isinstance(coeff, Fraction) else _fmt6(coeff)
            print(f"{exact}\t{format_pauli(word)}")
    return EXIT_OK


def _cmd_bound(args) -> int:
    spec = resolve_graph_arg(args.graph)
    bound = preset_bound(spec, args.method, args.restrict_z)
    if args.format == "json":
        out = {
            "graph": spec.name,
            "n": spec.n,
            "value": bound.value,
            "exact": str(bound.exact) if bound.exact is not None else None,
            "kind": bound.kind,
            "method": bound.method,
        }
        if isinstance(bound.witness, LhvAssignment):
            out["witness"] = [list(t) for t in bound.witness.values]
        print(json.dumps(out))
    else:
        print(f"graph:  {spec.name} (n={spec.n})")
        print(f"bound:  {_bound_text(bound)}")
        lines = _witness_lines(bound.witness)
        if lines:
            print("witness assignment:")
            for line in lines:
                print(line)
    return EXIT_OK


def _print_report(report: ViolationReport, name: str, fmt: str):
    if fmt == "json":
        print(json.dumps(report.to_json_dict(name)))
        return
    rel_prefix = ">= " if report.relative_is_lower_bound else ""
    print(f"graph:               {name}")
    print(
        f"bell value:          {report.bell_value:.6g} +- {report.stderr:.6g}"
        f"   (display {_display2(report.bell_value)} +- {_display2(report.stderr)})"
    )
    print(f"lhv bound:           {_bound_text(report.bound)}")
    print(
        f"relative violation:  {rel_prefix}{report.relative_violation:.6g}"
        f" +- {report.relative_stderr:.6g}"
        f"   (display {rel_prefix}{_display2(report.relative_violation)}"
        f" +- {_display2(report.relative_stderr)})"
    )
    sigmas = "inf" if math.isinf(report.sigmas) else f"{report.sigmas:.3g}"
    print(f"sigmas above bound:  {sigmas}")
    print(f"verdict:             {'VIOLATED' if report.verdict else 'not violated'}")


def _cmd_analyze(args) -> int:
    spec = resolve_graph_arg(args.graph)
    records = load_measurements(args.measurements, spec.n)
    estimate = bell_value_from_records(records, preset_stabilizer_elements(spec))
    bound = preset_bound(spec, args.method, args.restrict_z)
    report = ViolationReport.build(estimate.value, estimate.stderr, bound)
    _print_report(report, spec.name, args.format)
    return EXIT_OK


def _cmd_mk(args) -> int:
    n = args.n
    bound = mk_bound(n)
    quantum = 1.0
    out = {
        "n": n,
        "lhv_bound": bound.value,
        "lhv_bound_exact": str(bound.exact) if bound.exact is not None else None,
        "quantum_max": quantum,
        "ideal_relative_violation": quantum / bound.value,
        "closed_form_phase": mk_closed_form(n).beta,
    }
    if args.bruteforce:
        brute = mk_bound_bruteforce(n)
        out["bruteforce_value"] = brute.value
        out["bruteforce_matches"] = brute.value == bound.value
    if args.format == "json":
        print(json.dumps(out))
    else:
        for key, value in out.items():
            print(f"{key}: {value}")
    return EXIT_OK


def _cmd_simulate(args) -> int:
    spec = resolve_graph_arg(args.graph)
    records = simulate_measurements(spec, NoiseSpec(args.noise), args.shots, args.seed)
    comment = (
        f"graph={spec.name} noise={args.noise} shots={args.shots} seed={args.seed}"
    )
    if args.out:
        write_measurements_csv(records, args.out, comment)
        print(f"wrote {len(records)} records to {args.out}")
    else:
        print(f"# {comment}")
        print("pauli,sign,value,stderr,shots")
        for rec in records:
            sign = "+1" if rec.word.sign > 0 else "-1"
            print(f"{rec.word.letters()},{sign},{rec.value:.10g},{rec.stderr:.10g},{rec.shots}")
    return EXIT_OK


def _cmd_scaling(args) -> int:
    n_values = range(args.n_min, args.n_max + 1)
    if args.summaries:
        source = load_ghz_summaries(args.summaries)
    elif args.noise is not None:
        source = NoiseSpec(args.noise)
    else:
        source = "ideal"
    rows = scaling_table(n_values, source)
    if args.format == "json":
        print(
            json.dumps(
                [
                    {"n": r.n, "graph_R": r.graph_relative, "mk_R": r.mk_relative}
                    for r in rows
                ]
            )
        )
    else:
        print("n,graph_R,mk_R")
        for r in rows:
            print(f"{r.n},{r.graph_relative:.10g},{r.mk_relative:.10g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphbell",
        description="Graph-state Bell operators, LHV bounds, and violation analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stabilizers", help="print the 2^n signed stabilizer words")
    p.add_argument("--graph", required=True, help="preset name or graph JSON file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_stabilizers)

    p = sub.add_parser("bellop", help="print a Bell operator's term list")
    p.add_argument("--graph", help="preset name or graph JSON file")
    p.add_argument("--mk", action="store_true", help="Mermin-Klyshko operator (x/y settings)")
    p.add_argument("--n", type=int, help="qubit count for --mk")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_bellop)

    p = sub.add_parser("bound", help="LHV bound of a graph Bell operator")
    p.add_argument("--graph", required=True)
    p.add_argument("--method", choices=("brute", "ghz", "formula", "product"))
    p.add_argument("--restrict-z", action="store_true", help="pin all Z assignments to +1")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("analyze", help="evaluate measured stabilizer expectations")
    p.add_argument("--graph", required=True)
    p.add_argument("--measurements", required=True, help="CSV or JSON records")
    p.add_argument("--method", choices=("brute", "ghz", "formula", "product"))
    p.add_argument("--restrict-z", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("mk", help="Mermin-Klyshko bound and ideal violation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bruteforce", action="store_true", help="cross-check by enumeration")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_mk)

    p = sub.add_parser("simulate", help="sample stabilizer measurements of a noisy state")
    p.add_argument("--graph", required=True)
    p.add_argument("--noise", type=float, default=1.0, help="per-qubit retention p")
    p.add_argument("--shots", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("scaling", help="relative violations against system size")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=14)
    p.add_argument("--noise", type=float, help="depolarizing retention p")
    p.add_argument("--summaries", help="GHZ summary CSV file")
    p.add_argument("--format", choices=("text", "csv", "json"), default="csv")
    p.set_defaults(func=_cmd_scaling)

    return parser


def run_cli(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return EXIT_VALIDATION if code not in (0,) else 0
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error (capacity): {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ValidationError, GraphBellError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def main():
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
