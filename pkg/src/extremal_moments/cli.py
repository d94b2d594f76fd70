"""Command-line interface.

Subcommands: analyze (property battery), solve (extremal solver), variety
(kernel relations and zero set), extend (recursive extension search with
solve handoff), synth (moment data from measures, functionals, or the
complex circle family).

Exit codes: 0 success / measure exists; 1 malformed input; 2 certified
nonexistence; 3 inconclusive.  Identical inputs and flags produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

from .consistency import ConsistencyVerdict, consistency_check
from .extension import ExtensionSearchReport, extension_search
from .extremal import (
    AtomicMeasure,
    SolveReport,
    dump_measure,
    load_measure,
    solve_extremal,
)
from .moments import (
    DEFAULT_POLICY,
    FlatnessVerdict,
    KernelReport,
    Multisequence,
    PsdVerdict,
    RecursivenessVerdict,
    TolerancePolicy,
    build_moment_matrix,
    dump_multisequence,
    load_multisequence,
    psd_check,
    rank_kernel,
    recursiveness_check,
    flatness_check,
)
from .polycore import (
    InputError,
    Polynomial,
    format_scalar,
    is_exact,
    monomial_to_string,
    poly_to_string,
)
from .synth import (
    beta_from_atoms,
    beta_from_functional,
    complex_to_real,
    example14_gamma,
    load_functional,
)
from .variety import (
    InjectivityVerdict,
    VarietyReport,
    compute_variety,
    dump_points,
    injectivity_check,
    load_points,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NO_MEASURE = 2
EXIT_INCONCLUSIVE = 3


# ---------------------------------------------------------------------------
# analysis battery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AnalysisReport:
    beta: Multisequence
    psd: PsdVerdict
    kernel: KernelReport
    recursiveness: RecursivenessVerdict
    flatness: Optional[FlatnessVerdict]
    variety: Optional[VarietyReport]
    consistency: Optional[ConsistencyVerdict]
    injectivity: Optional[InjectivityVerdict]


def analyze_beta(beta: Multisequence,
                 pol: TolerancePolicy = DEFAULT_POLICY) -> AnalysisReport:
    matrix = build_moment_matrix(beta)
    psd = psd_check(matrix, pol)
    kernel = rank_kernel(matrix, pol)
    recursiveness = recursiveness_check(matrix, kernel, pol)
    flatness = flatness_check(matrix, pol) if matrix.n >= 1 else None
    variety = None
    consistency = None
    injectivity = None
    if kernel.nullity > 0 and beta.d <= 2:
        variety = compute_variety(list(kernel.kernel), pol)
        consistency = consistency_check(beta, variety, pol)
        if variety.status == "Finite" and variety.points:
            injectivity = injectivity_check(kernel, variety.points, pol)
    return AnalysisReport(beta, psd, kernel, recursiveness,
                          flatness, variety, consistency, injectivity)


def relation_strings(report: KernelReport) -> list:
    """Kernel relations in delta form pretty-printed as 'M = combination'."""
    out = []
    pivot_set = set(report.pivots)
    for p in report.kernel:
        unit = None
        for idx, c in p.terms.items():
            if idx not in pivot_set and c == 1:
                unit = idx
                break
        if unit is None:
            out.append(f"0 = {poly_to_string(p)}")
            continue
        rhs = Polynomial.monomial(report.d, unit) - p
        out.append(f"{monomial_to_string(unit)} = {poly_to_string(rhs)}")
    return out


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------

def _scalar_str(x) -> str:
    if x is None:
        return "null"
    if is_exact(x) and x.denominator < 10**12:
        return format_scalar(x)
    return repr(float(x))


def _point_strs(point) -> list:
    return [_scalar_str(x) for x in point]


def _v_str(v) -> str:
    if v is None:
        return "unknown"
    if v == math.inf:
        return "infinite"
    return str(int(v))


def _variety_json(variety: Optional[VarietyReport]):
    if variety is None:
        return None
    return {
        "status": variety.status,
        "points": [_point_strs(w) for w in variety.points],
        "witness": poly_to_string(variety.witness) if variety.witness else None,
        "reason": variety.reason,
        "multiple_roots": variety.multiple_roots,
    }


def _measure_json(measure: Optional[AtomicMeasure]):
    if measure is None:
        return None
    return {
        "atoms": [_point_strs(w) for w in measure.atoms],
        "densities": [_scalar_str(r) for r in measure.densities],
    }


class _Emitter:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list = []
        self.payload: dict = {}

    def line(self, text: str):
        self.lines.append(text)

    def set(self, key: str, value):
        self.payload[key] = value

    def flush(self):
        if self.fmt == "structured":
            print(json.dumps(self.payload, indent=2, sort_keys=True))
        else:
            for line in self.lines:
                print(line)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _policy_from_args(args) -> TolerancePolicy:
    updates = {}
    if args.tol_rank is not None:
        updates["rank"] = args.tol_rank
    if args.tol_root is not None:
        updates["root"] = args.tol_root
    if args.tol_residual is not None:
        updates["residual"] = args.tol_residual
    return dataclasses.replace(DEFAULT_POLICY, **updates) \
        if updates else DEFAULT_POLICY


def _cmd_analyze(args) -> int:
    beta = load_multisequence(args.moments, args.mode)
    pol = _policy_from_args(args)
    report = analyze_beta(beta, pol)
    out = _Emitter(args.format)
    out.set("command", "analyze")
    out.line(f"data: d={beta.d}, degree={beta.degree}, "
             f"mode={'exact' if beta.is_exact else 'float'}")
    out.set("d", beta.d)
    out.set("degree", beta.degree)
    out.set("exact", beta.is_exact)
    out.line(f"M({beta.n}): size {report.kernel.basis and len(report.kernel.basis)}, "
             f"rank {report.kernel.rank}, psd {report.psd.status}")
    out.set("rank", report.kernel.rank)
    out.set("psd", report.psd.status)
    relations = relation_strings(report.kernel)
    for rel in relations:
        out.line(f"relation: {rel}")
    out.set("relations", relations)
    out.line(f"recursively generated: {report.recursiveness.status}")
    out.set("recursiveness", report.recursiveness.status)
    if report.flatness is not None:
        out.line(f"flat over M({beta.n - 1}): {report.flatness.flat} "
                 f"(rank {report.flatness.rank_previous} -> "
                 f"{report.flatness.rank})")
        out.set("flat", report.flatness.flat)
    if report.variety is not None:
        out.line(f"variety: {report.variety.status}, "
                 f"card {_v_str(report.variety.v)}")
        for w in report.variety.points:
            out.line("  point: (" + ", ".join(_point_strs(w)) + ")")
        out.set("variety", _variety_json(report.variety))
    if report.consistency is not None:
        verdict = report.consistency
        out.line(f"consistency: {verdict.status}"
                 + (f" (witness {poly_to_string(verdict.witness)}, "
                    f"value {_scalar_str(verdict.value)})"
                    if verdict.status == "Inconsistent" else "")
                 + (f" ({verdict.reason})" if verdict.reason else ""))
        out.set("consistency", verdict.status)
    if report.injectivity is not None:
        out.line(f"point evaluations separate columns: "
                 f"{report.injectivity.injective} "
                 f"(rank M {report.injectivity.rank_m}, "
                 f"rank W {report.injectivity.rank_w})")
        out.set("injective", report.injectivity.injective)
    out.flush()
    return EXIT_OK


def _cmd_solve(args) -> int:
    beta = load_multisequence(args.moments, args.mode)
    pol = _policy_from_args(args)
    points = load_points(args.points, args.mode) if args.points else None
    report = solve_extremal(beta, pol, points=points)
    out = _Emitter(args.format)
    out.set("command", "solve")
    out.set("status", report.status)
    out.set("rank", report.rank)
    out.set("v", _v_str(report.v))
    out.set("reason", report.reason)
    out.line(f"status: {report.status}")
    if report.rank is not None:
        out.line(f"rank M(n) = {report.rank}, card variety = {_v_str(report.v)}")
    if report.reason:
        out.line(f"reason: {report.reason}")
    if report.witness is not None:
        out.line(f"witness: {poly_to_string(report.witness)}")
        out.set("witness", poly_to_string(report.witness))
        if report.value is not None:
            out.line(f"functional value at witness: {_scalar_str(report.value)}")
            out.set("value", _scalar_str(report.value))
    if report.kernel is not None:
        out.set("relations", relation_strings(report.kernel))
    if report.measure is not None:
        out.line(f"atoms ({report.measure.size}):")
        for w, rho in zip(report.measure.atoms, report.measure.densities):
            out.line("  (" + ", ".join(f"{float(x)!r}" for x in w)
                     + f") density {float(rho)!r}")
        out.set("measure", _measure_json(report.measure))
    if report.residual is not None:
        out.line(f"max moment residual: {report.residual!r}")
        out.set("residual", repr(report.residual))
    out.flush()
    if args.out and report.measure is not None:
        dump_measure(report.measure, args.out)
    if report.status == "Measure":
        return EXIT_OK
    if report.status == "NoMeasure":
        return EXIT_NO_MEASURE
    return EXIT_INCONCLUSIVE


def _cmd_variety(args) -> int:
    beta = load_multisequence(args.moments, args.mode)
    pol = _policy_from_args(args)
    matrix = build_moment_matrix(beta)
    report = rank_kernel(matrix, pol)
    out = _Emitter(args.format)
    out.set("command", "variety")
    out.set("rank", report.rank)
    out.line(f"rank M({beta.n}) = {report.rank}")
    relations = relation_strings(report)
    for rel in relations:
        out.line(f"relation: {rel}")
    out.set("relations", relations)
    if report.nullity == 0:
        out.line("kernel is trivial: variety is all of R^d")
        out.set("variety", {"status": "Infinite", "points": [],
                            "witness": None,
                            "reason": "trivial kernel", "multiple_roots": False})
        out.flush()
        return EXIT_OK
    variety = compute_variety(list(report.kernel), pol)
    out.set("variety", _variety_json(variety))
    out.line(f"variety: {variety.status}, card {_v_str(variety.v)}")
    if variety.witness is not None:
        out.line(f"common factor: {poly_to_string(variety.witness)}")
    if variety.reason:
        out.line(f"reason: {variety.reason}")
    for w in variety.points:
        out.line("  point: (" + ", ".join(f"{float(x)!r}" for x in w) + ")")
    out.flush()
    if args.out and variety.status == "Finite" and variety.points:
        dump_points(variety.points, args.out)
    return EXIT_OK if variety.status != "Unknown" else EXIT_INCONCLUSIVE


def _cmd_extend(args) -> int:
    beta = load_multisequence(args.moments, args.mode)
    pol = _policy_from_args(args)
    search = extension_search(beta, args.steps, pol)
    out = _Emitter(args.format)
    out.set("command", "extend")
    out.set("status", search.status)
    out.set("flat_level", search.flat_level)
    steps_json = []
    for step in search.steps:
        rank_to = step.matrix and rank_kernel(step.matrix, pol).rank
        out.line(
            f"M({step.source_n}) -> M({step.source_n + 1}): "
            f"well_defined={step.well_defined}"
            + (f", rank {rank_to}" if rank_to is not None else "")
            + (f", flat={step.flat.flat}" if step.flat is not None else "")
            + (f", psd={step.psd.status}" if step.psd is not None else ""))
        steps_json.append({
            "from": step.source_n,
            "well_defined": step.well_defined,
            "rank": rank_to,
            "flat": step.flat.flat if step.flat else None,
            "psd": step.psd.status if step.psd else None,
            "conflicts": len(step.conflicts),
            "undetermined": [list(i) for i in step.undetermined],
        })
    out.set("steps", steps_json)
    out.line(f"search: {search.status}"
             + (f" at M({search.flat_level})" if search.flat_level else ""))
    if search.status == "FlatAt" and search.beta_final is not None:
        solve = solve_extremal(search.beta_final, pol)
        out.set("solve_status", solve.status)
        out.line(f"handoff solve: {solve.status}")
        if solve.measure is not None:
            for w, rho in zip(solve.measure.atoms, solve.measure.densities):
                out.line("  (" + ", ".join(f"{float(x)!r}" for x in w)
                         + f") density {float(rho)!r}")
            out.set("measure", _measure_json(solve.measure))
            if args.out:
                dump_measure(solve.measure, args.out)
        out.flush()
        return EXIT_OK if solve.status == "Measure" else EXIT_INCONCLUSIVE
    out.flush()
    if search.status in ("IllDefined", "NotPSD"):
        return EXIT_NO_MEASURE
    return EXIT_INCONCLUSIVE


def _cmd_synth(args) -> int:
    pol = _policy_from_args(args)  # noqa: F841  (kept for symmetry)
    sources = [s for s in (args.example14, args.functional, args.measure)
               if s is not None]
    if len(sources) != 1:
        raise InputError(
            "synth needs exactly one of --example14, --functional, --measure")
    if args.example14 is not None:
        n_str, a_str = args.example14
        from .polycore import parse_scalar
        gamma = example14_gamma(int(n_str), parse_scalar(a_str, args.mode))
        beta = complex_to_real(gamma)
    elif args.functional is not None:
        if args.degree is None:
            raise InputError("--functional requires --degree")
        functional = load_functional(args.functional, args.mode)
        beta = beta_from_functional(functional, args.degree)
    else:
        if args.degree is None:
            raise InputError("--measure requires --degree")
        measure = load_measure(args.measure, args.mode)
        beta = beta_from_atoms(measure.atoms, measure.densities,
                               measure.d, args.degree)
    if args.out:
        dump_multisequence(beta, args.out)
        print(f"wrote moments: d={beta.d}, degree={beta.degree} -> {args.out}")
    else:
        from .polycore import monomial_basis
        payload = {
            "d": beta.d,
            "degree": beta.degree,
            "moments": [{"idx": list(idx), "value": _scalar_str(beta[idx])}
                        for idx in monomial_basis(beta.d, beta.degree)],
        }
        print(json.dumps(payload, indent=2))
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extremal-moments",
        description="Truncated moment problems in the extremal case: "
                    "certificates and atomic representing measures.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--mode", choices=("exact", "float"), default=None,
                       help="force scalar interpretation of input values")
        p.add_argument("--tol-rank", type=float, default=None)
        p.add_argument("--tol-root", type=float, default=None)
        p.add_argument("--tol-residual", type=float, default=None)
        p.add_argument("--format", choices=("text", "structured"),
                       default="text")
        p.add_argument("--out", default=None,
                       help="write the resulting artifact to this file")

    p = sub.add_parser("analyze", help="property battery for moment data")
    p.add_argument("moments")
    common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("solve", help="extremal solver")
    p.add_argument("moments")
    p.add_argument("--points", default=None,
                   help="points file bypassing the variety solver")
    common(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("variety", help="kernel relations and zero set")
    p.add_argument("moments")
    common(p)
    p.set_defaults(func=_cmd_variety)

    p = sub.add_parser("extend", help="recursive extension search")
    p.add_argument("moments")
    p.add_argument("--steps", type=int, default=3)
    common(p)
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("synth", help="synthesize moment data")
    p.add_argument("--example14", nargs=2, metavar=("N", "A"), default=None,
                   help="complex circle family parameters")
    p.add_argument("--functional", default=None,
                   help="signed functional file")
    p.add_argument("--measure", default=None, help="atomic measure file")
    p.add_argument("--degree", type=int, default=None)
    common(p)
    p.set_defaults(func=_cmd_synth)
    return parser


def run(argv=None) -> int:
    """Parse arguments and execute; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse errors -> input error code
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
