"""
Command-line surface: single-point solves, grid sweeps, verification suites,
and PT-symmetry checks.

Exit codes are disjoint by failure class: 0 success, 1 bad input (flags,
files, grids, unwritable output), 2 singular model point (severed hopping,
singular matching system), 3 verification failure.

Custom interaction windows are read from a JSON document

    {"lo": -1, "hi": 1, "entries": [{"i": 0, "j": 1, "re": 0.5, "im": 0.0}]}

with ``im`` optional (default 0); unknown fields and duplicate (i, j) pairs
are rejected.  Sweep tables are written as CSV with the fixed header

    model,M,coupling,phi,E,reR,imR,reT,imT,prob_sum,defect,solver,residual

(17-significant-digit floats, LF line endings, byte-stable for fixed flags)
or as JSON carrying the same rows plus table metadata and per-point errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

from ._version import __version__
from .analysis import (
    ALL_SOLVERS,
    SOLVER_CLOSED_FORM,
    SOLVER_MATCHING,
    SOLVER_TRANSFER,
    SweepSpec,
    SweepTable,
    cross_validate,
    run_sweep,
    transfer_matching_agreement,
)
from .core import (
    CUSTOM,
    PT_PAIR,
    ULTRALOCAL,
    InteractionWindow,
    LatticeConvention,
    ModelFamily,
    PhiAngle,
    energy_from_phi,
    first_pt_violation,
)
from .errors import NotTridiagonal, SingularSystem
from .solver import solve_matching, solve_transfer_matrix

CSV_HEADER = "model,M,coupling,phi,E,reR,imR,reT,imT,prob_sum,defect,solver,residual"

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_SINGULAR = 2
EXIT_VERIFY = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on usage errors; remap to the input-error code."""

    def error(self, message: str):  # noqa: D102
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _fmt(value: float) -> str:
    """Round-trip-safe, locale-independent float text (17 significant digits)."""
    return "%.17g" % value


def parse_range(text: str) -> list[float]:
    """Parse lo:hi:step into [lo, lo+step, ...], keeping hi within half a step."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"range must be lo:hi:step, got {text!r}")
    lo, hi, step = (float(p) for p in parts)
    if not step > 0.0:
        raise ValueError(f"range step must be positive, got {step!r}")
    values: list[float] = []
    k = 0
    while (value := lo + k * step) <= hi + step / 2.0:
        values.append(value)
        k += 1
    if not values:
        raise ValueError(f"range {text!r} produces an empty grid")
    return values


def parse_int_list(text: str) -> list[int]:
    values = [int(part) for part in text.split(",") if part.strip() != ""]
    if not values:
        raise ValueError(f"empty integer list {text!r}")
    return values


def load_window_file(path: str) -> InteractionWindow:
    """Read a custom interaction window from its JSON document."""
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise ValueError(f"{path}: top level must be an object")
    unknown = set(data) - {"lo", "hi", "entries"}
    if unknown:
        raise ValueError(f"{path}: unknown fields {sorted(unknown)}")
    for key in ("lo", "hi", "entries"):
        if key not in data:
            raise ValueError(f"{path}: missing field {key!r}")
    lo, hi = data["lo"], data["hi"]
    if not (isinstance(lo, int) and isinstance(hi, int)):
        raise ValueError(f"{path}: lo and hi must be integers")
    if not isinstance(data["entries"], list):
        raise ValueError(f"{path}: entries must be a list")

    entries: dict[tuple[int, int], complex] = {}
    for k, item in enumerate(data["entries"]):
        if not isinstance(item, dict):
            raise ValueError(f"{path}: entry #{k} must be an object")
        unknown = set(item) - {"i", "j", "re", "im"}
        if unknown:
            raise ValueError(f"{path}: entry #{k} has unknown fields {sorted(unknown)}")
        try:
            i, j = item["i"], item["j"]
            re = item["re"]
            im = item.get("im", 0.0)
        except KeyError as exc:
            raise ValueError(f"{path}: entry #{k} is missing field {exc}") from None
        if not (isinstance(i, int) and isinstance(j, int)):
            raise ValueError(f"{path}: entry #{k} indices must be integers")
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re, im)):
            raise ValueError(f"{path}: entry #{k} re/im must be numbers")
        if not (lo <= i <= hi and lo <= j <= hi):
            raise ValueError(f"{path}: entry #{k} index ({i}, {j}) outside [{lo}, {hi}]")
        if (i, j) in entries:
            raise ValueError(f"{path}: duplicate entry for ({i}, {j})")
        entries[(i, j)] = complex(float(re), float(im))
    return InteractionWindow(lo=lo, hi=hi, entries=entries)


def _model_from_args(args: argparse.Namespace) -> ModelFamily:
    if args.model == PT_PAIR:
        if args.M is None or args.x is None:
            raise ValueError("pt-pair model needs --M and --x")
        return ModelFamily.pt_delta_pair(args.M, args.x)
    if args.model == ULTRALOCAL:
        if args.a is None:
            raise ValueError("ultralocal model needs --a")
        return ModelFamily.ultralocal(args.a)
    if args.window is None:
        raise ValueError("custom model needs --window <path>")
    return ModelFamily.custom_window(load_window_file(args.window))


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", choices=(PT_PAIR, ULTRALOCAL, CUSTOM), required=True)
    parser.add_argument("--M", type=int, help="separation of the pt-pair model")
    parser.add_argument("--x", type=float, help="pt-pair coupling")
    parser.add_argument("--a", type=float, help="ultralocal coupling")
    parser.add_argument("--window", help="JSON window file for the custom model")


def cmd_solve(args: argparse.Namespace) -> int:
    model = _model_from_args(args)
    phi = PhiAngle(args.phi)
    solve = solve_matching if args.solver == SOLVER_MATCHING else solve_transfer_matrix
    report = solve(model.window(), phi)
    amps = report.amplitudes
    e_plain = energy_from_phi(phi, LatticeConvention(diagonal_shift=False))
    e_shift = energy_from_phi(phi, LatticeConvention(diagonal_shift=True))

    if args.format == "json":
        payload = {
            "model": model.kind,
            "M": model.m_sep or 0,
            "coupling": None if math.isnan(model.coupling) else model.coupling,
            "phi": phi.phi,
            "solver": args.solver,
            "reR": amps.R.real,
            "imR": amps.R.imag,
            "reT": amps.T.real,
            "imT": amps.T.imag,
            "prob_reflected": amps.prob_reflected,
            "prob_transmitted": amps.prob_transmitted,
            "prob_sum": amps.prob_sum,
            "defect": amps.defect,
            "energy_zero_diagonal": e_plain,
            "energy_shifted_diagonal": e_shift,
            "residual": report.residual_max,
        }
        print(json.dumps(payload, indent=2, sort_keys=False))
        return EXIT_OK

    print(f"model        = {model.kind} (M={model.m_sep or 0}, coupling={model.coupling})")
    print(f"phi          = {_fmt(phi.phi)}")
    print(f"E            = {_fmt(e_plain)} (zero-diagonal) / {_fmt(e_shift)} (shifted-diagonal)")
    print(f"R            = {_fmt(amps.R.real)} {amps.R.imag:+.17g}i")
    print(f"T            = {_fmt(amps.T.real)} {amps.T.imag:+.17g}i")
    print(f"|R|^2        = {_fmt(amps.prob_reflected)}")
    print(f"|T|^2        = {_fmt(amps.prob_transmitted)}")
    print(f"|R|^2+|T|^2  = {_fmt(amps.prob_sum)}")
    print(f"defect       = {_fmt(amps.defect)}")
    print(f"residual     = {_fmt(report.residual_max)}")
    print(f"solver       = {args.solver}")
    return EXIT_OK


def format_table_csv(table: SweepTable) -> str:
    """Render the sweep table in the fixed CSV schema (LF endings, trailing LF)."""
    lines = [CSV_HEADER]
    for row in table.rows:
        amps = row.amplitudes
        lines.append(
            ",".join(
                (
                    row.model,
                    str(row.m_sep),
                    _fmt(row.coupling),
                    _fmt(row.phi),
                    _fmt(row.energy),
                    _fmt(amps.R.real),
                    _fmt(amps.R.imag),
                    _fmt(amps.T.real),
                    _fmt(amps.T.imag),
                    _fmt(row.prob_sum),
                    _fmt(row.defect),
                    row.solver,
                    _fmt(row.residual),
                )
            )
        )
    return "\n".join(lines) + "\n"


def table_to_json_dict(table: SweepTable) -> dict:
    return {
        "meta": dict(table.meta),
        "rows": [
            {
                "model": row.model,
                "M": row.m_sep,
                "coupling": row.coupling,
                "phi": row.phi,
                "E": row.energy,
                "reR": row.amplitudes.R.real,
                "imR": row.amplitudes.R.imag,
                "reT": row.amplitudes.T.real,
                "imT": row.amplitudes.T.imag,
                "prob_sum": row.prob_sum,
                "defect": row.defect,
                "solver": row.solver,
                "residual": row.residual,
            }
            for row in table.rows
        ],
        "errors": [
            {
                "model": err.model,
                "M": err.m_sep,
                "coupling": err.coupling,
                "phi": err.phi,
                "solver": err.solver,
                "reason": err.reason,
            }
            for err in table.errors
        ],
    }


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.model == PT_PAIR:
        if args.x_range is None:
            raise ValueError("pt-pair sweeps need --x-range")
        couplings = parse_range(args.x_range)
        m_list = parse_int_list(args.M_list) if args.M_list else [args.M or 1]
        template = ModelFamily.pt_delta_pair(1, 0.0)
    elif args.model == ULTRALOCAL:
        if args.a_range is None:
            raise ValueError("ultralocal sweeps need --a-range")
        couplings = parse_range(args.a_range)
        m_list = [0]
        template = ModelFamily.ultralocal(0.0)
    else:
        if args.window is None:
            raise ValueError("custom sweeps need --window <path>")
        couplings = [0.0]
        m_list = [0]
        template = ModelFamily.custom_window(load_window_file(args.window))

    phis = tuple(PhiAngle(v) for v in parse_range(args.phi_range))
    solvers = ALL_SOLVERS if args.solver == "all" else (args.solver,)
    spec = SweepSpec(
        model=template,
        couplings=tuple(couplings),
        phis=phis,
        m_list=tuple(m_list),
        solvers=solvers,
    )
    table = run_sweep(spec)

    if args.format == "csv":
        text = format_table_csv(table)
    else:
        text = json.dumps(table_to_json_dict(table), indent=2) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    if table.errors:
        print(
            f"sweep: {len(table.errors)} grid point(s) errored and were excluded; use --format json for reasons",
            file=sys.stderr,
        )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    failed = False

    def report(name: str, worst: float, ok: bool) -> None:
        nonlocal failed
        failed = failed or not ok
        print(f"{name:<28} worst {worst:.3e}  tol {args.tol:.1e}  {'PASS' if ok else 'FAIL'}")

    if args.suite in ("closed-forms", "all"):
        cv = cross_validate(min(3, args.M_max), tol=args.tol)
        worst = max(cv.worst_closed_vs_matching, cv.worst_closed_vs_transfer)
        report("closed-forms vs solvers", worst, worst <= args.tol)
    if args.suite in ("unitarity", "all"):
        cv = cross_validate(args.M_max, tol=args.tol)
        report("probability-sum defect", cv.worst_abs_defect, cv.worst_abs_defect <= args.tol)
    if args.suite in ("oracles", "all"):
        agreement = transfer_matching_agreement(tol=args.tol)
        worst = max(agreement.worst_delta_r, agreement.worst_delta_t)
        report("matching vs transfer", worst, agreement.passed)
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_check_pt(args: argparse.Namespace) -> int:
    model = _model_from_args(args)
    violation = first_pt_violation(model.window())
    if violation is None:
        print("true")
    else:
        (i, j), value, mirror = violation
        norm = lambda z: complex(z.real + 0.0, z.imag + 0.0)  # drop negative zeros
        print("false")
        print(f"violation at ({i}, {j}): W[{i}, {j}] = {norm(value)} but conj(W[{-i}, {-j}]) = {norm(mirror)}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="ptscatter", description="Lattice scattering amplitudes for finite interaction windows")
    parser.add_argument("--version", action="version", version=f"ptscatter {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_solve = sub.add_parser("solve", help="solve a single (model, phi) point")
    _add_model_flags(p_solve)
    p_solve.add_argument("--phi", type=float, required=True, help="angle in radians, inside (0, pi)")
    p_solve.add_argument("--solver", choices=(SOLVER_MATCHING, SOLVER_TRANSFER), default=SOLVER_MATCHING)
    p_solve.add_argument("--format", choices=("text", "json"), default="text")
    p_solve.set_defaults(func=cmd_solve)

    p_sweep = sub.add_parser("sweep", help="sweep grids and write a table")
    _add_model_flags(p_sweep)
    p_sweep.add_argument("--x-range", dest="x_range", help="pt-pair coupling grid lo:hi:step")
    p_sweep.add_argument("--a-range", dest="a_range", help="ultralocal coupling grid lo:hi:step")
    p_sweep.add_argument("--phi-range", dest="phi_range", required=True, help="angle grid lo:hi:step")
    p_sweep.add_argument("--M-list", dest="M_list", help="comma-separated separations, e.g. 1,2,3")
    p_sweep.add_argument(
        "--solver", choices=(SOLVER_MATCHING, SOLVER_TRANSFER, SOLVER_CLOSED_FORM, "all"), default=SOLVER_MATCHING
    )
    p_sweep.add_argument("--out", default="-", help="output path ('-' for stdout)")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="run the verification suites")
    p_verify.add_argument("--suite", choices=("closed-forms", "unitarity", "oracles", "all"), default="all")
    p_verify.add_argument("--M-max", dest="M_max", type=int, default=8)
    p_verify.add_argument("--tol", type=float, default=1e-9)
    p_verify.set_defaults(func=cmd_verify)

    p_check = sub.add_parser("check-pt", help="check a window for PT symmetry")
    _add_model_flags(p_check)
    p_check.set_defaults(func=cmd_check_pt)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SingularSystem,) as exc:  # includes ZeroHopping
        print(f"ptscatter: singular point: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except (ValueError, OSError, NotTridiagonal) as exc:
        print(f"ptscatter: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
