"""Command-line front end.

Every command prints (or writes with ``--output``) one JSON document with
sorted keys, the tool version and a digest of its inputs. Exit status is 0
on success, 2 for invalid input and 3 when a numerical self-check fails.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import __version__
from .errors import NumericalDiagnosticError, ValidationError
from .exactset import (
    admissible_region,
    as_rational,
    congruence_decompose,
    format_rational,
    index_formula,
    transversal_from_json,
)

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 2, 3


class InputError(ValidationError):
    pass


def _read_input(path: Optional[str]) -> tuple[dict, str]:
    if not path:
        raise InputError("--input is required for this command")
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        obj = json.loads(raw.decode("utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not UTF-8 ({exc.reason})") from exc
    return obj, hashlib.sha256(raw).hexdigest()


def _param_digest(args: argparse.Namespace, names: Sequence[str]) -> str:
    payload = json.dumps({n: getattr(args, n) for n in names}, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()


def _sections(text: str) -> list[int]:
    try:
        out = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad section list {text!r}") from exc
    if not out:
        raise argparse.ArgumentTypeError("section list is empty")
    return out


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise InputError(f"{args.command} needs {', '.join(missing)}")


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _fan_out(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# commands


def cmd_transversal_analyze(args) -> tuple[dict, str]:
    obj, digest = _read_input(args.input)
    ts = transversal_from_json(obj)
    cd = congruence_decompose(ts)
    region = admissible_region(cd)
    out = region.to_json()
    out.update(
        L=cd.L,
        rho=cd.rho,
        lambdas=[list(lam) for lam in cd.lambdas],
        lambda01=cd.lambda01,
        split_points=[format_rational(s) for s in cd.s],
        G_denominators=[2 * d for d in cd.g_denominators()],
    )
    return out, digest


def cmd_winding(args) -> tuple[dict, str]:
    from .symbolcurve import build_symbol_curve, curve_index, curve_min_modulus, numeric_winding

    _need(args, "alpha")
    obj, digest = _read_input(args.input)
    cd = congruence_decompose(transversal_from_json(obj))
    curve = build_symbol_curve(cd, args.alpha)
    out = {
        "alpha": format_rational(args.alpha),
        "min_modulus": curve_min_modulus(curve),
        "closure_defect": curve.closure_defect(),
        "pieces": len(curve.pieces),
    }
    out["index"] = curve_index(curve)
    out["numeric_index"] = numeric_winding(curve)
    out["formula_index"] = index_formula(cd, args.alpha)
    if out["index"] != out["numeric_index"] or out["index"] != out["formula_index"]:
        raise NumericalDiagnosticError(
            f"index routes disagree: {out['index']}, {out['numeric_index']}, {out['formula_index']}"
        )
    if args.csv:
        _write_text(args.csv, curve.to_csv())
    return out, digest


def cmd_spline_cis(args) -> tuple[dict, str]:
    from .operatorlab import SplineConfig, cis_classify_spline

    _need(args, "m", "alpha")
    verdict = cis_classify_spline(SplineConfig(args.m, float(args.alpha)))
    out = verdict.to_json()
    out.update(m=args.m, alpha=float(args.alpha))
    return out, _param_digest(args, ["m", "alpha_text"])


def _beta(args) -> Fraction:
    if args.beta is None:
        raise InputError(f"{args.command} needs --beta")
    return args.beta


def cmd_gm(args) -> tuple[dict, str]:
    from .splinekernel import gm_poly

    _need(args, "m")
    beta = _beta(args)
    out = gm_poly(args.m, beta).to_json()
    out.update(m=args.m, beta=format_rational(beta))
    return out, _param_digest(args, ["m", "beta_text"])


def cmd_zeros(args) -> tuple[dict, str]:
    from .splinekernel import gm_poly, zero_split

    _need(args, "m")
    beta = _beta(args)
    out = zero_split(gm_poly(args.m, beta)).to_json()
    out.update(m=args.m, beta=format_rational(beta))
    return out, _param_digest(args, ["m", "beta_text"])


def cmd_lerch_scan(args) -> tuple[dict, str]:
    from .lerch import heatmap_csv, zero_free_scan

    _need(args, "m")
    grid = args.grid if args.grid is not None else 64
    out = zero_free_scan(args.m, grid, grid).to_json()
    if args.csv:
        _write_text(args.csv, heatmap_csv(args.m, grid, grid))
    return out, _param_digest(args, ["m", "grid"])


def _section_task(job):
    from .operatorlab import SplineConfig, spline_section

    m, alpha, N = job
    return spline_section(SplineConfig(m, alpha), N)


def _recon_task(job):
    from .operatorlab import reconstruct_experiment

    generator, alpha, N, seed = job
    return reconstruct_experiment(generator, alpha, N, seed)


def cmd_toeplitz_sweep(args) -> tuple[dict, str]:
    from .operatorlab import SplineConfig, SweepReport, cis_classify_spline

    _need(args, "m", "alpha")
    alpha = float(args.alpha)
    sections = args.sections or [16, 32, 64]
    report = SweepReport(args.m, alpha)
    report.sections = _fan_out(_section_task, [(args.m, alpha, N) for N in sections], args.jobs)
    report.verdict = cis_classify_spline(SplineConfig(args.m, alpha))
    if args.csv:
        _write_text(args.csv, report.to_csv())
    out = report.to_json()
    out["sections"] = [s.to_json() for s in report.sections]
    return out, _param_digest(args, ["m", "alpha_text", "sections"])


def cmd_reconstruct(args) -> tuple[dict, str]:
    _need(args, "alpha")
    alpha = float(args.alpha)
    sections = args.sections or [32, 64, 128]
    if args.input:
        obj, digest = _read_input(args.input)
        generator = transversal_from_json(obj)
        m = None
    else:
        _need(args, "m")
        generator, m = args.m, args.m
        digest = _param_digest(args, ["m", "alpha_text", "sections", "seed"])
    reports = _fan_out(_recon_task, [(generator, alpha, N, args.seed) for N in sections], args.jobs)
    out = {
        "alpha": alpha,
        "m": m,
        "seed": args.seed,
        "N": sections,
        "cond": [r.to_json()["cond"] for r in reports],
        "recon_error": [r.rms_error for r in reports],
        "runs": [r.to_json() for r in reports],
    }
    if m is not None:
        from .operatorlab import SplineConfig, cis_classify_spline

        out["verdict"] = cis_classify_spline(SplineConfig(m, alpha)).to_json()["verdict"]
    else:
        from .exactset import riesz_basis

        cd = congruence_decompose(generator)
        out["verdict"] = "CIS" if riesz_basis(cd, args.alpha) else "NotCIS"
    return out, digest


COMMANDS = {
    "transversal-analyze": cmd_transversal_analyze,
    "winding": cmd_winding,
    "spline-cis": cmd_spline_cis,
    "gm": cmd_gm,
    "zeros": cmd_zeros,
    "lerch-scan": cmd_lerch_scan,
    "toeplitz-sweep": cmd_toeplitz_sweep,
    "reconstruct": cmd_reconstruct,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shiftcis", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"shiftcis {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", help="JSON file with an 'intervals' list")
        p.add_argument("--output", help="write the JSON result here instead of stdout")
        p.add_argument("--csv", help="also write plot data as CSV")
        p.add_argument("--alpha", type=str, dest="alpha_text", help="shift, decimal or p/q")
        p.add_argument("--beta", type=str, dest="beta_text", help="rational parameter in [0, 1)")
        p.add_argument("--m", type=int)
        p.add_argument("--sections", type=_sections, help="comma-separated section sizes")
        p.add_argument("--grid", type=int)
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--jobs", type=int, default=1)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        args.alpha = None if args.alpha_text is None else _rational(args.alpha_text)
        args.beta = None if args.beta_text is None else _rational(args.beta_text)
        out, digest = COMMANDS[args.command](args)
    except argparse.ArgumentTypeError as exc:
        print(f"shiftcis: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValidationError as exc:
        print(f"shiftcis: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalDiagnosticError as exc:
        print(f"shiftcis: numerical check failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    out.update(command=args.command, version=__version__, input_digest=digest)
    text = json.dumps(out, sort_keys=True, indent=2) + "\n"
    if args.output:
        _write_text(args.output, text)
    else:
        stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
