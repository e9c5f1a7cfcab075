"""Command-line front end.

Subcommands: `spectrum` (single model), `scan` (vary k or lambda), `figure`
(preset scans used throughout the write-up), `potential` (sample W on a
grid), and `validate` (oracle comparison report).  Data goes to stdout or
--output as CSV or JSON; diagnostics go to stderr.  Exit codes: 0 success,
2 usage error, 1 computational failure.

Output is byte-deterministic for a given argument list: floats are printed
with a fixed number of significant digits (--precision flag, PGBAG_PRECISION
environment variable, default 15), and JSON numbers are rounded to that
precision before serialization so that re-parsing reproduces the emitted
values exactly.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .model import ModelParams, eval_w, make_params
from .oracle import ValidationReport, default_box_size, validate
from .spectrum import ScanPoint, SpectrumResult, scan, solve

__all__ = ["main", "run", "emit", "PotentialSamples", "FIGURE_PRESETS"]

_FIG_K = {"vary": "k", "values": (11.0, 21.0, 41.0, 61.0), "lam": -1.0, "r": 3, "N": 50}
_FIG_LAM = {"vary": "lambda", "values": (-7.0, -10.0), "k": 10.0, "r": 3, "N": 70}
FIGURE_PRESETS = {1: _FIG_K, 2: _FIG_K, 3: _FIG_K, 4: _FIG_LAM, 5: _FIG_LAM}


@dataclass(frozen=True)
class PotentialSamples:
    """Uniform sampling of the scaled potential on [-L, L]."""

    params: ModelParams
    L: float
    xi: np.ndarray
    w: np.ndarray


def _fmt(x, precision: int) -> str:
    return format(float(x), f".{precision}g")


def _jnum(x, precision: int) -> float:
    # Round to the requested significant digits; json then prints the
    # shortest representation that parses back to exactly this value.
    return float(_fmt(x, precision))


def _bool(x) -> str:
    return "true" if x else "false"


def _params_json(params: ModelParams, precision: int) -> dict:
    return {
        "M": _jnum(params.M, precision),
        "omega": _jnum(params.omega, precision),
        "k": _jnum(params.k, precision),
        "lambda": _jnum(params.lam, precision),
        "r": params.r,
        "N": params.N,
        "flags": list(params.flags),
    }


def _meta_json(params: ModelParams) -> dict:
    return {
        "tool": "pgbag",
        "version": __version__,
        "N": params.N,
        "padding": 2 * params.r,
    }


def _level_row(level, precision: int, prefix: tuple[str, ...] = ()) -> str:
    return ",".join(
        prefix
        + (
            str(level.n),
            _fmt(level.eps, precision),
            _fmt(level.nu, precision),
            _bool(level.is_discrete),
            "" if level.E is None else _fmt(level.E, precision),
            _bool(level.supercritical),
        )
    )


def _level_json(level, precision: int) -> dict:
    return {
        "n": level.n,
        "epsilon": _jnum(level.eps, precision),
        "nu": _jnum(level.nu, precision),
        "is_discrete": level.is_discrete,
        "E": None if level.E is None else _jnum(level.E, precision),
        "supercritical": level.supercritical,
    }


def _render_spectrum(result: SpectrumResult, fmt: str, precision: int) -> str:
    if fmt == "csv":
        lines = ["n,epsilon,nu,is_discrete,E,supercritical"]
        lines += [_level_row(lev, precision) for lev in result.levels]
        return "\n".join(lines) + "\n"
    obj = {
        "params": _params_json(result.params, precision),
        "threshold": _jnum(result.threshold, precision),
        "levels": [_level_json(lev, precision) for lev in result.levels],
        "meta": _meta_json(result.params),
    }
    return json.dumps(obj, indent=2) + "\n"


def _render_scan(points: list[ScanPoint], fmt: str, precision: int) -> str:
    if fmt == "csv":
        lines = ["vary_value,n,epsilon,nu,is_discrete,E,supercritical"]
        for point in points:
            if point.result is None:
                continue
            value = _fmt(point.value, precision)
            lines += [_level_row(lev, precision, (value,)) for lev in point.result.levels]
        return "\n".join(lines) + "\n"
    results = []
    meta = None
    for point in points:
        if point.result is None:
            results.append({"vary_value": _jnum(point.value, precision), "error": point.error})
            continue
        results.append(
            {
                "vary_value": _jnum(point.value, precision),
                "params": _params_json(point.result.params, precision),
                "threshold": _jnum(point.result.threshold, precision),
                "levels": [_level_json(lev, precision) for lev in point.result.levels],
            }
        )
        meta = meta or _meta_json(point.result.params)
    obj = {
        "scan": {
            "vary": points[0].vary if points else None,
            "values": [_jnum(p.value, precision) for p in points],
        },
        "results": results,
        "meta": meta or {"tool": "pgbag", "version": __version__},
    }
    return json.dumps(obj, indent=2) + "\n"


def _render_potential(samples: PotentialSamples, fmt: str, precision: int) -> str:
    if fmt == "csv":
        lines = ["xi,W"]
        lines += [
            f"{_fmt(x, precision)},{_fmt(w, precision)}"
            for x, w in zip(samples.xi, samples.w)
        ]
        return "\n".join(lines) + "\n"
    obj = {
        "params": _params_json(samples.params, precision),
        "L": _jnum(samples.L, precision),
        "points": int(samples.xi.size),
        "samples": [
            {"xi": _jnum(x, precision), "W": _jnum(w, precision)}
            for x, w in zip(samples.xi, samples.w)
        ],
        "meta": _meta_json(samples.params),
    }
    return json.dumps(obj, indent=2) + "\n"


def _render_validation(
    report: ValidationReport, params: ModelParams, fmt: str, precision: int
) -> str:
    if fmt == "csv":
        lines = ["section,key,value"]
        for i, v in sorted(report.element_max_abs_diff.items()):
            lines.append(f"element_max_abs_diff,{i},{_fmt(v, precision)}")
        for j, v in enumerate(report.spectral_diffs):
            lines.append(f"spectral_diffs,{j},{_fmt(v, precision)}")
        for key, v in report.grid_meta.items():
            if v is None:
                text = ""
            elif isinstance(v, bool):
                text = _bool(v)
            elif isinstance(v, (int, np.integer)):
                text = str(int(v))
            else:
                text = _fmt(v, precision)
            lines.append(f"grid_meta,{key},{text}")
        for entry in report.nu_integer_distances:
            n = entry["n"]
            for key in ("nu", "dist_integer", "dist_half_integer"):
                lines.append(f"nu_integer_distances,{n}.{key},{_fmt(entry[key], precision)}")
        return "\n".join(lines) + "\n"
    raw = report.to_dict()
    obj = {
        "params": _params_json(params, precision),
        "element_max_abs_diff": {
            key: _jnum(v, precision) for key, v in raw["element_max_abs_diff"].items()
        },
        "spectral_diffs": [_jnum(v, precision) for v in raw["spectral_diffs"]],
        "grid_meta": {
            key: (_jnum(v, precision) if isinstance(v, float) else v)
            for key, v in raw["grid_meta"].items()
        },
        "nu_integer_distances": [
            {
                "n": entry["n"],
                "nu": _jnum(entry["nu"], precision),
                "dist_integer": _jnum(entry["dist_integer"], precision),
                "dist_half_integer": _jnum(entry["dist_half_integer"], precision),
            }
            for entry in raw["nu_integer_distances"]
        ],
        "meta": _meta_json(params),
    }
    return json.dumps(obj, indent=2) + "\n"


def emit(result, fmt: str, sink, precision: int = 15, params: ModelParams | None = None):
    """Write a result object to `sink` as CSV or JSON (byte-deterministic)."""
    if isinstance(result, SpectrumResult):
        text = _render_spectrum(result, fmt, precision)
    elif isinstance(result, PotentialSamples):
        text = _render_potential(result, fmt, precision)
    elif isinstance(result, ValidationReport):
        if params is None:
            raise ValueError("validation output needs the model parameters")
        text = _render_validation(result, params, fmt, precision)
    elif isinstance(result, list):
        text = _render_scan(result, fmt, precision)
    else:
        raise TypeError(f"cannot emit {type(result).__name__}")
    sink.write(text)


def _add_model_args(sp: argparse.ArgumentParser, require_lambda: bool = True):
    sp.add_argument("--M", type=float, help="particle mass (needs --omega)")
    sp.add_argument("--omega", type=float, help="oscillator frequency (needs --M)")
    sp.add_argument("--k", type=float, help="ratio M/omega (alternative to --M/--omega)")
    sp.add_argument("--lambda", dest="lam", type=float, required=require_lambda,
                    help="well depth parameter")
    sp.add_argument("--r", type=int, default=3, help="polynomial order (default 3)")
    sp.add_argument("--N", type=int, default=50, help="basis truncation size (default 50)")


def _add_output_args(sp: argparse.ArgumentParser):
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--output", metavar="PATH", help="write to a file instead of stdout")
    sp.add_argument("--precision", type=int, default=None,
                    help="significant digits (default 15; PGBAG_PRECISION overrides)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pgbag",
        description="Bound-state spectra of relativistic pseudo-Gaussian oscillators.",
    )
    parser.add_argument("--version", action="version", version=f"pgbag {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="solve one model and list all levels")
    _add_model_args(sp)
    _add_output_args(sp)

    sp = sub.add_parser("scan", help="solve a family of models along k or lambda")
    _add_model_args(sp)
    sp.add_argument("--vary", choices=("k", "lambda"), required=True)
    sp.add_argument("--values", required=True, help="comma-separated list of values")
    _add_output_args(sp)

    sp = sub.add_parser("figure", help="run a preset parameter scan (1-5)")
    sp.add_argument("id", type=int, choices=(1, 2, 3, 4, 5))
    _add_model_args(sp, require_lambda=False)
    _add_output_args(sp)

    sp = sub.add_parser("potential", help="sample the scaled potential W(xi)")
    _add_model_args(sp)
    sp.add_argument("--L", type=float, default=None,
                    help="half-domain (default: asymptote rule)")
    sp.add_argument("--points", type=int, default=801)
    _add_output_args(sp)

    sp = sub.add_parser("validate", help="compare against quadrature and grid oracles")
    _add_model_args(sp)
    sp.add_argument("--n-max", type=int, default=30, dest="n_max",
                    help="largest basis index for element checks (default 30)")
    _add_output_args(sp)

    return parser


def _resolve_precision(args) -> int:
    if args.precision is not None:
        precision = args.precision
    elif "PGBAG_PRECISION" in os.environ:
        raw = os.environ["PGBAG_PRECISION"]
        try:
            precision = int(raw)
        except ValueError:
            raise ValueError(f"PGBAG_PRECISION must be an integer, got {raw!r}") from None
    else:
        precision = 15
    if not 1 <= precision <= 17:
        raise ValueError("precision must be between 1 and 17")
    return precision


def _params_from_args(args) -> ModelParams:
    if args.lam is None:
        raise ValueError("--lambda is required")
    return make_params(M=args.M, omega=args.omega, k=args.k, lam=args.lam,
                       r=args.r, N=args.N)


def _scan_base(args, lam, r, N) -> ModelParams:
    # base only carries lambda/r/N for a k-scan; k is a placeholder
    return make_params(k=1, lam=lam, r=r, N=N)


def _report_flags(params: ModelParams):
    for flag in params.flags:
        print(f"pgbag: note: {flag}", file=sys.stderr)


def _report_scan_errors(points: list[ScanPoint]):
    for point in points:
        if point.error is not None:
            print(f"pgbag: {point.vary} = {point.value:g} failed: {point.error}",
                  file=sys.stderr)


def _dispatch(args, precision: int) -> str:
    if args.command == "spectrum":
        params = _params_from_args(args)
        _report_flags(params)
        result = solve(params)
        return _render_spectrum(result, args.format, precision)

    if args.command == "scan":
        if args.lam is None:
            raise ValueError("--lambda is required")
        try:
            values = [float(v) for v in args.values.split(",") if v.strip()]
        except ValueError:
            raise ValueError(f"--values must be comma-separated numbers, got {args.values!r}"
                             ) from None
        if not values:
            raise ValueError("--values must be nonempty")
        if args.vary == "k":
            base = _scan_base(args, args.lam, args.r, args.N)
        else:
            base = _params_from_args(args)
        points = scan(base, args.vary, values)
        _report_scan_errors(points)
        return _render_scan(points, args.format, precision)

    if args.command == "figure":
        preset = FIGURE_PRESETS[args.id]
        overridden = [name for name, value in
                      (("--M", args.M), ("--omega", args.omega), ("--k", args.k),
                       ("--lambda", args.lam)) if value is not None]
        if args.r != 3:
            overridden.append("--r")
        if args.N != 50:
            overridden.append("--N")
        if overridden:
            print(f"pgbag: warning: figure {args.id} preset overrides "
                  f"{', '.join(overridden)}", file=sys.stderr)
        if preset["vary"] == "k":
            base = _scan_base(args, preset["lam"], preset["r"], preset["N"])
        else:
            base = make_params(k=preset["k"], lam=preset["values"][0],
                               r=preset["r"], N=preset["N"])
        points = scan(base, preset["vary"], list(preset["values"]))
        _report_scan_errors(points)
        return _render_scan(points, args.format, precision)

    if args.command == "potential":
        params = _params_from_args(args)
        _report_flags(params)
        if args.points < 2:
            raise ValueError("--points must be at least 2")
        L = default_box_size(params) if args.L is None else float(args.L)
        if L <= 0:
            raise ValueError("--L must be positive")
        xi = np.linspace(-L, L, args.points)
        samples = PotentialSamples(params=params, L=L, xi=xi, w=eval_w(params, xi))
        return _render_potential(samples, args.format, precision)

    if args.command == "validate":
        params = _params_from_args(args)
        _report_flags(params)
        if args.n_max < 0:
            raise ValueError("--n-max must be nonnegative")
        report = validate(params, n_max=args.n_max)
        return _render_validation(report, params, args.format, precision)

    raise ValueError(f"unknown command {args.command!r}")


def run(argv=None) -> int:
    """Parse arguments and execute; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        precision = _resolve_precision(args)
        text = _dispatch(args, precision)
    except ValueError as exc:
        print(f"pgbag: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"pgbag: error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="") as sink:
                sink.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"pgbag: error: cannot write output: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
