"""Command-line front end.

Subcommands:
    project   best polynomial approximation at one degree
    distance  approximation distance only
    basis     orthonormal basis polynomials and their residual
    converge  distance table over a degree range (CSV by default)
    verify    randomized cross-check against the brute-force solver

All commands read a JSON config (--config) except verify, where flags
alone suffice.  Output goes to stdout unless --output is given and is
byte-deterministic for a fixed config and seed.

Exit codes: 0 success, 2 bad config or usage, 3 unsupported degree,
4 internal consistency failure, 5 verification found failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Optional

from .configio import (
    complex_to_pair,
    function_from_config,
    int_field,
    measure_from_config,
)
from .dirichlet import AtomicMeasure, basis_poly, inner
from .errors import (
    ConfigError,
    ConsistencyError,
    IllConditionedError,
    UnsupportedDegreeError,
)
from .oracle import cross_validate
from .projection import distance, project
from .series import AnalyticFn

VERIFY_DEFAULTS = {"trials": 100, "seed": 0, "tol": 1e-8, "s_max": 4, "n_max": 15}


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            body = json.load(handle)
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON in {path}: {exc}") from exc
    if not isinstance(body, dict):
        raise ConfigError("config: top level must be an object")
    return body


def _measure_and_function(body: dict) -> tuple[AtomicMeasure, AnalyticFn]:
    if "measure" not in body:
        raise ConfigError("config.measure: missing")
    if "function" not in body:
        raise ConfigError("config.function: missing")
    measure = measure_from_config(body["measure"], where="config.measure")
    f = function_from_config(body["function"], where="config.function")
    return measure, f


def _pairs(coeffs, width: Optional[int] = None) -> list[list[float]]:
    out = [complex_to_pair(c) for c in coeffs]
    if width is not None:
        out.extend([0.0, 0.0] for _ in range(width - len(out)))
    return out


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _cmd_project(body: dict) -> tuple[str, int]:
    measure, f = _measure_and_function(body)
    n = int_field(body, "degree", "config", minimum=0)
    result = project(f, measure, n)
    doc = {
        "degree": result.n,
        "monomial_coefficients": _pairs(result.monomial, width=n + 1),
        "basis_b": _pairs(result.basis_b),
        "basis_c": _pairs(result.basis_c),
        "distance": result.distance,
        "boundary_values": _pairs(result.boundary_values),
    }
    return json.dumps(doc, indent=2) + "\n", 0


def _cmd_distance(body: dict) -> tuple[str, int]:
    measure, f = _measure_and_function(body)
    n = int_field(body, "degree", "config", minimum=0)
    doc = {"degree": n, "distance": distance(f, measure, n)}
    return json.dumps(doc, indent=2) + "\n", 0


def _cmd_basis(body: dict) -> tuple[str, int]:
    if "measure" not in body:
        raise ConfigError("config.measure: missing")
    measure = measure_from_config(body["measure"], where="config.measure")
    count = int_field(body, "count", "config", minimum=1)
    polys = [basis_poly(measure, j) for j in range(count)]
    fns = [AnalyticFn.from_coeffs(p.coeffs) for p in polys]
    residual = 0.0
    for i in range(count):
        for j in range(i, count):
            delta = 1.0 if i == j else 0.0
            residual = max(residual, abs(inner(fns[i], fns[j], measure) - delta))
    doc = {
        "count": count,
        "polynomials": [
            {"index": p.index, "coefficients": _pairs(p.coeffs)} for p in polys
        ],
        "orthonormality_residual": residual,
    }
    return json.dumps(doc, indent=2) + "\n", 0


def _converge_rows(body: dict) -> tuple[int, int, list[tuple[int, float, Optional[float]]]]:
    measure, f = _measure_and_function(body)
    degrees = body.get("degrees")
    if (not isinstance(degrees, (list, tuple)) or len(degrees) != 2
            or any(isinstance(d, bool) or not isinstance(d, int) for d in degrees)):
        raise ConfigError(
            f"config.degrees: expected [first, last] integers, got {degrees!r}")
    n0, n1 = degrees
    if n0 > n1:
        raise ConfigError(f"config.degrees: first {n0} exceeds last {n1}")
    rows: list[tuple[int, float, Optional[float]]] = []
    previous: Optional[float] = None
    for n in range(n0, n1 + 1):
        dist = distance(f, measure, n)
        ratio = dist / previous if previous else None
        rows.append((n, dist, ratio))
        previous = dist
    return n0, n1, rows


def _cmd_converge(body: dict, fmt: str) -> tuple[str, int]:
    n0, n1, rows = _converge_rows(body)
    if fmt == "json":
        doc = {
            "degrees": [n0, n1],
            "rows": [{"n": n, "distance": dist, "distance_ratio": ratio}
                     for n, dist, ratio in rows],
        }
        return json.dumps(doc, indent=2) + "\n", 0
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["n", "distance", "distance_ratio"])
    for n, dist, ratio in rows:
        writer.writerow([n, _fmt(dist), "" if ratio is None else _fmt(ratio)])
    return buffer.getvalue(), 0


def _verify_params(args: argparse.Namespace, body: dict) -> dict:
    params = dict(VERIFY_DEFAULTS)
    if "trials" in body:
        params["trials"] = int_field(body, "trials", "config", minimum=1)
    if "seed" in body:
        params["seed"] = int_field(body, "seed", "config")
    if "s_max" in body:
        params["s_max"] = int_field(body, "s_max", "config", minimum=1)
    if "n_max" in body:
        params["n_max"] = int_field(body, "n_max", "config", minimum=0)
    if "tol" in body:
        tol = body["tol"]
        if isinstance(tol, bool) or not isinstance(tol, (int, float)) or tol < 0:
            raise ConfigError(f"config.tol: expected a number >= 0, got {tol!r}")
        params["tol"] = float(tol)
    for key in ("trials", "seed", "s_max", "n_max", "tol"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    if params["trials"] < 1:
        raise ConfigError(f"trials: must be >= 1, got {params['trials']}")
    if params["tol"] < 0:
        raise ConfigError(f"tol: must be >= 0, got {params['tol']}")
    if params["s_max"] < 1:
        raise ConfigError(f"s_max: must be >= 1, got {params['s_max']}")
    if params["n_max"] < params["s_max"] - 1:
        raise ConfigError(
            f"n_max: must be >= s_max - 1, got {params['n_max']} < {params['s_max'] - 1}")
    return params


def _cmd_verify(args: argparse.Namespace, body: dict) -> tuple[str, int]:
    params = _verify_params(args, body)
    report = cross_validate(seed=params["seed"], trials=params["trials"],
                            s_max=params["s_max"], n_max=params["n_max"],
                            tol=params["tol"])
    doc = {"seed": params["seed"], "s_max": params["s_max"],
           "n_max": params["n_max"], **report.to_dict()}
    return json.dumps(doc, indent=2) + "\n", 0 if report.ok else 5


def _write_output(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        # newline="" so CSV rows keep their LF endings on every platform
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirproj",
        description="Polynomial projection in local Dirichlet spaces.")
    subs = parser.add_subparsers(dest="command", required=True)

    def add_common(sub: argparse.ArgumentParser, formats: list[str],
                   config_required: bool) -> None:
        sub.add_argument("--config", required=config_required,
                         help="path to a JSON config file")
        sub.add_argument("--output", default=None,
                         help="output path (default stdout)")
        sub.add_argument("--format", choices=formats, default=formats[0],
                         help=f"output format (default {formats[0]})")

    add_common(subs.add_parser("project", help="project onto degree <= n"),
               ["json"], True)
    add_common(subs.add_parser("distance", help="distance to degree <= n"),
               ["json"], True)
    add_common(subs.add_parser("basis", help="emit orthonormal basis polynomials"),
               ["json"], True)
    add_common(subs.add_parser("converge", help="distance table over a degree range"),
               ["csv", "json"], True)
    verify = subs.add_parser("verify", help="cross-check against the brute-force solver")
    add_common(verify, ["json"], False)
    verify.add_argument("--trials", type=int, default=None)
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--tol", type=float, default=None)
    verify.add_argument("--s-max", dest="s_max", type=int, default=None)
    verify.add_argument("--n-max", dest="n_max", type=int, default=None)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        body: dict[str, Any] = _load_config(args.config) if args.config else {}
        if args.command == "project":
            text, code = _cmd_project(body)
        elif args.command == "distance":
            text, code = _cmd_distance(body)
        elif args.command == "basis":
            text, code = _cmd_basis(body)
        elif args.command == "converge":
            text, code = _cmd_converge(body, args.format)
        else:
            text, code = _cmd_verify(args, body)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnsupportedDegreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ConsistencyError, IllConditionedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    _write_output(text, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
