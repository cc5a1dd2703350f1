"""JSON-shaped configuration parsing and serialization.

Complex numbers travel as two-element [re, im] arrays everywhere; atoms
may be given as {"angle": theta} or {"point": [re, im]} plus an optional
positive "weight" (default 1).  A function is {"polynomial": [[re, im],
...]} and/or {"geometric": {"a": [re, im], "rho": [re, im]}}; when both
are present the function is their sum.  All validation failures raise
ConfigError with the offending field path in the message.
"""

from __future__ import annotations

import cmath
import math
from typing import Any

from .dirichlet import AtomicMeasure, UnitPoint
from .errors import ConfigError
from .series import AnalyticFn, GeometricTail


def complex_to_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def pair_to_complex(obj: Any, where: str) -> complex:
    if (not isinstance(obj, (list, tuple)) or len(obj) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in obj)):
        raise ConfigError(f"{where}: expected a [re, im] pair of numbers, got {obj!r}")
    value = complex(float(obj[0]), float(obj[1]))
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ConfigError(f"{where}: values must be finite, got {obj!r}")
    return value


def _require_mapping(obj: Any, where: str) -> dict:
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: expected an object, got {type(obj).__name__}")
    return obj


def measure_from_config(obj: Any, where: str = "measure") -> AtomicMeasure:
    body = _require_mapping(obj, where)
    atoms = body.get("atoms")
    if not isinstance(atoms, list) or not atoms:
        raise ConfigError(f"{where}.atoms: expected a nonempty list")
    pairs = []
    for i, atom in enumerate(atoms):
        spot = f"{where}.atoms[{i}]"
        entry = _require_mapping(atom, spot)
        has_angle = "angle" in entry
        has_point = "point" in entry
        if has_angle == has_point:
            raise ConfigError(f"{spot}: give exactly one of 'angle' or 'point'")
        if has_angle:
            theta = entry["angle"]
            if not isinstance(theta, (int, float)) or isinstance(theta, bool) or not math.isfinite(theta):
                raise ConfigError(f"{spot}.angle: expected a finite number, got {theta!r}")
            value = cmath.exp(1j * float(theta))
        else:
            value = pair_to_complex(entry["point"], f"{spot}.point")
        weight = entry.get("weight", 1.0)
        if not isinstance(weight, (int, float)) or isinstance(weight, bool) or not (
                math.isfinite(weight) and weight > 0):
            raise ConfigError(f"{spot}.weight: expected a positive finite number, got {weight!r}")
        try:
            point = UnitPoint(value)
        except ValueError as exc:
            raise ConfigError(f"{spot}: {exc}") from exc
        pairs.append((point, float(weight)))
    try:
        return AtomicMeasure(tuple(pairs))
    except ValueError as exc:
        raise ConfigError(f"{where}.atoms: {exc}") from exc


def measure_to_config(measure: AtomicMeasure) -> dict:
    return {"atoms": [{"point": complex_to_pair(p.value), "weight": w}
                      for p, w in measure.atoms]}


def function_from_config(obj: Any, where: str = "function") -> AnalyticFn:
    body = _require_mapping(obj, where)
    if "polynomial" not in body and "geometric" not in body:
        raise ConfigError(f"{where}: expected 'polynomial' and/or 'geometric'")
    coeffs: list[complex] = []
    if "polynomial" in body:
        raw = body["polynomial"]
        if not isinstance(raw, list):
            raise ConfigError(f"{where}.polynomial: expected a list of [re, im] pairs")
        coeffs = [pair_to_complex(c, f"{where}.polynomial[{j}]") for j, c in enumerate(raw)]
    tail = None
    if "geometric" in body:
        geo = _require_mapping(body["geometric"], f"{where}.geometric")
        for key in ("a", "rho"):
            if key not in geo:
                raise ConfigError(f"{where}.geometric.{key}: missing")
        a = pair_to_complex(geo["a"], f"{where}.geometric.a")
        rho = pair_to_complex(geo["rho"], f"{where}.geometric.rho")
        if abs(rho) >= 1:
            raise ConfigError(f"{where}.geometric.rho: needs |rho| < 1, got |rho| = {abs(rho)}")
        tail = GeometricTail(a, rho)
    return AnalyticFn(poly=tuple(coeffs), tail=tail)


def function_to_config(f: AnalyticFn) -> dict:
    doc: dict = {"polynomial": [complex_to_pair(c) for c in f.poly]}
    if f.tail is not None:
        doc["geometric"] = {"a": complex_to_pair(f.tail.a),
                            "rho": complex_to_pair(f.tail.rho)}
    return doc


def int_field(body: dict, key: str, where: str, minimum: int | None = None) -> int:
    if key not in body:
        raise ConfigError(f"{where}.{key}: missing")
    value = body[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(f"{where}.{key}: expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{where}.{key}: must be >= {minimum}, got {value}")
    return value
