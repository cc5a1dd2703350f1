"""Complex coefficient sequences and the analytic function model.

A function is a finite Taylor polynomial plus an optional geometric tail
a*rho^k (|rho| < 1), so every infinite sum the projection formulas need
has an exact closed form.  Coefficient sequences are plain tuples of
complex, index j holding the coefficient of z^j; the canonical zero
sequence is empty and trailing exact zeros are stripped.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .sympoly import SymTables

Coeffs = tuple[complex, ...]

# Dekker's splitting constant for doubles: 2**27 + 1.
_SPLITTER = 134217729.0


def _product_parts(x: float, y: float, out: list[float], sign: float) -> None:
    """Append doubles summing exactly to sign*x*y (error-free transform)."""
    p = x * y
    cx = _SPLITTER * x
    hx = cx - (cx - x)
    lx = x - hx
    cy = _SPLITTER * y
    hy = cy - (cy - y)
    ly = y - hy
    err = ((hx * hy - p) + hx * ly + lx * hy) + lx * ly
    out.append(sign * p)
    out.append(sign * err)


class ComplexSum:
    """Compensated complex accumulator.

    Products are split into exact double-double parts, so the only
    rounding in the result is the final correctly-rounded fsum of each
    component.  Used wherever large symmetric sums cancel down to small
    answers (clustered measure points make the intermediate terms big).
    """

    __slots__ = ("_re", "_im")

    def __init__(self):
        self._re: list[float] = []
        self._im: list[float] = []

    def add(self, z: complex) -> None:
        self._re.append(z.real)
        self._im.append(z.imag)

    def add_product(self, x: complex, y: complex) -> None:
        _product_parts(x.real, y.real, self._re, 1.0)
        _product_parts(x.imag, y.imag, self._re, -1.0)
        _product_parts(x.real, y.imag, self._im, 1.0)
        _product_parts(x.imag, y.real, self._im, 1.0)

    def add_product_conj(self, x: complex, y: complex) -> None:
        """Accumulate x * conj(y)."""
        _product_parts(x.real, y.real, self._re, 1.0)
        _product_parts(x.imag, y.imag, self._re, 1.0)
        _product_parts(x.imag, y.real, self._im, 1.0)
        _product_parts(x.real, y.imag, self._im, -1.0)

    def value(self) -> complex:
        return complex(math.fsum(self._re), math.fsum(self._im))


class RealSum:
    """Compensated real accumulator; squared moduli enter exactly."""

    __slots__ = ("_parts",)

    def __init__(self):
        self._parts: list[float] = []

    def add(self, x: float) -> None:
        self._parts.append(x)

    def add_abs2(self, z: complex) -> None:
        _product_parts(z.real, z.real, self._parts, 1.0)
        _product_parts(z.imag, z.imag, self._parts, 1.0)

    def value(self) -> float:
        return math.fsum(self._parts)


def _require_finite(value: complex, what: str) -> complex:
    value = complex(value)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError(f"{what} must be finite, got {value!r}")
    return value


def normalize(coeffs: Sequence[complex]) -> Coeffs:
    """Strip trailing exact zeros; the zero polynomial becomes ()."""
    vals = [complex(c) for c in coeffs]
    while vals and vals[-1] == 0:
        vals.pop()
    return tuple(vals)


def poly_add(u: Sequence[complex], v: Sequence[complex]) -> Coeffs:
    out = [0j] * max(len(u), len(v))
    for i, c in enumerate(u):
        out[i] += c
    for i, c in enumerate(v):
        out[i] += c
    return normalize(out)


def poly_sub(u: Sequence[complex], v: Sequence[complex]) -> Coeffs:
    return poly_add(u, [-c for c in v])


def poly_scale(u: Sequence[complex], c: complex) -> Coeffs:
    return normalize([c * x for x in u])


def poly_mul(u: Sequence[complex], v: Sequence[complex]) -> Coeffs:
    if not u or not v:
        return ()
    out = [0j] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        for j, b in enumerate(v):
            out[i + j] += a * b
    return normalize(out)


def poly_shift(u: Sequence[complex], k: int) -> Coeffs:
    """Multiply by z^k."""
    if not u:
        return ()
    return (0j,) * k + tuple(u)


def poly_deriv(u: Sequence[complex]) -> Coeffs:
    return normalize([j * c for j, c in enumerate(u)][1:])


def horner(u: Sequence[complex], z: complex) -> complex:
    acc = 0j
    for c in reversed(u):
        acc = acc * z + c
    return acc


@dataclass(frozen=True)
class GeometricTail:
    """The added series sum_{k>=0} a * rho^k * z^k, |rho| strictly < 1."""

    a: complex
    rho: complex

    def __post_init__(self):
        object.__setattr__(self, "a", _require_finite(self.a, "tail amplitude"))
        object.__setattr__(self, "rho", _require_finite(self.rho, "tail ratio"))
        if abs(self.rho) >= 1:
            raise ValueError(f"tail ratio must satisfy |rho| < 1, got |rho| = {abs(self.rho)}")

    def coeff(self, k: int) -> complex:
        return self.a * self.rho ** k


@dataclass(frozen=True)
class AnalyticFn:
    """Polynomial part plus optional geometric tail.

    Taylor coefficient k is poly[k] (0 beyond the polynomial degree) plus
    a*rho^k when a tail is present.  Immutable; arithmetic returns new
    instances.  Adding two functions whose tails have different ratios is
    unsupported (one tail suffices everywhere in this package).
    """

    poly: Coeffs = ()
    tail: Optional[GeometricTail] = None

    def __post_init__(self):
        coeffs = normalize([_require_finite(c, "coefficient") for c in self.poly])
        object.__setattr__(self, "poly", coeffs)
        if self.tail is not None and self.tail.a == 0:
            object.__setattr__(self, "tail", None)

    @classmethod
    def zero(cls) -> "AnalyticFn":
        return cls()

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[complex]) -> "AnalyticFn":
        return cls(poly=tuple(complex(c) for c in coeffs))

    @classmethod
    def monomial(cls, k: int, c: complex = 1) -> "AnalyticFn":
        return cls(poly=(0j,) * k + (complex(c),))

    @classmethod
    def geometric(cls, a: complex, rho: complex) -> "AnalyticFn":
        return cls(tail=GeometricTail(complex(a), complex(rho)))

    @property
    def degree(self) -> int:
        """Degree of the polynomial part; -1 for an empty one."""
        return len(self.poly) - 1

    @property
    def is_polynomial(self) -> bool:
        return self.tail is None

    @property
    def is_zero(self) -> bool:
        return not self.poly and self.tail is None

    def coeff(self, k: int) -> complex:
        c = self.poly[k] if 0 <= k < len(self.poly) else 0j
        if self.tail is not None:
            c += self.tail.coeff(k)
        return c

    def coeffs_through(self, K: int) -> Coeffs:
        return tuple(self.coeff(k) for k in range(K + 1))

    def scale(self, c: complex) -> "AnalyticFn":
        tail = None
        if self.tail is not None:
            tail = GeometricTail(c * self.tail.a, self.tail.rho)
        return AnalyticFn(poly=poly_scale(self.poly, c), tail=tail)

    def __neg__(self) -> "AnalyticFn":
        return self.scale(-1)

    def __add__(self, other: "AnalyticFn") -> "AnalyticFn":
        if not isinstance(other, AnalyticFn):
            return NotImplemented
        tail = self.tail if other.tail is None else other.tail
        if self.tail is not None and other.tail is not None:
            if self.tail.rho != other.tail.rho:
                raise ValueError("cannot combine tails with different ratios")
            tail = GeometricTail(self.tail.a + other.tail.a, self.tail.rho)
        return AnalyticFn(poly=poly_add(self.poly, other.poly), tail=tail)

    def __sub__(self, other: "AnalyticFn") -> "AnalyticFn":
        if not isinstance(other, AnalyticFn):
            return NotImplemented
        return self + (-other)


def eval_boundary(f: AnalyticFn, zeta: complex) -> complex:
    """Radial-limit value at a boundary point.

    Horner for the polynomial part; the tail sums to a/(1 - rho*zeta),
    convergent because |rho| < 1.
    """
    value = horner(f.poly, zeta)
    if f.tail is not None:
        value += f.tail.a / (1 - f.tail.rho * zeta)
    return value


def h2_inner(u: Sequence[complex], v: Sequence[complex]) -> complex:
    """Coefficient pairing sum_j u[j] * conj(v[j])."""
    acc = ComplexSum()
    for a, b in zip(u, v):
        acc.add_product_conj(a, b)
    return acc.value()


def h2_inner_fn(f: AnalyticFn, g: AnalyticFn) -> complex:
    """Coefficient pairing of two model functions, tails in closed form.

    tail-vs-tail sums the geometric series a1*conj(a2)/(1 - rho1*conj(rho2));
    polynomial-vs-tail is a finite Horner sum at the conjugated ratio.
    """
    acc = ComplexSum()
    for a, b in zip(f.poly, g.poly):
        acc.add_product_conj(a, b)
    if g.tail is not None:
        acc.add(g.tail.a.conjugate() * horner(f.poly, g.tail.rho.conjugate()))
    if f.tail is not None:
        acc.add(f.tail.a * horner(g.poly, f.tail.rho.conjugate()).conjugate())
    if f.tail is not None and g.tail is not None:
        ratio = f.tail.rho * g.tail.rho.conjugate()
        acc.add(f.tail.a * g.tail.a.conjugate() / (1 - ratio))
    return acc.value()


def tail_product_factor(points: Sequence[complex], rho: complex) -> complex:
    """prod_t 1/(1 - points[t]*rho): the generating function of the
    complete homogeneous sums evaluated at rho."""
    prod = 1 + 0j
    for z in points:
        prod /= 1 - z * rho
    return prod


def weighted_tail_sum(f: AnalyticFn, tables: SymTables, j: int) -> complex:
    """sum_{k>=j} coeff_f(k) * S_{k-j} with the tables' point set.

    Polynomial part is an exact finite sum (empty when j exceeds the
    degree); the tail contributes a*rho^j*prod_t 1/(1 - points[t]*rho)
    via the generating function of the S values.
    """
    if j < 0:
        raise ValueError("index must be >= 0")
    deg = f.degree
    if deg - j > tables.K:
        raise ValueError(f"tables cover orders <= {tables.K}, need {deg - j}")
    acc = ComplexSum()
    for k in range(j, deg + 1):
        acc.add_product(f.poly[k], tables.S[k - j])
    if f.tail is not None:
        acc.add(f.tail.a * f.tail.rho ** j
                * tail_product_factor(tables.points, f.tail.rho))
    return acc.value()
