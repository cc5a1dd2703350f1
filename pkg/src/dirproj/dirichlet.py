"""The function space attached to an atomic boundary measure.

Carries the measure type (distinct unimodular atoms with positive
weights), the difference-quotient operator and its composition over all
atoms, the orthonormal polynomial basis, the norm and inner product, and
the canonical splitting of a function into a low-degree interpolating
part plus the atom polynomial times a quotient.

The norm is the weight-free one: squared boundary values summed over the
atoms plus the squared coefficient norm of the full quotient.  Weights
are stored and validated but deliberately do not enter any computation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ConsistencyError
from .series import (
    AnalyticFn,
    Coeffs,
    ComplexSum,
    GeometricTail,
    RealSum,
    eval_boundary,
    h2_inner_fn,
    horner,
    normalize,
    poly_scale,
    poly_shift,
)
from .sympoly import monic_from_roots

UNIT_MODULUS_TOL = 1e-12
ATOM_DISTINCTNESS_TOL = 1e-9

NORM_IMAG_TOL = 1e-12
DECOMPOSE_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class UnitPoint:
    """A point on the unit circle; renormalized to exact unit modulus."""

    value: complex

    def __post_init__(self):
        z = complex(self.value)
        r = abs(z)
        if not math.isfinite(r) or abs(r - 1) > UNIT_MODULUS_TOL:
            raise ValueError(f"point must lie on the unit circle within {UNIT_MODULUS_TOL}, "
                             f"got modulus {r!r}")
        object.__setattr__(self, "value", z / r)

    @classmethod
    def from_angle(cls, theta: float) -> "UnitPoint":
        return cls(cmath.exp(1j * theta))


@dataclass(frozen=True)
class AtomicMeasure:
    """Ordered distinct unimodular atoms with positive weights."""

    atoms: tuple[tuple[UnitPoint, float], ...]

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("measure needs at least one atom")
        pts = [p.value for p, _ in self.atoms]
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if abs(pts[i] - pts[j]) <= ATOM_DISTINCTNESS_TOL:
                    raise ValueError(f"atoms {i} and {j} coincide within "
                                     f"{ATOM_DISTINCTNESS_TOL}: {pts[i]} vs {pts[j]}")
        for i, (_, w) in enumerate(self.atoms):
            if not (math.isfinite(w) and w > 0):
                raise ValueError(f"atom {i} weight must be positive and finite, got {w!r}")

    @classmethod
    def from_points(cls, points: Sequence[complex],
                    weights: Optional[Sequence[float]] = None) -> "AtomicMeasure":
        if weights is None:
            weights = [1.0] * len(points)
        if len(weights) != len(points):
            raise ValueError("points and weights must have equal length")
        return cls(tuple((UnitPoint(z), float(w)) for z, w in zip(points, weights)))

    @classmethod
    def from_angles(cls, angles: Sequence[float],
                    weights: Optional[Sequence[float]] = None) -> "AtomicMeasure":
        return cls.from_points([cmath.exp(1j * t) for t in angles], weights)

    @property
    def s(self) -> int:
        return len(self.atoms)

    def points(self) -> tuple[complex, ...]:
        return tuple(p.value for p, _ in self.atoms)

    def weights(self) -> tuple[float, ...]:
        return tuple(w for _, w in self.atoms)


def _point_value(zeta) -> complex:
    return zeta.value if isinstance(zeta, UnitPoint) else complex(zeta)


def diff_quotient(f: AnalyticFn, zeta) -> AnalyticFn:
    """(f - f(zeta)) / (z - zeta).

    Polynomial part by synthetic division (degree drops by one, the
    discarded remainder is the boundary value).  A geometric tail maps to
    another tail with the same ratio: (a, rho) -> (a*rho/(1 - rho*zeta), rho).
    """
    z = _point_value(zeta)
    d = len(f.poly) - 1
    if d >= 1:
        quot = [0j] * d
        acc = f.poly[d]
        for j in range(d - 1, -1, -1):
            quot[j] = acc
            acc = acc * z + f.poly[j]
        poly = normalize(quot)
    else:
        poly = ()
    tail = None
    if f.tail is not None:
        tail = GeometricTail(f.tail.a * f.tail.rho / (1 - f.tail.rho * z), f.tail.rho)
    return AnalyticFn(poly=poly, tail=tail)


def measure_quotient(f: AnalyticFn, measure: AtomicMeasure) -> AnalyticFn:
    """Difference quotient composed over every atom, in stored order.

    The factors commute, so the order does not affect the result; this
    extracts the quotient g in f = (degree < s part) + monic(atoms) * g.
    """
    g = f
    for point, _ in measure.atoms:
        g = diff_quotient(g, point)
    return g


@dataclass(frozen=True)
class BasisPoly:
    """One member of the orthonormal polynomial basis."""

    index: int
    coeffs: Coeffs


def basis_poly(measure: AtomicMeasure, j: int) -> BasisPoly:
    """Orthonormal basis member of index j.

    For j < s these are the Lagrange polynomials of the atoms (value 1 at
    one atom, 0 at the rest, degree s-1); for j >= s the atom polynomial
    shifted by z^(j-s), which the full quotient maps to the monomial
    z^(j-s).
    """
    if j < 0:
        raise ValueError("basis index must be >= 0")
    points = measure.points()
    s = measure.s
    q = monic_from_roots(points)
    if j >= s:
        return BasisPoly(index=j, coeffs=poly_shift(q, j - s))
    # synthetic division of q by (z - atom j) is exact: the atom is a root
    zj = points[j]
    quot = [0j] * s
    acc = q[s]
    for t in range(s - 1, -1, -1):
        quot[t] = acc
        acc = acc * zj + q[t]
    # derivative at a root as the product over the other atoms: small
    # relative error even when atoms cluster and the value is tiny,
    # unlike evaluating the expanded derivative
    deriv_at_root = 1 + 0j
    for t, z in enumerate(points):
        if t != j:
            deriv_at_root *= zj - z
    return BasisPoly(index=j, coeffs=poly_scale(quot, 1 / deriv_at_root))


def inner(f: AnalyticFn, g: AnalyticFn, measure: AtomicMeasure) -> complex:
    """Boundary values paired over the atoms plus the quotient pairing."""
    acc = ComplexSum()
    for point, _ in measure.atoms:
        acc.add_product_conj(eval_boundary(f, point.value),
                             eval_boundary(g, point.value))
    acc.add(h2_inner_fn(measure_quotient(f, measure), measure_quotient(g, measure)))
    return acc.value()


def norm(f: AnalyticFn, measure: AtomicMeasure) -> float:
    """Square root of the self inner product.

    Accumulated as a real sum of squared moduli plus the tail's closed
    forms, so no imaginary residue can arise; a materially negative
    total still raises ConsistencyError.
    """
    acc = RealSum()
    for point, _ in measure.atoms:
        acc.add_abs2(eval_boundary(f, point.value))
    qf = measure_quotient(f, measure)
    for c in qf.poly:
        acc.add_abs2(c)
    if qf.tail is not None:
        cross = qf.tail.a * horner(qf.poly, qf.tail.rho.conjugate()).conjugate()
        acc.add(2.0 * cross.real)
        amp2 = qf.tail.a.real ** 2 + qf.tail.a.imag ** 2
        ratio2 = qf.tail.rho.real ** 2 + qf.tail.rho.imag ** 2
        acc.add(amp2 / (1.0 - ratio2))
    v = acc.value()
    if v < -NORM_IMAG_TOL:
        raise ConsistencyError(f"self inner product is negative: {v!r}")
    return math.sqrt(max(v, 0.0))


def decompose(f: AnalyticFn, measure: AtomicMeasure) -> tuple[tuple[complex, ...], AnalyticFn]:
    """Split f into (coefficients of the degree < s part, quotient g).

    The low part is f minus the atom polynomial times g; coefficients at
    and above z^s must cancel, which is verified index by index (tails
    included) and failure raises ConsistencyError.
    """
    s = measure.s
    g = measure_quotient(f, measure)
    q = monic_from_roots(measure.points())

    def qg_coeff(k: int) -> complex:
        return sum((q[i] * g.coeff(k - i) for i in range(min(k, s) + 1)), 0j)

    low = tuple(f.coeff(k) - qg_coeff(k) for k in range(s))
    top = max(f.degree, g.degree + s, s)
    if f.tail is not None or g.tail is not None:
        top += 5
    for k in range(s, top + 1):
        resid = abs(f.coeff(k) - qg_coeff(k))
        if resid > DECOMPOSE_RESIDUAL_TOL:
            raise ConsistencyError(f"splitting residual {resid} at index {k} exceeds "
                                   f"{DECOMPOSE_RESIDUAL_TOL}")
    return low, g


def vandermonde_values(coeffs: Sequence[complex], measure: AtomicMeasure) -> tuple[complex, ...]:
    """Evaluate a degree < s coefficient vector at every atom.

    This is the Vandermonde matrix of the atoms applied directly; no
    system is solved.
    """
    if len(coeffs) != measure.s:
        raise ValueError(f"expected {measure.s} coefficients, got {len(coeffs)}")
    return tuple(horner(coeffs, z) for z in measure.points())
