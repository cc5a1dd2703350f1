"""Closed-form best polynomial approximation and its distance.

The projection onto polynomials of degree <= n expands f in the
orthonormal basis and truncates: boundary values at the atoms carry the
degree < s part, and symmetric-sum-weighted Taylor tails carry the rest.
The distance to the subspace is the coefficient norm of the discarded
part, available in closed form for the polynomial-plus-geometric-tail
function model.  A second, direct route to the monomial coefficients
collects the basis expansion coefficientwise; it is always gated against
the expansion path and a disagreement raises rather than returning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .dirichlet import AtomicMeasure, basis_poly
from .errors import FormulaDiscrepancyError, UnsupportedDegreeError
from .series import (
    AnalyticFn,
    Coeffs,
    ComplexSum,
    RealSum,
    eval_boundary,
    normalize,
    tail_product_factor,
    weighted_tail_sum,
)
from .sympoly import SymTables, monic_from_roots

DIRECT_VS_EXPANSION_TOL = 1e-10


def _require_degree(n: int, s: int) -> None:
    if n < s - 1:
        raise UnsupportedDegreeError(
            f"closed form needs degree >= s-1 = {s - 1}, got n = {n}; "
            f"lower degrees are served by the Gram oracle only")


def basis_coefficients(f: AnalyticFn, measure: AtomicMeasure,
                       n: int) -> tuple[tuple[complex, ...], tuple[complex, ...]]:
    """Expansion coefficients of the degree-n projection.

    Returns (b, C): b are the boundary values of f at the atoms (the
    coefficients on the Lagrange members), C the weighted Taylor sums for
    basis indices s..n.
    """
    s = measure.s
    _require_degree(n, s)
    b = tuple(eval_boundary(f, z) for z in measure.points())
    tables = SymTables.build(measure.points(), max(f.degree - s, 0))
    C = tuple(weighted_tail_sum(f, tables, j) for j in range(s, n + 1))
    return b, C


@dataclass(frozen=True)
class ProjectionResult:
    """Projection of one function onto polynomials of degree <= n."""

    n: int
    monomial: Coeffs
    basis_b: tuple[complex, ...]
    basis_c: tuple[complex, ...]
    distance: float
    boundary_values: tuple[complex, ...]


def _expansion_monomial(b: Sequence[complex], C: Sequence[complex],
                        measure: AtomicMeasure, n: int) -> Coeffs:
    """Assemble monomial coefficients from the basis expansion.

    Each output coefficient is one compensated sum; the Lagrange members
    of clustered measures have large coefficients that cancel here.
    """
    s = measure.s
    accs = [ComplexSum() for _ in range(n + 1)]
    for k, bk in enumerate(b):
        for t, c in enumerate(basis_poly(measure, k).coeffs):
            accs[t].add_product(bk, c)
    q = monic_from_roots(measure.points())
    for j in range(s, n + 1):
        cj = C[j - s]
        for t, c in enumerate(q):
            accs[t + j - s].add_product(cj, c)
    return normalize([acc.value() for acc in accs])


def project(f: AnalyticFn, measure: AtomicMeasure, n: int) -> ProjectionResult:
    """Best approximation to f among polynomials of degree <= n."""
    b, C = basis_coefficients(f, measure, n)
    return ProjectionResult(
        n=n,
        monomial=_expansion_monomial(b, C, measure, n),
        basis_b=b,
        basis_c=C,
        distance=distance(f, measure, n),
        boundary_values=b,
    )


def distance(f: AnalyticFn, measure: AtomicMeasure, n: int) -> float:
    """Distance from f to the polynomials of degree <= n.

    Square root of the summed squared expansion coefficients beyond index
    n.  The sum terminates at the polynomial degree; past it the tail
    contributes |a|^2 * prod_t |1 - point_t*rho|^(-2) * |rho|^(2J) / (1 - |rho|^2)
    with J the first index not already counted explicitly.
    """
    s = measure.s
    _require_degree(n, s)
    deg = f.degree
    tables = SymTables.build(measure.points(), max(deg - s, 0))
    acc = RealSum()
    for j in range(n + 1, deg + 1):
        acc.add_abs2(weighted_tail_sum(f, tables, j))
    if f.tail is not None:
        amp = abs(f.tail.a * tail_product_factor(measure.points(), f.tail.rho))
        r = abs(f.tail.rho)
        J = max(n + 1, deg + 1)
        acc.add(amp ** 2 * r ** (2 * J) / (1 - r ** 2))
    return math.sqrt(max(acc.value(), 0.0))


def direct_coefficients(f: AnalyticFn, measure: AtomicMeasure, n: int) -> Coeffs:
    """Monomial coefficients of the degree-n projection, collected directly.

    Coefficient j is the Taylor coefficient of f itself for j <= n-s; the
    top s slots mix the weighted tail sums with alternating elementary
    factors: sum_{m=0}^{min(n-j, s)} (-1)^m T_m C_{j+m}.  The result must
    match the expansion path within DIRECT_VS_EXPANSION_TOL, otherwise a
    FormulaDiscrepancyError carrying both vectors is raised.
    """
    s = measure.s
    _require_degree(n, s)
    lo = max(n - s + 1, 0)
    tables = SymTables.build(measure.points(), max(f.degree - lo, 0))
    out = [0j] * (n + 1)
    for j in range(0, min(n - s, n) + 1):
        out[j] = f.coeff(j)
    for j in range(lo, n + 1):
        acc = ComplexSum()
        for m in range(0, min(n - j, s) + 1):
            sign = -1.0 if m % 2 else 1.0
            acc.add_product(sign * tables.T[m], weighted_tail_sum(f, tables, j + m))
        out[j] = acc.value()
    direct = normalize(out)

    b, C = basis_coefficients(f, measure, n)
    expansion = _expansion_monomial(b, C, measure, n)
    width = max(len(direct), len(expansion))
    mismatch = max(
        (abs((direct[t] if t < len(direct) else 0j)
             - (expansion[t] if t < len(expansion) else 0j)) for t in range(width)),
        default=0.0,
    )
    if mismatch > DIRECT_VS_EXPANSION_TOL:
        raise FormulaDiscrepancyError(
            f"direct coefficients deviate from the expansion path by {mismatch}",
            direct, expansion)
    return direct
