"""Exact rational evaluation of the norm and residual formulas.

Every double is an exact rational, so evaluating the inner-product
formulas over Fraction pairs (re, im) has no rounding at all.  The
verifier uses this where plain double evaluation has an intrinsic
cancellation floor: the norm of a near-zero residual function loses
half the working precision under the square root, and linear-solve
residuals cancel to far below one ulp of their terms.  Only the final
conversion back to float rounds.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .dirichlet import AtomicMeasure
from .series import AnalyticFn

CF = tuple[Fraction, Fraction]

_ZERO: CF = (Fraction(0), Fraction(0))
_ONE: CF = (Fraction(1), Fraction(0))
Tail = Optional[tuple[CF, CF]]


def _cf(z: complex) -> CF:
    return (Fraction(z.real), Fraction(z.imag))


def _add(x: CF, y: CF) -> CF:
    return (x[0] + y[0], x[1] + y[1])


def _sub(x: CF, y: CF) -> CF:
    return (x[0] - y[0], x[1] - y[1])


def _mul(x: CF, y: CF) -> CF:
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _div(x: CF, y: CF) -> CF:
    d = y[0] * y[0] + y[1] * y[1]
    return ((x[0] * y[0] + x[1] * y[1]) / d, (x[1] * y[0] - x[0] * y[1]) / d)


def _conj(x: CF) -> CF:
    return (x[0], -x[1])


def _abs2(x: CF) -> Fraction:
    return x[0] * x[0] + x[1] * x[1]


def _to_complex(x: CF) -> complex:
    return complex(float(x[0]), float(x[1]))


def _horner(poly: Sequence[CF], z: CF) -> CF:
    acc = _ZERO
    for c in reversed(poly):
        acc = _add(_mul(acc, z), c)
    return acc


def _eval_boundary(poly: Sequence[CF], tail: Tail, zeta: CF) -> CF:
    value = _horner(poly, zeta)
    if tail is not None:
        a, rho = tail
        value = _add(value, _div(a, _sub(_ONE, _mul(rho, zeta))))
    return value


def _diff_quotient(poly: Sequence[CF], tail: Tail, zeta: CF) -> tuple[list[CF], Tail]:
    if len(poly) >= 2:
        quot: list[CF] = [_ZERO] * (len(poly) - 1)
        acc = poly[-1]
        for j in range(len(poly) - 2, -1, -1):
            quot[j] = acc
            acc = _add(_mul(acc, zeta), poly[j])
    else:
        quot = []
    new_tail: Tail = None
    if tail is not None:
        a, rho = tail
        new_tail = (_div(_mul(a, rho), _sub(_ONE, _mul(rho, zeta))), rho)
    return quot, new_tail


def exact_norm_sq(f: AnalyticFn, measure: AtomicMeasure) -> Fraction:
    """Squared norm of f, exactly, for the stored double inputs.

    Same formula as the double-precision norm: squared boundary values
    at the atoms plus the squared coefficient norm of the composed
    difference quotient, with the tail's three closed-form groups.
    """
    poly: list[CF] = [_cf(c) for c in f.poly]
    tail: Tail = None
    if f.tail is not None:
        tail = (_cf(f.tail.a), _cf(f.tail.rho))
    points = [_cf(z) for z in measure.points()]
    total = Fraction(0)
    for z in points:
        total += _abs2(_eval_boundary(poly, tail, z))
    for z in points:
        poly, tail = _diff_quotient(poly, tail, z)
    for c in poly:
        total += _abs2(c)
    if tail is not None:
        a, rho = tail
        cross = _mul(_conj(a), _horner(poly, _conj(rho)))
        total += 2 * cross[0]
        total += _abs2(a) / (1 - _abs2(rho))
    return total


def exact_residual(entries: Sequence[Sequence[complex]], rhs: Sequence[complex],
                   x: Sequence[complex]) -> list[complex]:
    """rhs - entries @ x with exact products, rounded once per component."""
    xs = [_cf(v) for v in x]
    out = []
    for i in range(len(rhs)):
        acc = _cf(rhs[i])
        for j, xj in enumerate(xs):
            acc = _sub(acc, _mul(_cf(entries[i][j]), xj))
        out.append(_to_complex(acc))
    return out


def _function_parts(f: AnalyticFn) -> tuple[list[CF], Tail]:
    poly = [_cf(c) for c in f.poly]
    tail: Tail = None
    if f.tail is not None:
        tail = (_cf(f.tail.a), _cf(f.tail.rho))
    return poly, tail


def _quotient(poly: list[CF], tail: Tail, points: Sequence[CF]) -> tuple[list[CF], Tail]:
    for z in points:
        poly, tail = _diff_quotient(poly, tail, z)
    return poly, tail


def _h2_pair(fpoly: Sequence[CF], ftail: Tail, gpoly: Sequence[CF]) -> CF:
    # coefficient pairing when the second factor has no tail
    acc = _ZERO
    for a, b in zip(fpoly, gpoly):
        acc = _add(acc, _mul(a, _conj(b)))
    if ftail is not None:
        a, rho = ftail
        acc = _add(acc, _mul(a, _conj(_horner(gpoly, _conj(rho)))))
    return acc


def exact_normal_system(f: AnalyticFn, measure: AtomicMeasure,
                        n: int) -> tuple[list[list[CF]], list[CF]]:
    """Exactly assembled normal equations for the stored inputs.

    Returns (rows, rhs) over rational pairs with rows[a][b] = <z^a, z^b>
    and rhs[a] = conj(<f, z^a>), so the conjugated minimizer solves
    rows @ x = rhs.  The boundary part pairs the stored atom values
    directly (no unimodular power shortcut), which makes the system the
    honest one for the data as stored; refining a floating-point solve
    against these residuals removes the condition-number amplification
    of assembly rounding.
    """
    points = [_cf(z) for z in measure.points()]
    powers: list[list[CF]] = []
    for z in points:
        row = [_ONE]
        for _ in range(n):
            row.append(_mul(row[-1], z))
        powers.append(row)
    quotients = [_quotient([_ZERO] * a + [_ONE], None, points)[0]
                 for a in range(n + 1)]
    rows: list[list[CF]] = [[_ZERO] * (n + 1) for _ in range(n + 1)]
    for a in range(n + 1):
        for b in range(a, n + 1):
            acc = _ZERO
            for pw in powers:
                acc = _add(acc, _mul(pw[a], _conj(pw[b])))
            entry = _add(acc, _h2_pair(quotients[a], None, quotients[b]))
            rows[a][b] = entry
            if b != a:
                rows[b][a] = _conj(entry)
    fpoly, ftail = _function_parts(f)
    fvalues = [_eval_boundary(fpoly, ftail, z) for z in points]
    fq_poly, fq_tail = _quotient(fpoly, ftail, points)
    rhs: list[CF] = []
    for a in range(n + 1):
        acc = _ZERO
        for value, pw in zip(fvalues, powers):
            acc = _add(acc, _mul(value, _conj(pw[a])))
        acc = _add(acc, _h2_pair(fq_poly, fq_tail, quotients[a]))
        rhs.append(_conj(acc))
    return rows, rhs


def exact_system_residual(rows: Sequence[Sequence[CF]], rhs: Sequence[CF],
                          x: Sequence[complex]) -> list[complex]:
    """rhs - rows @ x over rationals, rounded once per component."""
    xs = [_cf(v) for v in x]
    out = []
    for row, b in zip(rows, rhs):
        acc = b
        for entry, xj in zip(row, xs):
            acc = _sub(acc, _mul(entry, xj))
        out.append(_to_complex(acc))
    return out
