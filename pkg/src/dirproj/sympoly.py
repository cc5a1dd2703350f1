"""Symmetric-function values at the measure's atoms.

Two families are needed: complete homogeneous sums (repetition allowed,
any order k) and elementary sums (distinct factors, order capped at the
number of variables).  Both are computed by the standard one-variable-at-
a-time recurrences, O(s*K) instead of enumerating monomials.  The two
cancellation identities tying the families together are what make the
closed-form projection collapse, so a residual check for them lives here
as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


def complete_homogeneous(points: Sequence[complex], K: int) -> tuple[complex, ...]:
    """Values of the complete homogeneous symmetric sums of order 0..K.

    Generating function: prod_t 1/(1 - points[t]*x).  Incorporating one
    variable at a time, in-place ascending update: new[k] = old[k] +
    point*new[k-1].
    """
    if K < 0:
        raise ValueError("order bound K must be >= 0")
    if not points:
        raise ValueError("need at least one point")
    values = [0j] * (K + 1)
    values[0] = 1 + 0j
    for z in points:
        for k in range(1, K + 1):
            values[k] += z * values[k - 1]
    return tuple(values)


def elementary(points: Sequence[complex]) -> tuple[complex, ...]:
    """Values of the elementary symmetric sums of order 0..s.

    Product recurrence for prod_t (1 + points[t]*x); orders beyond s are
    zero and are treated as absent by every consumer.
    """
    if not points:
        raise ValueError("need at least one point")
    s = len(points)
    values = [0j] * (s + 1)
    values[0] = 1 + 0j
    for i, z in enumerate(points):
        for k in range(i + 1, 0, -1):
            values[k] += z * values[k - 1]
    return tuple(values)


def monic_from_roots(points: Sequence[complex]) -> tuple[complex, ...]:
    """Coefficients of the monic polynomial with the given roots.

    Coefficient of z^j is (-1)^(s-j) times the elementary sum of order
    s-j; the leading coefficient is exactly 1.
    """
    s = len(points)
    elem = elementary(points)
    coeffs = [(-1) ** (s - j) * elem[s - j] for j in range(s)]
    coeffs.append(1 + 0j)
    return tuple(coeffs)


@dataclass(frozen=True)
class SymTables:
    """Precomputed symmetric-sum values at a fixed point set.

    S holds complete homogeneous orders 0..K, T elementary orders 0..s.
    """

    points: tuple[complex, ...]
    S: tuple[complex, ...]
    T: tuple[complex, ...]
    K: int

    @classmethod
    def build(cls, points: Sequence[complex], K: int) -> "SymTables":
        pts = tuple(points)
        return cls(points=pts, S=complete_homogeneous(pts, K),
                   T=elementary(pts), K=K)

    @property
    def s(self) -> int:
        return len(self.points)


def check_identities(tables: SymTables) -> float:
    """Max residual of the two alternating cancellation identities.

    For 1 <= k <= s the full alternating sum sum_m (-1)^m T_m S_{k-m}
    vanishes; for k > s it vanishes with m capped at s.  Exact in exact
    arithmetic, so the return value measures rounding only.
    """
    s = tables.s
    if tables.K < s + 1:
        raise ValueError(f"need K >= s+1 = {s + 1}, got K = {tables.K}")
    worst = 0.0
    for k in range(1, tables.K + 1):
        acc = 0j
        for m in range(0, min(k, s) + 1):
            acc += (-1) ** m * tables.T[m] * tables.S[k - m]
        worst = max(worst, abs(acc))
    return worst
