"""Brute-force verification of the closed-form projection.

Everything here goes the long way around on purpose: the Gram matrix of
the monomials 1, z, ..., z^n is assembled from the inner product
directly (difference quotients by synthetic division, no symmetric-sum
shortcuts), the normal equations are solved by a hand-rolled complex
Cholesky factorization sharpened with exact-residual refinement, and
the result is compared against the closed form coefficient by
coefficient.  Residual norms are evaluated in exact rational
arithmetic; plain double evaluation of a near-zero norm bottoms out
near sqrt(eps), too coarse to verify the distance formula against.
The randomized cross-validation corpus is fully determined by its
seed, trial by trial, so any failure is reproducible in isolation.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .configio import function_to_config, measure_to_config
from .dirichlet import (
    ATOM_DISTINCTNESS_TOL,
    AtomicMeasure,
    measure_quotient,
)
from .errors import ConsistencyError, IllConditionedError
from .exactarith import (
    exact_norm_sq,
    exact_normal_system,
    exact_residual,
    exact_system_residual,
)
from .projection import direct_coefficients, project
from .series import AnalyticFn, Coeffs, GeometricTail, h2_inner, normalize

PIVOT_RTOL = 1e-12
RESIDUAL_DISTANCE_TOL = 1e-9
FASTPATH_TOL = 1e-10


@dataclass(frozen=True)
class HermitianMatrix:
    dim: int
    entries: tuple[tuple[complex, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.dim or any(len(r) != self.dim for r in self.entries):
            raise ValueError("entries must form a dim x dim square")


def gram_matrix(measure: AtomicMeasure, n: int) -> HermitianMatrix:
    """Pairwise inner products of the monomials up to degree n.

    Entry (a, b) is sum_k point_k^(a-b) from the boundary part plus the
    coefficient pairing of the two quotient images, each computed by
    composed synthetic division.
    """
    if n < 0:
        raise ValueError("degree bound must be >= 0")
    points = measure.points()
    # powers[d + n] = sum_k point_k^d for d in -n..n
    powers = [sum(z ** d for z in points) for d in range(-n, n + 1)]
    quotients = [measure_quotient(AnalyticFn.monomial(a), measure).poly
                 for a in range(n + 1)]
    rows = []
    for a in range(n + 1):
        row = []
        for b in range(n + 1):
            row.append(powers[a - b + n] + h2_inner(quotients[a], quotients[b]))
        rows.append(tuple(row))
    return HermitianMatrix(dim=n + 1, entries=tuple(rows))


def cholesky_factor(matrix: HermitianMatrix) -> tuple[list[list[complex]], float]:
    """Lower-triangular factor L with L L^H = matrix, plus a condition estimate.

    No pivoting; each diagonal pivot must stay above PIVOT_RTOL times the
    largest original diagonal entry or IllConditionedError is raised.
    The estimate is the max/min ratio of the squared diagonal pivots
    (diagonal decay), a cheap stand-in for the true condition number.
    """
    dim = matrix.dim
    max_diag = max(matrix.entries[i][i].real for i in range(dim))
    lower: list[list[complex]] = [[0j] * dim for _ in range(dim)]
    pivots: list[float] = []
    for i in range(dim):
        pivot = matrix.entries[i][i].real - sum(
            (lower[i][k] * lower[i][k].conjugate()).real for k in range(i))
        if pivot <= PIVOT_RTOL * max_diag:
            estimate = max_diag / pivot if pivot > 0 else math.inf
            raise IllConditionedError(
                f"pivot {pivot} at row {i} below {PIVOT_RTOL} * max diagonal "
                f"{max_diag}; condition estimate {estimate}", estimate)
        pivots.append(pivot)
        lower[i][i] = math.sqrt(pivot)
        for j in range(i + 1, dim):
            acc = matrix.entries[j][i]
            for k in range(i):
                acc -= lower[j][k] * lower[i][k].conjugate()
            lower[j][i] = acc / lower[i][i]
    return lower, max(pivots) / min(pivots)


def _substitute(lower: list[list[complex]], rhs: Sequence[complex]) -> list[complex]:
    """Forward then back substitution through L and L^H."""
    dim = len(lower)
    y = [0j] * dim
    for i in range(dim):
        y[i] = (rhs[i] - sum(lower[i][k] * y[k] for k in range(i))) / lower[i][i]
    x = [0j] * dim
    for i in range(dim - 1, -1, -1):
        x[i] = (y[i] - sum(lower[k][i].conjugate() * x[k] for k in range(i + 1, dim))) / lower[i][i]
    return x


def solve_hpd(matrix: HermitianMatrix, rhs: Sequence[complex]) -> list[complex]:
    """Solve matrix * x = rhs for Hermitian positive definite matrix.

    Two rounds of iterative refinement with exactly computed residuals
    drive the result to the correctly-rounded solution of the stored
    system; one round already does so whenever the condition number is
    comfortably below 1/eps, the second is insurance.
    """
    if len(rhs) != matrix.dim:
        raise ValueError("right-hand side length mismatch")
    lower, _ = cholesky_factor(matrix)
    x = _substitute(lower, rhs)
    for _ in range(2):
        residual = exact_residual(matrix.entries, rhs, x)
        delta = _substitute(lower, residual)
        x = [a + b for a, b in zip(x, delta)]
    return x


def oracle_project(f: AnalyticFn, measure: AtomicMeasure, n: int) -> Coeffs:
    """Best-approximation coefficients via the normal equations.

    Orthogonality of the residual reads sum_b <z^b, z^a> c_b = <f, z^a>
    for every a, and the matrix on the left is the conjugate of the
    Gram matrix (the inner product is linear in its first slot).
    Conjugating the whole system lets one factorization of the Gram
    matrix serve directly: G conj(c) = conj(v).

    The factorization is computed in doubles, but every residual in the
    refinement loop comes from the exactly assembled rational system,
    so the returned coefficients are the correctly rounded minimizer
    for the stored inputs rather than carrying assembly rounding
    amplified by the condition number.  Starting from zero makes the
    first pass the plain triangular solve of the rounded system.
    """
    lower, _ = cholesky_factor(gram_matrix(measure, n))
    rows, rhs = exact_normal_system(f, measure, n)
    x = [0j] * (n + 1)
    for _ in range(3):
        residual = exact_system_residual(rows, rhs, x)
        delta = _substitute(lower, residual)
        x = [a + b for a, b in zip(x, delta)]
    return normalize([c.conjugate() for c in x])


def oracle_distance(f: AnalyticFn, measure: AtomicMeasure, n: int) -> float:
    """Norm of the residual after subtracting the Gram-solve minimizer.

    The residual function is nearly orthogonal to everything it is built
    from, so its norm is evaluated exactly and rounded once.
    """
    coeffs = oracle_project(f, measure, n)
    residual = f - AnalyticFn.from_coeffs(coeffs)
    return math.sqrt(max(float(exact_norm_sq(residual, measure)), 0.0))


@dataclass(frozen=True)
class TrialFailure:
    trial: int
    seed: str
    measure: dict
    function: dict
    n: int
    discrepancy: float
    detail: str

    def to_dict(self) -> dict:
        return {"trial": self.trial, "seed": self.seed, "measure": self.measure,
                "function": self.function, "n": self.n,
                "discrepancy": self.discrepancy, "detail": self.detail}


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of one cross-validation corpus run."""

    trials: int
    tolerance: float
    max_coeff_error: float
    max_distance_error: float
    max_residual_error: float
    max_fastpath_error: float
    failures: tuple[TrialFailure, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "tolerance": self.tolerance,
            "max_coeff_error": self.max_coeff_error,
            "max_distance_error": self.max_distance_error,
            "max_residual_error": self.max_residual_error,
            "max_fastpath_error": self.max_fastpath_error,
            "failures": [f.to_dict() for f in self.failures],
        }


def _random_measure(rng: random.Random, s_max: int) -> AtomicMeasure:
    s = rng.randint(1, s_max)
    points: list[complex] = []
    while len(points) < s:
        z = cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        if all(abs(z - w) > ATOM_DISTINCTNESS_TOL for w in points):
            points.append(z)
    weights = [rng.uniform(0.5, 2.0) for _ in range(s)]
    return AtomicMeasure.from_points(points, weights)


def _random_function(rng: random.Random, max_degree: int) -> AnalyticFn:
    degree = rng.randint(0, max_degree)
    coeffs = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(degree + 1)]
    tail = None
    if rng.random() < 0.5:
        a = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        rho = rng.uniform(0.0, 0.8) * cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        tail = GeometricTail(a, rho)
    return AnalyticFn(poly=tuple(coeffs), tail=tail)


def _pad_diff(u: Coeffs, v: Coeffs) -> float:
    width = max(len(u), len(v))
    return max((abs((u[t] if t < len(u) else 0j) - (v[t] if t < len(v) else 0j))
                for t in range(width)), default=0.0)


def cross_validate(seed: int, trials: int, s_max: int, n_max: int,
                   tol: float) -> ValidationReport:
    """Compare closed-form projection and distance against the Gram oracle.

    Each trial draws a random measure, model function and degree from an
    rng seeded by "<seed>:<trial>", so runs are deterministic and trials
    are independent (the report is a fold over them in index order).
    Checks per trial: monomial coefficients vs. the Gram solve (tol),
    distance vs. oracle distance (tol), distance vs. the directly
    computed residual norm (RESIDUAL_DISTANCE_TOL), and the direct
    coefficient route vs. the expansion route (FASTPATH_TOL).  Failures
    are recorded, never raised.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    if s_max < 1:
        raise ValueError("need s_max >= 1")
    if n_max < s_max - 1:
        raise ValueError("need n_max >= s_max - 1")
    max_coeff = max_dist = max_resid = max_fast = 0.0
    failures: list[TrialFailure] = []
    for i in range(trials):
        trial_seed = f"{seed}:{i}"
        rng = random.Random(trial_seed)
        measure = _random_measure(rng, s_max)
        f = _random_function(rng, n_max + measure.s + 3)
        n = rng.randint(measure.s - 1, n_max)

        def fail(discrepancy: float, detail: str) -> None:
            failures.append(TrialFailure(
                trial=i, seed=trial_seed, measure=measure_to_config(measure),
                function=function_to_config(f), n=n,
                discrepancy=discrepancy, detail=detail))

        try:
            closed = project(f, measure, n)
            direct = direct_coefficients(f, measure, n)
            oracle_coeffs = oracle_project(f, measure, n)
            # same value oracle_distance would produce, without a second solve
            oracle_residual = f - AnalyticFn.from_coeffs(oracle_coeffs)
            odist = math.sqrt(max(float(exact_norm_sq(oracle_residual, measure)), 0.0))
            residual_fn = f - AnalyticFn.from_coeffs(closed.monomial)
            residual_norm = math.sqrt(max(float(exact_norm_sq(residual_fn, measure)), 0.0))
        except (ConsistencyError, IllConditionedError) as exc:
            fail(math.inf, f"{type(exc).__name__}: {exc}")
            continue

        coeff_err = _pad_diff(closed.monomial, oracle_coeffs)
        dist_err = abs(closed.distance - odist)
        resid_err = abs(closed.distance - residual_norm)
        fast_err = _pad_diff(direct, closed.monomial)
        max_coeff = max(max_coeff, coeff_err)
        max_dist = max(max_dist, dist_err)
        max_resid = max(max_resid, resid_err)
        max_fast = max(max_fast, fast_err)
        if coeff_err > tol:
            fail(coeff_err, "closed-form coefficients vs. Gram solve")
        if dist_err > tol:
            fail(dist_err, "closed-form distance vs. oracle distance")
        if resid_err > RESIDUAL_DISTANCE_TOL:
            fail(resid_err, "closed-form distance vs. residual norm")
        if fast_err > FASTPATH_TOL:
            fail(fast_err, "direct coefficients vs. expansion path")
    return ValidationReport(
        trials=trials, tolerance=tol, max_coeff_error=max_coeff,
        max_distance_error=max_dist, max_residual_error=max_resid,
        max_fastpath_error=max_fast, failures=tuple(failures))
