"""Closed-form polynomial projection in local Dirichlet spaces.

A local Dirichlet space here is built from finitely many unit-circle
points: a function is finite-energy when its repeated difference
quotients at those points land in the Hardy space of the disk.  This
package computes the orthogonal projection of an analytic function
(polynomial plus optional geometric series) onto polynomials of degree
at most n in that space, together with the exact approximation
distance, and ships a brute-force Gram-matrix solver used to verify
the closed form.
"""

from .configio import (
    function_from_config,
    function_to_config,
    measure_from_config,
    measure_to_config,
)
from .dirichlet import (
    AtomicMeasure,
    BasisPoly,
    UnitPoint,
    basis_poly,
    decompose,
    diff_quotient,
    inner,
    measure_quotient,
    norm,
    vandermonde_values,
)
from .errors import (
    ConfigError,
    ConsistencyError,
    FormulaDiscrepancyError,
    IllConditionedError,
    UnsupportedDegreeError,
)
from .oracle import (
    HermitianMatrix,
    TrialFailure,
    ValidationReport,
    cholesky_factor,
    cross_validate,
    gram_matrix,
    oracle_distance,
    oracle_project,
    solve_hpd,
)
from .projection import (
    ProjectionResult,
    basis_coefficients,
    direct_coefficients,
    distance,
    project,
)
from .series import (
    AnalyticFn,
    GeometricTail,
    eval_boundary,
    h2_inner,
    h2_inner_fn,
)
from .sympoly import (
    SymTables,
    check_identities,
    complete_homogeneous,
    elementary,
    monic_from_roots,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticFn",
    "AtomicMeasure",
    "BasisPoly",
    "ConfigError",
    "ConsistencyError",
    "FormulaDiscrepancyError",
    "GeometricTail",
    "HermitianMatrix",
    "IllConditionedError",
    "ProjectionResult",
    "SymTables",
    "TrialFailure",
    "UnitPoint",
    "UnsupportedDegreeError",
    "ValidationReport",
    "basis_coefficients",
    "basis_poly",
    "check_identities",
    "cholesky_factor",
    "complete_homogeneous",
    "cross_validate",
    "decompose",
    "diff_quotient",
    "direct_coefficients",
    "distance",
    "elementary",
    "eval_boundary",
    "function_from_config",
    "function_to_config",
    "gram_matrix",
    "h2_inner",
    "h2_inner_fn",
    "inner",
    "measure_from_config",
    "measure_quotient",
    "measure_to_config",
    "monic_from_roots",
    "norm",
    "oracle_distance",
    "oracle_project",
    "project",
    "solve_hpd",
    "vandermonde_values",
]
