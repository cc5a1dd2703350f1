"""Exception taxonomy shared across the package.

The CLI maps these onto its exit codes: ConfigError -> 2,
UnsupportedDegreeError -> 3, ConsistencyError (and subclasses) -> 4,
nonempty validation failures -> 5.
"""

from __future__ import annotations


class ConfigError(ValueError):
    """Malformed or schema-invalid configuration input."""


class UnsupportedDegreeError(ValueError):
    """Requested degree lies outside the range the closed form covers."""


class ConsistencyError(ArithmeticError):
    """An internal cross-check that must hold mathematically has failed."""


class FormulaDiscrepancyError(ConsistencyError):
    """Direct monomial coefficients disagree with the basis-expansion path.

    Carries both coefficient vectors for diagnosis.
    """

    def __init__(self, message: str, direct, expansion):
        super().__init__(message)
        self.direct = tuple(direct)
        self.expansion = tuple(expansion)


class IllConditionedError(ArithmeticError):
    """A factorization pivot fell below the acceptance threshold."""

    def __init__(self, message: str, condition_estimate: float):
        super().__init__(message)
        self.condition_estimate = condition_estimate
