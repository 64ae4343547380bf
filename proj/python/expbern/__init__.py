"""Bernstein bases and generalized Bernstein operators for spaces of
exponential polynomials, with Chebyshev-system diagnostics and desk-scale
convergence studies. Thin wrapper over the C++ core."""

from ._core import (
    BernsteinBasis,
    BernsteinOperator,
    ChebyshevDiagnosis,
    ComputationError,
    EigenvalueMultiset,
    ExpPoly,
    build_basis,
    build_operator,
    build_operator_confluent,
    chebyshev_interval_test,
    chebyshev_pair_test,
    connection_constant,
    convergence_study,
    d_coefficients,
    equidistant_basis,
    equidistant_operator,
    exp_in_basis,
    fixed_point_residuals,
    fundamental_function,
    hankel_value,
    hypothesis_report,
    limit_ratio,
    morigi_neamtu_family,
    muntz_to_exponential,
    test_function,
)

__all__ = [
    "BernsteinBasis",
    "BernsteinOperator",
    "ChebyshevDiagnosis",
    "ComputationError",
    "EigenvalueMultiset",
    "ExpPoly",
    "build_basis",
    "build_operator",
    "build_operator_confluent",
    "chebyshev_interval_test",
    "chebyshev_pair_test",
    "connection_constant",
    "convergence_study",
    "d_coefficients",
    "equidistant_basis",
    "equidistant_operator",
    "exp_in_basis",
    "fixed_point_residuals",
    "fundamental_function",
    "hankel_value",
    "hypothesis_report",
    "limit_ratio",
    "morigi_neamtu_family",
    "muntz_to_exponential",
    "test_function",
]

__version__ = "0.1.0"
