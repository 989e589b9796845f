"""Integrals of a decaying function against a periodic one via Fourier series."""

from ._mixparseval import (
    CoefficientTable,
    DecayingFunction,
    Expr,
    HypothesisReport,
    MixedResult,
    NonConvergenceError,
    PeriodicFunction,
    QuadratureResult,
    catalog,
    check_hypothesis,
    classical_parseval_sides,
    coefficient,
    coefficient_table,
    evaluate_mixed,
    integrate_finite,
    integrate_line,
    make_decaying,
    make_periodic,
    parse,
    periodize_sample,
    transform,
)

__all__ = [
    "CoefficientTable",
    "DecayingFunction",
    "Expr",
    "HypothesisReport",
    "MixedResult",
    "NonConvergenceError",
    "PeriodicFunction",
    "QuadratureResult",
    "catalog",
    "check_hypothesis",
    "classical_parseval_sides",
    "coefficient",
    "coefficient_table",
    "evaluate_mixed",
    "integrate_finite",
    "integrate_line",
    "make_decaying",
    "make_periodic",
    "parse",
    "periodize_sample",
    "transform",
]
