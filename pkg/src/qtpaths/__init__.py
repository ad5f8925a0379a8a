"""Exact q,t-enumeration of decorated labelled lattice paths, schedule
formulas, and the Macdonald-operator symmetric-function calculus, with an
identity-verification harness."""

__version__ = "0.1.0"

from .qt import (  # noqa: F401
    QTPoly,
    QTRational,
    exact_poly_quotient,
    q_analogue,
    q_binomial,
    q_factorial,
    q_pochhammer,
)
