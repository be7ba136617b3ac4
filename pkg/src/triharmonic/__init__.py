"""Exact symbolic verification of tension, bitension and tritension fields
of Riemannian submersions from 3-manifolds onto surfaces."""

from .algebra import (
    AlgebraError,
    DerivedSymbol,
    Monomial,
    NotDivisible,
    Poly,
    UnboundSymbol,
    factor_out_power,
    poly_arith,
    poly_pow,
    render,
    substitute,
)

__all__ = [
    "AlgebraError",
    "DerivedSymbol",
    "Monomial",
    "NotDivisible",
    "Poly",
    "UnboundSymbol",
    "factor_out_power",
    "poly_arith",
    "poly_pow",
    "render",
    "substitute",
]

__version__ = "0.1.0"
