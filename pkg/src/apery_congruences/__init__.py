"""Exact computation and verification of congruences for Apéry numbers."""

from .exactnum import (
    ConsistencyError,
    NotPadicIntegerError,
    bernoulli_upto,
    congruent_mod,
    harmonic_sums,
    is_prime,
    legendre_symbol,
    lucas_binom_mod3,
    padic_valuation,
    residue_mod_prime_power,
)
from .polyreduce import RationalPolynomial, ReductionResult, c_m, g_poly, p_poly, q_poly, reduce_odd_power
from .sequences import AperyTable, EtaSeries, apery_direct, apery_upto, eta_coefficients
from .verify import BatchSummary, CongruenceReport, Ranges, run_batch

__all__ = [
    "AperyTable",
    "BatchSummary",
    "CongruenceReport",
    "ConsistencyError",
    "EtaSeries",
    "NotPadicIntegerError",
    "Ranges",
    "RationalPolynomial",
    "ReductionResult",
    "apery_direct",
    "apery_upto",
    "bernoulli_upto",
    "c_m",
    "congruent_mod",
    "eta_coefficients",
    "g_poly",
    "harmonic_sums",
    "is_prime",
    "legendre_symbol",
    "lucas_binom_mod3",
    "p_poly",
    "padic_valuation",
    "q_poly",
    "reduce_odd_power",
    "residue_mod_prime_power",
    "run_batch",
]
