"""Exact integer and sparse multivariate polynomial arithmetic."""
from .modular import UnluckyPrimeError, eval_mod, word_primes
from .mpoly import ZERO_DEGREE, MPoly, gens, order_vars
from .ops import arith, content_primitive, divexact, gcd_poly, primitive_part, pseudo_divrem, substitute_rational
from .resultant import ResultantVerificationError, resultant, resultant_modular, resultant_subres
from .sqfree import SquarefreeDecomposition, squarefree_decompose

__all__ = [
    "MPoly", "ZERO_DEGREE", "gens", "order_vars",
    "arith", "pseudo_divrem", "content_primitive", "primitive_part", "divexact", "gcd_poly",
    "substitute_rational", "resultant", "resultant_modular", "resultant_subres",
    "ResultantVerificationError", "squarefree_decompose", "SquarefreeDecomposition",
    "eval_mod", "word_primes", "UnluckyPrimeError",
]
