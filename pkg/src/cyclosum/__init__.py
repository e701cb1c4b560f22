"""Exact Jacobi sums of orders l, 2l, l^2 and 2l^2 over finite fields, and
verification of their congruences modulo powers of 1 - zeta_{l^2}."""

from .congruence import (
    CCoeffs,
    CongruenceReport,
    VerificationContext,
    extract_c_coeffs,
    make_context,
    reduce_even_n,
    rhs_coprime,
    rhs_n_eq_dl,
    rhs_n_eq_l2,
    rhs_n_max,
    verify_main_theorem,
    verify_order_l2,
    verify_propositions,
)
from .cyclo import AtLeastCap, CycInt, CycRing, LambdaDigits, cyclo_ring, render
from .ff import FieldSpec, IndexTable, build_index_table, ind, make_field
from .jacobi import chi_eval, chi_minus_one, jacobi_sum, jacobi_sum_reflected

__version__ = "0.1.0"
