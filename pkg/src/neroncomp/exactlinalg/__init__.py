"""Exact linear algebra over Z and Z/l^N."""

from .automorphisms import (
    CoinvariantReport,
    CycloMultiplicities,
    LatticeAuto,
    check_coinvariant_bound,
    conjugate_counts,
    cyclotomic_multiplicities,
    multiplicities_of_poly,
    totient_l,
)
from .intmatrix import IntMatrix, berkowitz_charpoly
from .lattices import (
    independent_columns,
    lattice_contains,
    lattice_coordinates,
    lattice_intersection,
    lattice_sum,
    quotient_invariants,
    solve_mod,
)
from .modular import LadicPoly, ModMatrix, ladic_inverse, mod_diagonalize, mod_invert
from .normalforms import (
    cokernel_l_part,
    hnf_columns,
    hnf_with_transform,
    smith_form,
    smith_l_part,
    solve_echelon,
    valuation,
)
from .polys import (
    companion,
    cyclo_product,
    cyclotomic_poly,
    lambda_mult_matrix,
    mult_matrix,
    resultant,
)
from .unimodular import random_unimodular, random_unimodular_pair

__all__ = [
    "IntMatrix",
    "ModMatrix",
    "LatticeAuto",
    "CycloMultiplicities",
    "CoinvariantReport",
    "LadicPoly",
    "berkowitz_charpoly",
    "smith_form",
    "smith_l_part",
    "cokernel_l_part",
    "hnf_columns",
    "hnf_with_transform",
    "solve_echelon",
    "valuation",
    "lattice_sum",
    "lattice_intersection",
    "lattice_contains",
    "lattice_coordinates",
    "quotient_invariants",
    "independent_columns",
    "solve_mod",
    "cyclotomic_poly",
    "cyclo_product",
    "companion",
    "lambda_mult_matrix",
    "mult_matrix",
    "resultant",
    "mod_invert",
    "mod_diagonalize",
    "ladic_inverse",
    "cyclotomic_multiplicities",
    "multiplicities_of_poly",
    "conjugate_counts",
    "check_coinvariant_bound",
    "totient_l",
    "random_unimodular",
    "random_unimodular_pair",
]
