"""Exact computational algebra: sparse polynomials, Groebner bases,
initial ideals, Plucker ideals, and valuation certificates."""

from .groebner import (
    StepBudgetExceeded,
    normal_form,
    reduced_groebner_basis,
)
from .ideals import (
    IdealHandle,
    MonomialFreeness,
    contains_monomial,
    degree_of,
    eliminate,
    initial_form,
    initial_ideal,
    intersect_ideals,
    is_monomial_free,
    toric_kernel,
    weight_refined_order,
)
from .orders import TermOrder, degrevlex, elimination_order, weight_order
from .plucker import (
    FANO_COLUMNS,
    FANO_LINES,
    TPolyMatrix,
    fano_certificate_search,
    fano_weight,
    expand_on_generic_matrix,
    generic_matrix_ring,
    plucker_generators,
    plucker_ring,
    plucker_valuations,
    sort_sign,
    three_term_quadric,
)
from .poly import MultiPoly, PolyRing
from .scalars import GF, GF4, QQ, field_of_characteristic

__all__ = [
    "FANO_COLUMNS",
    "FANO_LINES",
    "GF",
    "GF4",
    "IdealHandle",
    "MonomialFreeness",
    "MultiPoly",
    "PolyRing",
    "QQ",
    "StepBudgetExceeded",
    "TPolyMatrix",
    "TermOrder",
    "contains_monomial",
    "degree_of",
    "degrevlex",
    "elimination_order",
    "eliminate",
    "expand_on_generic_matrix",
    "fano_certificate_search",
    "fano_weight",
    "field_of_characteristic",
    "generic_matrix_ring",
    "initial_form",
    "initial_ideal",
    "intersect_ideals",
    "is_monomial_free",
    "normal_form",
    "plucker_generators",
    "plucker_ring",
    "plucker_valuations",
    "reduced_groebner_basis",
    "sort_sign",
    "three_term_quadric",
    "toric_kernel",
    "weight_order",
    "weight_refined_order",
]
