"""Finite Gamma-rings: construction and verification of axioms, gradings,
filtrations, modules and module homomorphisms."""

from .abelian import (
    FiniteAbelianGroup,
    FiniteSemigroup,
    ProductGroup,
    QuotientGroup,
    SemigroupMap,
    Subgroup,
    cyclic_group,
    segment_monoid,
    trivial_group,
)
from .errors import BudgetError, GammaError, StructureFileError
from .filtration import *  # noqa: F401,F403
from .grading import (
    GradedGammaRing,
    canonical_grading,
    check_internal_grading,
    coarsen_by_quotient,
    crossed_product_check,
    graded_ideal_check,
    regrade_epimorphism,
    restrict_subsemigroup,
    strongly_graded_check,
    trivial_grading,
)
from .hom import *  # noqa: F401,F403
from .module import *  # noqa: F401,F403
from .ring import (
    GammaRing,
    Ideal,
    check_axioms,
    direct_product,
    find_unities,
    integer_gamma_ring,
    is_ideal,
    make_ideal,
    matrix_gamma_ring,
    opposite,
    polynomial_ring,
    quotient_by_ideal,
    semigroup_gamma_ring,
    table_ring,
    zero_gamma_ring,
)
from .serialize import dumps, load, load_text
from .verdict import Verdict, enumeration_budget

__version__ = "0.1.0"
