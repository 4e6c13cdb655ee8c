"""Tools for the semigroup of isotone, order-decreasing partial
transformations of the chain {1..n} whose domain avoids 1: enumeration of
the semigroup, its ideals and Rees quotients; Green's and starred Green's
relations; abundance diagnostics; and certified rank computations checked
against closed-form counts.
"""

from .families import (
    Family,
    FamilySpec,
    binom,
    count_idempotents,
    count_lstar_classes,
    count_rstar_classes,
    enumerate_family,
    formula_idempotents,
    formula_rstar_classes,
    schroeder_small,
    verify_identity_corollary,
)
from .green import (
    ZERO,
    AbundanceReport,
    BinRelation,
    EqPartition,
    SemigroupTable,
    Zero,
    abundance_report,
    build_table,
    compose_relations,
    green,
    partition_as_relation,
    regular_indices,
    relations_equal,
    starred_characterized,
    starred_definitional,
)
from .pmap import (
    KernelView,
    PartialMap,
    alpha_i,
    alpha_ik,
    compose,
    eps_1k,
    is_requisite,
    left_identity,
    member_ss_prime,
    parse,
    pseudo_inverse,
    requisite,
    requisite_from_image,
    shift_embed,
)
from .rank import (
    RankResult,
    closure,
    closure_indices,
    essential_elements,
    factor_via_requisite,
    formula_rank_ideal,
    formula_rank_quotient,
    generating_set_G,
    lift_requisite,
    rank_oracle,
    ss_prime_minimal_generators,
    verify_ss1_witnesses,
    verify_theorem_hq,
)

__version__ = "1.0.0"
