"""Centralizer-structure analysis for finite groups.

Groups are explicit Cayley tables; subgroups are bitsets over element
indices. The package computes the set of distinct element centralizers,
flags the non-abelian ones, classifies groups with exactly two
non-abelian centralizers into three structural cases over the central
quotient, and verifies the derived consequences across a built-in corpus.
"""

from .classify import (
    CentStats,
    Classification,
    VerificationReport,
    cent_stats,
    classify,
    full_report,
    verify_consequences,
    verify_iff,
)
from .corpus import (
    GroupSpec,
    agl1,
    alternating,
    build,
    builtin_catalog,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    heisenberg,
    heisenberg_frobenius,
    load_group,
    save_group,
    semidirect_cyclic,
    semidirect_product,
    sl23,
    symmetric,
)
from .errors import (
    AbelianGroup,
    InvalidAction,
    InvalidParams,
    InvalidPermutation,
    NacentError,
    NotAGroup,
    NotApplicable,
    NotNilpotent,
    NotNormal,
    OrderLimitExceeded,
    ParentMismatch,
    ParseError,
    PrimeDoesNotDivide,
    TheoremViolation,
)
from .groups import FiniteGroup, element_order, exponent, from_cayley_table, from_permutations
from .partitions import (
    FrobeniusStructure,
    Partition,
    centralizer_partition,
    find_frobenius_structure,
    is_elementary_partition,
    is_frobenius_partition,
    is_nonsimple_partition,
    is_normal_partition,
    is_partition,
    miller_check,
    normal_subgroups,
)
from .predicates import (
    decompose_p_times_abelian,
    fitting_subgroup,
    hughes_subgroup,
    is_abelian,
    is_ca_group,
    is_cyclic,
    is_hughes_thompson_type,
    is_nilpotent,
    is_p_group,
    p_core,
    prime_factorization,
    sylow_subgroup,
)
from .subgroups import (
    QuotientMap,
    Subgroup,
    center,
    centralizer,
    commutator_subgroup,
    conjugate_subgroup,
    generated_subgroup,
    is_normal,
    preimage,
    quotient,
    subgroup_as_group,
    subgroup_equal,
    subgroup_intersection,
    trivial_subgroup,
    whole_subgroup,
)

__version__ = "0.1.0"
