"""Exact groupoid cardinality and random-permutation cycle statistics.

Finite groupoids are handled through skeletons (multisets of automorphism
group orders) and weak quotients of finite group actions; all cardinalities
are exact rationals. Cycle statistics of uniform random permutations are
computed by two independent exact methods plus a seeded Monte Carlo route,
and the equivalence between the decorated-permutation groupoid and its
product form is verified at the skeleton level.
"""

from .categorified import (
    CategorifiedReport,
    DecoratedPermutation,
    build_Q,
    c_groupoid_skeleton,
    categorified_rhs_skeleton,
    cycle_tuple_action,
    q_action,
    verify_categorified,
)
from .cycle_stats import (
    METHOD_BRUTE,
    METHOD_CYCLE_TYPE,
    METHOD_MONTE_CARLO,
    MomentReport,
    cll_rhs,
    expected_product_brute,
    expected_product_by_type,
    expected_total_cycles,
    monte_carlo_moment,
    poisson_factorial_moment,
    uncorrelated_check,
    verify_cll,
)
from .functors import (
    EquivariantFunctor,
    FunctorValidation,
    FunctorValidationError,
    GeneralTheoremReport,
    category_of_elements,
    expected_size,
    functor_from_json,
    make_cycle_tuple_functor,
    make_fixed_point_functor,
    make_trivial_functor,
    validate_functor,
    verify_general_theorem,
)
from .groups import (
    CayleyGroup,
    CyclicGroup,
    FiniteGroup,
    GroupValidationError,
    ProductGroup,
    SymmetricGroup,
    conjugate,
    from_cayley_json,
    from_cayley_table,
    make_cyclic,
    make_product,
    make_symmetric,
    to_cayley_json,
)
from .groupoids import (
    EMPTY_SKELETON,
    ActionValidation,
    ActionValidationError,
    GroupAction,
    GroupoidSkeleton,
    Orbit,
    Rational,
    SkeletonComponent,
    cardinality,
    cardinality_via_outdegrees,
    conjugation_action,
    coproduct,
    delooping,
    orbit_decomposition,
    parse_rational,
    perm_groupoid_skeleton,
    power,
    product,
    rational_str,
    skeletons_equivalent,
    weak_quotient,
)
from .permutations import (
    DEFAULT_ENUMERATION_CAP,
    DEFAULT_PARTITION_CAP,
    CapExceededError,
    Cycle,
    CycleTupleChoice,
    CycleType,
    Permutation,
    all_cycle_types,
    canonical_cycle,
    conjugate_permutation,
    count_with_cycle_type,
    cycle_count,
    cycle_counts,
    cycle_decomposition,
    cycle_type,
    enumerate_permutations,
    falling_power,
    iter_pvectors,
    list_cycle_tuples,
    weight,
)
from .rng import SplitMix64

__version__ = "0.1.0"
