"""h-preorder calculus on labeled forests, canonical ordinal-indexed
trees, and difference/fine-hierarchy membership over finite T0 spaces."""

from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ord,
    OrdinalSyntaxError,
    add,
    cmp_ord,
    format_ordinal,
    omega_pow,
    ord_of,
    parity,
    parse_ordinal,
    pred,
    succ,
)
from .forest import (
    EMPTY,
    Forest,
    ForestError,
    Tree,
    as_forest,
    forest_from_json,
    forest_to_json,
    h_equiv,
    h_leq,
    is_join_irreducible,
    join,
    label_equiv,
    label_leq,
    max_color,
    meet,
    node_count,
    normalize,
    rank,
    singleton,
    tree_components,
    validate_forest,
    wrap,
)
from .nested import (
    LabeledNPreorder,
    TermSyntaxError,
    flatten,
    l_join,
    morphism_exists,
    nesting_level,
    parse_term,
    print_term,
    s_embed,
    unflatten,
)
from .canonical import (
    BAR,
    PLAIN,
    CanonicalName,
    canonical_size,
    classify_2forest,
    classify_2tree_nested,
    ordinal_candidates,
    representative,
    swap_colors,
    t_flat,
    t_nested,
)
from .space import (
    FiniteSpace,
    KPartition,
    PFamily,
    SpaceError,
    all_partitions,
    antichain_space,
    base_from_json,
    base_to_json,
    chain_space,
    close_base,
    complements,
    diamond_space,
    dh_membership,
    dh_witness_family,
    diff_sequence_to_family,
    difference_kernel,
    family_defines,
    family_to_diff_sequence,
    fh_membership,
    has_reduction_property,
    hierarchy_report,
    is_reduced,
    powerset_base,
    reduce_family,
    reduce_pair,
    report_to_dot,
    up_sets,
    validate_base,
    validate_omega_base,
)
from .degrees import (
    DegreePoset,
    degree_poset,
    degrees_to_dot,
    degrees_to_json,
    monotone_maps,
    wadge_leq,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "1.0.0"
