"""Congruence-based complementation of Büchi automata through families of
deterministic finite-word structures."""

from .automata import (
    Alphabet,
    AlphabetMismatchError,
    Lasso,
    MembershipVerdict,
    Nbw,
    ParseError,
    UpWord,
    Word,
    enumerate_upwords,
    intersect,
    is_empty,
    lasso_membership,
    parse_nbw,
    parse_word,
    reach,
    serialize_nbw,
    step,
)
from .families import gen_bn, gen_bn_dbw, random_nbw
from .fdfw import (
    Decomposition,
    Fdfw,
    SaturationViolation,
    accepts_decomposition,
    accepts_upword,
    accepts_upword_general,
    accepts_upword_saturated,
    check_saturation_sampled,
    complement_fdfw_improved,
    complement_fdfw_optimal,
    complement_saturated_fdfw,
    containment,
    fdfw_to_nbw,
    is_captured,
    is_normalized,
    nbw_state_bound,
    normalize_decomposition,
    parse_fdfw,
    serialize_dfw,
    serialize_fdfw,
)
from .preorder import (
    OptProgressState,
    OrderedRunDag,
    PreorderedSubset,
    initial_preordered,
    optimal_leading_congruence,
    optimal_progress_congruence,
    ordered_reach,
    ordered_run_dag,
    ordered_step,
)
from .profiles import (
    DEFAULT_CLASS_BUDGET,
    BudgetExceededError,
    CongruenceDfw,
    DfwClass,
    Profile,
    RestrictedProfile,
    classical_congruence,
    compose,
    epsilon_profile,
    letter_profile,
    periodic_membership_from_profile,
    progress_congruence_improved,
    subset_congruence,
    word_profile,
)

__all__ = [
    "Alphabet",
    "AlphabetMismatchError",
    "BudgetExceededError",
    "CongruenceDfw",
    "DEFAULT_CLASS_BUDGET",
    "Decomposition",
    "DfwClass",
    "Fdfw",
    "Lasso",
    "MembershipVerdict",
    "Nbw",
    "OptProgressState",
    "OrderedRunDag",
    "ParseError",
    "PreorderedSubset",
    "Profile",
    "RestrictedProfile",
    "SaturationViolation",
    "UpWord",
    "Word",
    "accepts_decomposition",
    "accepts_upword",
    "accepts_upword_general",
    "accepts_upword_saturated",
    "check_saturation_sampled",
    "classical_congruence",
    "complement_fdfw_improved",
    "complement_fdfw_optimal",
    "complement_saturated_fdfw",
    "compose",
    "containment",
    "enumerate_upwords",
    "epsilon_profile",
    "fdfw_to_nbw",
    "gen_bn",
    "gen_bn_dbw",
    "initial_preordered",
    "intersect",
    "is_captured",
    "is_empty",
    "is_normalized",
    "lasso_membership",
    "letter_profile",
    "nbw_state_bound",
    "normalize_decomposition",
    "optimal_leading_congruence",
    "optimal_progress_congruence",
    "ordered_reach",
    "ordered_run_dag",
    "ordered_step",
    "parse_fdfw",
    "parse_nbw",
    "parse_word",
    "periodic_membership_from_profile",
    "progress_congruence_improved",
    "random_nbw",
    "reach",
    "serialize_dfw",
    "serialize_fdfw",
    "serialize_nbw",
    "step",
    "subset_congruence",
    "word_profile",
]
