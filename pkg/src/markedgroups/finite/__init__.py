"""Explicit finite groups, their normal-subgroup lattices and discriminating sets."""

from .group import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    FiniteGroupError,
    OrderOverflow,
    PreconditionError,
    direct_product,
    format_cycles,
    parse_cycles,
    parse_permutation_list,
    semidirect_product,
)
from .lattice import (
    DiscriminatingSet,
    NormalSubgroup,
    discriminating_set,
    max_avoiding_normal,
    minimal_normal_subgroups,
    normal_subgroups,
    quotient_discriminated,
    verify_discriminating_set,
)
from .lemmas import (
    RappelResult,
    check_disjoint_normal_centralizes,
    check_hypercentral_socle,
    lemma_rappel_check,
    upper_central_series,
)

from_permutations = FiniteGroup.from_permutations

__all__ = [
    "DEFAULT_ORDER_CAP",
    "DiscriminatingSet",
    "FiniteGroup",
    "FiniteGroupError",
    "NormalSubgroup",
    "OrderOverflow",
    "PreconditionError",
    "RappelResult",
    "check_disjoint_normal_centralizes",
    "check_hypercentral_socle",
    "direct_product",
    "discriminating_set",
    "format_cycles",
    "from_permutations",
    "lemma_rappel_check",
    "max_avoiding_normal",
    "minimal_normal_subgroups",
    "normal_subgroups",
    "parse_cycles",
    "parse_permutation_list",
    "quotient_discriminated",
    "semidirect_product",
    "upper_central_series",
    "verify_discriminating_set",
]
