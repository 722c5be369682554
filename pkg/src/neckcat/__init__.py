"""neckcat: a combinatorial toolkit for the necklace category.

Necklaces in their joint-set presentation with the wedge product; their
maps with the active/inert, epi/mono and bead-reducing/spine-collapsing
factorizations; a generic explicit-finite-category layer with Reedy
structures, latching/matching categories and fibration checks; and a
truncated Day convolution on finite-set presheaves, verified against the
representable and unit comparisons.
"""

from .day import (
    ComparisonReport,
    Presheaf,
    assoc_comparison,
    day_convolve,
    day_unit,
    make_presheaf,
    rep_comparison,
    representable,
    unit_comparison,
)
from .fincat import (
    CommaCategory,
    FinCat,
    FinFunctor,
    are_isomorphic,
    comma_under,
    is_discrete_fibration,
    make_fincat,
)
from .maps import (
    MapClass,
    NecMap,
    classify,
    compose,
    factor_active_inert,
    factor_bead_spine,
    factor_epi_mono,
    hom_set,
    image,
    parse_map,
    split_mono,
    terminal_map,
    wedge_maps,
)
from .necklace import (
    DELTA0,
    Degree,
    Measures,
    Necklace,
    degree_less,
    degree_sum,
    enumerate_necklaces,
    measures,
    parse_necklace,
    simplex,
    to_beads,
    wedge,
)
from .reedy import (
    MonoidalReport,
    ReedyCat,
    VerificationReport,
    check_monoidal_hypotheses,
    is_left_fibrant,
    is_left_fibration,
    is_reedy_morphism,
    is_right_fibration,
    latching_category,
    make_reedy,
    matching_category,
    nec_truncation,
    opposite_reedy,
    product_reedy,
    reedy_report,
    simplex_truncation,
    terminal_functor,
    terminal_reedy,
    wedge_functor,
)

__version__ = "0.1.0"

__all__ = [
    "DELTA0",
    "ComparisonReport",
    "CommaCategory",
    "Degree",
    "FinCat",
    "FinFunctor",
    "MapClass",
    "Measures",
    "MonoidalReport",
    "NecMap",
    "Necklace",
    "Presheaf",
    "ReedyCat",
    "VerificationReport",
    "are_isomorphic",
    "assoc_comparison",
    "check_monoidal_hypotheses",
    "classify",
    "comma_under",
    "compose",
    "day_convolve",
    "day_unit",
    "degree_less",
    "degree_sum",
    "enumerate_necklaces",
    "factor_active_inert",
    "factor_bead_spine",
    "factor_epi_mono",
    "hom_set",
    "image",
    "is_discrete_fibration",
    "is_left_fibrant",
    "is_left_fibration",
    "is_reedy_morphism",
    "is_right_fibration",
    "latching_category",
    "make_fincat",
    "make_presheaf",
    "make_reedy",
    "matching_category",
    "measures",
    "nec_truncation",
    "opposite_reedy",
    "parse_map",
    "parse_necklace",
    "product_reedy",
    "reedy_report",
    "rep_comparison",
    "representable",
    "simplex",
    "simplex_truncation",
    "split_mono",
    "terminal_functor",
    "terminal_map",
    "terminal_reedy",
    "to_beads",
    "unit_comparison",
    "wedge",
    "wedge_functor",
    "wedge_maps",
]
