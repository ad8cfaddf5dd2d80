"""Max-min fuzzy automata for computing with values, words, and all words."""

from .algebra import (
    StateMap,
    hom_image,
    homomorphism_violations,
    is_homomorphism,
    is_subautomaton,
    product,
)
from .automata import (
    AutomatonError,
    Facaw,
    Facv,
    Facw,
    UnknownToken,
    accept,
    extended_delta,
    is_complete,
    lift_facv,
)
from .fuzzy import (
    FuzzyError,
    FuzzySet,
    GradeError,
    UniverseMismatch,
    fuzzy_description,
    height,
    intersection,
    scale_product,
    singleton,
    support,
    union,
    zadeh_image,
)
from .transforms import (
    BudgetExceeded,
    IndependenceReport,
    extend_facv,
    gen_extend,
    independence_degree,
    is_consistent,
    is_delta_preserving,
    prop3_conditions,
    retract,
    word_accept,
)

__version__ = "0.1.0"
