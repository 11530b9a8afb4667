"""Groups defined by finite-state automata.

Mealy transducer algebra (products, inverses, duals, minimization), the
induced group action on the rooted tree of words (word problem, orders,
wreath recursion), structural analysis (activity, nucleus, dual orbits),
Schreier-graph geometry, and shortlex automatic structures.
"""

from .errors import (
    AlphabetMismatchError,
    AutgroupsError,
    FormatError,
    NotInvertibleError,
    NotReversibleError,
    ResourceCapError,
    StructureError,
    UnknownSymbolError,
)
from .words import Endomorphism, GroupWord, commutator, conjugate, \
    relator_family
from .mealy import (
    CanonicalMachine,
    Classification,
    InitialMachine,
    MealyMachine,
    behavior_eq,
    disjoint_union,
    identity_machine,
    minimize,
    reachable_product,
    signed_closure,
)
from .action import (
    DEFAULT_MAX_EXP,
    DEFAULT_STATE_CAP,
    Finite,
    UnknownBeyond,
    WreathDecomposition,
    evaluate,
    is_identity,
    matrix_form,
    orbit_on_level,
    order,
    wreath_decompose,
)
from .analysis import (
    NUCLEUS_CAP,
    Certified,
    Contracting,
    Exponential,
    Failed,
    NotContractingUpTo,
    Nucleus,
    Polynomial,
    activity_degree,
    dual_orbits,
    identity_states,
    injectivity_certificate,
    is_nuclear,
    level_permutations,
    nucleus,
    path_counts,
)
from .geometry import (
    GROWTH_ELEMENT_CAP,
    GrowthTable,
    SchreierGraph,
    four_point_delta,
    growth,
    is_level_transitive,
    schreier_graph,
)
from .fsa import (
    MAIN,
    PAD,
    Acceptor,
    NFAcceptor,
    PaddedPairLetter,
    bool_ops,
    determinize,
    enumerate_words,
    is_empty,
    map_letters,
    pair_alphabet,
    pair_token,
    shortlex_pair_acceptor,
    split_pair,
)
from .formats import (
    acceptor_to_dot,
    machine_to_dot,
    parse_acceptor,
    parse_machine,
    schreier_to_dot,
    serialize_acceptor,
    serialize_machine,
)
from .zoo import (
    AFFINE_STATE_CAP,
    ZooEntry,
    affine_machine,
    builtin,
    cayley_machine,
    cyclic_table,
    zoo_names,
)
from .autostruct import (
    SURFACE_ELEMENT_CAP,
    AutomaticStructure,
    Counterexample,
    Holds,
    SurfaceGroupPresentation,
    cannon_series,
    dehn_reduce,
    fellow_travel_check,
    functional_up_to,
    letters_of,
    make_unique,
    normal_form,
    pad_pairs,
    surface_equal,
    surface_growth_bfs,
    surface_metric,
    word_of,
    wp_quadratic,
    z2_metric,
    z2_structure,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
