"""Exact computation with free-group words, Whitehead graphs, Stallings core
graphs and Farey-graph geometry, plus a reproducible experiment harness."""

from .errors import (
    AxesEqualError,
    DomainError,
    IdentityWordError,
    InternalContradictionError,
    NotCyclicallyReducedError,
    PreconditionError,
    RankError,
    UnboundedOverlapError,
    WordSyntaxError,
)
from .words import (
    BReducedDecomposition,
    CyclicDecomposition,
    Word,
    ad,
    apply_automorphism,
    b_index,
    b_reduced_decomposition,
    cyclic_length,
    cyclic_reduce,
    format_word,
    free_reduce,
    letter_index,
    letter_sign,
    parse_word,
    random_word,
)
from .whitehead import (
    Classification,
    MinimizationCertificate,
    WhAutomorphism,
    WhiteheadGraph,
    classify,
    enumerate_permutation_automorphisms,
    enumerate_whitehead_automorphisms,
    find_cut_vertex,
    is_primitive,
    minimize_cyclic_length,
    minimizing_basis,
    whitehead_graph,
)
from .trees import (
    AxisInterval,
    OverlapResult,
    distance_to_axis,
    geometric_index,
    project_axis_to_axis,
    stable_subtree_overlap,
    subtree_axis_overlap,
)
from .factors import (
    CoreGraph,
    FactorWitness,
    FreeFactorVertex,
    InvariantEstimate,
    af_adjacent,
    contains,
    factor_invariant,
    fold,
    is_basis_pair,
    random_free_factor,
)
from .farey import (
    FareyGraph,
    Slope,
    closest_orbit_point,
    farey_adjacent,
    farey_distance,
    of2_project,
    slope_of,
)
from .experiments import (
    EXPERIMENT_NAMES,
    BoundaryAutomorphism,
    ExperimentReport,
    boundary_word,
    build_boundary_pA,
    exp_basis_change,
    exp_boundary_length,
    exp_cancellation,
    exp_fzero_fiber,
    exp_lipschitz,
    exp_quasiflat,
    exp_twist_stability,
    run_experiment,
)

__version__ = "0.1.0"
