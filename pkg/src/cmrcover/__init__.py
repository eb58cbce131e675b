"""Shannon covers of finite-type constrained systems via the CMR construction."""

from .cmr import (
    CmrAutomaton,
    Z2Analysis,
    build_cmr_automaton,
    cmr_presentation,
    cover_size_bounds,
    delta_gap,
    edge_counts,
    fork_state,
    z_family_analysis,
)
from .graph import (
    LabeledGraph,
    Partition,
    assemble_graph,
    is_irreducible_graph,
    quotient,
    reachable_from,
    serialize,
    strongly_connected_components,
)
from .minimize import (
    CoverReport,
    follower_partition,
    graphs_isomorphic,
    is_language_irreducible,
    presents_language,
    shannon_cover,
)
from .words import Alphabet, ForbiddenSet, is_subword, prefix_suffix_stats, validate_forbidden_set

__version__ = "0.1.0"
