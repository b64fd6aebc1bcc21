"""Exact counting of Markov-equivalent DAGs under directed background knowledge."""

__version__ = "0.1.0"

from .counting import (
    DEFAULT_PERMUTATION_CAP,
    CountingSession,
    FactorialTable,
    LbfsResult,
    MemoTable,
    PermutationCapError,
    PrefixChain,
    SessionResult,
    SessionStats,
    count_session,
    count_uccg,
    forbidden_prefixes,
    lbfs_background,
    phi,
    psi,
)
from .generators import GenConfig, GenerationError, gen_background, grow_background, random_chordal
from .graphs import (
    RootedCliqueTree,
    UndirectedGraph,
    clique_tree,
    connected_components,
    is_chordal,
    lbfs_order,
    maximal_cliques,
)
from .mec import (
    BackgroundKnowledge,
    InvalidInstanceError,
    MecInstance,
    PartiallyDirectedGraph,
    chordal_components,
    count_amo,
    max_clique_knowledge,
    restrict_knowledge,
    validate,
)
from .oracle import (
    DEFAULT_ORACLE_CAP,
    OracleCapError,
    amos_represented_by,
    enumerate_amos,
    union_graph,
    v_structures,
)

__all__ = [
    "__version__",
    "BackgroundKnowledge",
    "CountingSession",
    "DEFAULT_ORACLE_CAP",
    "DEFAULT_PERMUTATION_CAP",
    "FactorialTable",
    "GenConfig",
    "GenerationError",
    "InvalidInstanceError",
    "LbfsResult",
    "MecInstance",
    "MemoTable",
    "OracleCapError",
    "PartiallyDirectedGraph",
    "PermutationCapError",
    "PrefixChain",
    "RootedCliqueTree",
    "SessionResult",
    "SessionStats",
    "UndirectedGraph",
    "amos_represented_by",
    "chordal_components",
    "clique_tree",
    "connected_components",
    "count_amo",
    "count_session",
    "count_uccg",
    "enumerate_amos",
    "forbidden_prefixes",
    "gen_background",
    "grow_background",
    "is_chordal",
    "lbfs_background",
    "lbfs_order",
    "max_clique_knowledge",
    "maximal_cliques",
    "phi",
    "psi",
    "random_chordal",
    "restrict_knowledge",
    "union_graph",
    "v_structures",
    "validate",
]
