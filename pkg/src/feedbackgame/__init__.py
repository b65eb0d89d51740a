"""Feedback game toolkit.

Two players alternately slide a token along unused edges of a graph, each
traversed edge disappearing behind them; whoever returns the token to the
start vertex or strands it on an edge-less vertex wins. This package
provides the graph families the game is usually studied on, an exact
solver with interchangeable numba/pure-Python backends, even-kernel
certificates with an exhaustively verified second-player strategy, and a
CLI plus a small HTTP service for interactive play.
"""

from .engine import (
    ALICE,
    BOB,
    GameState,
    apply_move,
    legal_moves,
    new_game,
    state_from_json_dict,
    state_to_json_dict,
)
from .errors import (
    BadBipartition,
    BadParameter,
    BadResidue,
    CapExceeded,
    DomainError,
    DuplicateEdge,
    DuplicateVertex,
    FeedbackGameError,
    GameOver,
    IllegalMove,
    IsolatedStart,
    KernelVerificationError,
    LimitError,
    LimitExceeded,
    MissingEdge,
    NameCollision,
    NotATriangle,
    NotCommonNeighbor,
    PreconditionFailed,
    SelfLoop,
    StrategyBreakdown,
    UnknownVertex,
)
from .families import (
    cycle_graph,
    double_wheel,
    octahedral_path,
    octahedron_addition,
    two_subdivision,
)
from .graph import (
    ColorPartition,
    Graph,
    build_graph,
    count_degree_residues,
    degree,
    graph_from_json,
    graph_to_json,
    is_connected,
    is_eulerian,
    neighbors,
    three_coloring,
)
from .kernels import (
    KernelCheck,
    KernelGraph,
    KernelSet,
    NearKernelSets,
    NotApplicable,
    StrategyReport,
    color_class_kernel,
    find_even_kernel,
    find_even_kernel_bruteforce,
    is_even_kernel,
    kernel_graph,
    kernel_strategy,
    octapath_mod1_kernel,
    octapath_mod2_sets,
    verify_strategy,
)
from .solver import (
    TableReport,
    Verdict,
    best_move,
    expected_octapath_winner,
    solve,
    solve_naive,
    verify_octapath_table,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
