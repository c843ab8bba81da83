"""Exact play, reductions, strategies, and claim verification for the Sign
Game: two players alternately sign the vertices of a graph, every edge
scores the product of its endpoints, and the sign of the total decides
the winner."""

from .engine import (
    GameConfig,
    GameState,
    Move,
    Outcome,
    Role,
    Sign,
    apply_move,
    completed_score,
    legal_moves,
    new_game,
    outcome_from_score,
    player_to_move,
    replay_transcript,
    score,
    state_from_cells,
    transcript_dict,
)
from .errors import (
    BudgetExceededError,
    FamilySpecError,
    GameOverError,
    Graph6Error,
    IllegalMoveError,
    IncompleteGameError,
    ReductionError,
    SignGameError,
    StrategyError,
    TranscriptError,
)
from .graphs import (
    Arbitrary,
    Complete,
    CompleteMultipartite,
    Cycle,
    FamilySpec,
    Graph,
    Path,
    Star,
    StarForest,
    build_family,
    disjoint_union,
    encode_graph6,
    family_text,
    parse_family_spec,
    parse_graph6,
)
from .reductions import (
    EquivalenceReport,
    Position,
    ReducedPosition,
    SegmentDecomposition,
    cancel_bipartite_pair,
    cancel_opposite_leaves,
    check_completion_equivalence,
    correspondence_from_maps,
    decompose_segments,
    open_cycle,
    split_path_at_assigned,
)
from .solver import (
    SolveResult,
    multipartite_completion_score,
    principal_variation,
    solve,
    solve_counts,
)
from .strategies import StrategyEvalReport, StrategyKind, evaluate_strategy, strategy_move
from .verification import (
    ConjectureReport,
    ExpectedOutcome,
    VerificationReport,
    expected_outcome,
    explore_conjecture,
    verify_formula_complete,
    verify_formula_multipartite,
    verify_outcomes,
    verify_p5_lemma,
    verify_path_exact,
    verify_strategies,
)

__version__ = "0.1.0"
