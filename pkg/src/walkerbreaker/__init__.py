"""Walker-Breaker game simulator: biased (2:b) games on complete graphs.

Walker (the Maker side) must claim her edges along a walk; Breaker claims
b free edges per move. The package provides the referee, exact graph
predicates, the Box and MinBox auxiliary games with an exact minimax
oracle, the known strategies for both players, and a seeded experiment
harness for bias-threshold studies. See README.md for a tour.
"""

from .board import (
    BadBias, BreakerMove, BrokenWalk, GameError, GameState, IllegalClaim,
    IllegalTraversal, InvalidConfig, Outcome, Player, StrategyFault,
    TurnError, WalkerMove, apply_breaker_move, apply_walker_move,
    legal_steps, new_game,
)
from .engine import Goal, GameResult, RESIGN, play_game, walker_graph, breaker_graph
from .graphs import (
    SimpleGraph, UNKNOWN, degree_stats, has_hamilton_cycle,
    is_connected_spanning, min_degree_ratio,
)
from .boxgames import (
    BOXBREAKER, BOXMAKER, MinBoxState, NoActiveBox, boxmaker_threshold,
    boxmaker_wins, exact_box_game_winner, minbox_breaker_apply,
    minbox_maker_move, near_equal_sizes, threshold_bounds,
)
from .strategies import make_strategy, strategy_names
from .transcript import Transcript, replay

__version__ = "0.1.0"
