"""Game driver: runs strategy pairs under the referee to an outcome.

One round is a move by each player, first player per configuration
(Breaker by default). Walker's win is checked after her moves only; for
the Hamilton cycle goal the exact check can be deferred to the end of the
game, which the exposure strategy's property audits rely on. Breaker has
no winning sets of his own, but in the connectivity game the referee
declares his win early once some unvisited vertex has every incident edge
in Breaker's hands: Walker's goal is then impossible. Otherwise the game
runs until the board is exhausted, with one final round played on the
exhausted board so strategies can settle their bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Protocol, Union

import numpy as np

from .audits import AuditLog, STRATEGY_RESIGNED
from .board import (
    BreakerMove, GameState, Outcome, Player, StrategyFault, WalkerMove,
    apply_breaker_move, apply_walker_move, new_game,
    FREE, WALKER_OWNED, BREAKER_OWNED,
)
from .graphs import SimpleGraph, has_hamilton_cycle, UNKNOWN
from .transcript import RoundRecord, Transcript


class Goal(Enum):
    CONNECTIVITY = "connectivity"
    HAMILTON_CYCLE = "hamilton_cycle"


class _Resign:
    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return "RESIGN"


#: Returned by a walker strategy to give up the game.
RESIGN = _Resign()


@dataclass
class GameContext:
    """Per-game information handed to strategies at reset time."""

    n: int
    breaker_bias: int
    walker_bias: int
    goal: Goal
    first_player: Player
    rng: np.random.Generator
    audit: AuditLog


class Strategy(Protocol):  # pragma: no cover - structural type only
    name: str

    def reset(self, ctx: GameContext) -> None: ...


@dataclass
class GameResult:
    outcome: Outcome
    state: GameState
    transcript: Transcript
    audit: AuditLog
    walker: object
    breaker: object
    rounds: int
    isolated_vertex: Optional[int] = None
    goal_achieved: Optional[bool] = None

    @property
    def walker_won(self) -> bool:
        return self.outcome is Outcome.WALKER_WIN


def walker_graph(state: GameState) -> SimpleGraph:
    return SimpleGraph(state.n, state.walker_graph_edges())


def breaker_graph(state: GameState) -> SimpleGraph:
    return SimpleGraph(state.n, state.breaker_graph_edges())


def saturated_unvisited_vertex(state: GameState) -> Optional[int]:
    """A Walker-unvisited vertex all of whose edges Breaker owns, if any."""
    mask = (~state.visited) & (state.breaker_degree == state.n - 1)
    if not mask.any():
        return None
    return int(np.argmax(mask))


def _connectivity_won(state: GameState) -> bool:
    return bool(state.visited.all())


def _hamilton_won(state: GameState, budget: int, audit: AuditLog, round_no: int) -> bool:
    n = state.n
    if not state.visited.all():
        return False
    if state.walker_edge_count < n:
        return False
    if int(state.walker_degree[state.visited].min(initial=0)) < 2:
        return False
    verdict = has_hamilton_cycle(walker_graph(state), budget)
    if verdict is UNKNOWN:
        audit.note("hamilton_check_budget", round_no, budget=budget)
        return False
    return bool(verdict)


def play_game(
    n: int,
    b: int,
    goal: Goal,
    walker,
    breaker,
    seed: Union[int, np.random.SeedSequence] = 0,
    first_player: Player = Player.BREAKER,
    walker_bias: int = 2,
    hamilton_check: str = "per_move",
    hamilton_budget: int = 10**7,
    audit_mode: str = "auto",
) -> GameResult:
    """Play one full game; deterministic given all arguments.

    `hamilton_check` is "per_move" (win declared as soon as Walker's graph
    contains a Hamilton cycle) or "end_only" (goal evaluated when the game
    stops; used by property runs that must see the whole board played out).
    `audit_mode` is "auto" (strategies classify events as hard inside their
    proven regimes, flags outside), or "hard"/"flag" to force one class.
    """
    if hamilton_check not in ("per_move", "end_only"):
        raise ValueError(f"unknown hamilton_check mode {hamilton_check!r}")
    if audit_mode not in ("auto", "hard", "flag"):
        raise ValueError(f"unknown audit_mode {audit_mode!r}")
    rng = np.random.default_rng(seed)
    state = new_game(n, b, first_player, walker_bias)
    audit = AuditLog(hard_mode=True)
    ctx = GameContext(n, b, walker_bias, goal, first_player, rng, audit)
    walker.reset(ctx)
    breaker.reset(ctx)
    if audit_mode != "auto":
        audit.hard_mode = audit_mode == "hard"
    transcript = Transcript.start(
        n, walker_bias, b, goal.value,
        seed if isinstance(seed, int) else repr(seed),
        first_player, walker.name, breaker.name,
    )

    order = (Player.BREAKER, Player.WALKER)
    if first_player is Player.WALKER:
        order = (Player.WALKER, Player.BREAKER)
    isolated: Optional[int] = None
    max_rounds = n * (n - 1) // 2 + n + 8

    for round_no in range(1, max_rounds + 1):
        exhausted_at_start = state.free_count == 0
        rec = RoundRecord(round_no)
        for side in order:
            if side is Player.BREAKER:
                try:
                    move: BreakerMove = breaker.breaker_move(state)
                    apply_breaker_move(state, move)
                except StrategyFault:
                    raise
                except Exception as exc:
                    raise StrategyFault(breaker.name, exc) from exc
                rec.breaker_edges = [list(e) for e in move.edges]
                if goal is Goal.CONNECTIVITY:
                    isolated = saturated_unvisited_vertex(state)
                    if isolated is not None:
                        state.over = Outcome.BREAKER_WIN
                        break
            else:
                try:
                    wmove = walker.walker_move(state)
                except StrategyFault:
                    raise
                except Exception as exc:
                    raise StrategyFault(walker.name, exc) from exc
                if wmove is RESIGN:
                    audit.note(STRATEGY_RESIGNED, round_no, strategy=walker.name)
                    state.over = Outcome.WALKER_RESIGN
                    break
                try:
                    apply_walker_move(state, wmove)
                except StrategyFault:
                    raise
                except Exception as exc:
                    raise StrategyFault(walker.name, exc) from exc
                rec.walker_steps = [list(s) for s in wmove.steps]
                if goal is Goal.CONNECTIVITY and _connectivity_won(state):
                    state.over = Outcome.WALKER_WIN
                    break
                if (goal is Goal.HAMILTON_CYCLE and hamilton_check == "per_move"
                        and _hamilton_won(state, hamilton_budget, audit, round_no)):
                    state.over = Outcome.WALKER_WIN
                    break
        state.round_no = round_no
        rec.annotations = [e.to_json() for e in audit.drain_new_events()]
        transcript.rounds.append(rec)
        if state.over is not Outcome.RUNNING:
            break
        if exhausted_at_start:
            # The closing round on a dead board has been played; settle.
            if goal is Goal.CONNECTIVITY:
                won = _connectivity_won(state)
            else:
                won = _hamilton_won(state, hamilton_budget, audit, round_no)
            state.over = Outcome.WALKER_WIN if won else Outcome.BREAKER_WIN
            break
    else:  # pragma: no cover - referee bug guard
        raise RuntimeError("game did not terminate within the round cap")

    goal_achieved = state.over is Outcome.WALKER_WIN
    transcript.finish(state.over, state)
    return GameResult(
        outcome=state.over,
        state=state,
        transcript=transcript,
        audit=audit,
        walker=walker,
        breaker=breaker,
        rounds=state.round_no,
        isolated_vertex=isolated,
        goal_achieved=goal_achieved,
    )
