"""Baseline opponents: seeded random players and a star-greedy Breaker."""

from __future__ import annotations

import numpy as np

from ..board import BreakerMove, GameState, WalkerMove, FREE, WALKER_OWNED
from ..engine import GameContext, RESIGN


class RandomWalker:
    """Performs a uniformly random legal walk each move."""

    name = "walker.random"

    def reset(self, ctx: GameContext) -> None:
        self.rng = ctx.rng
        self.bias = ctx.walker_bias

    def walker_move(self, state: GameState):
        at = state.walker_position
        if at is None:
            # Start anywhere a step exists; resign only on a dead board.
            viable = np.nonzero(
                state.walker_degree + state.breaker_degree < state.n - 1
            )[0]
            if viable.size == 0:
                return RESIGN
            at = int(viable[self.rng.integers(viable.size)])
        steps = []
        for _ in range(self.bias):
            row = state.own[at]
            options = np.nonzero((row == FREE) | (row == WALKER_OWNED))[0]
            if options.size == 0:
                return RESIGN  # no legal first step from a forced position
            nxt = int(options[self.rng.integers(options.size)])
            steps.append((at, nxt))
            at = nxt
        return WalkerMove(tuple(steps))


class RandomBreaker:
    """Claims a uniform sample of the free edges each move."""

    name = "breaker.random"

    def reset(self, ctx: GameContext) -> None:
        self.rng = ctx.rng
        self.bias = ctx.breaker_bias

    def breaker_move(self, state: GameState) -> BreakerMove:
        edges = state.random_free_edges(self.bias, self.rng)
        return BreakerMove(tuple(edges))


class GreedyStarBreaker:
    """Piles edges onto the unvisited vertex of maximum Breaker degree.

    Deterministic: ties break to the lowest vertex index, free co-endpoints
    are taken in ascending order, and when no unvisited vertex has a free
    edge left the lexicographically smallest free edges are claimed.
    """

    name = "breaker.greedy_star"

    def reset(self, ctx: GameContext) -> None:
        self.bias = ctx.breaker_bias

    def breaker_move(self, state: GameState) -> BreakerMove:
        budget = min(self.bias, state.free_count)
        n = state.n
        chosen: list[tuple[int, int]] = []
        claimed_now: set[tuple[int, int]] = set()
        free_left = (n - 1) - state.walker_degree - state.breaker_degree
        free_left = free_left.astype(np.int64).copy()
        unvisited = ~state.visited
        while budget > 0:
            scores = np.where(unvisited & (free_left > 0), state.breaker_degree, -1)
            target = int(np.argmax(scores))
            if scores[target] < 0:
                break
            row = state.own[target]
            for w in np.nonzero(row == FREE)[0]:
                pair = (min(target, int(w)), max(target, int(w)))
                if pair in claimed_now:
                    continue
                chosen.append(pair)
                claimed_now.add(pair)
                free_left[target] -= 1
                free_left[int(w)] -= 1
                budget -= 1
                if budget == 0:
                    break
            if free_left[target] > 0 and budget > 0:
                break  # every remaining free edge here was already chosen
        if budget > 0:
            # Fallback: lexicographically smallest remaining free edges.
            pids = np.sort(state.free_list[: state.free_count])
            for pid in pids:
                pair = (int(state.edge_u[pid]), int(state.edge_v[pid]))
                if pair in claimed_now:
                    continue
                chosen.append(pair)
                claimed_now.add(pair)
                budget -= 1
                if budget == 0:
                    break
        return BreakerMove(tuple(chosen))
