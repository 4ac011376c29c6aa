"""Walker's connectivity strategy: always walk to the most endangered
unvisited vertex.

Round one visits three vertices, starting from the two of largest Breaker
degree. Every later round walks from the current position w over some
middle vertex to the unvisited vertex a of maximum Breaker degree,
preferring an unvisited middle (two new vertices per round when it works).
She wins once every vertex is visited: her edges form a walk, so visiting
everything is exactly a spanning connected subgraph.

Quantitative expectations are audited on the fly: at b <= (1/4 - eps) n/ln n
the selected target must satisfy d_B(a) <= 2b ln n - b and the travel pair
d_B(w) + d_B(a) <= 4b ln n - b < n - 2. Violations inside that regime are
recorded as hard audit events; outside it they are flags.
"""

from __future__ import annotations

from fractions import Fraction
from math import log
from typing import Optional, Union

import numpy as np

from ..audits import (
    CONNECTOR_MISSING, FALLBACK_CONNECTOR, TRAVEL_DEGREE_SUM,
    TRAVEL_DEGREE_SUM_N2, UNVISITED_DEGREE_BOUND, connectivity_in_regime,
)
from ..board import GameState, WalkerMove, FREE, WALKER_OWNED, BREAKER_OWNED
from ..engine import GameContext, RESIGN


class ConnectivityWalker:
    """Max-Breaker-degree chasing Walker for the connectivity game."""

    name = "walker.connectivity"

    def __init__(self, eps: Union[Fraction, float] = Fraction(1, 20)) -> None:
        self.eps = Fraction(eps).limit_denominator(10**9)

    def reset(self, ctx: GameContext) -> None:
        self.audit = ctx.audit
        self.n = ctx.n
        self.b = ctx.breaker_bias
        self.in_regime = connectivity_in_regime(ctx.n, ctx.breaker_bias, self.eps)
        self.deg_bound = 2 * self.b * log(self.n) - self.b
        self.sum_bound = 4 * self.b * log(self.n) - self.b
        self.audit.hard_mode = self.in_regime

    # -- helpers -------------------------------------------------------------

    def _audit_target(self, state: GameState, a: int) -> None:
        if state.breaker_degree[a] > self.deg_bound:
            self.audit.record(
                UNVISITED_DEGREE_BOUND, state.round_no + 1,
                target=int(a), degree=int(state.breaker_degree[a]),
                bound=self.deg_bound,
            )

    def _audit_pair(self, state: GameState, w: int, a: int) -> None:
        total = int(state.breaker_degree[w] + state.breaker_degree[a])
        if total > self.sum_bound:
            self.audit.record(
                TRAVEL_DEGREE_SUM, state.round_no + 1,
                position=int(w), target=int(a), total=total, bound=self.sum_bound,
            )
        if total >= state.n - 2:
            self.audit.record(
                TRAVEL_DEGREE_SUM_N2, state.round_no + 1,
                position=int(w), target=int(a), total=total, bound=state.n - 2,
            )

    def _resign(self, state: GameState, **detail):
        self.audit.record(CONNECTOR_MISSING, state.round_no + 1, **detail)
        return RESIGN

    # -- move construction ----------------------------------------------------

    def walker_move(self, state: GameState):
        if state.walker_position is None:
            return self._first_move(state)
        return self._later_move(state)

    def _first_move(self, state: GameState):
        deg = state.breaker_degree
        v0 = int(np.argmax(deg))
        masked = deg.copy()
        masked[v0] = -1
        v1 = int(np.argmax(masked))
        own = state.own
        if own[v0, v1] == BREAKER_OWNED:
            # Bridge the two hot vertices through a fresh middle vertex.
            candidates = np.nonzero(
                (own[v0] == FREE) & (own[v1] == FREE) & ~state.visited
            )[0]
            if candidates.size == 0:
                return self._resign(state, phase="first_round_bridge")
            u = int(candidates[0])
            return WalkerMove(((v0, u), (u, v1)))
        # Claim the v0-v1 edge, then head for the hottest reachable target.
        reachable = (own[v1] == FREE) & ~state.visited
        reachable[v0] = False
        if not reachable.any():
            return self._resign(state, phase="first_round_extend")
        scores = np.where(reachable, deg, -1)
        u_prime = int(np.argmax(scores))
        self._audit_target(state, u_prime)
        return WalkerMove(((v0, v1), (v1, u_prime)))

    def _later_move(self, state: GameState):
        w = state.walker_position
        unvisited = ~state.visited
        if not unvisited.any():
            # Already spanning; the referee ends the game before asking again.
            u = int(state.walker_edges_at(w)[0])
            return WalkerMove(((w, u), (u, w)))
        deg = state.breaker_degree
        scores = np.where(unvisited, deg, -1)
        a = int(np.argmax(scores))
        self._audit_target(state, a)
        self._audit_pair(state, w, a)
        own = state.own
        # Preferred: middle vertex that is itself unvisited, both edges free.
        mids = np.nonzero((own[w] == FREE) & (own[a] == FREE) & unvisited)[0]
        mids = mids[mids != a]
        if mids.size:
            y = int(mids[0])
            return WalkerMove(((w, y), (y, a)))
        # Otherwise any middle vertex with both edges free.
        mids = np.nonzero((own[w] == FREE) & (own[a] == FREE))[0]
        mids = mids[mids != a]
        if mids.size:
            y = int(mids[0])
            return WalkerMove(((w, y), (y, a)))
        # Last resort (outside the strategy text, flagged): re-use one of
        # her own edges to reach a middle vertex with a free edge to a.
        mids = np.nonzero((own[w] == WALKER_OWNED) & (own[a] == FREE))[0]
        mids = mids[mids != a]
        if mids.size:
            y = int(mids[0])
            self.audit.note(
                FALLBACK_CONNECTOR, state.round_no + 1,
                position=int(w), target=int(a), middle=y,
            )
            return WalkerMove(((w, y), (y, a)))
        return self._resign(state, position=int(w), target=int(a))
