"""Walker's Hamilton-cycle strategy: grow a random graph you can keep.

The idea: Walker privately flips a success-p coin for every board edge
exactly once over the course of the game ("exposing" it), producing a
random graph H distributed as G(n, p) regardless of what Breaker does.
Whenever a coin succeeds on an edge that is free or already hers, she
walks it, so the successes she owns - the graph G' = H intersect W -
track H closely. A success landing on a Breaker edge is a lost (type II)
failure; an exposure round whose coins all fail is a type I failure,
closing that vertex's pool.

Scheduling which vertex to expose next is driven by a simulated
MinBox(n, 4n, p/2, 4b) game: every Breaker edge pq charges boxes F_p and
F_q, and Walker exposes at the vertex whose box has the largest danger,
so Breaker cannot quietly concentrate on one neighbourhood. When no free
active box remains - or the board is exhausted, whichever comes first -
stage two flips the outstanding coins in one sweep (successes there are
type II by definition: the edges can no longer be claimed).

The move legs are bookkeeping-driven: travel to the exposure vertex uses
two free-or-owned edges; exposure rounds end with a back-and-forth step
on an owned edge when nothing was claimed.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, log
from typing import Optional, Union

import numpy as np

from ..audits import (
    ACTIVE_BOX_DEGREE, CONNECTOR_MISSING, EXPOSURE_REPEAT, SIM_BOX_CAPACITY,
    SIM_BOX_EXHAUSTED, SIM_BUDGET, SIM_DANGER_BOUND, TYPE1_REPEAT,
    hamiltonicity_in_regime,
)
from ..board import GameState, WalkerMove, FREE, WALKER_OWNED, BREAKER_OWNED
from ..boxgames import MinBoxState, NoActiveBox, minbox_maker_claim_extra, minbox_maker_move
from ..engine import GameContext, RESIGN
from ..graphs import SimpleGraph

_STAGE_ONE = 1
_STAGE_TWO = 2


class ExposureWalker:
    """Random-graph exposure Walker for the Hamilton cycle game."""

    name = "walker.hamiltonicity"

    def __init__(self, p: Union[Fraction, float, str] = Fraction(2, 5),
                 eps: Union[Fraction, float, str] = Fraction(1, 5)) -> None:
        self.p = Fraction(p).limit_denominator(10**9)
        self.eps = Fraction(eps).limit_denominator(10**9)
        if not 0 < self.p < 1:
            raise ValueError("p must lie strictly between 0 and 1")
        if not 0 < self.eps <= Fraction(1, 1):
            raise ValueError("eps must lie in (0, 1]")

    def reset(self, ctx: GameContext) -> None:
        n, b = ctx.n, ctx.breaker_bias
        self.n = n
        self.b = b
        self.rng = ctx.rng
        self.audit = ctx.audit
        self.in_regime = hamiltonicity_in_regime(n, self.p, self.eps, b)
        self.audit.hard_mode = self.in_regime

        self.sim = MinBoxState(n, 4 * n, self.p / 2, 4 * b)
        self.unexposed: list[set[int]] = [set(range(n)) - {v} for v in range(n)]
        self.unexposed_pairs = n * (n - 1) // 2
        self.sample_edges: set[tuple[int, int]] = set()   # H: coin successes
        self.secured_edges: set[tuple[int, int]] = set()  # G': successes Walker kept
        self.failures_type1 = np.zeros(n, dtype=np.int64)
        self.failures_type2 = np.zeros(n, dtype=np.int64)
        self.exposure_vertex: Optional[int] = None
        self.stage = _STAGE_ONE

        self._claims_seen = 0
        self._adversary_since_claim = 0
        self._p_float = float(self.p)
        # Maker tally must stay below (1+2p)n; extra elements on a type I
        # failure are ceil(2pn) - 1.
        # Largest legal tally: w_M < (1+2p)n means w_M <= ceil((1+2p)n) - 1.
        cap = (1 + 2 * self.p) * n
        self._maker_cap = ceil(cap) - 1
        self._type1_extra = ceil(2 * self.p * n) - 1
        self._active_degree_cap = self.eps * (n - 1) / 5 + b
        self._sim_danger_cap = 4 * b * (log(n) + 1.0)

    # -- simulated game upkeep -------------------------------------------------

    def _absorb_breaker_claims(self, state: GameState, round_no: int) -> None:
        new = state.breaker_claims[self._claims_seen:]
        if not new:
            return
        self._claims_seen = len(state.breaker_claims)
        self._adversary_since_claim += 2 * len(new)
        counts = np.bincount(np.ravel(new), minlength=self.n).astype(np.int64)
        capacity = self.sim.capacity - self.sim.maker_counts - self.sim.breaker_counts
        clipped = np.minimum(counts, capacity)
        if (clipped < counts).any():
            overfull = np.nonzero(clipped < counts)[0]
            self.audit.record(SIM_BOX_EXHAUSTED, round_no, boxes=overfull.tolist())
        self.sim.breaker_counts += clipped
        if (self.sim.breaker_counts[np.nonzero(counts)[0]] >= self.n).any():
            self.audit.record(SIM_BOX_CAPACITY, round_no, side="adversary")
        danger = self.sim.max_active_danger()
        if danger is not None and danger > self._sim_danger_cap:
            self.audit.record(
                SIM_DANGER_BOUND, round_no,
                danger=danger, bound=self._sim_danger_cap,
            )

    def _maker_claim_happened(self, round_no: int) -> None:
        if self._adversary_since_claim > 4 * self.b:
            self.audit.record(
                SIM_BUDGET, round_no,
                added=self._adversary_since_claim, bound=4 * self.b,
            )
        self._adversary_since_claim = 0

    def _audit_active_degrees(self, state: GameState, round_no: int) -> None:
        active = self.sim.active_mask()
        if not active.any():
            return
        worst = int(state.breaker_degree[active].max())
        if worst >= self._active_degree_cap:
            self.audit.record(
                ACTIVE_BOX_DEGREE, round_no,
                degree=worst, bound=float(self._active_degree_cap),
            )

    def _check_maker_cap(self, vertex: int, round_no: int) -> None:
        if self.sim.maker_counts[vertex] > self._maker_cap:
            self.audit.record(
                SIM_BOX_CAPACITY, round_no, side="maker", box=int(vertex),
                count=int(self.sim.maker_counts[vertex]), cap=self._maker_cap,
            )

    # -- exposure bookkeeping ----------------------------------------------------

    def _expose_pair(self, u: int, v: int, round_no: int) -> None:
        if v not in self.unexposed[u] or u not in self.unexposed[v]:
            self.audit.record(EXPOSURE_REPEAT, round_no, pair=[int(u), int(v)])
            return
        self.unexposed[u].discard(v)
        self.unexposed[v].discard(u)
        self.unexposed_pairs -= 1

    # -- move legs ----------------------------------------------------------------

    def _filler(self, state: GameState) -> WalkerMove:
        w = state.walker_position
        owned = state.walker_edges_at(w)
        if owned.size == 0:
            raise RuntimeError(f"no owned edge at position {w} for a filler move")
        u = int(owned[0])
        return WalkerMove(((w, u), (u, w)))

    def _travel(self, state: GameState, target: int, round_no: int):
        w = state.walker_position
        own = state.own
        free_w = own[w] == FREE
        free_t = own[target] == FREE
        passable_w = free_w | (own[w] == WALKER_OWNED)
        passable_t = free_t | (own[target] == WALKER_OWNED)
        usable = passable_w & passable_t
        usable[target] = False
        if not usable.any():
            self.audit.record(
                CONNECTOR_MISSING, round_no,
                position=int(w), target=int(target),
            )
            return RESIGN
        # Prefer middles that claim fresh edges: they thicken her graph
        # (future successes on them are kept) and starve Breaker's supply.
        both_free = usable & free_w & free_t
        one_free = usable & (free_w | free_t)
        for mask in (both_free, one_free, usable):
            if mask.any():
                y = int(np.argmax(mask))
                return WalkerMove(((w, y), (y, target)))

    def _first_move(self, state: GameState, target: int, round_no: int):
        deg = state.breaker_degree.copy()
        deg[target] = np.iinfo(deg.dtype).max
        v0 = int(np.argmin(deg))
        own = state.own
        mids = np.nonzero((own[v0] == FREE) & (own[target] == FREE))[0]
        mids = mids[mids != target]
        if mids.size == 0:
            self.audit.record(
                CONNECTOR_MISSING, round_no, position=int(v0), target=int(target),
            )
            return RESIGN
        v1 = int(mids[0])
        return WalkerMove(((v0, v1), (v1, target)))

    # -- the exposure round ---------------------------------------------------------

    def _expose_at(self, state: GameState, v: int, round_no: int) -> WalkerMove:
        pool = sorted(self.unexposed[v])
        order = [pool[i] for i in self.rng.permutation(len(pool))] if pool else []
        success: Optional[int] = None
        for u in order:
            self._expose_pair(v, u, round_no)
            if self.rng.random() < self._p_float:
                success = u
                break
        self.exposure_vertex = None
        if success is None:
            # Type I failure: pool exhausted with no success; the box gets
            # flooded so this vertex never schedules again.
            self.failures_type1[v] += 1
            if self.failures_type1[v] > 1:
                self.audit.record(TYPE1_REPEAT, round_no, vertex=int(v))
            assert not self.unexposed[v]
            minbox_maker_claim_extra(self.sim, v, self._type1_extra)
            self._check_maker_cap(v, round_no)
            self._maker_claim_happened(round_no)
            return self._filler(state)
        u = success
        pair = (min(u, v), max(u, v))
        self.sample_edges.add(pair)
        owner = state.own[v, u]
        if owner == BREAKER_OWNED:
            self.failures_type2[v] += 1
            self.failures_type2[u] += 1
            return self._filler(state)
        self.secured_edges.add(pair)
        minbox_maker_claim_extra(self.sim, u, 1)
        self._check_maker_cap(u, round_no)
        self._maker_claim_happened(round_no)
        return WalkerMove(((v, u), (u, v)))

    def _enter_stage_two(self, state: GameState, round_no: int) -> None:
        self.stage = _STAGE_TWO
        self.audit.note(
            "stage_two", round_no, unexposed=self.unexposed_pairs,
        )
        for v in range(self.n):
            for u in sorted(self.unexposed[v]):
                if u < v:
                    continue
                self._expose_pair(v, u, round_no)
                if self.rng.random() < self._p_float:
                    pair = (v, u)
                    self.sample_edges.add(pair)
                    self.failures_type2[v] += 1
                    self.failures_type2[u] += 1
        assert self.unexposed_pairs == 0

    # -- interface ---------------------------------------------------------------------

    def walker_move(self, state: GameState):
        round_no = state.round_no + 1
        self._absorb_breaker_claims(state, round_no)
        self._audit_active_degrees(state, round_no)

        if self.stage == _STAGE_TWO:
            return self._filler(state)

        if state.free_count == 0:
            # The board is dead, so this is (at the latest) her final round:
            # flip every outstanding coin now, wherever the exposure stood.
            self._enter_stage_two(state, round_no)
            if state.walker_position is None:
                return RESIGN  # she never got to move at all
            return self._filler(state)

        if self.exposure_vertex is not None:
            v = self.exposure_vertex
            if state.walker_position == v:
                return self._expose_at(state, v, round_no)
            return self._travel(state, v, round_no)

        # No exposure vertex: schedule the next one through the simulation.
        try:
            v = minbox_maker_move(self.sim)
        except NoActiveBox:
            self._enter_stage_two(state, round_no)
            return self._filler(state)
        self._check_maker_cap(v, round_no)
        self._maker_claim_happened(round_no)
        self.exposure_vertex = v
        if state.walker_position is None:
            return self._first_move(state, v, round_no)
        if state.walker_position == v:
            return self._expose_at(state, v, round_no)
        return self._travel(state, v, round_no)

    # -- exports for analysis ---------------------------------------------------------

    def sample_graph(self) -> SimpleGraph:
        """H: every coin-success edge, distributed as G(n, p)."""
        return SimpleGraph(self.n, self.sample_edges)

    def secured_graph(self) -> SimpleGraph:
        """G': the coin successes Walker actually owns."""
        return SimpleGraph(self.n, self.secured_edges)
