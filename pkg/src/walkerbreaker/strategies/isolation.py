"""Breaker's isolation strategy: build a private clique, then starve one
of its vertices.

Stage one grows a clique of Walker-untouched vertices, two per move (the
new pair's edge plus every edge joining the pair to the current clique);
Walker can spoil at most one clique vertex per round, so the clique gains
a vertex per round net. Once the clique reaches floor(b/2) vertices, stage
two treats each surviving clique vertex as a box of its free incident
edges and plays the balancing box attack with b claims per move. Filling
a box means some untouched vertex has every incident edge in Breaker's
graph: Walker can never reach it, and the referee calls the game.
"""

from __future__ import annotations

import numpy as np

from ..audits import CLIQUE_INTEGRITY
from ..board import BreakerMove, GameState, FREE, BREAKER_OWNED
from ..engine import GameContext

_BUILD = "build_clique"
_ATTACK = "box_attack"


class IsolationBreaker:
    """Clique-then-box-attack Breaker for the connectivity game."""

    name = "breaker.isolation"

    def reset(self, ctx: GameContext) -> None:
        self.audit = ctx.audit
        self.b = ctx.breaker_bias
        self.m_target = ctx.breaker_bias // 2
        self.clique: list[int] = []
        self.stage = _BUILD if self.m_target >= 1 else _ATTACK
        self._scan_pid = 0
        self._walker_has_moved = False

    # -- bookkeeping -----------------------------------------------------------

    def _evict_visited(self, state: GameState) -> None:
        gone = [c for c in self.clique if state.visited[c]]
        # Walker's opening move visits three vertices and may touch two
        # clique members at once; any later walk cannot, because two clique
        # vertices never share a traversable edge.
        opening_damage = (
            not self._walker_has_moved and state.walker_position is not None
        )
        self._walker_has_moved = state.walker_position is not None
        if len(gone) > 1 and not opening_damage:
            self.audit.record(
                CLIQUE_INTEGRITY, state.round_no + 1,
                evicted=gone, clique=list(self.clique),
            )
        for c in gone:
            self.clique.remove(c)

    def _fill_leftover(self, state: GameState, chosen: list, budget: int) -> int:
        """Spend remaining budget on free edges at clique vertices, then
        anywhere (lowest indices first)."""
        taken = {tuple(e) for e in chosen}
        for c in sorted(self.clique):
            if budget == 0:
                return 0
            for w in np.nonzero(state.own[c] == FREE)[0]:
                pair = (min(c, int(w)), max(c, int(w)))
                if pair in taken:
                    continue
                chosen.append(pair)
                taken.add(pair)
                budget -= 1
                if budget == 0:
                    return 0
        if budget > 0:
            # Lexicographically smallest free edges. Pair ids are already in
            # that order and never return to the free set once claimed, so a
            # persistent cursor scans each id at most once per game.
            total = state.n * (state.n - 1) // 2
            pid = self._scan_pid
            while budget > 0 and pid < total:
                if state.free_pos[pid] >= 0:
                    pair = (int(state.edge_u[pid]), int(state.edge_v[pid]))
                    if pair not in taken:
                        chosen.append(pair)
                        taken.add(pair)
                        budget -= 1
                pid += 1
            self._scan_pid = pid
        return budget

    # -- stages ----------------------------------------------------------------

    def _build_move(self, state: GameState, budget: int) -> list[tuple[int, int]]:
        chosen: list[tuple[int, int]] = []
        untouched = np.nonzero((state.walker_degree == 0))[0]
        pool = [int(v) for v in untouched if v not in self.clique]
        want = self.m_target - len(self.clique)
        if want >= 2 and len(pool) >= 2:
            u, v = pool[0], pool[1]
            new_edges = []
            if state.own[u, v] == FREE:
                new_edges.append((min(u, v), max(u, v)))
            for c in self.clique:
                for x in (u, v):
                    if state.own[c, x] == FREE:
                        new_edges.append((min(c, x), max(c, x)))
            if len(new_edges) <= budget:
                chosen.extend(new_edges)
                budget -= len(new_edges)
                self.clique.extend([u, v])
            else:
                self.stage = _ATTACK
                self.audit.note(
                    "clique_stage_abort", state.round_no + 1,
                    reason="pair extension exceeds bias", clique=len(self.clique),
                )
        elif want == 1 and pool:
            u = pool[0]
            new_edges = [
                (min(c, u), max(c, u)) for c in self.clique
                if state.own[c, u] == FREE
            ]
            if len(new_edges) <= budget:
                chosen.extend(new_edges)
                budget -= len(new_edges)
                self.clique.append(u)
            else:
                self.stage = _ATTACK
        elif want >= 2 and len(pool) < 2:
            self.stage = _ATTACK
            self.audit.note(
                "clique_stage_abort", state.round_no + 1,
                reason="no two untouched vertices", clique=len(self.clique),
            )
        if len(self.clique) >= self.m_target:
            self.stage = _ATTACK
        self._fill_leftover(state, chosen, budget)
        return chosen

    def _attack_move(self, state: GameState, budget: int) -> list[tuple[int, int]]:
        """Balancing box attack over the clique vertices' free stars."""
        chosen: list[tuple[int, int]] = []
        boxes = {
            c: [int(w) for w in np.nonzero(state.own[c] == FREE)[0]]
            for c in self.clique
        }
        boxes = {c: ws for c, ws in boxes.items() if ws}
        # Finish everything finishable, smallest star first.
        while boxes and budget > 0:
            finishable = [c for c, ws in boxes.items() if len(ws) <= budget]
            if not finishable:
                break
            c = min(finishable, key=lambda c: (len(boxes[c]), c))
            for w in boxes.pop(c):
                chosen.append((min(c, w), max(c, w)))
                budget -= 1
        # Then level: one edge at a time from the largest remaining star.
        while boxes and budget > 0:
            c = max(boxes, key=lambda c: (len(boxes[c]), -c))
            w = boxes[c].pop(0)
            chosen.append((min(c, w), max(c, w)))
            if not boxes[c]:
                del boxes[c]
            budget -= 1
        self._fill_leftover(state, chosen, budget)
        return chosen

    # -- interface ---------------------------------------------------------------

    def breaker_move(self, state: GameState) -> BreakerMove:
        self._evict_visited(state)
        budget = min(self.b, state.free_count)
        if budget == 0:
            return BreakerMove(())
        round_guard = state.round_no + 1 < state.n / 2 - 2
        if self.stage == _BUILD and not round_guard:
            self.stage = _ATTACK
        if self.stage == _BUILD:
            chosen = self._build_move(state, budget)
        else:
            chosen = self._attack_move(state, budget)
        return BreakerMove(tuple(chosen))

    # Exposed for tests and the win certificate.
    def surviving_clique(self, state: GameState) -> list[int]:
        return [c for c in self.clique if not state.visited[c]]
