"""Referee for biased Walker-Breaker games on the complete graph K_n.

The board is every unordered pair of vertices 0..n-1. Breaker claims
`breaker_bias` free edges per move; Walker makes a walk of `walker_bias`
steps from her current position, claiming each free edge she crosses.
She may re-traverse her own edges but never Breaker's. All ownership is
tracked in a symmetric matrix plus a swap-pop free-edge list so that
uniform sampling of free edges and per-vertex scans stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

import numpy as np

FREE = 0
WALKER_OWNED = 1
BREAKER_OWNED = 2
_DIAGONAL = 3  # sentinel: a vertex has no edge to itself


class Player(Enum):
    WALKER = "walker"
    BREAKER = "breaker"


class Outcome(Enum):
    RUNNING = "running"
    WALKER_WIN = "walker_win"
    BREAKER_WIN = "breaker_win"
    WALKER_RESIGN = "walker_resign"


class GameError(Exception):
    """Base class for rule violations detected by the referee."""


class InvalidConfig(GameError):
    pass


class IllegalClaim(GameError):
    pass


class BadBias(GameError):
    pass


class TurnError(GameError):
    pass


class IllegalTraversal(GameError):
    pass


class BrokenWalk(GameError):
    pass


class StrategyFault(GameError):
    """A strategy produced an illegal move; carries the offender's name."""

    def __init__(self, strategy_name: str, cause: Exception) -> None:
        super().__init__(f"strategy {strategy_name!r}: {cause}")
        self.strategy_name = strategy_name
        self.cause = cause


def normalize_pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class WalkerMove:
    """An ordered walk of exactly walker_bias steps; steps[i] = (from, to)."""

    steps: tuple[tuple[int, int], ...]

    @property
    def start(self) -> int:
        return self.steps[0][0]

    @property
    def end(self) -> int:
        return self.steps[-1][1]


@dataclass(frozen=True)
class BreakerMove:
    edges: tuple[tuple[int, int], ...]


class GameState:
    """Full board state of one Walker-Breaker game."""

    def __init__(self, n: int, walker_bias: int, breaker_bias: int,
                 first_player: Player) -> None:
        self.n = n
        self.walker_bias = walker_bias
        self.breaker_bias = breaker_bias
        self.first_player = first_player
        self.turn = first_player
        self.round_no = 0
        self.walker_position: Optional[int] = None
        self.over = Outcome.RUNNING

        self.own = np.zeros((n, n), dtype=np.int8)
        np.fill_diagonal(self.own, _DIAGONAL)
        self.breaker_degree = np.zeros(n, dtype=np.int32)
        self.walker_degree = np.zeros(n, dtype=np.int32)
        self.visited = np.zeros(n, dtype=bool)
        self.walker_edge_count = 0
        self.breaker_edge_count = 0

        # Pair ids enumerate (u, v), u < v, in lexicographic order.
        m = n * (n - 1) // 2
        self.edge_u = np.repeat(np.arange(n, dtype=np.int32), np.arange(n - 1, -1, -1))
        self.edge_v = np.concatenate(
            [np.arange(u + 1, n, dtype=np.int32) for u in range(n)]
        ) if n > 1 else np.zeros(0, dtype=np.int32)
        self.free_list = np.arange(m, dtype=np.int64)
        self.free_pos = np.arange(m, dtype=np.int64)
        self.free_count = m

        # Chronological log of Breaker's claims (for strategies that react
        # to each of his edges) and Walker's visit order.
        self.breaker_claims: list[tuple[int, int]] = []
        self.visit_order: list[int] = []

    # -- edge bookkeeping ---------------------------------------------------

    def pair_id(self, u: int, v: int) -> int:
        u, v = normalize_pair(u, v)
        return u * (2 * self.n - u - 1) // 2 + (v - u - 1)

    def owner(self, u: int, v: int) -> int:
        return int(self.own[u, v])

    def is_free(self, u: int, v: int) -> bool:
        return self.own[u, v] == FREE

    def _remove_free(self, pid: int) -> None:
        pos = self.free_pos[pid]
        last = self.free_list[self.free_count - 1]
        self.free_list[pos] = last
        self.free_pos[last] = pos
        self.free_count -= 1
        self.free_pos[pid] = -1

    def claim_edge(self, u: int, v: int, owner: int) -> None:
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            raise IllegalClaim(f"({u},{v}) is not a board edge")
        if self.own[u, v] != FREE:
            raise IllegalClaim(f"edge ({u},{v}) is not free")
        self.own[u, v] = owner
        self.own[v, u] = owner
        self._remove_free(self.pair_id(u, v))
        if owner == WALKER_OWNED:
            self.walker_degree[u] += 1
            self.walker_degree[v] += 1
            self.walker_edge_count += 1
            for x in (u, v):
                if not self.visited[x]:
                    self.visited[x] = True
                    self.visit_order.append(x)
        else:
            self.breaker_degree[u] += 1
            self.breaker_degree[v] += 1
            self.breaker_edge_count += 1
            self.breaker_claims.append((u, v))

    def random_free_edges(self, count: int, rng: np.random.Generator):
        """Sample `count` distinct free edges uniformly (without replacement)."""
        count = min(count, self.free_count)
        if count == 0:
            return []
        idx = rng.choice(self.free_count, size=count, replace=False)
        pids = self.free_list[np.sort(idx)]
        return [(int(self.edge_u[p]), int(self.edge_v[p])) for p in pids]

    def free_edges_at(self, v: int) -> np.ndarray:
        """Co-endpoints w with edge (v, w) free, ascending."""
        return np.nonzero(self.own[v] == FREE)[0]

    def walker_edges_at(self, v: int) -> np.ndarray:
        return np.nonzero(self.own[v] == WALKER_OWNED)[0]

    def unvisited_mask(self) -> np.ndarray:
        return ~self.visited

    def walker_graph_edges(self) -> Iterable[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.own == WALKER_OWNED))
        return zip(us.tolist(), vs.tolist())

    def breaker_graph_edges(self) -> Iterable[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.own == BREAKER_OWNED))
        return zip(us.tolist(), vs.tolist())

    def digest_tuple(self) -> tuple:
        """Canonical value equality key (used for replay verification)."""
        return (
            self.n, self.walker_bias, self.breaker_bias,
            self.first_player.value, self.round_no,
            self.walker_position, self.over.value,
            self.own.tobytes(),
        )


def new_game(n: int, b: int, first_player: Player = Player.BREAKER,
             walker_bias: int = 2) -> GameState:
    """Fresh game on K_n with Breaker bias b. Requires n >= 3, b >= 1."""
    if n < 3:
        raise InvalidConfig(f"need at least 3 vertices, got {n}")
    if b < 1:
        raise InvalidConfig(f"breaker bias must be >= 1, got {b}")
    if walker_bias < 1:
        raise InvalidConfig(f"walker bias must be >= 1, got {walker_bias}")
    return GameState(n, walker_bias, b, first_player)


def legal_steps(state: GameState, origin: int) -> set[int]:
    """Vertices reachable in one step from origin: free or Walker edges."""
    row = state.own[origin]
    return set(np.nonzero((row == FREE) | (row == WALKER_OWNED))[0].tolist())


def apply_breaker_move(state: GameState, move: BreakerMove) -> GameState:
    """Claim Breaker's edges: exactly b of them, or all that remain."""
    if state.over is not Outcome.RUNNING:
        raise TurnError("game is over")
    if state.turn is not Player.BREAKER:
        raise TurnError("not Breaker's turn")
    edges = [normalize_pair(u, v) for u, v in move.edges]
    if len(set(edges)) != len(edges):
        raise IllegalClaim("duplicate edge in Breaker move")
    expected = min(state.breaker_bias, state.free_count)
    if len(edges) != expected:
        raise BadBias(
            f"Breaker must claim {expected} edges here, move has {len(edges)}"
        )
    for u, v in edges:
        if state.own[u, v] != FREE:
            raise IllegalClaim(f"edge ({u},{v}) is not free")
    for u, v in edges:
        state.claim_edge(u, v, BREAKER_OWNED)
    state.turn = Player.WALKER
    return state


def apply_walker_move(state: GameState, move: WalkerMove) -> GameState:
    """Walk the steps, claiming each free edge crossed; position follows."""
    if state.over is not Outcome.RUNNING:
        raise TurnError("game is over")
    if state.turn is not Player.WALKER:
        raise TurnError("not Walker's turn")
    steps = move.steps
    if len(steps) != state.walker_bias:
        raise BadBias(
            f"Walker must take {state.walker_bias} steps, move has {len(steps)}"
        )
    if state.walker_position is not None and steps[0][0] != state.walker_position:
        raise BrokenWalk(
            f"walk starts at {steps[0][0]}, Walker stands at {state.walker_position}"
        )
    at = steps[0][0]
    for x, y in steps:
        if x != at:
            raise BrokenWalk(f"step ({x},{y}) does not continue from {at}")
        if x == y or not (0 <= x < state.n and 0 <= y < state.n):
            raise BrokenWalk(f"step ({x},{y}) is not a board edge")
        if state.own[x, y] == BREAKER_OWNED:
            raise IllegalTraversal(f"edge ({x},{y}) belongs to Breaker")
        at = y
    for x, y in steps:
        if state.own[x, y] == FREE:
            state.claim_edge(x, y, WALKER_OWNED)
    state.walker_position = at
    state.turn = Player.BREAKER
    return state


def edge_conservation_ok(state: GameState) -> bool:
    total = state.n * (state.n - 1) // 2
    return state.walker_edge_count + state.breaker_edge_count + state.free_count == total
