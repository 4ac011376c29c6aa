"""Box games: the exact threshold recursion, a minimax oracle, and MinBox.

Two auxiliary games live here. The classic Box game Box(k, t, a, 1) is
played on k disjoint boxes holding t elements altogether, sizes as equal
as possible: BoxMaker claims a elements per move and wins by completing a
box, BoxBreaker claims one element per move (destroying a box for good).
BoxMaker wins under optimal play if and only if t <= boxmaker_threshold(k, a).

MinBox(n, D, alpha, b) is the defensive variant: Maker claims one element
per move and must reach alpha*D elements in every box against an adversary
adding up to b elements per exchange. Max-danger play keeps the danger
w_B - b*w_M of every free active box at most b*(ln n + 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import log
from typing import Callable, Optional, Sequence

import numpy as np

BOXMAKER = "BoxMaker"
BOXBREAKER = "BoxBreaker"

#: Full minimax is only attempted up to this many total elements.
ORACLE_ELEMENT_LIMIT = 18


class OracleBudget(ValueError):
    """Instance too large for the exact minimax oracle."""


class NoActiveBox(LookupError):
    """MinBox Maker has no free active box to play in."""


class BoxExhausted(ValueError):
    """An increment targeted a MinBox box with no free capacity left."""


def boxmaker_threshold(k: int, a: int) -> int:
    """Exact win threshold for BoxMaker in Box(k, t, a, 1).

    Defined by the recursion value(1) = 0, value(k) = floor(k*(value(k-1)+a)/(k-1)).
    BoxMaker wins the near-equal-size game on t elements iff t <= threshold.
    Computed iteratively in Python integers, so there is no overflow at any
    reachable scale.
    """
    if k < 1 or a < 1:
        raise ValueError("k and a must be positive")
    value = 0
    for i in range(2, k + 1):
        value = (i * (value + a)) // (i - 1)
    return value


def threshold_bounds(k: int, a: int) -> tuple[Fraction, Fraction]:
    """Exact rational bounds (a-1)*k*H and a*k*H with H = sum_{i<k} 1/i.

    Requires k >= 2 (the harmonic sum is empty otherwise).
    """
    if k < 2:
        raise ValueError("bounds are defined for k >= 2")
    if a < 1:
        raise ValueError("a must be positive")
    harmonic = sum((Fraction(1, i) for i in range(1, k)), Fraction(0))
    return (a - 1) * k * harmonic, a * k * harmonic


def boxmaker_wins(k: int, t: int, a: int) -> bool:
    """Box game criterion: BoxMaker wins Box(k, t, a, 1) iff t <= threshold."""
    if t < 0:
        raise ValueError("t must be non-negative")
    return t <= boxmaker_threshold(k, a)


def near_equal_sizes(k: int, t: int) -> tuple[int, ...]:
    """Box sizes differing by at most one that sum to t, largest first."""
    if k < 1 or t < 0:
        raise ValueError("need k >= 1 and t >= 0")
    q, r = divmod(t, k)
    return tuple([q + 1] * r + [q] * (k - r))


# ---------------------------------------------------------------------------
# Exact minimax oracle
# ---------------------------------------------------------------------------

def _maker_successors(sizes: tuple[int, ...], a: int):
    """Distinct sorted states after BoxMaker distributes her claims.

    Called only when no box can be completed this move, so every box keeps
    at least one free element.
    """
    seen = set()

    def spread(idx: int, left: int, current: list[int]):
        if idx == len(sizes):
            if left == 0:
                seen.add(tuple(sorted(current)))
            return
        max_here = min(left, sizes[idx] - 1)
        for take in range(max_here + 1):
            current.append(sizes[idx] - take)
            spread(idx + 1, left - take, current)
            current.pop()

    spread(0, a, [])
    return seen


@lru_cache(maxsize=None)
def _solve(sizes: tuple[int, ...], a: int, maker_to_move: bool) -> bool:
    """True iff BoxMaker wins from this multiset of surviving free counts."""
    if not sizes:
        return False
    if sizes[0] == 0 or (maker_to_move and sizes[0] <= a):
        # A box is complete, or BoxMaker can finish the smallest one now.
        return True
    if maker_to_move:
        total = sum(sizes)
        if total <= a:
            return True  # she can claim everything that is left
        return any(
            _solve(nxt, a, False) for nxt in _maker_successors(sizes, a)
        )
    # BoxBreaker destroys one surviving box (distinct sizes only).
    return all(
        _solve(_without_one(sizes, size), a, True) for size in set(sizes)
    )


def _without_one(sizes: tuple[int, ...], size: int) -> tuple[int, ...]:
    out = list(sizes)
    out.remove(size)
    return tuple(sorted(out))


def exact_box_game_winner(
    sizes: Sequence[int], a: int, first_player: str = BOXBREAKER
) -> str:
    """Game-theoretic winner of the Box game by full minimax with memoization.

    BoxBreaker moves first by default: that is the convention under which
    the t <= threshold criterion is exact (a single non-empty box is then a
    BoxBreaker win, matching threshold(1, a) = 0). Limited to instances with
    at most ORACLE_ELEMENT_LIMIT elements in total.
    """
    if a < 1:
        raise ValueError("a must be positive")
    if any(s < 0 for s in sizes):
        raise ValueError("box sizes must be non-negative")
    if sum(sizes) > ORACLE_ELEMENT_LIMIT:
        raise OracleBudget(
            f"total {sum(sizes)} exceeds oracle limit {ORACLE_ELEMENT_LIMIT}"
        )
    state = tuple(sorted(sizes))
    maker_first = first_player == BOXMAKER
    return BOXMAKER if _solve(state, a, maker_first) else BOXBREAKER


def minimax_breaker_move(sizes: Sequence[int], a: int) -> int:
    """Index of an optimal box for BoxBreaker to destroy (minimax play)."""
    order = list(range(len(sizes)))
    # Prefer a destroying move that flips the game to a BoxBreaker win.
    for i in order:
        rest = tuple(sorted(s for j, s in enumerate(sizes) if j != i))
        if not _solve(rest, a, True):
            return i
    return min(order, key=lambda i: sizes[i])


# ---------------------------------------------------------------------------
# Concrete Box game play
# ---------------------------------------------------------------------------

@dataclass
class Box:
    free: int
    destroyed: bool = False
    maker_count: int = 0


@dataclass
class BoxGameState:
    """State of one Box(k, t, a, 1) instance in progress."""

    boxes: list[Box]
    a: int
    turn: str = BOXBREAKER

    @classmethod
    def fresh(cls, sizes: Sequence[int], a: int, first_player: str = BOXBREAKER):
        if a < 1:
            raise ValueError("a must be positive")
        if max(sizes, default=0) - min(sizes, default=0) > 1:
            raise ValueError("box sizes must differ by at most one")
        return cls([Box(free=s) for s in sizes], a, first_player)

    def surviving(self) -> list[int]:
        return [i for i, b in enumerate(self.boxes) if not b.destroyed]

    def maker_won(self) -> bool:
        return any(not b.destroyed and b.free == 0 for b in self.boxes)

    def over(self) -> bool:
        return self.maker_won() or not self.surviving()


def boxmaker_strategy_move(state: BoxGameState) -> dict[int, int]:
    """BoxMaker's move as {box index: elements claimed}.

    Finish a completable surviving box when possible (smallest first),
    otherwise level the field: claim one element at a time from the
    surviving box with the most free elements, lowest index on ties. This
    realization beats every opponent on all near-equal instances within the
    exact win threshold; greedily attacking the fullest box instead does
    not (it loses e.g. the 3x3x3 instance with a=2 to smallest-box
    destruction).
    """
    budget = state.a
    claims: dict[int, int] = {}
    alive = state.surviving()
    if not alive:
        # Game already lost; claim arbitrary leftover elements.
        for i, box in enumerate(state.boxes):
            if budget == 0:
                break
            take = min(budget, box.free)
            if take:
                claims[i] = take
                budget -= take
        return claims

    free = {i: state.boxes[i].free for i in alive}
    finishable = [i for i in alive if free[i] <= budget]
    if finishable:
        target = min(finishable, key=lambda i: (free[i], i))
        claims[target] = free[target]
        budget -= free[target]
        del free[target]
    while budget > 0 and free:
        target = max(free, key=lambda i: (free[i], -i))
        claims[target] = claims.get(target, 0) + 1
        free[target] -= 1
        if free[target] == 0:
            del free[target]
        budget -= 1
    return claims


def apply_boxmaker_move(state: BoxGameState, claims: dict[int, int]) -> None:
    for i, count in claims.items():
        box = state.boxes[i]
        if count < 0 or count > box.free:
            raise ValueError(f"box {i} cannot yield {count} elements")
        box.free -= count
        box.maker_count += count
    state.turn = BOXBREAKER


def apply_boxbreaker_move(state: BoxGameState, index: Optional[int]) -> None:
    """BoxBreaker claims one element of the chosen box, destroying it."""
    if index is not None:
        box = state.boxes[index]
        if box.destroyed:
            raise ValueError(f"box {index} already destroyed")
        if box.free == 0:
            raise ValueError(f"box {index} has no free element to claim")
        box.free -= 1
        box.destroyed = True
    state.turn = BOXMAKER


def breaker_destroy_smallest(state: BoxGameState, rng=None) -> Optional[int]:
    alive = [i for i in state.surviving() if state.boxes[i].free > 0]
    if not alive:
        return None
    return min(alive, key=lambda i: (state.boxes[i].free, i))


def breaker_destroy_most_filled(state: BoxGameState, rng=None) -> Optional[int]:
    alive = [i for i in state.surviving() if state.boxes[i].free > 0]
    if not alive:
        return None
    return max(alive, key=lambda i: (state.boxes[i].maker_count, -i))


def breaker_destroy_random(state: BoxGameState, rng) -> Optional[int]:
    alive = [i for i in state.surviving() if state.boxes[i].free > 0]
    if not alive:
        return None
    return alive[int(rng.integers(len(alive)))]


def breaker_destroy_minimax(state: BoxGameState, rng=None) -> Optional[int]:
    alive = [i for i in state.surviving() if state.boxes[i].free > 0]
    if not alive:
        return None
    sizes = [state.boxes[i].free for i in alive]
    return alive[minimax_breaker_move(sizes, state.a)]


def play_box_game(
    sizes: Sequence[int],
    a: int,
    breaker_move: Callable[[BoxGameState], Optional[int]] = breaker_destroy_smallest,
    first_player: str = BOXBREAKER,
    rng: Optional[np.random.Generator] = None,
) -> str:
    """Play BoxMaker's concrete strategy against a BoxBreaker policy."""
    state = BoxGameState.fresh(sizes, a, first_player)
    if state.maker_won():
        return BOXMAKER
    while True:
        if state.turn == BOXMAKER:
            apply_boxmaker_move(state, boxmaker_strategy_move(state))
            if state.maker_won():
                return BOXMAKER
        else:
            try:
                choice = breaker_move(state, rng)  # type: ignore[call-arg]
            except TypeError:
                choice = breaker_move(state)
            apply_boxbreaker_move(state, choice)
        if not state.surviving():
            return BOXBREAKER


# ---------------------------------------------------------------------------
# MinBox
# ---------------------------------------------------------------------------

@dataclass
class MinBoxState:
    """MinBox(n, D, alpha, b): n boxes of capacity D under adversary budget b.

    maker_counts and breaker_counts are the per-box element tallies; a box
    is free while their sum is below D and active while the maker tally is
    below alpha*D. Danger of a box is breaker_counts - b * maker_counts.
    """

    n: int
    capacity: int
    alpha: Fraction
    budget: int
    maker_counts: np.ndarray = field(init=False)
    breaker_counts: np.ndarray = field(init=False)
    _active_below: int = field(init=False)

    def __post_init__(self) -> None:
        if self.n < 1 or self.capacity < 1 or self.budget < 1:
            raise ValueError("n, capacity and budget must be positive")
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie strictly between 0 and 1")
        self.maker_counts = np.zeros(self.n, dtype=np.int64)
        self.breaker_counts = np.zeros(self.n, dtype=np.int64)
        # active <=> maker < alpha*capacity <=> maker <= ceil(alpha*capacity)-1
        target = self.alpha * self.capacity
        self._active_below = int(-(-target.numerator // target.denominator))

    def dangers(self) -> np.ndarray:
        return self.breaker_counts - self.budget * self.maker_counts

    def free_mask(self) -> np.ndarray:
        return (self.maker_counts + self.breaker_counts) < self.capacity

    def active_mask(self) -> np.ndarray:
        return self.maker_counts <= self._active_below - 1

    def free_active_mask(self) -> np.ndarray:
        return self.free_mask() & self.active_mask()

    def danger_bound(self) -> float:
        """The guaranteed ceiling budget*(ln n + 1) under max-danger play."""
        return self.budget * (log(self.n) + 1.0)

    def max_active_danger(self) -> Optional[int]:
        mask = self.free_active_mask()
        if not mask.any():
            return None
        return int(self.dangers()[mask].max())


def minbox_maker_move(state: MinBoxState) -> int:
    """Claim one element in the free active box of maximum danger.

    Ties break to the lowest index. Raises NoActiveBox when no box is both
    free and active (the caller decides what that means for its game).
    """
    mask = state.free_active_mask()
    if not mask.any():
        raise NoActiveBox("no free active box")
    dangers = np.where(mask, state.dangers(), np.iinfo(np.int64).min)
    idx = int(np.argmax(dangers))
    state.maker_counts[idx] += 1
    return idx


def minbox_maker_claim_extra(state: MinBoxState, index: int, count: int) -> int:
    """Claim up to `count` additional free elements of one box; returns taken."""
    free = int(state.capacity - state.maker_counts[index] - state.breaker_counts[index])
    take = max(0, min(count, free))
    state.maker_counts[index] += take
    return take


def minbox_breaker_apply(state: MinBoxState, increments) -> None:
    """Apply adversary increments, given as {box index: count} or an array.

    Raises BoxExhausted if any target box lacks the free capacity; the
    state is unchanged in that case.
    """
    inc = np.zeros(state.n, dtype=np.int64)
    if isinstance(increments, dict):
        for i, c in increments.items():
            inc[i] += c
    else:
        inc += np.asarray(increments, dtype=np.int64)
    if (inc < 0).any():
        raise ValueError("increments must be non-negative")
    capacity_left = state.capacity - state.maker_counts - state.breaker_counts
    over = inc > capacity_left
    if over.any():
        raise BoxExhausted(f"box {int(np.argmax(over))} has no free capacity")
    state.breaker_counts += inc
