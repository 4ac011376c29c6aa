"""Strategy registry: every player selectable by name string."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional

from .baselines import GreedyStarBreaker, RandomBreaker, RandomWalker
from .connectivity import ConnectivityWalker
from .hamiltonicity import ExposureWalker
from .isolation import IsolationBreaker

__all__ = [
    "ConnectivityWalker", "ExposureWalker", "GreedyStarBreaker",
    "IsolationBreaker", "RandomBreaker", "RandomWalker",
    "make_strategy", "strategy_names",
]

_FACTORIES: dict[str, Callable] = {
    "walker.connectivity": lambda p, eps: ConnectivityWalker(
        eps if eps is not None else Fraction(1, 20)
    ),
    "walker.hamiltonicity": lambda p, eps: ExposureWalker(
        p if p is not None else Fraction(2, 5),
        eps if eps is not None else Fraction(1, 5),
    ),
    "walker.random": lambda p, eps: RandomWalker(),
    "breaker.isolation": lambda p, eps: IsolationBreaker(),
    "breaker.random": lambda p, eps: RandomBreaker(),
    "breaker.greedy_star": lambda p, eps: GreedyStarBreaker(),
}


def strategy_names() -> list[str]:
    return sorted(_FACTORIES)


def make_strategy(name: str, p: Optional[Fraction] = None,
                  eps: Optional[Fraction] = None):
    """Instantiate a strategy by its registry name.

    p and eps configure the hamiltonicity walker (exposure probability and
    degree-loss tolerance); the connectivity walker reads eps for its
    regime audit; other strategies ignore both.
    """
    try:
        factory = _FACTORIES[name]
    except KeyError:
        raise KeyError(
            f"unknown strategy {name!r}; available: {', '.join(strategy_names())}"
        ) from None
    return factory(p, eps)
