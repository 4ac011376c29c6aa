"""Audit log and parameter-regime predicates.

Strategies and the referee record quantitative invariant violations here
instead of crashing: inside a proven parameter regime a violation is a
hard failure of the implementation, outside it is a logged flag. The
acceptance suite asserts exact zero counts for the hard class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import log
from typing import Optional

# Audit tags. Hard ones must never fire inside the proven regimes.
UNVISITED_DEGREE_BOUND = "unvisited_degree_bound"   # d_B(a) <= 2b*ln(n) - b at target selection
TRAVEL_DEGREE_SUM = "travel_degree_sum"             # d_B(w)+d_B(a) <= 4b*ln(n) - b
TRAVEL_DEGREE_SUM_N2 = "travel_degree_sum_n2"       # d_B(w)+d_B(a) < n-2
CONNECTOR_MISSING = "connector_missing"             # no two-step route to the target existed
SIM_BUDGET = "sim_budget"                           # adversary added > 4b sim elements between claims
SIM_BOX_CAPACITY = "sim_box_capacity"               # sim tallies broke w_M < (1+2p)n or w_B < n
SIM_BOX_EXHAUSTED = "sim_box_exhausted"             # a sim increment hit a full box
ACTIVE_BOX_DEGREE = "active_box_degree"             # active box with d_B(v) >= eps(n-1)/5 + b
SIM_DANGER_BOUND = "sim_danger_bound"               # max-danger play exceeded budget*(ln n + 1)
TYPE1_REPEAT = "type1_repeat"                       # second no-success failure at one vertex
EXPOSURE_REPEAT = "exposure_repeat"                 # a pair was exposed twice
CLIQUE_INTEGRITY = "clique_integrity"               # clique lost >1 vertex or gained walker contact
FALLBACK_CONNECTOR = "fallback_connector"           # route reused a walker edge (out of spec text)
STRATEGY_RESIGNED = "strategy_resigned"
STAGE2_FILLER = "stage2_filler"                     # informational: filler moves after stage two

#: Tags that indicate broken invariants (as opposed to informational notes).
VIOLATION_TAGS = frozenset({
    UNVISITED_DEGREE_BOUND, TRAVEL_DEGREE_SUM, TRAVEL_DEGREE_SUM_N2,
    CONNECTOR_MISSING, SIM_BUDGET, SIM_BOX_CAPACITY, SIM_BOX_EXHAUSTED,
    ACTIVE_BOX_DEGREE, SIM_DANGER_BOUND, TYPE1_REPEAT, EXPOSURE_REPEAT,
    CLIQUE_INTEGRITY,
})

_EVENT_STORAGE_CAP = 100_000


@dataclass
class AuditEvent:
    tag: str
    round_no: int
    hard: bool
    detail: dict

    def to_json(self) -> dict:
        out = {"tag": self.tag, "round": self.round_no, "hard": self.hard}
        out.update(self.detail)
        return out


@dataclass
class AuditLog:
    """Collects audit events for one game.

    An event recorded while hard_mode is on counts as a hard violation;
    otherwise it is a flag. Counts are exact; the stored event list is
    capped (generously) to bound transcript size.
    """

    hard_mode: bool = True
    hard_counts: dict = field(default_factory=dict)
    flag_counts: dict = field(default_factory=dict)
    events: list = field(default_factory=list)
    _drained: int = 0

    def record(self, tag: str, round_no: int, **detail) -> None:
        bucket = self.hard_counts if self.hard_mode else self.flag_counts
        bucket[tag] = bucket.get(tag, 0) + 1
        if len(self.events) < _EVENT_STORAGE_CAP:
            self.events.append(AuditEvent(tag, round_no, self.hard_mode, detail))

    def note(self, tag: str, round_no: int, **detail) -> None:
        """Record an informational annotation (never a violation)."""
        self.flag_counts[tag] = self.flag_counts.get(tag, 0) + 1
        if len(self.events) < _EVENT_STORAGE_CAP:
            self.events.append(AuditEvent(tag, round_no, False, detail))

    def count(self, tag: str, include_flags: bool = True) -> int:
        total = self.hard_counts.get(tag, 0)
        if include_flags:
            total += self.flag_counts.get(tag, 0)
        return total

    def violation_count(self, tag: Optional[str] = None,
                        include_flags: bool = False) -> int:
        """Hard violations by default; flags only on request."""
        if tag is not None:
            if tag not in VIOLATION_TAGS:
                return 0
            return self.count(tag, include_flags)
        return sum(self.count(t, include_flags) for t in VIOLATION_TAGS)

    def drain_new_events(self) -> list[AuditEvent]:
        """Events recorded since the previous drain (for transcript rounds)."""
        fresh = self.events[self._drained:]
        self._drained = len(self.events)
        return fresh


def connectivity_in_regime(n: int, b: int, eps: Fraction = Fraction(1, 20)) -> bool:
    """Walker-side connectivity guarantee regime: b <= (1/4 - eps) * n / ln n."""
    if not 0 < eps < Fraction(1, 4):
        raise ValueError("eps must lie in (0, 1/4)")
    return b <= float(Fraction(1, 4) - eps) * n / log(n)


def hamiltonicity_in_regime(n: int, p: Fraction, eps: Fraction, b: int) -> bool:
    """Proven regime of the exposure strategy: tiny eps, p >= 10 ln n/(eps n),
    and b no larger than eps/(60p). Not satisfiable with b >= 1 at desk scale.
    """
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    if eps <= 0:
        raise ValueError("eps must be positive")
    if eps > Fraction(1, 100):
        return False
    if float(p) < 10 * log(n) / (float(eps) * n):
        return False
    return b <= float(eps) / (60 * float(p))


def isolation_in_regime(n: int, b: int) -> bool:
    """Breaker-side isolation regime at exact desk scale: with m = floor(b/2),
    the box-game criterion m*(n-m) <= threshold(m, b) holds."""
    from .boxgames import boxmaker_threshold

    m = b // 2
    if m < 1:
        return False
    return m * (n - m) <= boxmaker_threshold(m, b)
