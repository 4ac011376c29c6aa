"""Exact graph predicates used for win detection and run audits.

Everything here is deterministic and exact: connectivity by search,
Hamiltonicity by pruned backtracking with an explicit expansion budget,
degrees by counting. Graphs are tiny by modern standards (n up to a few
thousand), so clarity wins over asymptotics.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Iterable, Iterator, Optional


class NotSubgraph(ValueError):
    """Raised when a claimed subgraph contains an edge its host lacks."""


class SimpleGraph:
    """Undirected simple graph on vertices 0..n-1, adjacency as sets."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"self-loop at {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u},{v}) outside vertex range")
        self.adj[u].add(v)
        self.adj[v].add(u)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def copy(self) -> "SimpleGraph":
        return SimpleGraph(self.n, self.edges())

    def to_edge_list_lines(self) -> list[str]:
        """Serialize as one 'u v' line per edge, 0-indexed, u < v."""
        return [f"{u} {v}" for u, v in sorted(self.edges())]

    @classmethod
    def from_edge_list_lines(cls, n: int, lines: Iterable[str]) -> "SimpleGraph":
        edges = []
        for line in lines:
            line = line.strip()
            if not line:
                continue
            u, v = line.split()
            edges.append((int(u), int(v)))
        return cls(n, edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, m={self.edge_count()})"


def is_connected_spanning(g: SimpleGraph) -> bool:
    """True iff g is connected and every one of its n vertices is reachable.

    A one-vertex graph counts as connected; an empty vertex set does too.
    """
    if g.n <= 1:
        return True
    seen = bytearray(g.n)
    seen[0] = 1
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if not seen[v]:
                seen[v] = 1
                count += 1
                queue.append(v)
    return count == g.n


def degree_stats(g: SimpleGraph, vertices: Optional[Iterable[int]] = None):
    """Min, max and per-vertex degrees of the given vertices (default: all).

    Degrees are taken in the full graph, not in the induced subgraph.
    An empty vertex selection yields (0, 0, {}).
    """
    if vertices is None:
        vertices = range(g.n)
    degs = {v: g.degree(v) for v in vertices}
    for v in degs:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} outside range")
    if not degs:
        return 0, 0, {}
    values = degs.values()
    return min(values), max(values), degs


def min_degree_ratio(sub: SimpleGraph, sup: SimpleGraph) -> Fraction:
    """Minimum over vertices of d_sub(v) / d_sup(v), as an exact rational.

    Vertices isolated in the host graph are skipped; if every vertex is,
    the ratio is 1 by convention (nothing to lose). Raises NotSubgraph if
    sub has an edge the host lacks.
    """
    if sub.n != sup.n:
        raise NotSubgraph("graphs have different vertex counts")
    for u, v in sub.edges():
        if not sup.has_edge(u, v):
            raise NotSubgraph(f"edge ({u},{v}) not present in host graph")
    best: Optional[Fraction] = None
    for v in range(sup.n):
        d_sup = sup.degree(v)
        if d_sup == 0:
            continue
        ratio = Fraction(sub.degree(v), d_sup)
        if best is None or ratio < best:
            best = ratio
    return best if best is not None else Fraction(1)


#: Sentinel returned by has_hamilton_cycle when the expansion budget runs out.
UNKNOWN = None

DEFAULT_HAMILTON_BUDGET = 10**8


def has_hamilton_cycle(g: SimpleGraph, budget: int = DEFAULT_HAMILTON_BUDGET):
    """Exact Hamilton-cycle decision: True, False, or UNKNOWN (None).

    Backtracking search anchored at vertex 0, extending by lowest-index
    neighbour first, with degree and connectivity pruning. UNKNOWN is
    returned only when more than `budget` node expansions were needed;
    dense graphs of the sizes used here decide well within the default.
    """
    n = g.n
    if n < 3:
        return False
    # Cheap necessary conditions.
    if any(len(g.adj[v]) < 2 for v in range(n)):
        return False
    if not is_connected_spanning(g):
        return False
    if n == 3:
        return g.has_edge(0, 1) and g.has_edge(1, 2) and g.has_edge(0, 2)

    adj_bits = [0] * n
    for u in range(n):
        for v in g.adj[u]:
            adj_bits[u] |= 1 << v
    neighbours = [sorted(g.adj[u]) for u in range(n)]
    full = (1 << n) - 1
    start_bit = 1

    expansions = 0
    # Stack holds (vertex, iterator over its unvisited extensions).
    path = [0]
    visited = start_bit
    iters = [iter(neighbours[0])]

    def closed_off(visited_mask: int, cur: int) -> bool:
        # Prune if the unvisited region plus the current endpoint is
        # disconnected, or some unvisited vertex lost all its exits.
        rest = full & ~visited_mask
        if rest == 0:
            return False
        comp = 1 << cur
        frontier = comp
        allowed = rest | (1 << cur)
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= adj_bits[low.bit_length() - 1]
                f ^= low
            nxt &= allowed & ~comp
            comp |= nxt
            frontier = nxt
        if rest & ~comp:
            return True
        f = rest
        while f:
            low = f & -f
            v = low.bit_length() - 1
            f ^= low
            # v needs two free endpoints among unvisited/current/start.
            exits = adj_bits[v] & (rest | (1 << cur) | start_bit)
            if exits == 0 or exits == (exits & -exits):
                return True
        return False

    while True:
        if expansions > budget:
            return UNKNOWN
        cur = path[-1]
        advanced = False
        for v in iters[-1]:
            bit = 1 << v
            if visited & bit:
                continue
            expansions += 1
            if len(path) == n - 1:
                # Last vertex: must close back to the anchor.
                if adj_bits[v] & start_bit:
                    return True
                continue
            visited |= bit
            path.append(v)
            if closed_off(visited, v):
                visited &= ~bit
                path.pop()
                continue
            iters.append(iter(neighbours[v]))
            advanced = True
            break
        if advanced:
            continue
        # Exhausted extensions of the current endpoint: backtrack.
        path.pop()
        iters.pop()
        if not path:
            return False
        visited &= ~(1 << cur)


def hamilton_cycle_brute_force(g: SimpleGraph) -> bool:
    """Permutation enumeration oracle for tiny graphs (independent check).

    Enumerates vertex orders starting at 0, abandoning a prefix as soon as
    a consecutive pair is not an edge. No degree or connectivity pruning,
    no budget: exact for n up to ~10.
    """
    n = g.n
    if n < 3:
        return False

    def extend(prefix: list[int], remaining: set[int]) -> bool:
        if not remaining:
            return g.has_edge(prefix[-1], 0)
        last = prefix[-1]
        for v in sorted(remaining):
            if g.has_edge(last, v):
                if extend(prefix + [v], remaining - {v}):
                    return True
        return False

    return extend([0], set(range(1, n)))


def petersen_graph() -> SimpleGraph:
    """The Petersen graph: 3-regular, vertex-transitive, not Hamiltonian."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return SimpleGraph(10, outer + spokes + inner)
