"""Shared data model: instances, solutions, solution tuples and diversity measures.

Sets of elements are always kept in canonical form, a strictly increasing
tuple of 1-based integer ids.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence, Tuple

Solution = Tuple[int, ...]


class InstanceError(ValueError):
    """Malformed instance, graph or solution data."""


def canon(elements: Iterable[int]) -> Solution:
    """Return the canonical (sorted, duplicate-free) form of a set of elements."""
    return tuple(sorted(set(int(e) for e in elements)))


def _check_range(elements: Iterable[int], n: int, what: str) -> None:
    for e in elements:
        if not 1 <= e <= n:
            raise InstanceError(f"{what}: element {e} outside [1, {n}]")


@dataclass(frozen=True)
class HypergraphInstance:
    """Universe ``{1..n}`` with a family of nonempty sets of size at most ``d``."""

    n: int
    family: Tuple[Solution, ...]
    d: int

    def __post_init__(self):
        if self.n < 0:
            raise InstanceError(f"negative universe size {self.n}")
        if self.d < 1:
            raise InstanceError(f"set size bound d must be >= 1, got {self.d}")
        sets = []
        for raw in self.family:
            s = canon(raw)
            if not s:
                raise InstanceError("family contains the empty set")
            if len(s) > self.d:
                raise InstanceError(f"set {s} has size {len(s)} > d={self.d}")
            _check_range(s, self.n, "family")
            sets.append(s)
        object.__setattr__(self, "family", tuple(sorted(set(sets))))

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]], d: int | None = None):
        sets = [canon(s) for s in sets]
        if d is None:
            d = max((len(s) for s in sets), default=1)
        return cls(n, tuple(sets), d)

    def is_hitting_set(self, s: Iterable[int]) -> bool:
        chosen = set(s)
        return all(chosen.intersection(f) for f in self.family)


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on vertices ``1..n``; edges stored as sorted pairs."""

    n: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise InstanceError(f"negative vertex count {self.n}")
        es = set()
        for u, v in self.edges:
            if u == v:
                raise InstanceError(f"self-loop at vertex {u}")
            _check_range((u, v), self.n, "edge")
            es.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(es)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        return cls(n, tuple((int(u), int(v)) for u, v in edges))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def is_forest_without(self, removed: Iterable[int] = ()) -> bool:
        """True iff deleting ``removed`` leaves an acyclic graph."""
        gone = set(removed)
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            if u in gone or v in gone:
                continue
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    def is_fvs(self, s: Iterable[int]) -> bool:
        return self.is_forest_without(s)

    def is_vertex_cover(self, s: Iterable[int]) -> bool:
        chosen = set(s)
        return all(u in chosen or v in chosen for u, v in self.edges)


@dataclass(frozen=True)
class SolutionTuple:
    """Ordered r-tuple of solutions, each of size at most k. Repetition allowed."""

    solutions: Tuple[Solution, ...]
    k: int

    def __post_init__(self):
        sols = tuple(canon(s) for s in self.solutions)
        for s in sols:
            if len(s) > self.k:
                raise InstanceError(f"solution {s} exceeds budget k={self.k}")
        object.__setattr__(self, "solutions", sols)

    @property
    def r(self) -> int:
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def __len__(self):
        return len(self.solutions)

    def __getitem__(self, i):
        return self.solutions[i]


def _sets(t) -> Sequence[Solution]:
    return t.solutions if isinstance(t, SolutionTuple) else t


def hamming_distance(a: Iterable[int], b: Iterable[int]) -> int:
    """Size of the symmetric difference of ``a`` and ``b``."""
    return len(set(a) ^ set(b))


def div_total(t) -> int:
    """Sum of pairwise Hamming distances over all pairs i < j."""
    sols = _sets(t)
    return sum(hamming_distance(a, b) for a, b in combinations(sols, 2))


def div_total_by_frequency(t, n: int) -> int:
    """Same value as :func:`div_total`, computed as sum of y_v * (r - y_v)
    where y_v counts the solutions containing v."""
    sols = _sets(t)
    r = len(sols)
    counts = Counter()
    for s in sols:
        _check_range(s, n, "solution")
        counts.update(set(s))
    return sum(y * (r - y) for y in counts.values())


def div_min(t) -> int:
    """Minimum pairwise Hamming distance. Undefined (error) for fewer than 2 solutions."""
    sols = _sets(t)
    if len(sols) < 2:
        raise InstanceError("div_min needs at least two solutions")
    return min(hamming_distance(a, b) for a, b in combinations(sols, 2))


def diversity(t, measure: str) -> int:
    if measure == "total":
        return div_total(t)
    if measure == "min":
        return div_min(t)
    raise ValueError(f"unknown measure {measure!r}")


def vc_as_hitting_set(g: SimpleGraph) -> HypergraphInstance:
    """Encode vertex cover as 2-hitting set: one 2-set per edge."""
    return HypergraphInstance(g.n, tuple(g.edges), 2)
