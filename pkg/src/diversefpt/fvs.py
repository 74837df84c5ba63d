"""Classes of feedback vertex sets.

A class ``(S, l)`` stands for every vertex set that picks at least one
vertex from each label set ``l(v)``, ``v in S``. The construction below
produces a collection of at most ``2**(7k)`` classes such that every
feedback vertex set of size <= k contains a member of some class:

1. find one FVS ``F`` with ``|F| <= k``;
2. for every ``F' subset of F`` start a branch with ``A = F'`` (forced in)
   and ``B = F - F'`` (forced out), all other vertices undecided (``C``);
3. reduce (drop low-degree C-vertices, contract adjacent degree-2
   C-vertices while merging their labels), pick a deepest leaf of
   ``G'[C]`` and branch on where it and up to two nearby vertices go.

Each branching step raises ``|A| - cc(B)``, which lives in ``[-k, k]``,
so a branch makes at most 2k steps.
"""

from __future__ import annotations

import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

from .model import SimpleGraph, Solution, canon

log = logging.getLogger(__name__)


class WorkGraph:
    """Undirected multigraph with self-loops, supporting deletion and contraction.

    ``adj[v][w]`` is the number of parallel v-w edges (v != w); ``loops[v]``
    the number of self-loops at v. A loop adds 2 to the degree.
    """

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[Tuple[int, int]] = ()):
        self.adj: Dict[int, Counter] = {v: Counter() for v in vertices}
        self.loops: Counter = Counter()
        for u, v in edges:
            self.add_edge(u, v)

    @classmethod
    def from_graph(cls, g: SimpleGraph) -> "WorkGraph":
        return cls(g.vertices, g.edges)

    def copy(self) -> "WorkGraph":
        h = WorkGraph()
        h.adj = {v: Counter(nb) for v, nb in self.adj.items()}
        h.loops = Counter(self.loops)
        return h

    @property
    def vertices(self) -> Set[int]:
        return set(self.adj)

    def __contains__(self, v) -> bool:
        return v in self.adj

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            self.loops[u] += 1
        else:
            self.adj[u][v] += 1
            self.adj[v][u] += 1

    def remove_vertex(self, v: int) -> None:
        for w in self.adj.pop(v):
            del self.adj[w][v]
        self.loops.pop(v, None)

    def degree(self, v: int, within: Optional[Set[int]] = None) -> int:
        """Degree of v counting multiplicity; if ``within`` is given, only
        edges to vertices of ``within`` count."""
        nb = self.adj[v]
        if within is None:
            d = sum(nb.values())
        else:
            d = sum(m for w, m in nb.items() if w in within)
        return d + 2 * self.loops[v]

    def neighbors(self, v: int, within: Optional[Set[int]] = None) -> List[int]:
        """Neighbors of v with multiplicity, sorted."""
        out = []
        for w in sorted(self.adj[v]):
            if within is None or w in within:
                out.extend([w] * self.adj[v][w])
        return out

    def contract(self, u: int) -> Tuple[int, int]:
        """Replace degree-2 vertex u (no loop) and its two edges by one edge."""
        nbs = self.neighbors(u)
        if len(nbs) != 2 or self.loops[u]:
            raise ValueError(f"vertex {u} does not have exactly two incident edges")
        self.remove_vertex(u)
        self.add_edge(nbs[0], nbs[1])
        return nbs[0], nbs[1]

    def edge_count(self) -> int:
        return sum(sum(nb.values()) for nb in self.adj.values()) // 2 + sum(self.loops.values())

    def components(self, within: Optional[Set[int]] = None) -> List[Set[int]]:
        verts = self.vertices if within is None else within & self.vertices
        seen: Set[int] = set()
        comps = []
        for s in sorted(verts):
            if s in seen:
                continue
            comp = {s}
            queue = deque([s])
            seen.add(s)
            while queue:
                x = queue.popleft()
                for w in self.adj[x]:
                    if w in verts and w not in seen:
                        seen.add(w)
                        comp.add(w)
                        queue.append(w)
            comps.append(comp)
        return comps

    def is_forest(self, within: Optional[Set[int]] = None) -> bool:
        """Acyclicity of the induced sub-multigraph (loops and parallel edges are cycles)."""
        verts = self.vertices if within is None else within & self.vertices
        edges = 0
        for v in verts:
            if self.loops[v]:
                return False
            for w, m in self.adj[v].items():
                if w in verts:
                    if m > 1:
                        return False
                    edges += 1
        return edges // 2 == len(verts) - len(self.components(verts))


@dataclass(frozen=True)
class SolutionClass:
    """Core vertices with pairwise disjoint label sets; ``labels[i]`` belongs to ``core[i]``."""

    core: Solution
    labels: Tuple[Solution, ...]

    def __post_init__(self):
        if len(self.core) != len(self.labels):
            raise ValueError("core and labels differ in length")
        seen: Set[int] = set()
        for v, lab in zip(self.core, self.labels):
            if v not in lab:
                raise ValueError(f"label set of {v} does not contain it")
            if seen.intersection(lab):
                raise ValueError("label sets are not disjoint")
            seen.update(lab)

    @classmethod
    def from_map(cls, labels: Dict[int, Iterable[int]]) -> "SolutionClass":
        core = tuple(sorted(labels))
        return cls(core, tuple(canon(labels[v]) for v in core))

    @property
    def label_map(self) -> Dict[int, Solution]:
        return dict(zip(self.core, self.labels))

    def members(self) -> Iterator[Solution]:
        """Iterate sol(S, l): one vertex from each label set."""
        for pick in product(*self.labels):
            yield canon(pick)


def class_describes(c: SolutionClass, s: Iterable[int]) -> bool:
    """True iff ``s`` contains some member of sol(c), i.e. meets every label set."""
    chosen = set(s)
    return all(chosen.intersection(lab) for lab in c.labels)


# -- exact FVS search ---------------------------------------------------------


def _shortest_cycle_vertices(g: WorkGraph) -> List[int]:
    """Vertex set containing a shortest cycle of a multigraph that has a cycle."""
    for v in sorted(g.adj):
        if g.loops[v]:
            return [v]
    for v in sorted(g.adj):
        for w, m in sorted(g.adj[v].items()):
            if m > 1:
                return [v, w]
    best: Optional[List[int]] = None
    for s in sorted(g.adj):
        parent = {s: None}
        dist = {s: 0}
        queue = deque([s])
        found = None
        while queue and found is None:
            x = queue.popleft()
            for y in sorted(g.adj[x]):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif y != parent[x]:
                    found = (x, y)
                    break
        if found is None:
            continue
        x, y = found
        verts = set()
        for z in (x, y):
            while z is not None:
                verts.add(z)
                z = parent[z]
        if best is None or len(verts) < len(best):
            best = sorted(verts)
    if best is None:
        raise ValueError("graph is acyclic")
    return best


def _fvs_search(g: WorkGraph, k: int) -> Optional[List[int]]:
    g = g.copy()
    taken: List[int] = []
    changed = True
    while changed:
        changed = False
        for v in sorted(g.adj):
            if v not in g:
                continue
            if g.loops[v]:
                taken.append(v)
                g.remove_vertex(v)
                changed = True
            elif g.degree(v) <= 1:
                g.remove_vertex(v)
                changed = True
            elif g.degree(v) == 2:
                g.contract(v)
                changed = True
    if len(taken) > k:
        return None
    if g.edge_count() == 0:
        return taken
    if len(taken) == k:
        return None
    for c in _shortest_cycle_vertices(g):
        h = g.copy()
        h.remove_vertex(c)
        rest = _fvs_search(h, k - len(taken) - 1)
        if rest is not None:
            return taken + [c] + rest
    return None


def find_fvs(g: SimpleGraph, k: int) -> Optional[Solution]:
    """Some feedback vertex set of size <= k, or None if there is none.

    Reduce degree <= 2 vertices, then branch on the vertices of a shortest cycle.
    """
    if k < 0:
        raise ValueError(f"budget k must be >= 0, got {k}")
    found = _fvs_search(WorkGraph.from_graph(g), k)
    return None if found is None else canon(found)


# -- class construction -------------------------------------------------------


@dataclass
class BranchState:
    """One node of the class-construction search tree.

    Vertices of A are removed from the graph as soon as they enter A, so
    the undecided set C is simply ``graph.vertices - B``.
    """

    graph: WorkGraph
    A: Set[int]
    B: Set[int]
    labels: Dict[int, FrozenSet[int]]

    @property
    def C(self) -> Set[int]:
        return self.graph.vertices - self.B

    def copy(self) -> "BranchState":
        return BranchState(self.graph.copy(), set(self.A), set(self.B), dict(self.labels))

    def put_in_a(self, v: int) -> None:
        self.A.add(v)
        self.graph.remove_vertex(v)

    def put_in_b(self, v: int) -> None:
        self.B.add(v)

    def potential(self) -> int:
        return len(self.A) - len(self.graph.components(self.B))


def deepest_leaf(graph: WorkGraph, within: Optional[Set[int]] = None) -> int:
    """A vertex at maximum BFS depth in some component of the forest ``graph[within]``.

    Each component is rooted at its lowest id; among the deepest vertex of
    every component the lowest id wins.
    """
    verts = graph.vertices if within is None else within & graph.vertices
    if not verts:
        raise ValueError("deepest_leaf of an empty forest")
    candidates = []
    for comp in graph.components(verts):
        root = min(comp)
        dist = {root: 0}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for w in graph.adj[x]:
                if w in comp and w not in dist:
                    dist[w] = dist[x] + 1
                    queue.append(w)
        depth = max(dist.values())
        candidates.append(min(v for v, dv in dist.items() if dv == depth))
    return min(candidates)


def reduce(state: BranchState) -> BranchState:
    """Apply the reduction rules exhaustively, in place; returns ``state``.

    * a C-vertex with a self-loop goes to A;
    * a C-vertex of degree <= 1 is deleted;
    * of two adjacent C-vertices of degree 2, the higher id is contracted
      and its labels merged into the other.

    Degrees are taken in ``G'[B u C]``, which is the whole work graph.
    """
    g = state.graph
    changed = True
    while changed:
        changed = False
        for v in sorted(state.C):
            if v not in g or v in state.B:
                continue
            if g.loops[v]:
                state.put_in_a(v)
                changed = True
            elif g.degree(v) <= 1:
                g.remove_vertex(v)
                del state.labels[v]
                changed = True
        if changed:
            continue
        C = state.C
        for u in sorted(C, reverse=True):
            if g.degree(u) != 2:
                continue
            keep = [w for w in g.adj[u] if w in C and w < u and g.degree(w) == 2]
            if not keep:
                continue
            v = min(keep)
            if g.adj[u][v] > 1:
                continue
            g.contract(u)
            state.labels[v] = state.labels[v] | state.labels.pop(u)
            changed = True
            break
    return state


@dataclass
class ClassBuildStats:
    """Bookkeeping for the branching-depth and potential guarantees."""

    fvs: Optional[Solution] = None
    branches: int = 0
    max_steps: int = 0
    potential_drops: int = 0
    emitted: int = 0
    pruned: int = 0


def _children(state: BranchState) -> List[BranchState]:
    g = state.graph
    C = state.C
    v = deepest_leaf(g, C)
    b_nbrs = g.neighbors(v, state.B)
    if len(b_nbrs) >= 2:
        comp_of = {}
        for i, comp in enumerate(g.components(state.B)):
            for x in comp:
                comp_of[x] = i
        touched = [comp_of[x] for x in b_nbrs]
        forced = len(set(touched)) < len(touched)
        into_a = state.copy()
        into_a.put_in_a(v)
        if forced:
            return [into_a]
        into_b = state.copy()
        into_b.put_in_b(v)
        return [into_a, into_b]

    c_nbrs = g.neighbors(v, C)
    if len(b_nbrs) != 1 or len(c_nbrs) != 1:
        raise AssertionError(f"reduced state violates leaf degree structure at {v}")
    p = c_nbrs[0]
    group = [v, p]
    if not g.neighbors(p, state.B):
        leaves = [w for w in sorted(set(g.neighbors(p, C)))
                  if w != v and g.degree(w, C) == 1]
        if not leaves:
            raise AssertionError(f"no sibling leaf next to deepest leaf {v}")
        group.append(leaves[0])
    out = []
    for mask in range(1 << len(group)):
        child = state.copy()
        for i, x in enumerate(group):
            if mask >> i & 1:
                child.put_in_a(x)
            else:
                child.put_in_b(x)
        if not child.graph.is_forest(child.B):
            continue
        out.append(child)
    return out


def build_fvs_classes(g: SimpleGraph, k: int,
                      stats: Optional[ClassBuildStats] = None) -> List[SolutionClass]:
    """Classes of FVS solutions that together describe every FVS of size <= k.

    Returns an empty list if ``g`` has no FVS of size <= k. Output order is
    the order of discovery (subsets of F in binary-counter order, then
    depth-first through the branching), with duplicates removed.
    """
    if stats is None:
        stats = ClassBuildStats()
    F = find_fvs(g, k)
    stats.fvs = F
    if F is None:
        return []
    emitted: Dict[SolutionClass, None] = {}

    def explore(state: BranchState, steps: int):
        stats.max_steps = max(stats.max_steps, steps)
        while True:
            if len(state.A) > k or not state.graph.is_forest(state.B):
                stats.pruned += 1
                return
            if g.is_fvs(state.A):
                cls = SolutionClass.from_map({a: state.labels[a] for a in state.A})
                emitted.setdefault(cls)
                stats.emitted += 1
                return
            size = len(state.A)
            reduce(state)
            if len(state.A) == size:
                break
        before = state.potential()
        for child in _children(state):
            if child.potential() <= before:
                stats.potential_drops += 1
            explore(child, steps + 1)

    for mask in range(1 << len(F)):
        A = {F[i] for i in range(len(F)) if mask >> i & 1}
        state = BranchState(WorkGraph.from_graph(g), set(), set(F) - A,
                            {v: frozenset([v]) for v in g.vertices})
        for a in sorted(A):
            state.put_in_a(a)
        stats.branches += 1
        explore(state, 0)
    return list(emitted)
