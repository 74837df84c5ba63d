"""Optimal augmentation of base solutions by max-cost flow.

Given r base sets (or r solution classes) over the universe ``{1..n}``,
find supersets ``T_i`` of size <= k maximizing the sum of pairwise Hamming
distances. With ``y_j`` the number of sets containing ``j`` the objective is
``sum_j y_j (r - y_j)``, a concave function of each ``y_j``, so every
``V_j -> t`` arc becomes r parallel unit arcs with decreasing costs
``g_y = r - 2y + 1``.

Layout of the base network::

    s --(k)--> T_i --(1)--> V_j ==(r unit arcs, costs g_1..g_r)==> t

Arcs ``T_i -> V_j`` with ``j`` in the i-th base are frozen at flow 1. For a
class with label sets ``L_1..L_b`` the i-th structure is instead::

    s --(k-b)--> T_i --(1)--> V_j                  for j outside all L_q
    s --(1, required)--> L_q --(1)--> U_j --(1)--> V_j   for j in L_q
                         T_i --(1)--> U_j

Only the final layer carries cost, so an augmenting path costs exactly
its final arc. Max-cost paths are found by plain reachability: take the
reachable ``V_j`` whose next unused bundle arc is most expensive. Final
arcs are never reversed, so the final layer only ever grows.

A faster alternative reduces the same problem to a maximum-weight
b-matching between the T- and V-layers, with r slack edges per ``V_j``
from an extra source weighted ``r - g_y`` and middle edges weighted ``r``;
it is not implemented here.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .model import (InstanceError, Solution, SolutionTuple, canon, div_total,
                    div_total_by_frequency)


class InfeasibleClassError(RuntimeError):
    """A required arc of a class network could not be saturated."""


class FlowInvariantError(AssertionError):
    """A flow-engine invariant was violated (only raised in checked mode)."""


def cost_levels(r: int) -> Tuple[int, ...]:
    """Marginal gains g_y = f(y) - f(y-1) of f(y) = y (r - y), for y = 1..r."""
    return tuple(r - 2 * y + 1 for y in range(1, r + 1))


@dataclass
class Arc:
    tail: int
    head: int
    cap: int
    cost: int = 0
    flow: int = 0
    frozen: bool = False
    required: bool = False


@dataclass
class FlowNetwork:
    n: int
    k: int
    r: int
    names: List[str] = field(default_factory=list)
    arcs: List[Arc] = field(default_factory=list)
    out: List[List[int]] = field(default_factory=list)
    inc: List[List[int]] = field(default_factory=list)
    # y[j]: flow into t from V_j, i.e. number of sets containing j (index 0 unused)
    y: List[int] = field(default_factory=list)
    augmentations: int = 0
    final_history: List[Tuple[int, ...]] = field(default_factory=list)

    def __post_init__(self):
        self.levels = cost_levels(self.r)
        self.s = self._node("s")
        self.V: List[int] = []
        self.final: List[List[int]] = []
        self.decode_arcs: List[List[Tuple[int, int]]] = []

    def _node(self, name: str) -> int:
        self.names.append(name)
        self.out.append([])
        self.inc.append([])
        return len(self.names) - 1

    def _arc(self, tail: int, head: int, cap: int, cost: int = 0, flow: int = 0,
             frozen: bool = False, required: bool = False) -> int:
        self.arcs.append(Arc(tail, head, cap, cost, flow, frozen, required))
        idx = len(self.arcs) - 1
        self.out[tail].append(idx)
        self.inc[head].append(idx)
        return idx

    def _add_sink_layer(self) -> None:
        # V nodes go last (except t) so breadth-first order visits them by ascending j
        self.V = [-1] + [self._node(f"V{j}") for j in range(1, self.n + 1)]
        self.t = self._node("t")
        self.final = [[]]
        for j in range(1, self.n + 1):
            self.final.append([self._arc(self.V[j], self.t, 1, g) for g in self.levels])
        self.y = [0] * (self.n + 1)

    def _push_final(self, j: int) -> None:
        y = self.y[j]
        if y >= self.r:
            raise FlowInvariantError(f"bundle at V{j} already saturated")
        self.arcs[self.final[j][y]].flow = 1
        self.y[j] = y + 1

    def gain(self, j: int) -> Optional[int]:
        """Cost of the next free bundle arc at V_j, None if the bundle is full."""
        y = self.y[j]
        return self.levels[y] if y < self.r else None

    def cost(self) -> int:
        return sum(a.flow * a.cost for a in self.arcs)

    def value(self) -> int:
        return sum(self.arcs[a].flow for a in self.out[self.s])

    def final_flows(self) -> Tuple[int, ...]:
        return tuple(self.y[1:])

    # -- residual search ------------------------------------------------------

    def _search(self, first_arcs: Sequence[int]):
        """Breadth-first reachability from s, leaving s only through ``first_arcs``.

        Returns (j, parent) for the reachable V_j of largest gain (lowest j
        on ties), or None. ``parent[node]`` is (arc, forward?).
        """
        arcs = self.arcs
        s, t = self.s, self.t
        parent = {}
        queue = deque()
        for a in first_arcs:
            arc = arcs[a]
            if arc.flow < arc.cap and arc.head not in parent:
                parent[arc.head] = (a, True)
                queue.append(arc.head)
        while queue:
            x = queue.popleft()
            for a in self.out[x]:
                arc = arcs[a]
                h = arc.head
                if h == t or h in parent or arc.flow >= arc.cap:
                    continue
                parent[h] = (a, True)
                queue.append(h)
            for a in self.inc[x]:
                arc = arcs[a]
                tl = arc.tail
                if tl == s or tl in parent or arc.flow <= 0 or arc.frozen:
                    continue
                parent[tl] = (a, False)
                queue.append(tl)
        best = None
        for j in range(1, self.n + 1):
            if self.V[j] in parent:
                g = self.gain(j)
                if g is not None and (best is None or g > best[0]):
                    best = (g, j)
        if best is None:
            return None
        return best[1], parent

    def _augment(self, j: int, parent) -> None:
        x = self.V[j]
        while x != self.s:
            a, forward = parent[x]
            arc = self.arcs[a]
            if forward:
                arc.flow += 1
                x = arc.tail
            else:
                arc.flow -= 1
                x = arc.head
        self._push_final(j)

    def _source_arcs(self, required: bool) -> List[int]:
        return [a for a in self.out[self.s] if self.arcs[a].required == required]

    # -- checks and output -----------------------------------------------------

    def check(self) -> None:
        """Verify integrality, capacity bounds, frozen arcs and conservation."""
        bal = [0] * len(self.names)
        for a in self.arcs:
            if not isinstance(a.flow, int) or not isinstance(a.cap, int):
                raise FlowInvariantError(f"non-integral arc {a}")
            if not 0 <= a.flow <= a.cap:
                raise FlowInvariantError(f"flow out of bounds on {a}")
            if a.frozen and a.flow != a.cap:
                raise FlowInvariantError(f"frozen arc lost its flow: {a}")
            if a.cost and a.head != self.t:
                raise FlowInvariantError(f"cost outside final layer: {a}")
            bal[a.tail] -= a.flow
            bal[a.head] += a.flow
        for v, b in enumerate(bal):
            if v not in (self.s, self.t) and b:
                raise FlowInvariantError(f"conservation violated at {self.names[v]}")
        for j in range(1, self.n + 1):
            flows = [self.arcs[a].flow for a in self.final[j]]
            if flows != [1] * self.y[j] + [0] * (self.r - self.y[j]):
                raise FlowInvariantError(f"bundle at V{j} not filled in cost order")

    def decode(self) -> SolutionTuple:
        sets = []
        for arcs in self.decode_arcs:
            sets.append(canon(j for a, j in arcs if self.arcs[a].flow))
        return SolutionTuple(tuple(sets), self.k)

    def dump(self) -> str:
        """One arc per line: tail head capacity cost flow frozen."""
        lines = []
        for a in self.arcs:
            lines.append(f"{self.names[a.tail]} {self.names[a.head]} {a.cap} "
                         f"{a.cost} {a.flow} {int(a.frozen)}")
        return "\n".join(lines) + "\n"


def build_network(n: int, bases: Sequence[Solution], k: int) -> FlowNetwork:
    """Network for augmenting fixed base sets; the initial flow encodes the bases."""
    bases = [canon(b) for b in bases]
    net = FlowNetwork(n=n, k=k, r=len(bases))
    for b in bases:
        if len(b) > k:
            raise InstanceError(f"base {b} larger than budget k={k}")
        if b and not (1 <= b[0] and b[-1] <= n):
            raise InstanceError(f"base {b} outside universe 1..{n}")
    T = [net._node(f"T{i + 1}") for i in range(len(bases))]
    net._add_sink_layer()
    for i, b in enumerate(bases):
        net._arc(net.s, T[i], k, flow=len(b))
        members = set(b)
        arcs = []
        for j in range(1, n + 1):
            fixed = j in members
            arcs.append((net._arc(T[i], net.V[j], 1, flow=int(fixed), frozen=fixed), j))
        net.decode_arcs.append(arcs)
        for j in b:
            net._push_final(j)
    net.final_history.append(net.final_flows())
    return net


def build_class_network(n: int, classes, k: int) -> FlowNetwork:
    """Network for picking one vertex per label set of each class plus free extras.

    Every required ``s -> L_q`` arc is saturated up front, each time along
    the reachable path whose final arc is most valuable (even if negative).
    """
    net = FlowNetwork(n=n, k=k, r=len(classes))
    plans = []
    for i, c in enumerate(classes):
        labels = [canon(lab) for lab in c.labels]
        if len(labels) > k:
            raise InstanceError(f"class with {len(labels)} label sets exceeds k={k}")
        for lab in labels:
            if lab and not (1 <= lab[0] and lab[-1] <= n):
                raise InstanceError(f"label set {lab} outside universe 1..{n}")
        T = net._node(f"T{i + 1}")
        Ls = [net._node(f"L{i + 1}.{q + 1}") for q in range(len(labels))]
        Us = {j: net._node(f"U{i + 1}.{j}") for lab in labels for j in lab}
        plans.append((T, labels, Ls, Us))
    net._add_sink_layer()
    for T, labels, Ls, Us in plans:
        net._arc(net.s, T, k - len(labels))
        arcs = []
        for q, lab in enumerate(labels):
            net._arc(net.s, Ls[q], 1, required=True)
            for j in lab:
                net._arc(Ls[q], Us[j], 1)
        for j in range(1, n + 1):
            if j in Us:
                net._arc(T, Us[j], 1)
                arcs.append((net._arc(Us[j], net.V[j], 1), j))
            else:
                arcs.append((net._arc(T, net.V[j], 1), j))
        net.decode_arcs.append(arcs)
    required = net._source_arcs(True)
    for _ in range(len(required)):
        found = net._search(required)
        if found is None:
            raise InfeasibleClassError("cannot route a required label unit")
        net._augment(*found)
    net.final_history.append(net.final_flows())
    return net


def max_cost_augment(net: FlowNetwork, check: bool = False) -> SolutionTuple:
    """Augment along max-cost paths while they gain, then decode the sets.

    Levels with zero gain are skipped. With ``check=True`` every flow
    invariant is verified after each augmentation, and the final cost is
    compared against both forms of the total-diversity objective.
    """
    free = net._source_arcs(False)
    if check:
        net.check()
    while True:
        found = net._search(free)
        if found is None:
            break
        j, parent = found
        if net.gain(j) <= 0:
            break
        net._augment(j, parent)
        net.augmentations += 1
        flows = net.final_flows()
        if check:
            net.check()
            prev = net.final_history[-1]
            if any(a < b for a, b in zip(flows, prev)):
                raise FlowInvariantError("final-layer flow decreased")
        net.final_history.append(flows)
    result = net.decode()
    if check:
        if net.augmentations > net.k * net.r:
            raise FlowInvariantError(f"{net.augmentations} augmentations > kr")
        c = net.cost()
        if not c == div_total(result) == div_total_by_frequency(result, net.n):
            raise FlowInvariantError("flow cost disagrees with total diversity")
    return result
