import random
from itertools import combinations

import networkx as nx
import pytest

from diversefpt.model import HypergraphInstance, SimpleGraph

# criterion id -> (passed, detail); filled by test_acceptance, printed at the end
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")


def nx_graph(g: SimpleGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def nx_is_fvs(g: SimpleGraph, s) -> bool:
    h = nx_graph(g)
    h.remove_nodes_from(s)
    return nx.is_forest(h) if h.number_of_nodes() else True


def brute_fvs(g: SimpleGraph, k: int):
    return [s for size in range(min(k, g.n) + 1)
            for s in combinations(g.vertices, size) if nx_is_fvs(g, s)]


def brute_hitting_sets(inst: HypergraphInstance, k: int):
    return [s for size in range(min(k, inst.n) + 1)
            for s in combinations(range(1, inst.n + 1), size)
            if all(set(s) & set(f) for f in inst.family)]


def brute_minimal(sets):
    as_sets = [set(s) for s in sets]
    return sorted(s for s, a in zip(sets, as_sets) if not any(b < a for b in as_sets))


def atlas_graphs(max_n: int, connected_only: bool = False):
    out = []
    for h in nx.graph_atlas_g()[1:]:
        if h.number_of_nodes() > max_n:
            break
        if connected_only and not nx.is_connected(h):
            continue
        out.append(SimpleGraph.from_edges(h.number_of_nodes(),
                                          [(u + 1, v + 1) for u, v in h.edges()]))
    return out


def random_graph(rng: random.Random, n: int, p: float) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [e for e in combinations(range(1, n + 1), 2)
                                      if rng.random() < p])


def random_hypergraph(rng: random.Random, n: int, m: int, d: int) -> HypergraphInstance:
    sets = [rng.sample(range(1, n + 1), rng.randint(1, min(d, n))) for _ in range(m)]
    return HypergraphInstance.from_sets(n, sets, d)


def path(n):
    return SimpleGraph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle(n):
    return SimpleGraph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


@pytest.fixture
def triangle():
    return cycle(3)


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def triangle_hs():
    return HypergraphInstance.from_sets(3, [(1, 2), (1, 3), (2, 3)], 2)
