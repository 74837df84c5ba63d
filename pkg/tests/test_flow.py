import random
from itertools import combinations

import pytest

from diversefpt.flow import (FlowInvariantError, build_class_network, build_network,
                             cost_levels, max_cost_augment)
from diversefpt.fvs import SolutionClass
from diversefpt.model import InstanceError, div_total, div_total_by_frequency
from diversefpt.oracle import brute_force_augment

P10_MIN_COVERS = [tuple(range(2, 2 * i + 1, 2)) + tuple(range(2 * i + 1, 10, 2))
                  for i in range(6)]


def middle_arcs(net):
    return [a for a in net.arcs if net.names[a.tail].startswith("T")]


def final_arcs(net):
    return [a for a in net.arcs if a.head == net.t]


def test_cost_levels():
    assert cost_levels(2) == (1, -1)
    assert cost_levels(3) == (2, 0, -2)
    for r in range(1, 9):
        g = cost_levels(r)
        assert sum(g) == 0
        assert all(a > b for a, b in zip(g, g[1:]))
        assert all((gy > 0) == (y < (r + 1) / 2) for y, gy in enumerate(g, 1))


def test_fully_determined_network():
    net = build_network(2, [(1,), (2,)], 1)
    assert net.value() == 2
    assert all(net.arcs[a].flow == net.arcs[a].cap for a in net.out[net.s])
    assert [a.flow for a in middle_arcs(net) if a.frozen] == [1, 1]
    assert max_cost_augment(net, check=True).solutions == ((1,), (2,))
    assert net.augmentations == 0


def test_network_shape():
    net = build_network(4, [(1,), (2,)], 2)
    mids = middle_arcs(net)
    assert len(mids) == 8 and sum(a.frozen for a in mids) == 2
    fin = final_arcs(net)
    assert len(fin) == 8
    assert sorted(a.cost for a in fin) == [-1] * 4 + [1] * 4
    assert all(a.cap == 1 for a in mids + fin)
    assert [net.arcs[a].cap for a in net.out[net.s]] == [2, 2]


def test_base_larger_than_budget():
    with pytest.raises(InstanceError):
        build_network(4, [(1, 2, 3)], 2)


def test_augment_two_singletons():
    net = build_network(4, [(1,), (2,)], 2)
    tup = max_cost_augment(net, check=True)
    assert div_total(tup) == 4
    assert tup.solutions == ((1, 3), (2, 4))
    assert net.cost() == 4


def test_full_bases_stay_put():
    bases = [(1, 2), (2, 3), (3, 4)]
    net = build_network(5, bases, 2)
    assert max_cost_augment(net, check=True).solutions == tuple(bases)
    assert net.augmentations == 0


def test_p10_minimum_covers():
    edges = [(i, i + 1) for i in range(1, 10)]
    brute = [c for c in combinations(range(1, 11), 5) if all(u in c or v in c for u, v in edges)]
    assert sorted(P10_MIN_COVERS) == brute
    # n_i copies among the first i covers; each vertex pair contributes 2 n_i (r - n_i)
    for bases, n_i, expected in [(P10_MIN_COVERS, [1, 2, 3, 4, 5], 70),
                                 ([P10_MIN_COVERS[0]] * 3 + [P10_MIN_COVERS[-1]] * 3,
                                  [3] * 5, 90)]:
        assert sum(2 * m * (6 - m) for m in n_i) == expected
        net = build_network(10, bases, 5)
        tup = max_cost_augment(net, check=True)
        assert net.augmentations == 0
        assert div_total(tup) == expected == div_total_by_frequency(tup, 10) == net.cost()


def test_labelled_class_structure():
    c = SolutionClass((1, 3, 4), ((1, 2), (3,), (4, 5, 6)))
    net = build_class_network(8, [c], 4)
    names = net.names
    assert [names[i] for i in range(len(names)) if names[i].startswith("U")] == \
        [f"U1.{j}" for j in range(1, 7)]
    assert [names[i] for i in range(len(names)) if names[i].startswith("L")] == \
        ["L1.1", "L1.2", "L1.3"]
    req = [a for a in net.arcs if a.required]
    assert len(req) == 3 and all(a.flow == 1 for a in req)
    t_arc = next(net.arcs[a] for a in net.out[net.s] if names[net.arcs[a].head] == "T1")
    assert t_arc.cap == 4 - 3
    direct = {names[a.head] for a in net.arcs if names[a.tail] == "T1" and names[a.head].startswith("V")}
    assert direct == {"V7", "V8"}


def test_empty_class_matches_empty_base():
    empty = SolutionClass((), ())
    for n, k, r in [(2, 1, 2), (4, 2, 3), (5, 3, 2)]:
        a = max_cost_augment(build_class_network(n, [empty] * r, k), check=True)
        b = max_cost_augment(build_network(n, [()] * r, k), check=True)
        assert div_total(a) == div_total(b)
    assert div_total(max_cost_augment(build_class_network(2, [empty] * 2, 1))) == 2


def test_class_budget():
    with pytest.raises(InstanceError):
        build_class_network(3, [SolutionClass((1, 2), ((1,), (2,)))], 1)


def test_dump_lines():
    net = build_network(2, [(1,)], 1)
    lines = net.dump().splitlines()
    assert len(lines) == len(net.arcs)
    assert "T1 V1 1 0 1 1" in lines
    assert "V1 t 1 0 1 0" in lines  # r = 1: single level of cost 0


def _random_bases(rng, n, k, r):
    return [tuple(sorted(rng.sample(range(1, n + 1), rng.randint(0, min(k, n)))))
            for _ in range(r)]


def _random_class(rng, n, k):
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    labels, pos = {}, 0
    for _ in range(rng.randint(0, min(k, n))):
        if pos >= n:
            break
        size = rng.randint(1, max(1, (n - pos) // 2))
        lab = perm[pos:pos + size]
        pos += size
        labels[lab[0]] = lab
    return SolutionClass.from_map(labels)


@pytest.mark.parametrize("seed", range(150))
def test_base_augmentation_is_optimal(seed):
    rng = random.Random(seed)
    n, r, k = rng.randint(1, 6), rng.randint(1, 3), rng.randint(0, 3)
    bases = _random_bases(rng, n, k, r)
    net = build_network(n, bases, k)
    tup = max_cost_augment(net, check=True)
    assert div_total(tup) == brute_force_augment(n, bases, k)
    assert all(set(b) <= set(t) and len(t) <= k for b, t in zip(bases, tup))
    assert net.augmentations <= k * r
    hist = net.final_history
    assert all(a <= b for x, y in zip(hist, hist[1:]) for a, b in zip(x, y))


@pytest.mark.parametrize("seed", range(150))
def test_class_augmentation_is_optimal(seed):
    rng = random.Random(1000 + seed)
    n, r, k = rng.randint(1, 6), rng.randint(1, 3), rng.randint(0, 3)
    classes = [_random_class(rng, n, k) for _ in range(r)]
    tup = max_cost_augment(build_class_network(n, classes, k), check=True)
    assert div_total(tup) == brute_force_augment(n, classes, k)
    for c, t in zip(classes, tup):
        assert len(t) <= k and all(set(lab) & set(t) for lab in c.labels)


@pytest.mark.parametrize("seed", range(40))
def test_singleton_labels_match_fixed_bases(seed):
    rng = random.Random(2000 + seed)
    n, r, k = rng.randint(1, 7), rng.randint(1, 4), rng.randint(0, 3)
    bases = _random_bases(rng, n, k, r)
    classes = [SolutionClass(b, tuple((v,) for v in b)) for b in bases]
    a = max_cost_augment(build_network(n, bases, k), check=True)
    b = max_cost_augment(build_class_network(n, classes, k), check=True)
    assert div_total(a) == div_total(b)


def test_check_detects_tampering():
    net = build_network(3, [(1,), (2,)], 2)
    next(a for a in net.arcs if a.frozen).flow = 0
    with pytest.raises(FlowInvariantError):
        net.check()
