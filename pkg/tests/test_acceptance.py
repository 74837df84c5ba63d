"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line.

The lines are printed in the terminal summary by ``conftest.py``.
"""
import json
import random
import time
from itertools import combinations

import pytest

from diversefpt import cli, flow, solvers
from diversefpt.fvs import ClassBuildStats, build_fvs_classes, class_describes
from diversefpt.hitting import enumerate_minimal_hitting_sets
from diversefpt.model import div_total, div_total_by_frequency, hamming_distance, vc_as_hitting_set
from diversefpt.oracle import brute_force_best_tuple, enumerate_all_solutions, oracle_optimum
from diversefpt.solvers import DiverseQuery, solve

from conftest import (ACCEPTANCE, atlas_graphs, brute_fvs, brute_hitting_sets, nx_is_fvs,
                      path, random_graph, random_hypergraph)

pytestmark = pytest.mark.acceptance

ODD = (1, 3, 5, 7, 9)
EVEN = (2, 4, 6, 8, 10)


def record(key, failures, detail):
    ok = not failures
    ACCEPTANCE[key] = (ok, detail if ok else f"{detail}; first failure: {failures[0]}")
    assert ok, failures[:5]


def hs_instances():
    rng = random.Random(20240601)
    out = []
    for _ in range(100):
        n = rng.randint(1, 7)
        out.append((random_hypergraph(rng, n, rng.randint(0, 10), rng.randint(1, 3)),
                    rng.choice((0, 1, 2, 2, 3, 3, 3))))
    return out


def fvs_graphs():
    rng = random.Random(777)
    return atlas_graphs(5, connected_only=True) + \
        [random_graph(rng, 6, rng.uniform(0.2, 0.8)) for _ in range(50)]


def test_criterion_1_path_pathology(tmp_path, capsys):
    start = time.perf_counter()
    failures = []
    inst = tmp_path / "p10.txt"
    out = tmp_path / "p10.json"
    if cli.main(["gen", "path", "n=10", "-o", str(inst)]) != 0:
        failures.append("gen failed")
    code = cli.main(["solve", "--problem", "vertex-cover", "--measure", "total", "-k", "5",
                     "-r", "6", "-i", str(inst), "-o", str(out), "--check-flow"])
    data = json.loads(out.read_text())
    if code != 0 or data["diversity_total"] != 90:
        failures.append(f"solve exit {code}, diversity {data.get('diversity_total')}")
    got = sorted(tuple(s) for s in data["solutions"])
    if got != [ODD] * 3 + [EVEN] * 3:
        failures.append(f"multiset {got}")
    covers = enumerate_all_solutions("vertex-cover", cli.load_instance("vertex-cover", inst.read_text()), 5)
    _, oracle = brute_force_best_tuple(covers, 6, "total", ordered=True)
    if len(covers) != 6 or oracle != 90:
        failures.append(f"oracle over {len(covers)}^6 tuples gave {oracle}")
    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        failures.append(f"took {elapsed:.1f}s")
    record(1, failures, f"P10 div_total 90, odd x3 + even x3, oracle 90 over 6^6 ({elapsed:.2f}s)")


def test_criterion_2_total_hitting_set():
    start = time.perf_counter()
    failures = []
    for idx, (inst, k) in enumerate(hs_instances()):
        for r in (1, 2, 3):
            res = solve(DiverseQuery("hitting-set", "total", k, r), inst, check_flow=True)
            _, want = oracle_optimum("hitting-set", inst, k, r, "total")
            if res.diversity != want:
                failures.append((idx, k, r, res.diversity, want))
    elapsed = time.perf_counter() - start
    if elapsed >= 120:
        failures.append(f"took {elapsed:.1f}s")
    record(2, failures, f"100 instances x r=1..3 match the oracle ({elapsed:.1f}s)")


def test_criterion_3_total_fvs():
    start = time.perf_counter()
    failures = []
    graphs = fvs_graphs()
    for idx, g in enumerate(graphs):
        for k in (0, 1, 2):
            for r in (1, 2, 3):
                res = solve(DiverseQuery("fvs", "total", k, r), g, check_flow=True)
                _, want = oracle_optimum("fvs", g, k, r, "total")
                if res.diversity != want:
                    failures.append((idx, g.edges, k, r, res.diversity, want))
    elapsed = time.perf_counter() - start
    if elapsed >= 300:
        failures.append(f"took {elapsed:.1f}s")
    record(3, failures, f"{len(graphs)} graphs x k=0..2 x r=1..3 match the oracle ({elapsed:.1f}s)")


def _min_cases():
    for inst, k in hs_instances():
        for kk, r in {(k, 2), (k, 3), (3, 3), (1, 2)}:
            yield "hitting-set", inst, kk, r
    for g in fvs_graphs():
        for k, r in ((1, 2), (2, 2), (2, 3), (3, 2)):
            yield "fvs", g, k, r


def test_criterion_4_min_measure():
    start = time.perf_counter()
    failures = []
    methods = {"hitting-set": set(), "fvs": set()}
    for problem, instance, k, r in _min_cases():
        res = solve(DiverseQuery(problem, "min", k, r), instance)
        _, want = oracle_optimum(problem, instance, k, r, "min")
        if res.feasible:
            methods[problem].add(res.method)
        if res.diversity != want:
            failures.append((problem, instance, k, r, res.diversity, want))
    for problem, seen in methods.items():
        if seen != {"enumeration", "padding"}:
            failures.append(f"{problem} only exercised {sorted(seen)}")
    elapsed = time.perf_counter() - start
    if elapsed >= 300:
        failures.append(f"took {elapsed:.1f}s")
    record(4, failures, f"both problems, both branches match the oracle ({elapsed:.1f}s)")


def test_criterion_5_catalog_bound():
    failures = []
    cases = [(inst, k) for inst, k in hs_instances()]
    cases += [(vc_as_hitting_set(g), k) for g in atlas_graphs(6) for k in range(4)]
    for inst, k in cases:
        cat = enumerate_minimal_hitting_sets(inst, k)
        if inst.family and len(cat) > inst.d ** k:
            failures.append(("size", inst, k, len(cat)))
        members = [set(s) for s in cat]
        if not all(inst.is_hitting_set(s) and len(s) <= k for s in cat):
            failures.append(("invalid member", inst, k))
        for s in brute_hitting_sets(inst, k):
            if not any(m <= set(s) for m in members):
                failures.append(("uncovered", inst, k, s))
                break
    record(5, failures, f"{len(cases)} instances: |catalog| <= d^k, valid, upward closed")


def test_criterion_6_class_coverage():
    failures = []
    graphs = atlas_graphs(6)
    largest = 0
    for g in graphs:
        for k in range(4):
            stats = ClassBuildStats()
            classes = build_fvs_classes(g, k, stats)
            largest = max(largest, len(classes))
            if len(classes) > 2 ** (7 * k):
                failures.append(("count", g.edges, k, len(classes)))
            for c in classes:
                if not all(nx_is_fvs(g, m) for m in c.members()):
                    failures.append(("unsound", g.edges, k, c))
            for s in brute_fvs(g, k):
                if not any(class_describes(c, s) for c in classes):
                    failures.append(("uncovered", g.edges, k, s))
    record(6, failures, f"{len(graphs)} graphs x k=0..3 covered and sound, max {largest} classes")


def test_criterion_7_flow_properties(monkeypatch):
    failures = []
    checked = []
    original = flow.max_cost_augment

    def audited(net, check=False):
        try:
            tup = original(net, check=True)
        except flow.FlowInvariantError as exc:
            failures.append(("invariant", str(exc)))
            raise
        hist = net.final_history
        if not all(a <= b for x, y in zip(hist, hist[1:]) for a, b in zip(x, y)):
            failures.append(("history", hist))
        if net.augmentations > net.k * net.r:
            failures.append(("augmentations", net.augmentations))
        if not net.cost() == div_total(tup) == div_total_by_frequency(tup, net.n):
            failures.append(("cost", net.cost(), tup))
        if not all(isinstance(a.flow, int) for a in net.arcs):
            failures.append(("integrality",))
        checked.append(net.augmentations)
        return tup

    monkeypatch.setattr(solvers, "max_cost_augment", audited)
    rng = random.Random(99)
    for inst, k in hs_instances()[:40]:
        solve(DiverseQuery("hitting-set", "total", k, rng.randint(1, 3)), inst)
    for g in fvs_graphs()[::3]:
        solve(DiverseQuery("fvs", "total", rng.randint(0, 2), rng.randint(1, 3)), g)
    solve(DiverseQuery("vertex-cover", "total", 5, 6), path(10))
    if not checked:
        failures.append("no networks were audited")
    record(7, failures, f"{len(checked)} networks audited, {sum(checked)} augmentations")


def test_criterion_8_padding_identity():
    failures = []
    pairs = 0
    for problem, instance, k, r in _min_cases():
        res = solve(DiverseQuery(problem, "min", k, r), instance)
        if res.method != "padding" or not res.feasible:
            continue
        for (i, a), (j, b) in combinations(enumerate(res.bases), 2):
            pairs += 1
            lhs = hamming_distance(res.tuple[i], res.tuple[j])
            rhs = hamming_distance(a, b) + (k - len(a)) + (k - len(b))
            if lhs != rhs:
                failures.append((problem, k, r, res.bases, res.tuple))
    if not pairs:
        failures.append("padding branch never reached")
    record(8, failures, f"identity holds on {pairs} padded pairs")
