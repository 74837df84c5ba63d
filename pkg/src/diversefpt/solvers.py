"""Top-level solvers for maximally diverse r-tuples of solutions.

Total diversity: enumerate a catalog (minimal hitting sets, or FVS solution
classes), then optimally augment every r-multiset of catalog entries with
the flow engine.

Minimum diversity: for small universes (n < kr) enumerate every solution
and search all r-selections. Otherwise pad the bases with fresh elements,
which maximizes every pairwise distance at once.

Tuple order is invariant under permutation for both measures, so r-multisets
of catalog indices are scanned in lexicographic order and the first optimum
found is kept.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import partial
from itertools import combinations, combinations_with_replacement, islice, product
from math import comb
from typing import Callable, List, Optional, Sequence, Tuple

from . import oracle
from .flow import InfeasibleClassError, build_class_network, build_network, max_cost_augment
from .fvs import SolutionClass, build_fvs_classes
from .hitting import enumerate_minimal_hitting_sets
from .model import (HypergraphInstance, SimpleGraph, Solution, SolutionTuple, canon,
                    div_min, div_total, vc_as_hitting_set)

log = logging.getLogger(__name__)

PROBLEMS = ("hitting-set", "vertex-cover", "fvs")
MEASURES = ("total", "min")
DEFAULT_TUPLE_BUDGET = 2_000_000


class TupleBudgetExceeded(RuntimeError):
    """The number of r-tuples to scan exceeds the configured budget."""


class VerificationError(AssertionError):
    """A solver produced a tuple that fails independent re-verification."""


@dataclass(frozen=True)
class DiverseQuery:
    problem: str
    measure: str
    k: int
    r: int
    t: Optional[int] = None

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise ValueError(f"unknown problem {self.problem!r}")
        if self.measure not in MEASURES:
            raise ValueError(f"unknown measure {self.measure!r}")
        if self.r < 1 or self.k < 0:
            raise ValueError(f"need r >= 1 and k >= 0, got r={self.r}, k={self.k}")
        if self.measure == "min" and self.r < 2:
            raise ValueError("minimum diversity needs r >= 2")
        if self.t is not None and self.t < 0:
            raise ValueError(f"target must be >= 0, got {self.t}")


@dataclass(frozen=True)
class DiverseResult:
    problem: str
    measure: str
    k: int
    r: int
    feasible: bool
    tuple: Optional[SolutionTuple] = None
    diversity: Optional[int] = None
    meets_target: Optional[bool] = None
    t: Optional[int] = None
    # per-solution sets the reported tuple was grown from (padding branch only)
    bases: Optional[Tuple[Solution, ...]] = None
    method: str = ""
    tuples_scanned: int = 0


def check_target(res: DiverseResult, t: Optional[int]) -> DiverseResult:
    if t is None:
        return replace(res, t=None, meets_target=None)
    return replace(res, t=t, meets_target=bool(res.feasible and res.diversity >= t))


# -- tuple scanning ------------------------------------------------------------


def _index_tuples(m: int, r: int, distinct: bool):
    if distinct:
        return comb(m, r), combinations(range(m), r)
    return comb(m + r - 1, r), combinations_with_replacement(range(m), r)


def _scan_chunk(evaluate: Callable, chunk: Sequence[Tuple[int, ...]], target, early_exit):
    best = None
    for idx in chunk:
        got = evaluate(idx)
        if got is None:
            continue
        if best is None or got[0] > best[0]:
            best = got
            if early_exit and target is not None and best[0] >= target:
                break
    return best


def _scan(evaluate: Callable, m: int, r: int, *, distinct: bool = False,
          tuple_budget: int = DEFAULT_TUPLE_BUDGET, workers: int = 1,
          target: Optional[int] = None, early_exit: bool = False):
    """Best ``evaluate(idx)`` over index r-tuples; ties keep the earliest tuple."""
    count, tuples = _index_tuples(m, r, distinct)
    if count > tuple_budget:
        raise TupleBudgetExceeded(f"{count} tuples exceed the tuple budget {tuple_budget}")
    if workers <= 1 or count < 2 * workers:
        return _scan_chunk(evaluate, tuples, target, early_exit), count
    size = max(1, -(-count // (4 * workers)))
    chunks = []
    while True:
        chunk = list(islice(tuples, size))
        if not chunk:
            break
        chunks.append(chunk)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(partial(_scan_chunk, evaluate, target=target,
                                        early_exit=early_exit), chunks))
    best = None
    for got in results:
        if got is None:
            continue
        if early_exit and target is not None and got[0] >= target:
            return got, count
        if best is None or got[0] > best[0]:
            best = got
    return best, count


# -- evaluators (module level so they pickle for worker processes) -------------


def _eval_bases(catalog, n, k, check_flow, idx):
    bases = [catalog[i] for i in idx]
    tup = max_cost_augment(build_network(n, bases, k), check=check_flow)
    return div_total(tup), tup, None


def _eval_classes(classes, n, k, check_flow, idx):
    try:
        net = build_class_network(n, [classes[i] for i in idx], k)
    except InfeasibleClassError:
        log.warning("skipping class tuple %s: required labels not routable", idx)
        return None
    tup = max_cost_augment(net, check=check_flow)
    return div_total(tup), tup, None


def _eval_min_plain(catalog, k, idx):
    tup = SolutionTuple(tuple(catalog[i] for i in idx), k)
    return div_min(tup), tup, None


def pad_fresh(bases: Sequence[Solution], n: int, k: int,
              avoid: Sequence[int] = ()) -> SolutionTuple:
    """Grow every base to size k with elements used nowhere else, ascending ids."""
    used = set(avoid)
    for b in bases:
        used.update(b)
    fresh = (e for e in range(1, n + 1) if e not in used)
    out = []
    for b in bases:
        extra = list(islice(fresh, k - len(b)))
        if len(extra) < k - len(b):
            raise ValueError("universe too small to pad with fresh elements")
        out.append(canon(list(b) + extra))
    return SolutionTuple(tuple(out), k)


def _eval_min_padded(catalog, n, k, idx):
    bases = tuple(catalog[i] for i in idx)
    tup = pad_fresh(bases, n, k)
    return div_min(tup), tup, bases


def _eval_min_classes(classes, n, k, r, idx):
    chosen_classes = [classes[i] for i in idx]
    small, deferred = [], []
    for i, c in enumerate(chosen_classes):
        for lab in c.labels:
            (small if len(lab) < k * r else deferred).append((i, lab))
    best = None
    for picks in product(*(lab for _, lab in small)):
        parts: List[set] = [set() for _ in range(r)]
        for (i, _), v in zip(small, picks):
            parts[i].add(v)
        taken = set().union(*parts)
        for i, lab in deferred:
            v = next(e for e in lab if e not in taken)
            parts[i].add(v)
            taken.add(v)
        bases = tuple(canon(p) for p in parts)
        tup = pad_fresh(bases, n, k)
        val = div_min(tup)
        if best is None or val > best[0]:
            best = (val, tup, bases)
    return best


# -- solvers ---------------------------------------------------------------------


def _finish(query: DiverseQuery, found, scanned: int, method: str, valid) -> DiverseResult:
    if found is None:
        return check_target(DiverseResult(query.problem, query.measure, query.k, query.r,
                                          False, method=method, tuples_scanned=scanned),
                            query.t)
    value, tup, bases = found
    for s in tup:
        if len(s) > query.k or not valid(s):
            raise VerificationError(f"reported solution {s} fails verification")
    res = DiverseResult(query.problem, query.measure, query.k, query.r, True, tup, value,
                        bases=bases, method=method, tuples_scanned=scanned)
    return check_target(res, query.t)


def solve_diverse_hitting_set(inst: HypergraphInstance, k: int, r: int, *,
                              t: Optional[int] = None, problem: str = "hitting-set",
                              check_flow: bool = False, **scan) -> DiverseResult:
    """Maximize total diversity over r hitting sets of size <= k."""
    query = DiverseQuery(problem, "total", k, r, t)
    catalog = enumerate_minimal_hitting_sets(inst, k).sets
    log.info("minimal hitting sets of size <= %d: %d", k, len(catalog))
    found, scanned = None, 0
    if catalog:
        found, scanned = _scan(partial(_eval_bases, catalog, inst.n, k, check_flow),
                               len(catalog), r, target=t, **scan)
    return _finish(query, found, scanned, "flow", inst.is_hitting_set)


def solve_diverse_fvs(g: SimpleGraph, k: int, r: int, *, t: Optional[int] = None,
                      check_flow: bool = False, **scan) -> DiverseResult:
    """Maximize total diversity over r feedback vertex sets of size <= k."""
    query = DiverseQuery("fvs", "total", k, r, t)
    classes = build_fvs_classes(g, k)
    log.info("FVS solution classes: %d", len(classes))
    found, scanned = None, 0
    if classes:
        found, scanned = _scan(partial(_eval_classes, classes, g.n, k, check_flow),
                               len(classes), r, target=t, **scan)
    return _finish(query, found, scanned, "class-flow", g.is_fvs)


def _enumeration_branch(query: DiverseQuery, problem: str, instance, valid, **scan):
    catalog = oracle.enumerate_all_solutions(problem, instance, query.k).sets
    found, scanned = None, 0
    if catalog:
        distinct = len(catalog) >= query.r
        found, scanned = _scan(partial(_eval_min_plain, catalog, query.k),
                               len(catalog), query.r, distinct=distinct,
                               target=query.t, **scan)
    return _finish(query, found, scanned, "enumeration", valid)


def solve_min_diverse_hitting_set(inst: HypergraphInstance, k: int, r: int, *,
                                  t: Optional[int] = None, problem: str = "hitting-set",
                                  **scan) -> DiverseResult:
    """Maximize the minimum pairwise distance over r hitting sets of size <= k."""
    query = DiverseQuery(problem, "min", k, r, t)
    if inst.n < k * r:
        return _enumeration_branch(query, "hitting-set", inst, inst.is_hitting_set, **scan)
    catalog = enumerate_minimal_hitting_sets(inst, k).sets
    found, scanned = None, 0
    if catalog:
        found, scanned = _scan(partial(_eval_min_padded, catalog, inst.n, k),
                               len(catalog), r, target=t, **scan)
    return _finish(query, found, scanned, "padding", inst.is_hitting_set)


def solve_min_diverse_fvs(g: SimpleGraph, k: int, r: int, *, t: Optional[int] = None,
                          **scan) -> DiverseResult:
    """Maximize the minimum pairwise distance over r feedback vertex sets of size <= k."""
    query = DiverseQuery("fvs", "min", k, r, t)
    if g.n < k * r:
        return _enumeration_branch(query, "fvs", g, g.is_fvs, **scan)
    classes = build_fvs_classes(g, k)
    found, scanned = None, 0
    if classes:
        found, scanned = _scan(partial(_eval_min_classes, classes, g.n, k, r),
                               len(classes), r, target=t, **scan)
    return _finish(query, found, scanned, "padding", g.is_fvs)


def solve(query: DiverseQuery, instance, **opts) -> DiverseResult:
    """Dispatch a query to the matching solver. Vertex cover runs as 2-hitting set."""
    check_flow = opts.pop("check_flow", False)
    if query.measure == "total":
        opts["check_flow"] = check_flow
    if query.problem == "fvs":
        if not isinstance(instance, SimpleGraph):
            raise TypeError("fvs needs a graph instance")
        fn = solve_diverse_fvs if query.measure == "total" else solve_min_diverse_fvs
        return fn(instance, query.k, query.r, t=query.t, **opts)
    if query.problem == "vertex-cover":
        if isinstance(instance, SimpleGraph):
            instance = vc_as_hitting_set(instance)
    elif not isinstance(instance, HypergraphInstance):
        raise TypeError("hitting-set needs a hypergraph instance")
    if query.measure == "total":
        return solve_diverse_hitting_set(instance, query.k, query.r, t=query.t,
                                         problem=query.problem, **opts)
    return solve_min_diverse_hitting_set(instance, query.k, query.r, t=query.t,
                                         problem=query.problem, **opts)
