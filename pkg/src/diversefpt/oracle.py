"""Brute-force reference implementations.

Deliberately naive: subset scans and exhaustive tuple searches, guarded
by explicit caps. Also serves as the complete-enumeration backend of the
min-diversity solvers when the universe is small.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, product
from math import comb
from typing import Iterable, Sequence, Tuple

from .model import (HypergraphInstance, SimpleGraph, Solution, SolutionTuple,
                    canon, div_min, div_total, vc_as_hitting_set)

DEFAULT_MAX_N = 25
DEFAULT_TUPLE_CAP = 5_000_000


class CapExceeded(RuntimeError):
    """An enumeration would exceed its configured cap."""


@dataclass(frozen=True)
class FullSolutionCatalog:
    sets: Tuple[Solution, ...]
    k: int

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)


def _validator(problem: str, instance):
    if problem == "hitting-set":
        return instance.n, instance.is_hitting_set
    if problem == "vertex-cover":
        if isinstance(instance, SimpleGraph):
            return instance.n, instance.is_vertex_cover
        return instance.n, instance.is_hitting_set
    if problem == "fvs":
        return instance.n, instance.is_fvs
    raise ValueError(f"unknown problem {problem!r}")


def enumerate_all_solutions(problem: str, instance, k: int,
                            max_n: int = DEFAULT_MAX_N) -> FullSolutionCatalog:
    """Every solution of size <= k, by scanning subsets in (size, lex) order."""
    n, valid = _validator(problem, instance)
    if n > max_n:
        raise CapExceeded(f"universe size {n} exceeds enumeration cap {max_n}")
    found = []
    for size in range(min(k, n) + 1):
        for s in combinations(range(1, n + 1), size):
            if valid(s):
                found.append(s)
    return FullSolutionCatalog(tuple(found), k)


def brute_force_best_tuple(catalog: Iterable[Solution], r: int, measure: str,
                           cap: int = DEFAULT_TUPLE_CAP, ordered: bool = False,
                           k: int | None = None):
    """Exact optimum of ``measure`` over r-tuples drawn from ``catalog``.

    ``total`` ranges over tuples with repetition; ``min`` over r distinct
    solutions unless fewer than r exist. ``ordered=True`` scans all
    ``len(catalog)**r`` ordered tuples instead of multisets.
    Returns ``(SolutionTuple, value)``, or ``(None, None)`` if the catalog is empty.
    """
    sets = list(catalog)
    if not sets:
        return None, None
    if k is None:
        k = max(len(s) for s in sets)
    m = len(sets)
    if ordered:
        count, tuples = m ** r, product(sets, repeat=r)
    elif measure == "min" and m >= r:
        count, tuples = comb(m, r), combinations(sets, r)
    else:
        count, tuples = comb(m + r - 1, r), combinations_with_replacement(sets, r)
    if count > cap:
        raise CapExceeded(f"{count} tuples exceed cap {cap}")
    score = div_total if measure == "total" else div_min
    best, best_val = None, None
    for tup in tuples:
        val = score(tup)
        if best_val is None or val > best_val:
            best, best_val = tup, val
    return SolutionTuple(tuple(best), k), best_val


def _class_options(n: int, labels: Sequence[Solution], k: int):
    lab_sets = [set(lab) for lab in labels]
    out = []
    for size in range(k + 1):
        for s in combinations(range(1, n + 1), size):
            chosen = set(s)
            if all(chosen & lab for lab in lab_sets):
                out.append(s)
    return out


def brute_force_augment(n: int, items, k: int, r: int | None = None,
                        cap: int = DEFAULT_TUPLE_CAP) -> int:
    """Best total diversity over all feasible augmentations.

    ``items`` is a sequence of base sets, or of objects with a ``labels``
    attribute (solution classes): each chosen set must then meet every label set.
    """
    items = list(items)
    if r is not None and r != len(items):
        raise ValueError("r does not match the number of bases")
    options = []
    for it in items:
        if hasattr(it, "labels"):
            options.append(_class_options(n, it.labels, k))
        else:
            base = set(canon(it))
            options.append([s for s in _class_options(n, [], k) if base <= set(s)])
    total = 1
    for o in options:
        total *= len(o)
    if total > cap:
        raise CapExceeded(f"{total} augmentations exceed cap {cap}")
    best = None
    for tup in product(*options):
        val = div_total(tup)
        if best is None or val > best:
            best = val
    return best


def oracle_optimum(problem: str, instance, k: int, r: int, measure: str,
                   cap: int = DEFAULT_TUPLE_CAP):
    """Enumerate all solutions and return the best tuple and its value."""
    if problem == "vertex-cover" and isinstance(instance, SimpleGraph):
        instance = vc_as_hitting_set(instance)
        problem = "hitting-set"
    catalog = enumerate_all_solutions(problem, instance, k)
    return brute_force_best_tuple(catalog, r, measure, cap=cap, k=k)
