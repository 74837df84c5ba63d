"""Enumeration of inclusion-minimal hitting sets of bounded size.

A bounded search tree: take the first family set not yet hit and branch
on each of its (at most d) elements, up to depth k. Every minimal hitting
set of size <= k appears at some leaf, so the catalog has at most d**k
members once non-minimal leaves are filtered out.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .model import HypergraphInstance, Solution


@dataclass(frozen=True)
class MinimalSolutionCatalog:
    sets: Tuple[Solution, ...]
    k: int
    d: int

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)


def _branch(family, k: int) -> List[frozenset]:
    found = []

    def rec(chosen: frozenset, budget: int):
        for f in family:
            if chosen.isdisjoint(f):
                break
        else:
            found.append(chosen)
            return
        if budget == 0:
            return
        for e in f:
            rec(chosen | {e}, budget - 1)

    rec(frozenset(), k)
    return found


def _is_minimal(s: frozenset, family) -> bool:
    for e in s:
        rest = s - {e}
        if all(not rest.isdisjoint(f) for f in family):
            return False
    return True


def enumerate_minimal_hitting_sets(inst: HypergraphInstance, k: int) -> MinimalSolutionCatalog:
    """All inclusion-minimal hitting sets of ``inst`` with at most ``k`` elements.

    The catalog is sorted by (size, elements). An empty catalog means no
    hitting set of size <= k exists.
    """
    if k < 0:
        raise ValueError(f"budget k must be >= 0, got {k}")
    family = [frozenset(f) for f in inst.family]
    leaves = set(_branch(family, k))
    minimal = [tuple(sorted(s)) for s in leaves if _is_minimal(s, family)]
    minimal.sort(key=lambda s: (len(s), s))
    return MinimalSolutionCatalog(tuple(minimal), k, inst.d)
