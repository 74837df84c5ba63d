"""Instance file formats, instance generators and result serialization.

Both formats are line oriented, DIMACS style. Lines starting with ``c``
are comments.

Hypergraph::

    p hs <n> <m> <d>
    e v1 v2 ... vj        (m lines, 1 <= j <= d)

Graph::

    p edge <n> <m>
    e u v                 (m lines)
"""

from __future__ import annotations

import json
import random
import warnings
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Tuple

from .model import (HypergraphInstance, InstanceError, SimpleGraph, canon, div_min,
                    div_total)


class ParseError(InstanceError):
    pass


def _lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = line.split()
        if not toks or toks[0].startswith("c"):
            continue
        yield lineno, toks


def _ints(toks: List[str], lineno: int) -> List[int]:
    try:
        return [int(x) for x in toks]
    except ValueError:
        raise ParseError(f"line {lineno}: expected integers, got {' '.join(toks)!r}") from None


def header_kind(text: str) -> Optional[str]:
    """'hs' or 'edge' from the problem line, None if there is none."""
    for _, toks in _lines(text):
        if toks[0] == "p" and len(toks) > 1:
            return toks[1]
    return None


def parse_hypergraph(text: str) -> HypergraphInstance:
    n = m = d = None
    sets = []
    for lineno, toks in _lines(text):
        if toks[0] == "p":
            if n is not None:
                raise ParseError(f"line {lineno}: duplicate problem line")
            if len(toks) != 5 or toks[1] != "hs":
                raise ParseError(f"line {lineno}: expected 'p hs <n> <m> <d>'")
            n, m, d = _ints(toks[2:], lineno)
            if n < 0 or m < 0 or d < 1:
                raise ParseError(f"line {lineno}: bad header values")
        elif toks[0] == "e":
            if n is None:
                raise ParseError(f"line {lineno}: set before problem line")
            elems = _ints(toks[1:], lineno)
            if not elems:
                raise ParseError(f"line {lineno}: empty set")
            for e in elems:
                if not 1 <= e <= n:
                    raise ParseError(f"line {lineno}: element {e} outside [1, {n}]")
            if len(set(elems)) > d:
                raise ParseError(f"line {lineno}: set of size {len(set(elems))} exceeds d={d}")
            sets.append(canon(elems))
        else:
            raise ParseError(f"line {lineno}: unknown line type {toks[0]!r}")
    if n is None:
        raise ParseError("missing problem line")
    if len(sets) != m:
        warnings.warn(f"header declares {m} sets, found {len(sets)}")
    if len(set(sets)) != len(sets):
        warnings.warn("duplicate sets collapsed")
    return HypergraphInstance(n, tuple(sets), d)


def parse_graph(text: str) -> SimpleGraph:
    n = m = None
    edges = []
    for lineno, toks in _lines(text):
        if toks[0] == "p":
            if n is not None:
                raise ParseError(f"line {lineno}: duplicate problem line")
            if len(toks) != 4 or toks[1] != "edge":
                raise ParseError(f"line {lineno}: expected 'p edge <n> <m>'")
            n, m = _ints(toks[2:], lineno)
            if n < 0 or m < 0:
                raise ParseError(f"line {lineno}: bad header values")
        elif toks[0] == "e":
            if len(toks) != 3:
                raise ParseError(f"line {lineno}: expected 'e <u> <v>'")
            u, v = _ints(toks[1:], lineno)
            if u == v:
                raise ParseError(f"line {lineno}: self-loop at vertex {u}")
            if n is None:
                raise ParseError(f"line {lineno}: edge before problem line")
            for x in (u, v):
                if not 1 <= x <= n:
                    raise ParseError(f"line {lineno}: vertex {x} outside [1, {n}]")
            edges.append((min(u, v), max(u, v)))
        else:
            raise ParseError(f"line {lineno}: unknown line type {toks[0]!r}")
    if n is None:
        raise ParseError("missing problem line")
    if len(set(edges)) != len(edges):
        warnings.warn("duplicate edges collapsed")
    elif len(edges) != m:
        warnings.warn(f"header declares {m} edges, found {len(edges)}")
    return SimpleGraph(n, tuple(edges))


def format_hypergraph(inst: HypergraphInstance) -> str:
    lines = [f"p hs {inst.n} {len(inst.family)} {inst.d}"]
    lines += ["e " + " ".join(map(str, s)) for s in inst.family]
    return "\n".join(lines) + "\n"


def format_graph(g: SimpleGraph) -> str:
    lines = [f"p edge {g.n} {len(g.edges)}"]
    lines += [f"e {u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def _need(params: Dict[str, str], key: str, cast=int):
    if key not in params:
        raise ValueError(f"missing generator parameter {key}=")
    return cast(params[key])


def generate(kind: str, params: Dict[str, str], seed: int = 0) -> str:
    """Instance text for ``path``/``cycle`` (n), ``random-hs`` (n, m, d) or
    ``random-graph`` (n, p). Random kinds are a pure function of ``seed``."""
    n = _need(params, "n")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if kind == "path":
        return format_graph(SimpleGraph.from_edges(n, [(i, i + 1) for i in range(1, n)]))
    if kind == "cycle":
        if n < 3:
            raise ValueError("a simple cycle needs n >= 3")
        edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
        return format_graph(SimpleGraph.from_edges(n, edges))
    rng = random.Random(seed)
    if kind == "random-hs":
        m, d = _need(params, "m"), _need(params, "d")
        if m < 0 or d < 1:
            raise ValueError("need m >= 0 and d >= 1")
        sets = []
        for _ in range(m):
            size = rng.randint(1, min(d, n))
            sets.append(sorted(rng.sample(range(1, n + 1), size)))
        lines = [f"p hs {n} {m} {d}"] + ["e " + " ".join(map(str, s)) for s in sets]
        return "\n".join(lines) + "\n"
    if kind == "random-graph":
        p = _need(params, "p", float)
        edges = [e for e in combinations(range(1, n + 1), 2) if rng.random() < p]
        return format_graph(SimpleGraph.from_edges(n, edges))
    raise ValueError(f"unknown generator kind {kind!r}")


def result_dict(res) -> dict:
    out = {"feasible": res.feasible, "problem": res.problem, "measure": res.measure,
           "k": res.k, "r": res.r, "t": res.t, "meets_target": res.meets_target}
    if not res.feasible:
        return out
    sols = [list(s) for s in res.tuple]
    out["solutions"] = sols
    out["diversity_total"] = div_total(res.tuple)
    out["diversity_min"] = div_min(res.tuple) if len(sols) >= 2 else None
    return out


def emit_result(res, fmt: str = "json") -> str:
    data = result_dict(res)
    if fmt == "json":
        return json.dumps(data) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    head = f"{res.problem}  measure={res.measure}  k={res.k}  r={res.r}"
    if res.t is not None:
        head += f"  t={res.t}  met={'yes' if res.meets_target else 'no'}"
    if not res.feasible:
        return head + "\ninfeasible\n"
    rows = [head, f"diversity_total={data['diversity_total']}  "
                  f"diversity_min={data['diversity_min']}", "",
            f"{'#':>3}  {'size':>4}  elements"]
    for i, s in enumerate(data["solutions"], 1):
        rows.append(f"{i:>3}  {len(s):>4}  {' '.join(map(str, s)) or '-'}")
    return "\n".join(rows) + "\n"
