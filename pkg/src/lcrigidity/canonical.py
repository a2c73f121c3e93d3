"""Canonical forms and isomorph-free enumeration of small looped graphs.

The canonical form is the lexicographically smallest (loop vector, edge
list) over all relabelings that sort vertices by the invariant
(degree, loop count).  Only permutations within an invariant class are
tried, which keeps n <= 6 fast.
"""

from __future__ import annotations

from itertools import combinations, permutations, product

from .graph import LoopedSimpleGraph


def _class_perms(keys):
    """Yield maps old -> new that place vertices in order of ``keys``."""
    order = sorted(set(keys))
    groups = [[v for v in range(len(keys)) if keys[v] == k] for k in order]
    starts, pos = [], 0
    for grp in groups:
        starts.append(pos)
        pos += len(grp)
    for choice in product(*(permutations(grp) for grp in groups)):
        m = [0] * len(keys)
        for start, perm in zip(starts, choice):
            for i, v in enumerate(perm):
                m[v] = start + i
        yield m


def canonical_form(g: LoopedSimpleGraph) -> tuple:
    keys = [(g.degree(v), g.loop_count(v)) for v in range(g.n)]
    best = None
    for m in _class_perms(keys):
        loops = [0] * g.n
        for v in range(g.n):
            loops[m[v]] = g.loop_count(v)
        edges = tuple(sorted((min(m[e.u], m[e.v]), max(m[e.u], m[e.v])) for e in g.edges))
        cand = (tuple(loops), edges)
        if best is None or cand < best:
            best = cand
    return (g.n,) + (best if best is not None else ((), ()))


def from_canonical(form: tuple) -> LoopedSimpleGraph:
    n, loops, edges = form
    return LoopedSimpleGraph(n, list(edges), [v for v in range(n) for _ in range(loops[v])])


def is_isomorphic(g: LoopedSimpleGraph, h: LoopedSimpleGraph) -> bool:
    return canonical_form(g) == canonical_form(h)


def simple_graphs(n: int) -> list[LoopedSimpleGraph]:
    """One loopless representative per isomorphism class on n vertices."""
    pairs = list(combinations(range(n), 2))
    seen = {}
    for mask in range(1 << len(pairs)):
        g = LoopedSimpleGraph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
        seen.setdefault(canonical_form(g), g)
    return [seen[k] for k in sorted(seen)]


def looped_graphs(n: int, max_loops: int = 1) -> list[LoopedSimpleGraph]:
    """One representative per class of looped simple graphs on n vertices
    with at most ``max_loops`` loops at each vertex."""
    seen = {}
    for base in simple_graphs(n):
        for counts in product(range(max_loops + 1), repeat=n):
            g = base.with_loops([v for v in range(n) for _ in range(counts[v])])
            seen.setdefault(canonical_form(g), g)
    return [seen[k] for k in sorted(seen)]


def enumerate_looped_graphs(n_max: int, max_loops: int = 1, n_min: int = 1):
    for n in range(n_min, n_max + 1):
        yield from looped_graphs(n, max_loops)
