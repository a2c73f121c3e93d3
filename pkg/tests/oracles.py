"""Independent reference implementations used only by the tests.

Deliberately naive: plain sets, sympy linear algebra and explicit set
partitions, sharing no code with the package beyond the graph type.
"""

from itertools import combinations

import sympy
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix
from sympy.utilities.iterables import multiset_partitions

from lcrigidity.graph import Edge, Loop


def rank_gf(rows, p):
    """Rank over GF(p) with sympy's DomainMatrix."""
    rows = [[int(x) % p for x in r] for r in rows]
    if not rows or not rows[0]:
        return 0
    K = GF(p)
    dm = DomainMatrix([[K(x) for x in r] for r in rows], (len(rows), len(rows[0])), K)
    return dm.rank()


def rank_q(rows):
    if not rows or not rows[0]:
        return 0
    return sympy.Matrix(rows).rank()


def components_naive(g, removed):
    alive = [v for v in range(g.n) if v not in removed]
    comp = {v: {v} for v in alive}
    for e in g.edges:
        if e.u in comp and e.v in comp and comp[e.u] is not comp[e.v]:
            merged = comp[e.u] | comp[e.v]
            for w in merged:
                comp[w] = merged
    out = []
    for v in alive:
        c = frozenset(comp[v])
        if c not in out:
            out.append(c)
    return out


def balanced_naive(g, kind, k):
    if kind == "essential":
        if g.n < k + 1:
            return False
        sizes = range(0, min(k - 1, g.n - 1) + 1)
    else:
        sizes = range(0, min(k, g.n) + 1)
    for r in sizes:
        for T in combinations(range(g.n), r):
            for comp in components_naive(g, set(T)):
                looped = [v for v in comp if g.loop_count(v) > 0]
                nloops = sum(g.loop_count(v) for v in comp)
                if kind == "k" and len(looped) < k - r:
                    return False
                if kind == "weak" and nloops < k - r:
                    return False
                if kind == "essential":
                    has_edge = any(e.u in comp and e.v in comp for e in g.edges)
                    if has_edge and nloops == 0:
                        return False
    return True


def sparse_naive(g, t):
    for r in range(1, g.n + 1):
        for X in combinations(range(g.n), r):
            X = set(X)
            cnt = sum(1 for e in g.edges if e.u in X and e.v in X)
            cnt += sum(1 for x in g.loops if x.v in X)
            if cnt > t * r:
                return False
    return True


def span(T):
    out = set()
    for x in T:
        out |= {x.u, x.v} if isinstance(x, Edge) else {x.v}
    return out


def f1_naive(T, t):
    T = list(T)
    if not T:
        return 0
    nv = len(span(T))
    loop_free = not any(isinstance(x, Loop) for x in T)
    if loop_free and nv <= 2 * t:
        return len(T)
    if loop_free and nv == 2 * t + 1:
        return t * nv - 1
    return t * nv


def set_partitions(T):
    T = list(T)
    if not T:
        yield []
        return
    yield from multiset_partitions(T)


def dilworth_naive(T, t):
    T = list(T)
    if not T:
        return 0
    return min(sum(f1_naive(P, t) for P in part) for part in set_partitions(T))


def hat_f1_naive(T, t):
    """min over T' subset of T of |T'| + f1^D(T - T'), all unrestricted."""
    T = list(T)
    best = None
    for r in range(len(T) + 1):
        for Tp in combinations(range(len(T)), r):
            rest = [T[i] for i in range(len(T)) if i not in Tp]
            val = r + dilworth_naive(rest, t)
            best = val if best is None else min(best, val)
    return best


def hat_f0_naive(T, t):
    T = list(T)
    best = None
    for r in range(len(T) + 1):
        for Tp in combinations(range(len(T)), r):
            rest = [T[i] for i in range(len(T)) if i not in Tp]
            val = r + t * len(span(rest))
            best = val if best is None else min(best, val)
    return best


def is_hamilton_cycle(cycle_edges, n):
    deg = {v: 0 for v in range(n)}
    adj = {v: [] for v in range(n)}
    for e in cycle_edges:
        deg[e.u] += 1
        deg[e.v] += 1
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    if any(x != 2 for x in deg.values()) or len(cycle_edges) != n:
        return False
    seen, stack = {0}, [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n
