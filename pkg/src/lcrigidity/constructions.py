"""Vertex-addition moves and generators for the named graph families.

Families:

* ``G_k``: a k-cycle with one loop per vertex.
* ``H_t``: a clique on v_1..v_t, a triangle x_i y_i z_i hung off each v_i by
  the edge v_i x_i, and one loop at each y_i and z_i.
* ``T_k^s`` / ``G_k^s``: rooted trees with loops on odd levels, glued at
  their leaves into a graph whose every edge meets a looped vertex.
* small reference graphs separating the balancedness notions.

plus random samplers that repair a random graph with loops until a
balancedness predicate holds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .balancedness import is_essentially_k_balanced, is_weakly_k_balanced
from .errors import HypothesisViolated, MalformedStep
from .graph import Loop, LoopedSimpleGraph, complete_graph, cycle_graph, disjoint_union
from .matroid import ThinCover2D


# ---------------------------------------------------------------------------
# k-loop extension

@dataclass(frozen=True)
class ExtensionStep:
    """A d-dimensional k-loop extension.

    ``deleted_loops`` are k loops at distinct vertices; the new vertex gets
    an edge to every vertex in ``neighbors`` (which must contain the
    deleted-loop vertices) and ``new_loops`` loops.
    """

    k: int
    deleted_loops: tuple = ()
    neighbors: tuple = ()
    new_loops: int = 0

    def to_dict(self) -> dict:
        return {"k": self.k, "deleted_loops": [[x.v, x.k] for x in self.deleted_loops],
                "neighbors": list(self.neighbors), "new_loops": self.new_loops}


def validate_step(g: LoopedSimpleGraph, d: int, step: ExtensionStep) -> None:
    k = step.k
    if not 0 <= k <= d:
        raise MalformedStep(f"k must lie in [0, d={d}], got {k}")
    if len(step.deleted_loops) != k:
        raise MalformedStep(f"need exactly k={k} deleted loops, got {len(step.deleted_loops)}")
    at = [x.v for x in step.deleted_loops]
    if len(set(at)) != k:
        raise MalformedStep("deleted loops must sit at distinct vertices")
    for x in step.deleted_loops:
        if not isinstance(x, Loop) or x not in g:
            raise MalformedStep(f"deleted loop {x!r} is not a loop of the graph")
    nb = list(step.neighbors)
    if len(set(nb)) != len(nb):
        raise MalformedStep("new edges must go to distinct vertices (simple graph)")
    if any(not 0 <= v < g.n for v in nb):
        raise MalformedStep("new edge endpoint outside the graph")
    missing = [v for v in at if v not in nb]
    if missing:
        raise MalformedStep(f"no new edge to deleted-loop vertices {missing}")
    if step.new_loops < k:
        raise MalformedStep(f"at least k={k} loops must be added at the new vertex")
    if len(nb) + step.new_loops != d + k:
        raise MalformedStep(
            f"new edges and loops must total d+k={d + k}, got {len(nb) + step.new_loops}")


def extension_hypothesis_holds(g: LoopedSimpleGraph, d: int, step: ExtensionStep) -> bool:
    """Loop condition under which the move preserves rigidity.

    For k in {1, 2} every deleted-loop vertex needs ceil((k-1)d/k) loops
    before deletion; for k = 0 there is nothing to check.
    """
    k = step.k
    if k == 0 or k > 2:
        return True
    need = math.ceil((k - 1) * d / k)
    return all(g.loop_count(x.v) >= need for x in step.deleted_loops)


def k_loop_extension(g: LoopedSimpleGraph, d: int, step: ExtensionStep,
                     require_hypothesis: bool = False) -> LoopedSimpleGraph:
    validate_step(g, d, step)
    if require_hypothesis and not extension_hypothesis_holds(g, d, step):
        raise HypothesisViolated("deleted-loop vertices have too few loops")
    gone = set(step.deleted_loops)
    v = g.n
    edges = [(e.u, e.v) for e in g.edges] + [(u, v) for u in step.neighbors]
    loops = [x for x in g.loops if x not in gone] + [Loop(v, i) for i in range(step.new_loops)]
    return LoopedSimpleGraph(g.n + 1, edges, loops)


def random_extension_step(g: LoopedSimpleGraph, d: int, k: int, rng,
                          require_hypothesis: bool = True) -> ExtensionStep | None:
    """A uniformly-ish random valid step, or None when none exists."""
    need = math.ceil((k - 1) * d / k) if k in (1, 2) else 0
    cands = [v for v in range(g.n) if g.loop_count(v) >= max(1, need if require_hypothesis else 1)]
    if len(cands) < k:
        return None
    at = sorted(rng.choice(cands, size=k, replace=False).tolist()) if k else []
    deleted = tuple(g.loops_at(v)[int(rng.integers(g.loop_count(v)))] for v in at)
    others = [v for v in range(g.n) if v not in at]
    # edges beyond the forced ones: between 0 and min(d, |others|)
    extra_max = min(d, len(others))
    extra = int(rng.integers(0, extra_max + 1))
    chosen = sorted(rng.choice(others, size=extra, replace=False).tolist()) if extra else []
    nb = tuple(sorted(at + chosen))
    loops = d + k - len(nb)
    if loops < k:
        return None
    return ExtensionStep(k, deleted, nb, loops)


# ---------------------------------------------------------------------------
# named families

def gen_Gk(k: int) -> LoopedSimpleGraph:
    if k < 3:
        raise ValueError("k must be at least 3")
    return cycle_graph(k, 1)


def ht_labels(t: int) -> dict:
    """Vertex numbering used by :func:`gen_Ht`."""
    lab = {f"v{i + 1}": i for i in range(t)}
    for i in range(t):
        base = t + 3 * i
        lab[f"x{i + 1}"], lab[f"y{i + 1}"], lab[f"z{i + 1}"] = base, base + 1, base + 2
    return lab


def gen_Ht(t: int) -> LoopedSimpleGraph:
    if t < 3:
        raise ValueError("t must be at least 3")
    edges = list(combinations(range(t), 2))
    loops = []
    for i in range(t):
        x, y, z = t + 3 * i, t + 3 * i + 1, t + 3 * i + 2
        edges += [(x, y), (x, z), (y, z), (i, x)]
        loops += [y, z]
    return LoopedSimpleGraph(4 * t, edges, loops)


def ht_thin_cover(t: int) -> ThinCover2D:
    """The 1-thin cover of H_t - L used to bound its plane rank by 8t-3."""
    parts = [tuple(range(t))]
    parts += [(t + 3 * i, t + 3 * i + 1, t + 3 * i + 2) for i in range(t)]
    parts += [(i, t + 3 * i) for i in range(t)]
    g = gen_Ht(t)
    return ThinCover2D(frozenset(), tuple(parts), tuple(g.loops))


def _tree(k, s):
    """T_k^s as (n, edges, looped vertices, leaf signatures, levels)."""
    edges, looped, level, sig = [], [], [0], [()]
    frontier = [0]
    for lvl in range(s):
        nxt = []
        for x in frontier:
            kids = k if lvl == 0 else (k - 2 if lvl % 2 == 1 else k - 1)
            for c in range(kids):
                y = len(level)
                level.append(lvl + 1)
                sig.append(sig[x] + (c,))
                edges.append((x, y))
                if (lvl + 1) % 2 == 1:
                    looped.append(y)
                nxt.append(y)
        frontier = nxt
    return len(level), edges, looped, sig, level


def gen_Tks(k: int, s: int) -> LoopedSimpleGraph:
    """Rooted tree on levels 0..s; the root has k children, a vertex on an
    odd level k-2 children, on an even level k-1; odd levels carry a loop."""
    if k < 3 or s < 1:
        raise ValueError("need k >= 3 and s >= 1")
    n, edges, looped, _, _ = _tree(k, s)
    return LoopedSimpleGraph(n, edges, looped)


def gen_Gks(k: int, s: int) -> LoopedSimpleGraph:
    """k-1 (s odd) or k (s even) copies of T_k^s with leaves identified by
    their root paths; a leaf keeps a single loop."""
    if k < 3 or s < 1:
        raise ValueError("need k >= 3 and s >= 1")
    n, edges, looped, sig, level = _tree(k, s)
    copies = k - 1 if s % 2 == 1 else k
    leaves = [v for v in range(n) if level[v] == s]
    inner = [v for v in range(n) if level[v] < s]
    leaf_id = {sig[v]: i for i, v in enumerate(leaves)}
    nl = len(leaves)

    def vid(c, v):
        if level[v] == s:
            return leaf_id[sig[v]]
        return nl + c * len(inner) + inner.index(v)

    total = nl + copies * len(inner)
    E, L = set(), set()
    for c in range(copies):
        for a, b in edges:
            u, w = vid(c, a), vid(c, b)
            E.add((min(u, w), max(u, w)))
        for v in looped:
            L.add(vid(c, v))
    return LoopedSimpleGraph(total, sorted(E), sorted(L))


def gen_fig_graphs() -> dict:
    """Six small reference graphs separating the balancedness notions.

    fig1G / fig1H: a triangle with one / two loops per vertex; fig1GH is
    their disjoint union.  fig2G: vertices v0..v4, the 4-cycle v1v2v3v4 with
    loops on v1..v4, and v0 joined to v1 and v2.  fig2H: the same cycle with
    loops on v2, v3, v4 and v0 joined to v2 only.  fig2K = fig2H + v0v1.
    """
    tri = [(0, 1), (1, 2), (0, 2)]
    g1 = LoopedSimpleGraph(3, tri, [0, 1, 2])
    h1 = LoopedSimpleGraph(3, tri, [0, 0, 1, 1, 2, 2])
    cyc = [(1, 2), (2, 3), (3, 4), (1, 4)]
    g2 = LoopedSimpleGraph(5, cyc + [(0, 1), (0, 2)], [1, 2, 3, 4])
    h2 = LoopedSimpleGraph(5, cyc + [(0, 2)], [2, 3, 4])
    return {"fig1G": g1, "fig1H": h1, "fig1GH": disjoint_union(g1, h1),
            "fig2G": g2, "fig2H": h2, "fig2K": h2.with_edge(0, 1)}


FAMILIES = ("Gk", "Ht", "Tks", "Gks", "fig1G", "fig1H", "fig1GH", "fig2G", "fig2H", "fig2K", "Kn")


def generate(family: str, k: int | None = None, t: int | None = None, s: int | None = None,
             n: int | None = None, loops: int = 0) -> LoopedSimpleGraph:
    if family == "Gk":
        return gen_Gk(_need(k, "k"))
    if family == "Ht":
        return gen_Ht(_need(t, "t"))
    if family == "Tks":
        return gen_Tks(_need(k, "k"), _need(s, "s"))
    if family == "Gks":
        return gen_Gks(_need(k, "k"), _need(s, "s"))
    if family == "Kn":
        return complete_graph(_need(n, "n"), loops)
    figs = gen_fig_graphs()
    if family in figs:
        return figs[family]
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def _need(x, name):
    if x is None:
        raise ValueError(f"--{name} is required for this family")
    return x


# ---------------------------------------------------------------------------
# random samplers

def random_graph(n: int, density: float, rng) -> LoopedSimpleGraph:
    pairs = list(combinations(range(n), 2))
    keep = rng.random(len(pairs)) < density if pairs else []
    return LoopedSimpleGraph(n, [p for p, kp in zip(pairs, keep) if kp])


def _repair(g, checks, rng, max_attempts):
    """Add loops inside witness components until every predicate holds."""
    for _ in range(max_attempts):
        bad = None
        for chk in checks:
            verdict = chk(g)
            if not verdict.holds:
                bad = verdict
                break
        if bad is None:
            return g
        comp = bad.witness_component
        if comp is None:  # no witness, e.g. too few vertices
            return None
        v = int(comp[int(rng.integers(len(comp)))])
        g = g.with_loops([v])
    return None


def sample_weakly_balanced(n: int, k: int, density: float = 0.5, seed: int = 0,
                           max_attempts: int = 10_000) -> LoopedSimpleGraph | None:
    """Random graph G(n, density) repaired with loops until weakly k-balanced.

    Each repair adds one loop at a random vertex of the first deficient
    component found, so the result is deterministic per seed.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    g = random_graph(n, density, rng)
    return _repair(g, [lambda h: is_weakly_k_balanced(h, k)], rng, max_attempts)


def sample_weak4_essential6(n: int, density: float = 0.5, seed: int = 0,
                            max_attempts: int = 10_000) -> LoopedSimpleGraph | None:
    """Random graph repaired until weakly 4-balanced and essentially 6-balanced
    (needs n >= 7)."""
    if n < 7:
        return None
    rng = np.random.default_rng(seed)
    g = random_graph(n, density, rng)
    checks = [lambda h: is_weakly_k_balanced(h, 4), lambda h: is_essentially_k_balanced(h, 6)]
    return _repair(g, checks, rng, max_attempts)
