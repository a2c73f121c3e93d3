"""Count sparsity of looped graphs, d-tight certificates and Hamilton decompositions.

A looped graph is t-sparse when every vertex set X induces at most t|X|
edges and loops, and t-tight when in addition |E|+|L| = t|V|.  Sparsity is
decided by the (t,0) pebble game: every vertex starts with t pebbles, an
edge is accepted when one pebble can be gathered at either endpoint, and a
loop is accepted when one pebble can be gathered at its vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from ._config import default_budget
from .errors import BudgetExceeded, HypothesisViolated, PreconditionViolated
from .graph import Edge, Element, Loop, LoopedSimpleGraph, element_key


class PebbleGame:
    """Incremental (t,0) pebble game with loops."""

    def __init__(self, n: int, t: int):
        if t < 1:
            raise ValueError("t must be at least 1")
        self.n, self.t = n, t
        self.pebbles = [t] * n
        self.out = [[] for _ in range(n)]  # directed simple edges, tail -> heads
        self.accepted: list[Element] = []

    def copy(self) -> "PebbleGame":
        other = PebbleGame.__new__(PebbleGame)
        other.n, other.t = self.n, self.t
        other.pebbles = list(self.pebbles)
        other.out = [list(h) for h in self.out]
        other.accepted = list(self.accepted)
        return other

    def reach(self, roots) -> frozenset[int]:
        seen = set(roots)
        stack = list(roots)
        while stack:
            x = stack.pop()
            for y in self.out[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)

    def try_add(self, x: Element) -> bool:
        if isinstance(x, Loop):
            if self._pull(x.v):
                self.pebbles[x.v] -= 1
                self.accepted.append(x)
                return True
            return False
        u, v = x.u, x.v
        for a, b in ((u, v), (v, u)):
            if self._pull(a):
                self.pebbles[a] -= 1
                self.out[a].append(b)
                self.accepted.append(x)
                return True
        return False

    def _pull(self, root) -> bool:
        """Ensure ``root`` holds a pebble, searching along out-edges."""
        if self.pebbles[root] > 0:
            return True
        parent = {root: None}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in self.out[x]:
                if y in parent:
                    continue
                parent[y] = x
                if self.pebbles[y] > 0:
                    # reverse root -> ... -> y; the pebble at y pays for the
                    # reversed edge into y's predecessor, and so on down to root
                    self.pebbles[y] -= 1
                    z = y
                    while parent[z] is not None:
                        p = parent[z]
                        self.out[p].remove(z)
                        self.out[z].append(p)
                        z = p
                    self.pebbles[root] += 1
                    return True
                stack.append(y)
        return False


@dataclass(frozen=True)
class SparsityCertificate:
    t: int
    sparse: bool
    tight: bool
    violating_set: frozenset[int] | None = None
    rejected: Element | None = None
    accepted: int = 0

    @property
    def verdict(self) -> str:
        return "sparse" if self.sparse else "violating"

    def __bool__(self):
        return self.sparse

    def recount(self, g: LoopedSimpleGraph) -> bool:
        """True iff ``violating_set`` induces more than t|X| elements."""
        if self.violating_set is None:
            return False
        X = self.violating_set
        return len(g.elements_within(X)) > self.t * len(X)

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "t": self.t, "tight": self.tight,
                "violating_set": None if self.violating_set is None else sorted(self.violating_set)}


def is_t_sparse(g: LoopedSimpleGraph, t: int) -> SparsityCertificate:
    if t < 1:
        raise ValueError("t must be at least 1")
    game = PebbleGame(g.n, t)
    for x in g.elements():
        if not game.try_add(x):
            X = game.reach(x.vertices)
            return SparsityCertificate(t, False, False, X, x, len(game.accepted))
    tight = g.num_elements() == t * g.n
    return SparsityCertificate(t, True, tight, None, None, len(game.accepted))


def is_t_tight(g: LoopedSimpleGraph, t: int) -> bool:
    return is_t_sparse(g, t).tight


def brute_force_sparse(g: LoopedSimpleGraph, t: int) -> bool:
    """Reference check over every vertex subset (small graphs only)."""
    for r in range(1, g.n + 1):
        for X in combinations(range(g.n), r):
            if len(g.elements_within(X)) > t * r:
                return False
    return True


def count_rank(elements, n: int, t: int, game: PebbleGame | None = None) -> int:
    """Rank of ``elements`` in the (t,0) count matroid, extending ``game``."""
    game = PebbleGame(n, t) if game is None else game.copy()
    for x in elements:
        game.try_add(x)
    return len(game.accepted)


# ---------------------------------------------------------------------------
# spanning d-tight K_{d+2}-free search

def _has_clique_with(adj, u, v, size):
    """Does the graph ``adj`` contain a clique of ``size`` vertices through u, v?"""
    need = size - 2
    common = sorted(adj[u] & adj[v])

    def grow(chosen, cands, k):
        if k == 0:
            return True
        for i, w in enumerate(cands):
            if len(cands) - i < k:
                return False
            if grow(chosen + [w], [z for z in cands[i + 1:] if z in adj[w]], k - 1):
                return True
        return False

    return grow([], common, need)


def has_clique(g: LoopedSimpleGraph, size: int) -> bool:
    if size <= 1:
        return g.n >= size
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    for e in g.edges:
        if _has_clique_with(adj, e.u, e.v, size):
            return True
    return False


@dataclass
class SearchStats:
    nodes: int = 0
    budget: int = 0
    extra: dict = field(default_factory=dict)


def find_spanning_d_tight_Kd2_free(g: LoopedSimpleGraph, d: int, budget: int | None = None,
                                   stats: SearchStats | None = None) -> LoopedSimpleGraph | None:
    """Search for a spanning d-tight, K_{d+2}-free subgraph H in which every
    vertex keeps at least floor(d/2) loops.

    Branch and bound over the elements in the fixed order edges-then-loops,
    trying inclusion before exclusion, so the result is the first such H in
    that order.  A branch is cut when the current selection stops being
    d-sparse, when selection plus remaining elements has count-matroid rank
    below d|V|, or when some vertex can no longer reach floor(d/2) loops.

    For d >= 2 and every vertex of ``g`` carrying floor(d/2) loops, such an
    H exists iff ``g`` is L_d-rigid.  At d = 1 the equivalence fails (a
    loopless 4-cycle is 1-tight and triangle-free yet flexible), so the
    search still runs but its answer says nothing about rigidity there.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    need_loops = d // 2
    short = [v for v in range(g.n) if g.loop_count(v) < need_loops]
    if short:
        raise HypothesisViolated(
            f"vertices {short} carry fewer than floor(d/2)={need_loops} loops")
    budget = default_budget() if budget is None else budget
    stats = SearchStats(budget=budget) if stats is None else stats
    target = d * g.n
    elems = sorted(g.elements(), key=element_key)
    if len(elems) < target or count_rank(elems, g.n, d) < target:
        return None
    # suffix loop counts: loops at v among elems[i:]
    suffix = [[0] * g.n for _ in range(len(elems) + 1)]
    for i in range(len(elems) - 1, -1, -1):
        suffix[i] = list(suffix[i + 1])
        if isinstance(elems[i], Loop):
            suffix[i][elems[i].v] += 1
    adj = [set() for _ in range(g.n)]
    loops_have = [0] * g.n
    chosen: list[Element] = []

    def feasible(i, game):
        if len(chosen) + (len(elems) - i) < target:
            return False
        if any(loops_have[v] + suffix[i][v] < need_loops for v in range(g.n)):
            return False
        return count_rank(elems[i:], g.n, d, game) >= target

    def rec(i, game):
        stats.nodes += 1
        if stats.nodes > budget:
            raise BudgetExceeded(f"d-tight search exceeded {budget} nodes")
        if len(chosen) == target:
            return all(c >= need_loops for c in loops_have)
        if i == len(elems) or not feasible(i, game):
            return False
        x = elems[i]
        ok_clique = True
        if isinstance(x, Edge):
            adj[x.u].add(x.v)
            adj[x.v].add(x.u)
            ok_clique = not _has_clique_with(adj, x.u, x.v, d + 2)
            if not ok_clique:
                adj[x.u].discard(x.v)
                adj[x.v].discard(x.u)
        if ok_clique:
            g2 = game.copy()
            if g2.try_add(x):
                chosen.append(x)
                if isinstance(x, Loop):
                    loops_have[x.v] += 1
                if rec(i + 1, g2):
                    return True
                chosen.pop()
                if isinstance(x, Loop):
                    loops_have[x.v] -= 1
            if isinstance(x, Edge):
                adj[x.u].discard(x.v)
                adj[x.v].discard(x.u)
        return rec(i + 1, game)

    if rec(0, PebbleGame(g.n, d)):
        es = [x for x in chosen if isinstance(x, Edge)]
        ls = [x for x in chosen if isinstance(x, Loop)]
        return LoopedSimpleGraph(g.n, es, ls)
    return None


def check_d_tight_certificate(g: LoopedSimpleGraph, h: LoopedSimpleGraph, d: int) -> bool:
    """Independent recheck of a certificate returned by the search."""
    if h.n != g.n or any(x not in g for x in h.elements()):
        return False
    if h.num_elements() != d * h.n or not brute_force_sparse(h, d):
        return False
    if any(h.loop_count(v) < d // 2 for v in range(h.n)):
        return False
    return not any(all(h.has_edge(a, b) for a, b in combinations(C, 2))
                   for C in combinations(range(h.n), d + 2))


# ---------------------------------------------------------------------------
# Hamilton decompositions of complete graphs

@dataclass(frozen=True)
class HamiltonDecomposition:
    n: int
    cycles: tuple[tuple[int, ...], ...]  # vertex orders, closing edge implied
    matching: tuple[Edge, ...] = ()

    def cycle_edges(self) -> list[frozenset[Edge]]:
        return [frozenset(Edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c)))
                for c in self.cycles]

    def edge_sets(self) -> list[frozenset[Edge]]:
        out = self.cycle_edges()
        if self.matching:
            out.append(frozenset(self.matching))
        return out


def _walecki_odd(n):
    """(n-1)/2 Hamilton cycles of K_n, n odd; vertex n-1 plays infinity."""
    m = (n - 1) // 2
    mod = 2 * m
    cycles = []
    for i in range(m):
        seq = [i]
        for j in range(1, m + 1):
            seq.append((i + j) % mod)
            if j < m:
                seq.append((i - j) % mod)
        cycles.append(tuple([n - 1] + seq))
    return cycles


def _choose_insertion_edges(cycles, n):
    """One edge per cycle, pairwise vertex-disjoint (deterministic backtracking)."""
    per = []
    for c in cycles:
        es = sorted(Edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c)))
        per.append(es)
    used = set()
    pick = []

    def rec(i):
        if i == len(per):
            return True
        for e in per[i]:
            if e.u in used or e.v in used:
                continue
            used.update((e.u, e.v))
            pick.append(e)
            if rec(i + 1):
                return True
            pick.pop()
            used.difference_update((e.u, e.v))
        return False

    if not rec(0):  # pragma: no cover - never observed for n <= 60
        raise RuntimeError(f"no insertion edges found for n={n}")
    return pick


def hamilton_decomposition(n: int) -> HamiltonDecomposition:
    """Walecki decomposition of K_n.

    Odd n: (n-1)/2 edge-disjoint Hamilton cycles.  Even n: the odd
    construction on n-1 vertices, then the new vertex n-1 is spliced into
    every cycle in place of one edge; the spliced-out edges are pairwise
    disjoint and miss one vertex c, so together with (n-1, c) they form the
    leftover perfect matching.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    if n % 2 == 1:
        return HamiltonDecomposition(n, tuple(_walecki_odd(n)))
    base = _walecki_odd(n - 1)
    pick = _choose_insertion_edges(base, n - 1)
    w = n - 1
    cycles = []
    for c, e in zip(base, pick):
        L = len(c)
        for i in range(L):
            a, b = c[i], c[(i + 1) % L]
            if Edge(a, b) == e:
                cycles.append(tuple(c[:i + 1]) + (w,) + tuple(c[i + 1:]))
                break
    covered = {v for e in pick for v in (e.u, e.v)}
    c = next(v for v in range(n - 1) if v not in covered)
    matching = tuple(sorted(pick + [Edge(w, c)]))
    return HamiltonDecomposition(n, tuple(cycles), matching)


def build_t_tight_witness(S, t: int, g: LoopedSimpleGraph | None = None) -> LoopedSimpleGraph:
    """t-tight graph on a looped clique S of size 2t.

    Uses the t-1 Hamilton cycles of K_{2t} plus one loop per vertex; the
    leftover perfect matching is dropped so the count is exactly t|S|.
    Vertex i of the result is the i-th smallest member of S.  With ``g``
    given, S must induce a complete graph in ``g`` with a loop at every
    vertex and the loops are taken from ``g`` (first ordinal).
    """
    S = sorted(set(S))
    if t < 1:
        raise PreconditionViolated("t must be at least 1")
    if len(S) != 2 * t:
        raise PreconditionViolated(f"|S| must be 2t={2 * t}, got {len(S)}")
    ks = [0] * len(S)
    if g is not None:
        for a, b in combinations(S, 2):
            if not g.has_edge(a, b):
                raise PreconditionViolated(f"S does not induce a clique: {a}{b} missing")
        for i, v in enumerate(S):
            if not g.loops_at(v):
                raise PreconditionViolated(f"vertex {v} of S has no loop")
            ks[i] = g.loops_at(v)[0].k
    edges = []
    if t >= 2:
        for es in hamilton_decomposition(2 * t).cycle_edges():
            edges.extend(es)
    return LoopedSimpleGraph(2 * t, edges, [Loop(i, ks[i]) for i in range(2 * t)])
