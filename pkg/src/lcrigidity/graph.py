"""Looped simple graphs G = (V, E, L).

Vertices are ``0..n-1``.  Simple edges are unordered pairs without
repetition; loops are labeled ``(vertex, ordinal)`` so that several loops
at one vertex remain distinct matroid elements.  Graphs are immutable:
every operation returns a new graph.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

from .errors import DuplicateEdge, UnknownElement


@dataclass(frozen=True, order=True)
class Edge:
    u: int
    v: int

    def __post_init__(self):
        if self.u == self.v:
            raise ValueError(f"simple edge needs distinct endpoints, got {self.u}")
        if self.u > self.v:
            u, v = self.v, self.u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.u, self.v)

    def __repr__(self):
        return f"Edge({self.u},{self.v})"


@dataclass(frozen=True, order=True)
class Loop:
    v: int
    k: int = 0

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.v,)

    def __repr__(self):
        return f"Loop({self.v}#{self.k})"


Element = Edge | Loop


def element_key(x: Element):
    """Total order on mixed element collections: edges first, then loops."""
    if isinstance(x, Edge):
        return (0, x.u, x.v)
    return (1, x.v, x.k)


def vertex_span(elements: Iterable[Element]) -> frozenset[int]:
    """V(T): every endpoint of every element of T."""
    out = set()
    for x in elements:
        out.update(x.vertices)
    return frozenset(out)


class LoopedSimpleGraph:
    """An immutable looped simple graph.

    ``edges`` may hold pairs or :class:`Edge` objects.  ``loops`` may hold
    bare vertex indices (ordinals are then assigned in order of
    appearance, after any explicit ones) or :class:`Loop` objects.
    """

    __slots__ = ("_n", "_edges", "_loops", "_adj", "_loops_at", "_hash")

    def __init__(self, n: int, edges: Iterable = (), loops: Iterable = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self._n = int(n)
        es = set()
        for e in edges:
            if not isinstance(e, Edge):
                a, b = e
                e = Edge(int(a), int(b))
            if not (0 <= e.u < n and 0 <= e.v < n):
                raise ValueError(f"edge {e} out of range for n={n}")
            if e in es:
                raise DuplicateEdge(f"duplicate simple edge {e}")
            es.add(e)
        explicit, bare = [], []
        for x in loops:
            (explicit if isinstance(x, Loop) else bare).append(x)
        ls = set()
        for x in explicit:
            if not 0 <= x.v < n:
                raise ValueError(f"loop {x} out of range for n={n}")
            if x in ls:
                raise ValueError(f"duplicate loop label {x}")
            ls.add(x)
        nxt = defaultdict(int)
        for x in ls:
            nxt[x.v] = max(nxt[x.v], x.k + 1)
        for v in bare:
            v = int(v)
            if not 0 <= v < n:
                raise ValueError(f"loop at {v} out of range for n={n}")
            ls.add(Loop(v, nxt[v]))
            nxt[v] += 1
        self._edges = tuple(sorted(es))
        self._loops = tuple(sorted(ls))
        adj = [set() for _ in range(n)]
        for e in self._edges:
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
        self._adj = tuple(frozenset(a) for a in adj)
        at = [[] for _ in range(n)]
        for x in self._loops:
            at[x.v].append(x)
        self._loops_at = tuple(tuple(a) for a in at)
        self._hash = None

    # -- basic accessors -------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def loops(self) -> tuple[Loop, ...]:
        return self._loops

    @property
    def vertices(self) -> range:
        return range(self._n)

    def elements(self) -> tuple[Element, ...]:
        return self._edges + self._loops

    def num_elements(self) -> int:
        return len(self._edges) + len(self._loops)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def loops_at(self, v: int) -> tuple[Loop, ...]:
        return self._loops_at[v]

    def loop_count(self, v: int) -> int:
        return len(self._loops_at[v])

    def looped_vertices(self) -> frozenset[int]:
        return frozenset(x.v for x in self._loops)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def __contains__(self, x) -> bool:
        if isinstance(x, Edge):
            return x.u < self._n and x.v in self._adj[x.u]
        if isinstance(x, Loop):
            return 0 <= x.v < self._n and x in self._loops_at[x.v]
        return False

    def edges_within(self, X) -> tuple[Edge, ...]:
        """E_G(X)."""
        X = set(X)
        return tuple(e for e in self._edges if e.u in X and e.v in X)

    def loops_within(self, X) -> tuple[Loop, ...]:
        """L_G(X)."""
        return tuple(x for v in sorted(set(X)) for x in self._loops_at[v])

    def elements_within(self, X) -> tuple[Element, ...]:
        return self.edges_within(X) + self.loops_within(X)

    # -- value semantics -------------------------------------------------
    def _key(self):
        return (self._n, self._edges, self._loops)

    def __eq__(self, other):
        if not isinstance(other, LoopedSimpleGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return (f"LoopedSimpleGraph(n={self._n}, |E|={len(self._edges)}, "
                f"|L|={len(self._loops)})")

    # -- small mutators returning new graphs -----------------------------
    def with_edge(self, u: int, v: int) -> "LoopedSimpleGraph":
        if self.has_edge(u, v):
            raise DuplicateEdge(f"edge {Edge(u, v)} already present")
        return LoopedSimpleGraph(self._n, self._edges + (Edge(u, v),), self._loops)

    def with_loops(self, vertices: Iterable[int]) -> "LoopedSimpleGraph":
        return LoopedSimpleGraph(self._n, self._edges, list(self._loops) + list(vertices))

    def with_vertex(self) -> "LoopedSimpleGraph":
        return LoopedSimpleGraph(self._n + 1, self._edges, self._loops)

    # -- serialization ---------------------------------------------------
    def to_dict(self) -> dict:
        contiguous = all(x.k == i for v in range(self._n)
                         for i, x in enumerate(self._loops_at[v]))
        if contiguous:
            loops = [x.v for x in self._loops]
        else:
            loops = [[x.v, x.k] for x in self._loops]
        return {"n": self._n,
                "edges": [[e.u, e.v] for e in self._edges],
                "loops": loops}

    @classmethod
    def from_dict(cls, data: dict) -> "LoopedSimpleGraph":
        try:
            n = int(data["n"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError("graph JSON needs an integer field 'n'") from exc
        loops = [Loop(int(x[0]), int(x[1])) if isinstance(x, (list, tuple)) else int(x)
                 for x in data.get("loops", [])]
        return cls(n, [tuple(e) for e in data.get("edges", [])], loops)

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def loads(cls, text: str) -> "LoopedSimpleGraph":
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# operations

def add_uniform_loops(g: LoopedSimpleGraph, t: int) -> LoopedSimpleGraph:
    """G^[t]: add ``t`` fresh loops at every vertex."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if t == 0:
        return g
    return g.with_loops([v for v in range(g.n) for _ in range(t)])


def added_loops(g: LoopedSimpleGraph, t: int) -> tuple[Loop, ...]:
    """The loops that :func:`add_uniform_loops` would create, in label form."""
    out = []
    for v in range(g.n):
        base = max((x.k for x in g.loops_at(v)), default=-1) + 1
        out.extend(Loop(v, base + i) for i in range(t))
    return tuple(out)


def delete(g: LoopedSimpleGraph, f_set: Iterable[Element]) -> LoopedSimpleGraph:
    """G - F for a set of edges and loops. Vertices are kept."""
    f_set = set(f_set)
    for x in f_set:
        if x not in g:
            raise UnknownElement(f"{x!r} is not an element of the graph")
    return LoopedSimpleGraph(
        g.n,
        [e for e in g.edges if e not in f_set],
        [x for x in g.loops if x not in f_set],
    )


def remove_vertices(g: LoopedSimpleGraph, T: Iterable[int]):
    """G - T for a vertex set. Returns ``(graph, old_to_new)``."""
    T = set(T)
    keep = [v for v in range(g.n) if v not in T]
    return _relabel_onto(g, keep)


def induced(g: LoopedSimpleGraph, X: Iterable[int], return_map: bool = False):
    """G[X] with vertices renumbered in increasing order of ``X``.

    Loop ordinals are preserved, so ``induced(g, range(g.n)) == g``.
    """
    keep = sorted(set(X))
    for v in keep:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    h, index = _relabel_onto(g, keep)
    return (h, index) if return_map else h


def _relabel_onto(g, keep):
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[e.u], index[e.v]) for e in g.edges if e.u in index and e.v in index]
    loops = [Loop(index[x.v], x.k) for x in g.loops if x.v in index]
    return LoopedSimpleGraph(len(keep), edges, loops), index


def components(g: LoopedSimpleGraph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Connected components of G - removed under simple edges only.

    Classes are listed in order of their smallest vertex.
    """
    removed = set(removed)
    seen = set(removed)
    out = []
    for s in range(g.n):
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        out.append(frozenset(comp))
    return out


def disjoint_union(*graphs: LoopedSimpleGraph) -> LoopedSimpleGraph:
    edges, loops, off = [], [], 0
    for h in graphs:
        edges += [(e.u + off, e.v + off) for e in h.edges]
        loops += [Loop(x.v + off, x.k) for x in h.loops]
        off += h.n
    return LoopedSimpleGraph(off, edges, loops)


def complete_graph(n: int, loops_per_vertex: int = 0) -> LoopedSimpleGraph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return LoopedSimpleGraph(n, edges, [v for v in range(n) for _ in range(loops_per_vertex)])


def cycle_graph(n: int, loops_per_vertex: int = 0) -> LoopedSimpleGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return LoopedSimpleGraph(n, edges, [v for v in range(n) for _ in range(loops_per_vertex)])
