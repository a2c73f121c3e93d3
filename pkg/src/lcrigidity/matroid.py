"""Count functions, Dilworth truncation and cover formulas for the rank of G^[d-t].

Two count functions on sets T of edges and loops, with V(T) the vertices
touched by T:

* ``f0(T) = t|V(T)|``;
* ``f1(T) = |T|`` for loop-free T on at most 2t vertices, ``t|V(T)| - 1``
  for loop-free T on exactly 2t+1 vertices, and ``t|V(T)|`` otherwise.

The rank of a set T in the matroid induced by ``f`` is
``min |T'| + f(T - T')``; for f1 one first replaces f1 by its Dilworth
truncation (minimum over partitions).  Adding d-t loops at every vertex
shifts the rank by (d-t)|V|, which gives the cover formula

    r_d(G^[d-t]) = (d-t)|V| + min val_t(cover)

with ``f0`` when d >= 2t and ``f1`` when d = 2t-1.

Every minimum here can be brought to a normal form: one loop-carrying part
spread over a vertex set X0, loop-free parts on pairwise disjoint
(2t+1)-sets outside X0 (only for f1), and every other element paying 1.
The public functions enumerate that normal form; the partition-based
functions (:func:`dilworth_f1`, :func:`induced_rank_partitions`) are kept
as independent cross-checks on small sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ._config import default_budget
from .errors import BudgetExceeded, InvalidCover, ParamsInvalid
from .graph import Edge, Element, Loop, LoopedSimpleGraph, element_key, vertex_span
from .rigidity import RankReport

PARTITION_CAP = 12


# ---------------------------------------------------------------------------
# parameters

@dataclass(frozen=True)
class CountFunctionParams:
    d: int
    t: int

    @property
    def i(self) -> int:
        """0 selects f0 (d >= 2t), 1 selects f1 (d = 2t-1)."""
        return 0 if self.d >= 2 * self.t else 1


def params(d: int, t: int) -> CountFunctionParams:
    if d < 2:
        raise ParamsInvalid(f"d must be at least 2, got d={d}")
    if t < 1:
        raise ParamsInvalid(f"t must be at least 1, got t={t}")
    if d < 2 * t - 1:
        raise ParamsInvalid(f"need d >= 2t-1, got d={d}, t={t}")
    if d == 2 * t - 1 and t < 2:
        raise ParamsInvalid("f1 needs t >= 2")
    return CountFunctionParams(d, t)


# ---------------------------------------------------------------------------
# count functions

def f0(g, T, t: int) -> int:
    if t < 1:
        raise ValueError("t must be at least 1")
    return t * len(vertex_span(T))


def f1(g, T, t: int) -> int:
    if t < 2:
        raise ValueError("f1 needs t >= 2")
    T = list(T)
    if not T:
        return 0
    nv = len(vertex_span(T))
    if all(isinstance(x, Edge) for x in T):
        if nv <= 2 * t:
            return len(T)
        if nv == 2 * t + 1:
            return t * nv - 1
    return t * nv


def _mask_tables(T):
    """Per-mask vertex bitmask, loop flag and popcount for elements T."""
    m = len(T)
    vmask = [0] * (1 << m)
    has_loop = [False] * (1 << m)
    size = [0] * (1 << m)
    for mask in range(1, 1 << m):
        low = mask & -mask
        j = low.bit_length() - 1
        rest = mask ^ low
        x = T[j]
        vb = 0
        for v in x.vertices:
            vb |= 1 << v
        vmask[mask] = vmask[rest] | vb
        has_loop[mask] = has_loop[rest] or isinstance(x, Loop)
        size[mask] = size[rest] + 1
    return vmask, has_loop, size


def _partition_dp(T, cost, cap):
    """min over partitions of T of sum cost(part-mask); returns (value, parts)."""
    m = len(T)
    if m > cap:
        raise BudgetExceeded(f"partition search over |T|={m} exceeds cap {cap}")
    full = (1 << m) - 1
    best = [0] * (1 << m)
    choice = [0] * (1 << m)
    for mask in range(1, full + 1):
        low = mask & -mask
        rest = mask ^ low
        b, ch = None, 0
        sub = rest
        while True:
            part = sub | low
            val = cost(part) + best[mask ^ part]
            if b is None or val < b:
                b, ch = val, part
            if sub == 0:
                break
            sub = (sub - 1) & rest
        best[mask], choice[mask] = b, ch
    parts, mask = [], full
    while mask:
        p = choice[mask]
        parts.append(tuple(T[j] for j in range(m) if p >> j & 1))
        mask ^= p
    return best[full], parts


def _f1_cost(T, t):
    vmask, has_loop, size = _mask_tables(T)

    def cost(mask):
        nv = bin(vmask[mask]).count("1")
        if not has_loop[mask]:
            if nv <= 2 * t:
                return size[mask]
            if nv == 2 * t + 1:
                return t * nv - 1
        return t * nv

    return cost, size


def dilworth_f1(g, T, t: int, cap: int = PARTITION_CAP):
    """Dilworth truncation of f1: (value, minimizing partition).

    Exact subset dynamic program over all partitions, O(3^|T|).
    """
    if t < 2:
        raise ValueError("f1 needs t >= 2")
    T = sorted(set(T), key=element_key)
    if not T:
        return 0, []
    cost, _ = _f1_cost(T, t)
    return _partition_dp(T, cost, cap)


def induced_rank_partitions(g, T, prm: CountFunctionParams, i: int | None = None,
                            cap: int = PARTITION_CAP) -> int:
    """min over T' of |T'| + f(T - T') by an explicit partition search.

    For f1 this is min over partitions of T of sum min(|P|, f1(P)), since
    T' can be taken as a union of parts.  Small sets only.
    """
    i = prm.i if i is None else i
    T = sorted(set(T), key=element_key)
    if not T:
        return 0
    if i == 0:
        return _induced_rank_vertex_sets(T, prm.t, 0)
    f1_cost, size = _f1_cost(T, prm.t)
    val, _ = _partition_dp(T, lambda mk: min(size[mk], f1_cost(mk)), cap)
    return val


# ---------------------------------------------------------------------------
# normal-form enumeration

def _disjoint_blocks(avail, size):
    """All collections of disjoint ``size``-subsets of the vertex list ``avail``.

    Canonical order: the smallest unused vertex is either skipped for good or
    is the minimum of the next block.
    """
    avail = sorted(avail)

    def rec(rest):
        if len(rest) < size:
            yield ()
            return
        first, tail = rest[0], rest[1:]
        yield from rec(tail)
        for others in combinations(tail, size - 1):
            block = (first,) + others
            remaining = [v for v in tail if v not in others]
            for more in rec(remaining):
                yield (block,) + more

    yield from rec(avail)


def _bits(xs):
    m = 0
    for x in xs:
        m |= 1 << x
    return m


def _induced_rank_vertex_sets(T, t, i, budget=None, want_cover=False):
    """Normal-form minimum for an element list T (see module docstring)."""
    budget = default_budget() if budget is None else budget
    verts = sorted(vertex_span(T))
    ebits = [(1 << e.u) | (1 << e.v) for e in T if isinstance(e, Edge)]
    loop_bits = [1 << x.v for x in T if isinstance(x, Loop)]
    block_cost = 2 * t * t + t - 1
    best = None
    steps = 0
    for r in range(len(verts) + 1):
        for X0 in combinations(verts, r):
            x0 = _bits(X0)
            free_loops = sum(1 for lb in loop_bits if not lb & x0)
            live = [eb for eb in ebits if eb & ~x0]
            blocks_iter = (_disjoint_blocks([v for v in verts if not (x0 >> v) & 1], 2 * t + 1)
                           if i == 1 else [()])
            for blocks in blocks_iter:
                steps += 1
                if steps > budget:
                    raise BudgetExceeded(f"cover enumeration exceeded {budget} steps")
                bms = [_bits(b) for b in blocks]
                out_edges = sum(1 for eb in live if not any(eb & ~bm == 0 for bm in bms))
                nT = free_loops + out_edges
                val = nT + t * r + len(blocks) * block_cost
                key = (val, nT, r, X0, tuple(blocks))
                if best is None or key < best:
                    best = key
    if want_cover:
        return best
    return best[0]


def induced_rank(g, T, prm: CountFunctionParams, i: int | None = None,
                 budget: int | None = None) -> int:
    """hat f_i(T): rank of T in the matroid induced by f0 or the truncated f1."""
    i = prm.i if i is None else i
    if i not in (0, 1):
        raise ValueError("i must be 0 or 1")
    if i == 1 and prm.t < 2:
        raise ParamsInvalid("f1 needs t >= 2")
    T = sorted(set(T), key=element_key)
    if not T:
        return 0
    return _induced_rank_vertex_sets(T, prm.t, i, budget)


# ---------------------------------------------------------------------------
# covers

@dataclass(frozen=True)
class Cover:
    X0: frozenset
    parts: tuple = ()
    excluded: tuple = ()

    def members(self):
        return (self.X0,) + tuple(self.parts)

    def to_dict(self) -> dict:
        return {"X0": sorted(self.X0),
                "parts": [sorted(p) for p in self.parts],
                "T": [_element_json(x) for x in self.excluded]}


def _element_json(x):
    return {"edge": [x.u, x.v]} if isinstance(x, Edge) else {"loop": [x.v, x.k]}


def validate_cover(g: LoopedSimpleGraph, cover: Cover, t: int) -> None:
    """Raise InvalidCover naming the first violated invariant."""
    members = [frozenset(m) for m in cover.members()]
    for m in members:
        if any(not 0 <= v < g.n for v in m):
            raise InvalidCover("member has a vertex outside the graph")
    for p in cover.parts:
        if len(p) != 2 * t + 1:
            raise InvalidCover(f"part size: |X_j| must be 2t+1={2 * t + 1}, got {len(p)}")
    for a, b in combinations(range(len(members)), 2):
        if members[a] & members[b]:
            raise InvalidCover("non-intersecting: members share a vertex")
    T = set(cover.excluded)
    for x in T:
        if x not in g:
            raise InvalidCover(f"excluded element {x!r} is not in the graph")
    X0 = members[0]
    for x in g.loops:
        if x in T and x.v in X0:
            raise InvalidCover(f"admissible: loop {x!r} of T lies in X0")
        if x not in T and x.v not in X0:
            raise InvalidCover(f"admissible: loop {x!r} of G-T is not induced by X0")
    for e in g.edges:
        if e not in T and not any(e.u in m and e.v in m for m in members):
            raise InvalidCover(f"covering: edge {e!r} of G-T is not induced by any member")


def val_t(cover: Cover, t: int, g: LoopedSimpleGraph | None = None) -> int:
    """|T| + t|X0| + k(2t^2+t-1); validated against ``g`` when given."""
    if g is not None:
        validate_cover(g, cover, t)
    else:
        for p in cover.parts:
            if len(p) != 2 * t + 1:
                raise InvalidCover(f"part size: |X_j| must be 2t+1={2 * t + 1}, got {len(p)}")
    k = len(cover.parts)
    return len(cover.excluded) + t * len(cover.X0) + k * (2 * t * t + t - 1)


def forced_cover(g: LoopedSimpleGraph, X0, parts=()) -> Cover:
    """The cover with T forced by its members: loops outside X0 and every
    edge not induced by a member."""
    X0 = frozenset(X0)
    members = [X0] + [frozenset(p) for p in parts]
    T = [x for x in g.loops if x.v not in X0]
    T += [e for e in g.edges if not any(e.u in m and e.v in m for m in members)]
    return Cover(X0, tuple(tuple(sorted(p)) for p in parts), tuple(sorted(T, key=element_key)))


def rank_by_cover(g: LoopedSimpleGraph, d: int, t: int, budget: int | None = None) -> RankReport:
    """Rank of G^[d-t] in dimension d from the minimum-value cover."""
    prm = params(d, t)
    shift = (d - t) * g.n
    if g.num_elements() == 0:
        cov = Cover(frozenset(), (), ())
        return RankReport(shift, 0, 0, "cover-formula", dim=d, n=g.n, certificate=cov,
                          extra={"t": t, "val": 0})
    best = _induced_rank_vertex_sets(list(g.elements()), t, prm.i, budget, want_cover=True)
    val, _, _, X0, blocks = best
    cov = forced_cover(g, X0, blocks)
    assert val_t(cov, t, g) == val
    return RankReport(shift + val, 0, 0, "cover-formula", dim=d, n=g.n, certificate=cov,
                      extra={"t": t, "val": val})


# ---------------------------------------------------------------------------
# 1-thin covers in the plane

@dataclass(frozen=True)
class ThinCover2D:
    X0: frozenset
    parts: tuple = ()
    Lprime: tuple = ()

    def to_dict(self) -> dict:
        return {"X0": sorted(self.X0), "parts": [sorted(p) for p in self.parts],
                "Lprime": [[x.v, x.k] for x in self.Lprime]}

    @classmethod
    def from_dict(cls, data: dict, g: LoopedSimpleGraph) -> "ThinCover2D":
        """Read ``{"X0": [...], "parts": [[...]], "Lprime": [...]}``.

        Lprime entries are indices into ``g.loops`` or ``[vertex, ordinal]``.
        """
        lp = []
        for x in data.get("Lprime", []):
            if isinstance(x, (list, tuple)):
                lp.append(Loop(int(x[0]), int(x[1])))
            else:
                idx = int(x)
                if not 0 <= idx < len(g.loops):
                    raise InvalidCover(f"loop index {idx} out of range")
                lp.append(g.loops[idx])
        return cls(frozenset(data.get("X0", [])),
                   tuple(tuple(sorted(p)) for p in data.get("parts", [])),
                   tuple(lp))


def validate_thin_cover(g: LoopedSimpleGraph, cover: ThinCover2D, removed=()) -> None:
    X0 = frozenset(cover.X0)
    parts = [frozenset(p) for p in cover.parts]
    for m in [X0] + parts:
        if any(not 0 <= v < g.n for v in m):
            raise InvalidCover("member has a vertex outside the graph")
    for p in parts:
        if len(p) < 2:
            raise InvalidCover("part size: parts need at least 2 vertices")
    for a, b in combinations(parts, 2):
        if len(a & b) > 1:
            raise InvalidCover("1-thin: two parts share more than one vertex")
    Lp = set(cover.Lprime)
    if len(Lp) != len(cover.Lprime):
        raise InvalidCover("Lprime lists a loop twice")
    removed = set(removed)
    for x in Lp:
        if x not in g or not isinstance(x, Loop):
            raise InvalidCover(f"Lprime entry {x!r} is not a loop of the graph")
        if x.v in X0:
            raise InvalidCover(f"loop {x!r} of L' lies in X0")
    for x in g.loops:
        if x not in Lp and x not in removed and x.v not in X0:
            raise InvalidCover(f"loop {x!r} of G-L' is not induced by X0")
    for e in g.edges:
        if e in removed:
            continue
        if not (e.u in X0 and e.v in X0) and not any(e.u in p and e.v in p for p in parts):
            raise InvalidCover(f"covering: edge {e!r} is not induced by any member")


def thin_cover_value(g: LoopedSimpleGraph, cover: ThinCover2D, removed=()) -> int:
    """|L'| + 2|X0| + sum(2|X_i| - 3): an upper bound on the plane rank of g
    (of g - removed when elements are removed)."""
    validate_thin_cover(g, cover, removed)
    return len(cover.Lprime) + 2 * len(cover.X0) + sum(2 * len(p) - 3 for p in cover.parts)
