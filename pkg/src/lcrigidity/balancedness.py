"""Balancedness predicates decided by exhaustive cut enumeration.

For a cut ``T`` (a vertex set) every component of ``G - T`` is checked
against a loop-supply requirement.  Cuts are visited by increasing size
and lexicographically within a size, so the first witness is
deterministic.  Supersets of a violating cut are *not* pruned, because a
larger cut lowers the requirement ``k - |T|``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from ._config import default_budget
from .errors import BudgetExceeded
from .graph import LoopedSimpleGraph, components

KINDS = ("k", "weak", "essential")


@dataclass(frozen=True)
class BalancednessVerdict:
    holds: bool
    kind: str
    k: int
    witness_cut: tuple[int, ...] | None = None
    witness_component: tuple[int, ...] | None = None
    deficiency: int | None = None
    reason: str | None = None
    checks: int = field(default=0, compare=False)

    def __bool__(self):
        return self.holds

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "kind": self.kind,
            "k": self.k,
            "witness_cut": None if self.witness_cut is None else list(self.witness_cut),
            "witness_component": (None if self.witness_component is None
                                  else list(self.witness_component)),
            "deficiency": self.deficiency,
            "reason": self.reason,
        }


def _bits(xs):
    m = 0
    for x in xs:
        m |= 1 << x
    return m


def _members(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _component_masks(adj, alive):
    """Yield component bitmasks of the subgraph induced on ``alive``."""
    rest = alive
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            nb = adj[low.bit_length() - 1] & alive & ~comp
            comp |= nb
            frontier |= nb
        rest &= ~comp
        yield comp


def _scan(g, kind, k, cut_sizes, budget):
    n = g.n
    adj = [_bits(g.neighbors(v)) for v in range(n)]
    loops = [g.loop_count(v) for v in range(n)]
    full = (1 << n) - 1
    checks = 0
    for size in cut_sizes:
        for T in combinations(range(n), size):
            alive = full & ~_bits(T)
            for comp in _component_masks(adj, alive):
                checks += 1
                if checks > budget:
                    raise BudgetExceeded(
                        f"{kind}-balancedness check exceeded {budget} (cut, component) checks")
                vs = _members(comp)
                if kind == "k":
                    have = sum(1 for v in vs if loops[v] > 0)
                    need = k - size
                elif kind == "weak":
                    have = sum(loops[v] for v in vs)
                    need = k - size
                else:
                    if len(vs) < 2 or not any(adj[v] & comp for v in vs):
                        continue
                    have = sum(loops[v] for v in vs)
                    need = 1
                if have < need:
                    return T, tuple(vs), have - need, checks
    return None, None, None, checks


def _check(g, kind, k, budget):
    if k < 0:
        raise ValueError("k must be non-negative")
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    budget = default_budget() if budget is None else budget
    if kind == "essential":
        if g.n < k + 1:
            return BalancednessVerdict(False, kind, k, reason=f"|V|={g.n} < k+1={k + 1}")
        sizes = range(0, min(k - 1, g.n - 1) + 1)  # T strict subset, |T| < k
    else:
        sizes = range(0, min(k, g.n) + 1)
    T, comp, deficiency, checks = _scan(g, kind, k, sizes, budget)
    if T is None:
        return BalancednessVerdict(True, kind, k, checks=checks)
    return BalancednessVerdict(False, kind, k, tuple(T), comp, deficiency,
                               reason="deficient component", checks=checks)


def is_k_balanced(g: LoopedSimpleGraph, k: int, budget: int | None = None) -> BalancednessVerdict:
    """Every component of G - T (|T| <= k) has >= k - |T| looped vertices."""
    return _check(g, "k", k, budget)


def is_weakly_k_balanced(g: LoopedSimpleGraph, k: int, budget: int | None = None) -> BalancednessVerdict:
    """Every component of G - T (|T| <= k) has >= k - |T| loops, with multiplicity."""
    return _check(g, "weak", k, budget)


def is_essentially_k_balanced(g: LoopedSimpleGraph, k: int,
                              budget: int | None = None) -> BalancednessVerdict:
    """|V| >= k+1 and, for every proper T with |T| < k, each component of
    G - T that contains a simple edge carries a loop."""
    return _check(g, "essential", k, budget)


def check(g: LoopedSimpleGraph, kind: str, k: int, budget: int | None = None) -> BalancednessVerdict:
    return _check(g, kind, k, budget)


def recount(g: LoopedSimpleGraph, verdict: BalancednessVerdict) -> bool:
    """True if a failing verdict's witness is a genuine violation of its predicate."""
    if verdict.holds or verdict.witness_cut is None:
        return False
    T, comp = set(verdict.witness_cut), frozenset(verdict.witness_component)
    if comp not in components(g, T):
        return False
    if verdict.kind == "essential":
        if len(T) >= verdict.k or len(T) >= g.n:
            return False
        has_edge = any(e.u in comp and e.v in comp for e in g.edges)
        return has_edge and not any(g.loop_count(v) for v in comp)
    if len(T) > verdict.k:
        return False
    if verdict.kind == "k":
        have = sum(1 for v in comp if g.loop_count(v))
    else:
        have = sum(g.loop_count(v) for v in comp)
    return have < verdict.k - len(T)
