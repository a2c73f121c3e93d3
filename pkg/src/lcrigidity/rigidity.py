"""Linearly constrained rigidity matrices and generic-rank oracles.

A realization assigns a point ``p_v`` to every vertex and a normal ``q_l``
to every loop.  The rigidity matrix has one row per edge ``uv``
(``p_u - p_v`` in the columns of ``u``, ``p_v - p_u`` in those of ``v``)
and one row per loop at ``v`` (``q_l`` in the columns of ``v``).

Generic rank is estimated by evaluating at uniformly random points of a
prime field of about 62 bits.  A random evaluation can only *lose* rank,
so the maximum over trials is a certified lower bound, and a full-rank
trial certifies rigidity outright.  The chance that all trials
underestimate is at most ``(d*n / p) ** trials`` by Schwartz-Zippel,
since every minor is a polynomial of degree at most ``d*n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np
import sympy

from . import _kernels
from ._config import default_trials
from .graph import Edge, Element, LoopedSimpleGraph, components, delete, induced

MODULUS_BITS = 62


@dataclass(frozen=True)
class Field:
    """Arithmetic descriptor: a prime modulus, or ``None`` for the integers."""

    modulus: int | None

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    @property
    def bits(self) -> int:
        return 0 if self.modulus is None else self.modulus.bit_length()


@dataclass(frozen=True)
class Framework:
    graph: LoopedSimpleGraph
    dim: int
    p: np.ndarray  # (n, d)
    q: np.ndarray  # (|L|, d), row order = graph.loops
    field: Field
    seed: int | None = None


@dataclass(frozen=True)
class RigidityMatrix:
    entries: np.ndarray
    row_labels: tuple[Element, ...]
    col_labels: tuple[tuple[int, int], ...]
    field: Field

    @property
    def shape(self):
        return self.entries.shape

    def rank(self, backend: str | None = None) -> int:
        if self.entries.size == 0:
            return 0
        if self.field.is_rational:
            return exact_rank(self.entries)
        return _kernels.rank_mod_p(self.entries, self.field.modulus, backend)


@dataclass
class RankReport:
    rank: int
    trials: int
    modulus_bits: int
    method: str  # "matrix-oracle" | "cover-formula"
    dim: int | None = None
    n: int | None = None
    failure_bound: float | None = None
    seed: int | None = None
    certificate: object | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"rank": self.rank, "method": self.method, "trials": self.trials,
               "modulus_bits": self.modulus_bits, "dim": self.dim, "n": self.n}
        if self.failure_bound is not None:
            out["failure_bound"] = self.failure_bound
            # null when the rank is certified outright
            out["failure_bound_log2"] = (
                None if self.failure_bound == 0 else math.log2(self.failure_bound))
        if self.seed is not None:
            out["seed"] = self.seed
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        out.update(self.extra)
        return out


@dataclass
class RigidityVerdict:
    """A boolean verdict together with the rank evidence behind it."""

    value: bool
    report: RankReport | None = None
    failing_element: Element | None = None
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.value


# ---------------------------------------------------------------------------
# realizations and matrices

def random_prime(rng: np.random.Generator, bits: int = MODULUS_BITS) -> int:
    lo = 1 << (bits - 1)
    hi = (1 << bits) - (1 << 20)
    start = int(rng.integers(lo, hi, dtype=np.int64))
    return int(sympy.nextprime(start))


def random_framework(g: LoopedSimpleGraph, d: int, seed: int | None = 0,
                     rational: bool = False, coord_range: int = 1000) -> Framework:
    """A random realization of ``g`` in dimension ``d``, deterministic per seed.

    By default coordinates are uniform in a fresh prime field of 62 bits.
    ``rational=True`` draws small integers in ``[-coord_range, coord_range]``
    instead; that mode exists for debugging tiny instances with exact
    rational arithmetic.
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    rng = np.random.default_rng(seed)
    nl = len(g.loops)
    if rational:
        fld = Field(None)
        p = rng.integers(-coord_range, coord_range + 1, size=(g.n, d)).astype(object)
        q = rng.integers(-coord_range, coord_range + 1, size=(nl, d)).astype(object)
        for i in range(nl):
            while not any(q[i]):
                q[i] = rng.integers(-coord_range, coord_range + 1, size=d)
        return Framework(g, d, p, q, fld, seed)
    mod = random_prime(rng)
    fld = Field(mod)
    p = rng.integers(0, mod, size=(g.n, d), dtype=np.uint64)
    q = rng.integers(0, mod, size=(nl, d), dtype=np.uint64)
    for i in range(nl):
        while not q[i].any():
            q[i] = rng.integers(0, mod, size=d, dtype=np.uint64)
    return Framework(g, d, p, q, fld, seed)


def build_matrix(fw: Framework) -> RigidityMatrix:
    g, d = fw.graph, fw.dim
    rows = g.elements()
    cols = tuple((v, c) for v in range(g.n) for c in range(d))
    if fw.field.is_rational:
        M = np.zeros((len(rows), d * g.n), dtype=object)
        M[:] = 0
        for r, e in enumerate(g.edges):
            diff = fw.p[e.u] - fw.p[e.v]
            M[r, d * e.u:d * e.u + d] = diff
            M[r, d * e.v:d * e.v + d] = -diff
    else:
        mod = np.uint64(fw.field.modulus)
        M = np.zeros((len(rows), d * g.n), dtype=np.uint64)
        for r, e in enumerate(g.edges):
            pu, pv = fw.p[e.u], fw.p[e.v]
            M[r, d * e.u:d * e.u + d] = np.where(pu >= pv, pu - pv, pu + (mod - pv))
            M[r, d * e.v:d * e.v + d] = np.where(pv >= pu, pv - pu, pv + (mod - pu))
    off = len(g.edges)
    for i, x in enumerate(g.loops):
        M[off + i, d * x.v:d * x.v + d] = fw.q[i]
    return RigidityMatrix(M, rows, cols, fw.field)


def exact_rank(M) -> int:
    """Rank over Q by fraction-exact elimination (small matrices only)."""
    A = [[Fraction(int(x)) for x in row] for row in np.asarray(M, dtype=object)]
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, rows):
            if A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
        if r == rows:
            break
    return r


# ---------------------------------------------------------------------------
# rank oracles

def _trial_seeds(seed, trials):
    ss = np.random.SeedSequence(seed)
    return [int(s.generate_state(1)[0]) for s in ss.spawn(trials)]


def failure_bound(d: int, n: int, modulus: int, trials: int) -> float:
    return min(1.0, (d * n) / modulus) ** trials


def generic_rank(g: LoopedSimpleGraph, d: int, trials: int | None = None,
                 seed: int | None = 0, backend: str | None = None,
                 stop_at: int | None = None) -> RankReport:
    """Max over ``trials`` random prime-field realizations of the matrix rank.

    ``stop_at`` ends early once that rank is reached; ranks never exceed the
    generic rank, so an early stop loses nothing.
    """
    trials = default_trials() if trials is None else trials
    if trials < 1:
        raise ValueError("trials must be at least 1")
    best, done, min_mod = 0, 0, None
    cap = min(g.num_elements(), d * g.n)
    target = cap if stop_at is None else min(stop_at, cap)
    for s in _trial_seeds(seed, trials):
        fw = random_framework(g, d, s)
        r = build_matrix(fw).rank(backend)
        best = max(best, r)
        done += 1
        min_mod = fw.field.modulus if min_mod is None else min(min_mod, fw.field.modulus)
        if best >= target:
            break
    # a full-rank trial is a certificate, not an estimate
    bound = 0.0 if best == cap else failure_bound(d, g.n, min_mod, done)
    return RankReport(best, done, MODULUS_BITS, "matrix-oracle", dim=d, n=g.n,
                      failure_bound=bound, seed=seed)


def is_Ld_rigid(g: LoopedSimpleGraph, d: int, trials: int | None = None,
                seed: int | None = 0, backend: str | None = None) -> RigidityVerdict:
    """True iff the generic rank equals ``d * |V|``."""
    rep = generic_rank(g, d, trials, seed, backend, stop_at=d * g.n)
    return RigidityVerdict(rep.rank == d * g.n, rep)


def is_redundantly_Ld_rigid(g: LoopedSimpleGraph, d: int, trials: int | None = None,
                            seed: int | None = 0, backend: str | None = None) -> RigidityVerdict:
    """True iff ``g - f`` is L_d-rigid for every edge or loop ``f``.

    On failure ``failing_element`` is the first element (edges before loops)
    whose deletion destroys rigidity.
    """
    base = is_Ld_rigid(g, d, trials, seed, backend)
    if not base:
        return RigidityVerdict(False, base.report, None, {"reason": "not rigid"})
    trials = default_trials() if trials is None else trials
    seeds = _trial_seeds(seed, trials)
    target = d * g.n
    mats = []
    for s in seeds:
        fw = random_framework(g, d, s)
        mats.append(build_matrix(fw))
    for i, f in enumerate(g.elements()):
        best = 0
        for m in mats:
            sub = np.delete(m.entries, i, axis=0)
            best = max(best, 0 if sub.size == 0 else _kernels.rank_mod_p(sub, m.field.modulus, backend))
            if best == target:
                break
        if best < target:
            rep = RankReport(best, trials, MODULUS_BITS, "matrix-oracle", dim=d, n=g.n,
                             failure_bound=failure_bound(d, g.n, min(m.field.modulus for m in mats), trials),
                             seed=seed)
            return RigidityVerdict(False, rep, f, {"reason": "deletion loses rigidity"})
    return RigidityVerdict(True, base.report)


def is_globally_L2_rigid_char(g: LoopedSimpleGraph, trials: int | None = None,
                              seed: int | None = 0, backend: str | None = None) -> RigidityVerdict:
    """Combinatorial characterisation of global rigidity in the plane.

    (i)  every component is a single vertex with at least two loops or is
         redundantly L_2-rigid;
    (ii) for every pair of vertices X, every component of G - X has a loop.
    """
    diagnosis = []
    ok_i = True
    for comp in components(g):
        h = induced(g, comp)
        entry = {"component": sorted(comp)}
        if h.n == 1 and h.num_elements() >= 2:
            entry.update(ok=True, reason="single vertex with two loops")
        else:
            red = is_redundantly_Ld_rigid(h, 2, trials, seed, backend)
            entry.update(ok=red.value, reason=red.detail.get("reason", "redundantly rigid"))
            if red.failing_element is not None:
                back = sorted(comp)
                f = red.failing_element
                entry["failing_element"] = _element_dict(f, back)
        ok_i &= entry["ok"]
        diagnosis.append(entry)
    witness = None
    for X in combinations(range(g.n), 2):
        for comp in components(g, X):
            if not any(g.loop_count(v) for v in comp):
                witness = {"cut": list(X), "component": sorted(comp)}
                break
        if witness:
            break
    holds = ok_i and witness is None
    return RigidityVerdict(holds, None, None,
                           {"condition_i": ok_i, "components": diagnosis,
                            "condition_ii": witness is None, "condition_ii_witness": witness})


def _element_dict(f, back=None):
    m = (lambda v: v) if back is None else (lambda v: back[v])
    if isinstance(f, Edge):
        return {"edge": [m(f.u), m(f.v)]}
    return {"loop": [m(f.v), f.k]}


def bar_joint_rank(g: LoopedSimpleGraph, d: int, trials: int | None = None,
                   seed: int | None = 0) -> int:
    """Rank of the edge rows only (the bar-joint rigidity matrix)."""
    bare = delete(g, g.loops)
    return generic_rank(bare, d, trials, seed).rank
