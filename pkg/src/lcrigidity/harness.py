"""Theorems as counterexample hunts.

Each ``verify_*`` function samples instances satisfying a theorem's
hypotheses, checks the conclusion with the matrix oracle and records any
failure as a self-contained bundle.  The theorems are proven, so a
counterexample means a bug here, not in the mathematics.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .balancedness import is_essentially_k_balanced, is_weakly_k_balanced
from .canonical import enumerate_looped_graphs
from .constructions import sample_weak4_essential6, sample_weakly_balanced
from .graph import Edge, Loop, LoopedSimpleGraph, add_uniform_loops, delete
from .matroid import params, rank_by_cover
from .rigidity import generic_rank, is_globally_L2_rigid_char, is_Ld_rigid


@dataclass
class VerificationRun:
    theorem: str
    seed: int | None
    params: dict = field(default_factory=dict)
    instances: int = 0
    checks: int = 0
    skipped: int = 0
    counterexamples: list = field(default_factory=list)
    outcomes: list = field(default_factory=list)
    wall_clock: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self, outcomes: bool = False) -> dict:
        out = {"theorem": self.theorem, "seed": self.seed, "params": self.params,
               "instances": self.instances, "checks": self.checks, "skipped": self.skipped,
               "counterexamples": self.counterexamples, "ok": self.ok,
               "wall_clock": round(self.wall_clock, 3)}
        if outcomes:
            out["outcomes"] = self.outcomes
        return out


def _el_json(x):
    return {"edge": [x.u, x.v]} if isinstance(x, Edge) else {"loop": [x.v, x.k]}


def _el_from_json(d):
    if "edge" in d:
        return Edge(*d["edge"])
    return Loop(*d["loop"])


def _child_seeds(seed, count):
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(count)]


def _random_subsets(elements, max_size, count, rng):
    """The empty set plus ``count`` random nonempty subsets of size <= max_size."""
    out = [()]
    if not elements or max_size < 1:
        return out
    for _ in range(count):
        size = int(rng.integers(1, min(max_size, len(elements)) + 1))
        idx = sorted(rng.choice(len(elements), size=size, replace=False).tolist())
        out.append(tuple(elements[i] for i in idx))
    return out


# ---------------------------------------------------------------------------
# bundles

def _rigidity_bundle(theorem, g, F, d, t, trials, seed):
    return {"theorem": theorem, "graph": g.to_dict(), "F": [_el_json(x) for x in F],
            "d": d, "t": t, "trials": trials, "seed": seed}


def reverify(bundle: dict) -> bool:
    """True iff the bundle still exhibits a failure of the stated conclusion."""
    g = LoopedSimpleGraph.from_dict(bundle["graph"])
    th = bundle["theorem"]
    trials, seed = bundle.get("trials"), bundle.get("seed", 0)
    if th in ("d_geq2", "weak6"):
        d, t = bundle["d"], bundle["t"]
        aug = add_uniform_loops(g, d - t)
        F = [_el_from_json(x) for x in bundle["F"]]
        return not is_Ld_rigid(delete(aug, F), d, trials, seed).value
    if th == "main":
        return not is_globally_L2_rigid_char(g, trials, seed).value
    if th == "cover_rank":
        d, t = bundle["d"], bundle["t"]
        a = rank_by_cover(g, d, t).rank
        b = generic_rank(add_uniform_loops(g, d - t), d, trials, seed).rank
        return a != b
    raise ValueError(f"unknown theorem {th!r}")


# ---------------------------------------------------------------------------
# suites

def _rigidity_suite(name, d, t, k_bal, n_max, samples, seed, f_per_graph, trials,
                    extra_instances, n_min=1):
    run = VerificationRun(name, seed, {"d": d, "t": t, "weak_balance": k_bal,
                                       "n_max": n_max, "samples": samples})
    start = time.perf_counter()
    work = []
    for s in _child_seeds(seed, samples):
        rng = np.random.default_rng(s)
        n = int(rng.integers(n_min, n_max + 1))
        density = float(rng.uniform(0.2, 0.95))
        g = sample_weakly_balanced(n, k_bal, density, s)
        if g is None:
            run.skipped += 1
            continue
        work.append((g, rng, s))
    for g in extra_instances or ():
        work.append((g, np.random.default_rng(0), 0))
    for g, rng, s in work:
        run.instances += 1
        aug = add_uniform_loops(g, d - t)
        for F in _random_subsets(list(g.elements()), t, f_per_graph, rng):
            run.checks += 1
            v = is_Ld_rigid(delete(aug, F), d, trials, s)
            if not v.value:
                run.counterexamples.append(_rigidity_bundle(name, g, F, d, t, trials, s))
                run.outcomes.append({"seed": s, "n": g.n, "F": len(F), "pass": False})
            else:
                run.outcomes.append({"seed": s, "n": g.n, "F": len(F), "pass": True})
    run.wall_clock = time.perf_counter() - start
    return run


def verify_thm_d_geq2(d: int, t: int, n_max: int = 7, samples: int = 30, seed: int = 0,
                      f_per_graph: int = 3, trials: int | None = None,
                      extra_instances=None) -> VerificationRun:
    """Weakly 2t-balanced G: G^[d-t] - F is L_d-rigid for every |F| <= t.

    ``extra_instances`` are checked without the hypothesis filter (harness
    self-tests use this to plant a known failure).
    """
    params(d, t)
    return _rigidity_suite("d_geq2", d, t, 2 * t, n_max, samples, seed, f_per_graph,
                           trials, extra_instances)


def verify_thm_weak6(n_max: int = 7, samples: int = 30, seed: int = 0, f_per_graph: int = 3,
                     trials: int | None = None, extra_instances=None) -> VerificationRun:
    """Weakly 6-balanced G: G - F is L_2-rigid for every |F| <= 3."""
    # no loops are added here and |F| may reach 3, so this is not the d_geq2 suite
    run = VerificationRun("weak6", seed, {"d": 2, "weak_balance": 6, "n_max": n_max,
                                           "samples": samples})
    start = time.perf_counter()
    work = []
    for s in _child_seeds(seed, samples):
        rng = np.random.default_rng(s)
        n = int(rng.integers(1, n_max + 1))
        g = sample_weakly_balanced(n, 6, float(rng.uniform(0.2, 0.95)), s)
        if g is None:
            run.skipped += 1
            continue
        work.append((g, rng, s))
    for g in extra_instances or ():
        work.append((g, np.random.default_rng(0), 0))
    for g, rng, s in work:
        run.instances += 1
        for F in _random_subsets(list(g.elements()), 3, f_per_graph, rng):
            run.checks += 1
            ok = is_Ld_rigid(delete(g, F), 2, trials, s).value
            run.outcomes.append({"seed": s, "n": g.n, "F": len(F), "pass": ok})
            if not ok:
                run.counterexamples.append(_rigidity_bundle("weak6", g, F, 2, 2, trials, s))
    run.wall_clock = time.perf_counter() - start
    return run


def thm_main_hypotheses(g: LoopedSimpleGraph) -> bool:
    return is_weakly_k_balanced(g, 4).holds and is_essentially_k_balanced(g, 6).holds


def verify_thm_main(n_max: int = 7, samples: int = 30, seed: int = 0, trials: int | None = None,
                    extra_instances=None) -> VerificationRun:
    """Weakly 4-balanced and essentially 6-balanced G is globally L_2-rigid.

    Essential 6-balancedness forces |V| >= 7, so instances have 7..n_max
    vertices.  ``extra_instances`` are filtered by the hypotheses first;
    rejected ones count as skipped.
    """
    run = VerificationRun("main", seed, {"n_max": n_max, "samples": samples})
    start = time.perf_counter()
    work = []
    if n_max >= 7:
        for s in _child_seeds(seed, samples):
            rng = np.random.default_rng(s)
            n = int(rng.integers(7, n_max + 1))
            g = sample_weak4_essential6(n, float(rng.uniform(0.3, 0.95)), s)
            if g is None:
                run.skipped += 1
                continue
            work.append((g, s))
    for g in extra_instances or ():
        if thm_main_hypotheses(g):
            work.append((g, 0))
        else:
            run.skipped += 1
    for g, s in work:
        run.instances += 1
        run.checks += 1
        ok = is_globally_L2_rigid_char(g, trials, s).value
        run.outcomes.append({"seed": s, "n": g.n, "pass": ok})
        if not ok:
            run.counterexamples.append({"theorem": "main", "graph": g.to_dict(),
                                        "trials": trials, "seed": s})
    run.wall_clock = time.perf_counter() - start
    return run


def cross_oracle_sweep(d: int, t: int, n_max: int = 5, max_loops: int = 1,
                       trials: int | None = None, seed: int = 0) -> VerificationRun:
    """rank_by_cover == generic_rank on every looped graph up to n_max vertices."""
    params(d, t)
    run = VerificationRun("cover_rank", seed, {"d": d, "t": t, "n_max": n_max,
                                               "max_loops": max_loops})
    start = time.perf_counter()
    for g in enumerate_looped_graphs(n_max, max_loops):
        run.instances += 1
        run.checks += 1
        a = rank_by_cover(g, d, t).rank
        b = generic_rank(add_uniform_loops(g, d - t), d, trials, seed).rank
        if a != b:
            run.counterexamples.append({"theorem": "cover_rank", "graph": g.to_dict(), "d": d,
                                        "t": t, "cover_rank": a, "matrix_rank": b,
                                        "trials": trials, "seed": seed})
    run.wall_clock = time.perf_counter() - start
    return run
