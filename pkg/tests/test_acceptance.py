"""Acceptance criteria, one test each.  Every test prints a single
``[criterion N] PASS|FAIL: ...`` line (visible with ``pytest -v``)."""

import itertools
import random

import numpy as np
import pytest

from lcrigidity.balancedness import (is_essentially_k_balanced, is_k_balanced,
                                     is_weakly_k_balanced, recount)
from lcrigidity.canonical import enumerate_looped_graphs
from lcrigidity.constructions import (gen_fig_graphs, gen_Gk, gen_Gks, gen_Ht, ht_thin_cover,
                                      k_loop_extension, random_extension_step, random_graph)
from lcrigidity.graph import Edge, Loop, add_uniform_loops, complete_graph, delete
from lcrigidity.harness import (cross_oracle_sweep, verify_thm_d_geq2, verify_thm_main,
                                verify_thm_weak6)
from lcrigidity.matroid import dilworth_f1, f1, thin_cover_value, validate_thin_cover
from lcrigidity.rigidity import generic_rank, is_globally_L2_rigid_char
from lcrigidity.sparsity import build_t_tight_witness, hamilton_decomposition, is_t_sparse
from oracles import dilworth_naive, is_hamilton_cycle, sparse_naive


@pytest.fixture
def report(capsys):
    def _report(n, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail
    return _report


@pytest.mark.slow
@pytest.mark.parametrize("d,t", [(2, 1), (3, 2), (4, 2)])
def test_criterion_1_cover_formula_equals_matrix_rank(report, d, t):
    run = cross_oracle_sweep(d, t, n_max=5, max_loops=1, trials=3)
    bound = generic_rank(complete_graph(1), d, trials=3).failure_bound
    ok = run.ok and run.instances == 1 + 2 + 6 + 20 + 90 + 544 - 1
    report(1, ok, f"(d,t)=({d},{t}) {run.instances} graphs, "
                  f"{len(run.counterexamples)} mismatches, {run.wall_clock:.1f}s")
    assert bound == 0 or bound < 2.0 ** -120


def test_criterion_2_looped_cycles(report):
    bad = []
    for k in range(3, 9):
        g = gen_Gk(k)
        r = generic_rank(g, 2).rank
        drops = [x for x in g.elements() if generic_rank(delete(g, [x]), 2).rank < 2 * k]
        glob = is_globally_L2_rigid_char(g).value
        if r != 2 * k or not drops or glob:
            bad.append(k)
    report(2, not bad, f"G_k for k=3..8: rank 2k, some element deletion drops rank, "
                       f"not globally rigid; failures {bad}")


def test_criterion_3_ht_thin_cover(report):
    rows = []
    for t in (3, 4, 5):
        h = gen_Ht(t)
        c = ht_thin_cover(t)
        validate_thin_cover(h, c)
        val = thin_cover_value(h, c)
        r = generic_rank(h, 2).rank
        rows.append((t, val, r, val == 8 * t - 3 == 2 * h.n - 3 and r <= val))
    report(3, all(x[-1] for x in rows),
           "H_t thin value / rank: " + ", ".join(f"t={t}: {v}/{r}" for t, v, r, _ in rows))


def test_criterion_4_glued_trees(report):
    rows = []
    for k, s in [(3, 1), (3, 2), (5, 1)]:
        g = gen_Gks(k, s)
        t = (k + 1) // 2
        count_ok = 2 * g.num_elements() < g.n * (k + 1)
        bal = is_k_balanced(g, k).holds
        r = generic_rank(add_uniform_loops(g, k - t), k).rank
        rows.append((k, s, count_ok and bal and r < k * g.n, r, k * g.n))
    report(4, all(x[2] for x in rows),
           "G_k^s: count bound, k-balanced, rank of G^[d-t] at d=k below k|V|: "
           + ", ".join(f"({k},{s}) {r}<{m}" for k, s, _, r, m in rows))


@pytest.mark.slow
def test_criterion_5_theorem_suites(report):
    runs = [verify_thm_d_geq2(2, 1, n_max=7, samples=30, seed=0),
            verify_thm_d_geq2(3, 2, n_max=7, samples=30, seed=0),
            verify_thm_weak6(n_max=7, samples=30, seed=0),
            verify_thm_main(n_max=7, samples=30, seed=0)]
    ok = all(r.ok and r.instances >= 30 for r in runs)
    label = lambda r: r.theorem + (f"({r.params['d']},{r.params['t']})" if "t" in r.params else "")
    report(5, ok, "; ".join(f"{label(r)}: "
                            f"{r.instances} instances, {r.checks} checks, "
                            f"{len(r.counterexamples)} counterexamples" for r in runs))


def test_criterion_6_submodularity(report):
    rng = random.Random(2024)
    pool_n = 6
    pool = [Edge(*p) for p in itertools.combinations(range(pool_n), 2)]
    pool += [Loop(v, 0) for v in range(pool_n)]
    fails = 0
    for _ in range(500):
        t = rng.choice([2, 3])
        U = rng.sample(pool, rng.randint(1, 8))
        A = {x for x in U if rng.random() < 0.6}
        B = {x for x in U if rng.random() < 0.6} | (set(U) - A)
        vals = {}
        for name, S in (("A", A), ("B", B), ("U", A | B), ("I", A & B)):
            v = dilworth_f1(None, S, t)[0]
            if v != dilworth_naive(S, t):
                fails += 1
            vals[name] = v
        if vals["A"] + vals["B"] < vals["U"] + vals["I"]:
            fails += 1
    strict = []
    for t in (2, 3):
        A = list(complete_graph(2 * t + 1).edges)
        B = [Edge(0, 1), Edge(1, 2 * t + 1)]
        lhs = f1(None, A, t) + f1(None, B, t)
        rhs = f1(None, set(A) | set(B), t) + f1(None, set(A) & set(B), t)
        strict.append(lhs == 2 * t * t + t + 1 and rhs == 2 * t * t + 2 * t + 1 and lhs < rhs)
    report(6, fails == 0 and all(strict),
           f"500 pairs: {fails} submodularity/brute-force failures; "
           f"f1 strict counterexample at t=2,3: {strict}")


@pytest.mark.slow
def test_criterion_7_sparsity_oracles(report):
    mism = graphs = 0
    for g in enumerate_looped_graphs(6, 2):
        graphs += 1
        for t in (1, 2, 3):
            if is_t_sparse(g, t).sparse != sparse_naive(g, t):
                mism += 1
    ham_ok = True
    for n in range(3, 13):
        h = hamilton_decomposition(n)
        parts = h.edge_sets()
        covered = set().union(*parts)
        ham_ok &= sum(map(len, parts)) == len(covered) == n * (n - 1) // 2
        ham_ok &= all(is_hamilton_cycle(c, n) for c in h.cycle_edges())
        if n % 2 == 0:
            ham_ok &= sorted(v for e in h.matching for v in (e.u, e.v)) == list(range(n))
    wit_ok = True
    for t in (1, 2, 3):
        w = build_t_tight_witness(range(2 * t), t)
        wit_ok &= is_t_sparse(w, t).sparse and w.num_elements() == t * 2 * t
    report(7, mism == 0 and ham_ok and wit_ok,
           f"pebble vs brute force on {graphs} graphs x t=1..3: {mism} mismatches; "
           f"Hamilton n=3..12 ok={ham_ok}; t-tight witnesses ok={wit_ok}")


def test_criterion_8_extension_preserves_rigidity(report):
    rng = np.random.default_rng(23)
    done = violations = 0
    while done < 200:
        d = int(rng.integers(2, 4))
        k = int(rng.integers(0, 3))
        n = int(rng.integers(1, 6))
        g = random_graph(n, float(rng.uniform(0.2, 1.0)), rng)
        g = g.with_loops([v for v in range(n) for _ in range(int(rng.integers(0, d + 1)))])
        if generic_rank(g, d).rank != d * n:
            continue
        step = random_extension_step(g, d, k, rng, require_hypothesis=True)
        if step is None:
            continue
        h = k_loop_extension(g, d, step, require_hypothesis=True)
        done += 1
        if generic_rank(h, d).rank != d * h.n:
            violations += 1
    report(8, violations == 0, f"{done} random k-loop extensions on rigid seeds: "
                               f"{violations} lost rigidity")


def test_criterion_9_small_graph_verdicts(report):
    F = gen_fig_graphs()
    K = F["fig2K"]
    kv = is_essentially_k_balanced(K, 3)
    claims = {
        "Fig1 G 3-balanced": is_k_balanced(F["fig1G"], 3).holds,
        "Fig1 H 3-balanced": is_k_balanced(F["fig1H"], 3).holds,
        "Fig1 neither 4-balanced": not is_k_balanced(F["fig1G"], 4).holds
        and not is_k_balanced(F["fig1H"], 4).holds,
        "Fig1 H weakly 4-balanced": is_weakly_k_balanced(F["fig1H"], 4).holds,
        "Fig1 G not weakly 4-balanced": not is_weakly_k_balanced(F["fig1G"], 4).holds,
        "Fig1 G+H weakly 3-balanced": is_weakly_k_balanced(F["fig1GH"], 3).holds,
        "Fig2 G essentially 4-balanced": is_essentially_k_balanced(F["fig2G"], 4).holds,
        "Fig2 K not essentially 3-balanced, T={v2,v4}, C={v0,v1}":
            not kv.holds and kv.witness_cut == (2, 4) and kv.witness_component == (0, 1)
            and recount(K, kv),
    }
    failed = [c for c, ok in claims.items() if not ok]
    report(9, not failed, f"{len(claims) - len(failed)}/{len(claims)} balancedness verdicts; "
                          f"failed {failed}")
