from lcrigidity.constructions import gen_Gk
from lcrigidity.graph import LoopedSimpleGraph, complete_graph
from lcrigidity.harness import (cross_oracle_sweep, reverify, thm_main_hypotheses,
                                verify_thm_d_geq2, verify_thm_main, verify_thm_weak6)
from lcrigidity.rigidity import is_globally_L2_rigid_char


def test_d_geq2_small_run_passes():
    run = verify_thm_d_geq2(2, 1, n_max=5, samples=8, seed=1)
    assert run.ok and run.instances + run.skipped == 8 and run.checks >= run.instances


def test_planted_failure_reported_and_reverified():
    bad = LoopedSimpleGraph(1)
    run = verify_thm_d_geq2(2, 1, n_max=3, samples=2, seed=0, extra_instances=[bad])
    assert not run.ok
    bundle = run.counterexamples[0]
    assert bundle["graph"] == bad.to_dict()
    assert reverify(bundle)


def test_reverify_rejects_passing_bundle():
    g = LoopedSimpleGraph(1, [], [0, 0])
    assert not reverify({"theorem": "d_geq2", "graph": g.to_dict(), "F": [], "d": 2, "t": 1})
    assert not reverify({"theorem": "cover_rank", "graph": g.to_dict(), "d": 2, "t": 1})


def test_weak6_single_vertex_six_loops():
    g = LoopedSimpleGraph(1, [], [0] * 6)
    run = verify_thm_weak6(n_max=2, samples=3, seed=2, f_per_graph=6, extra_instances=[g])
    assert run.ok


def test_weak6_k5_two_loops():
    g = complete_graph(5, 2)
    run = verify_thm_weak6(n_max=1, samples=1, seed=0, f_per_graph=10, extra_instances=[g])
    assert run.ok and run.checks >= 11


def test_main_filters_gk5():
    g = gen_Gk(5)
    assert not thm_main_hypotheses(g)
    run = verify_thm_main(n_max=6, samples=0, extra_instances=[g])
    assert run.skipped == 1 and run.instances == 0 and run.ok
    assert not is_globally_L2_rigid_char(g).value


def test_main_small_run():
    run = verify_thm_main(n_max=7, samples=5, seed=3)
    assert run.ok and run.instances == 5


def test_reproducible():
    a = verify_thm_d_geq2(3, 2, n_max=5, samples=5, seed=9).to_dict(outcomes=True)
    b = verify_thm_d_geq2(3, 2, n_max=5, samples=5, seed=9).to_dict(outcomes=True)
    a.pop("wall_clock"), b.pop("wall_clock")
    assert a == b


def test_sweep_small():
    run = cross_oracle_sweep(3, 2, n_max=3)
    assert run.ok and run.instances == 28
