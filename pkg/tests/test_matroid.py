import itertools
import random

import pytest

from lcrigidity.constructions import gen_Gk, gen_Ht, ht_thin_cover
from lcrigidity.errors import BudgetExceeded, InvalidCover, ParamsInvalid
from lcrigidity.graph import (Edge, Loop, LoopedSimpleGraph, add_uniform_loops, added_loops,
                              complete_graph, element_key)
from lcrigidity.matroid import (Cover, ThinCover2D, dilworth_f1, f0, f1, forced_cover,
                                induced_rank, induced_rank_partitions, params, rank_by_cover,
                                thin_cover_value, val_t)
from lcrigidity.rigidity import build_matrix, generic_rank, random_framework
from lcrigidity import _kernels
from oracles import dilworth_naive, f1_naive, hat_f0_naive, hat_f1_naive

K5 = complete_graph(5)
E_K5 = list(K5.edges)


def test_params():
    assert params(3, 2).i == 1 and params(4, 2).i == 0 and params(2, 1).i == 0
    for d, t in [(1, 1), (2, 3), (1, 0), (2, 0)]:
        with pytest.raises(ParamsInvalid):
            params(d, t)


def test_f0_examples():
    assert f0(None, [], 2) == 0
    assert f0(None, [Edge(0, 1)], 2) == 4
    assert f0(None, E_K5, 2) == 10


def test_f1_examples():
    assert f1(None, E_K5, 2) == 9
    assert f1(None, [Loop(0, 0)], 2) == 2
    assert f1(None, [Edge(0, 1), Edge(1, 2)], 2) == 2
    assert f1(None, [], 2) == 0


def test_dilworth_examples():
    assert dilworth_f1(None, [], 2)[0] == 0
    val, parts = dilworth_f1(None, E_K5, 2)
    assert val == 9 and len(parts) == 1
    val, parts = dilworth_f1(None, E_K5 + [Edge(5, 6)], 2)
    assert val == 10 and sorted(map(len, parts)) == [1, 10]
    with pytest.raises(BudgetExceeded):
        dilworth_f1(None, list(complete_graph(6).edges), 2, cap=12)


def _random_elements(rng, n, m):
    pool = [Edge(*p) for p in itertools.combinations(range(n), 2)]
    pool += [Loop(v, k) for v in range(n) for k in range(2)]
    return rng.sample(pool, min(m, len(pool)))


def test_dilworth_matches_partition_brute_force():
    rng = random.Random(7)
    for _ in range(120):
        t = rng.choice([2, 3])
        T = _random_elements(rng, rng.randint(2, 8), rng.randint(0, 8))
        val, parts = dilworth_f1(None, T, t)
        assert val == dilworth_naive(T, t)
        assert sorted((x for p in parts for x in p), key=element_key) == sorted(T, key=element_key)
        assert sum(f1_naive(p, t) for p in parts) == val


def test_nonsubmodularity_counterexample():
    for t in (2, 3):
        A = list(complete_graph(2 * t + 1).edges)
        B = [Edge(0, 1), Edge(1, 2 * t + 1)]
        U = list(set(A) | set(B))
        I = list(set(A) & set(B))
        lhs = f1(None, A, t) + f1(None, B, t)
        rhs = f1(None, U, t) + f1(None, I, t)
        assert (lhs, rhs) == (2 * t * t + t + 1, 2 * t * t + 2 * t + 1)
        assert lhs < rhs


def test_f1_intersecting_large_sets_submodular():
    rng = random.Random(3)
    checked = 0
    while checked < 300:
        t = rng.choice([2, 3])
        n = rng.randint(3, 8)
        A = set(_random_elements(rng, n, rng.randint(1, 10)))
        B = set(_random_elements(rng, n, rng.randint(1, 10)))
        big = lambda S: len({v for x in S for v in x.vertices}) >= 2 * t + 1 or any(
            isinstance(x, Loop) for x in S)
        if not (A & B) or not big(A) or not big(B):
            continue
        checked += 1
        assert f1(None, A, t) + f1(None, B, t) >= f1(None, A | B, t) + f1(None, A & B, t)


def test_dilworth_submodular():
    rng = random.Random(11)
    for _ in range(150):
        t = rng.choice([2, 3])
        U = _random_elements(rng, rng.randint(2, 7), rng.randint(1, 8))
        A = {x for x in U if rng.random() < 0.6}
        B = {x for x in U if rng.random() < 0.6}
        fd = lambda S: dilworth_f1(None, S, t)[0]
        assert fd(A) + fd(B) >= fd(A | B) + fd(A & B)


def test_induced_rank_trivial():
    assert induced_rank(None, [], params(3, 2)) == 0
    g = add_uniform_loops(LoopedSimpleGraph(3), 2)
    assert induced_rank(g, g.elements(), params(3, 2)) == 6


def test_induced_rank_matches_unrestricted_brute_force():
    rng = random.Random(5)
    for _ in range(80):
        t = rng.choice([2, 3])
        T = _random_elements(rng, rng.randint(1, 5), rng.randint(0, 7))
        prm = params(2 * t - 1, t)
        assert induced_rank(None, T, prm) == hat_f1_naive(T, t)
        assert induced_rank_partitions(None, T, prm) == hat_f1_naive(T, t)
        assert induced_rank(None, T, params(2 * t, t)) == hat_f0_naive(T, t)


def test_element_level_corollary():
    """Rank of T plus all added loops in G^[d-t] equals (d-t)|V| + hat f(T)."""
    rng = random.Random(2)
    for _ in range(40):
        d, t = rng.choice([(2, 1), (3, 2), (4, 2), (5, 3)])
        n = rng.randint(1, 6)
        es = [p for p in itertools.combinations(range(n), 2) if rng.random() < 0.6]
        g = LoopedSimpleGraph(n, es, [v for v in range(n) if rng.random() < 0.5])
        T = [x for x in g.elements() if rng.random() < 0.7]
        aug = add_uniform_loops(g, d - t)
        rows = set(T) | set(added_loops(g, d - t))
        best = 0
        for s in range(3):
            m = build_matrix(random_framework(aug, d, s))
            idx = [i for i, x in enumerate(m.row_labels) if x in rows]
            sub = m.entries[idx]
            best = max(best, _kernels.rank_mod_p(sub, m.field.modulus) if len(idx) else 0)
        assert best == (d - t) * n + induced_rank(g, T, params(d, t))


def test_val_t_examples():
    g = complete_graph(4, 1)
    assert val_t(Cover(frozenset(range(4)), (), ()), 2, g) == 8
    assert val_t(Cover(frozenset(), (), g.elements()), 2, g) == g.num_elements()


def test_cover_validation_names_invariant():
    g = complete_graph(5, 1)
    with pytest.raises(InvalidCover, match="part size"):
        val_t(Cover(frozenset(), ((0, 1, 2),), ()), 2, g)
    with pytest.raises(InvalidCover, match="non-intersecting"):
        val_t(Cover(frozenset({0}), ((0, 1, 2, 3, 4),), ()), 2, g)
    with pytest.raises(InvalidCover, match="admissible"):
        val_t(Cover(frozenset(range(5)), (), (Loop(0, 0),)), 2, g)
    with pytest.raises(InvalidCover, match="covering"):
        val_t(Cover(frozenset({0, 1}), (), tuple(g.loops[2:])), 2, g)


def test_rank_by_cover_examples():
    rep = rank_by_cover(LoopedSimpleGraph(1, [], [0]), 2, 1)
    assert rep.rank == 2 and rep.method == "cover-formula"
    assert rank_by_cover(gen_Gk(3), 2, 1).rank == 6
    with pytest.raises(ParamsInvalid):
        rank_by_cover(gen_Gk(3), 1, 1)


def test_rank_by_cover_certificate_and_bound():
    rng = random.Random(9)
    for _ in range(25):
        d, t = rng.choice([(2, 1), (3, 2), (4, 2)])
        n = rng.randint(1, 6)
        es = [p for p in itertools.combinations(range(n), 2) if rng.random() < 0.5]
        g = LoopedSimpleGraph(n, es, [v for v in range(n) if rng.random() < 0.5])
        rep = rank_by_cover(g, d, t)
        cov = rep.certificate
        assert rep.rank == (d - t) * n + val_t(cov, t, g)
        # any other forced cover only gives an upper bound
        X0 = [v for v in range(n) if rng.random() < 0.5]
        assert rep.rank <= (d - t) * n + val_t(forced_cover(g, X0), t, g)
        assert rep.rank == generic_rank(add_uniform_loops(g, d - t), d).rank


def test_thin_cover_ht():
    for t in (3, 4, 5):
        h = gen_Ht(t)
        c = ht_thin_cover(t)
        assert thin_cover_value(h, c) == 8 * t - 3 == 2 * h.n - 3
        assert generic_rank(h, 2).rank <= 8 * t - 3


def test_thin_cover_trivial_and_invalid():
    g = complete_graph(4, 1)
    assert thin_cover_value(g, ThinCover2D(frozenset(range(4)))) == 8
    with pytest.raises(InvalidCover, match="1-thin"):
        thin_cover_value(g, ThinCover2D(frozenset(), ((0, 1, 2), (1, 2, 3)), g.loops))
    with pytest.raises(InvalidCover, match="L'"):
        thin_cover_value(g, ThinCover2D(frozenset(range(4)), (), g.loops[:1]))
    with pytest.raises(InvalidCover, match="not induced by X0"):
        thin_cover_value(g, ThinCover2D(frozenset(), ((0, 1, 2, 3),), ()))


def test_thin_cover_upper_bounds_rank():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(2, 6)
        es = [p for p in itertools.combinations(range(n), 2) if rng.random() < 0.6]
        g = LoopedSimpleGraph(n, es, [v for v in range(n) if rng.random() < 0.5])
        # one part per edge plus the looped vertices as X0: always a valid 1-thin cover
        X0 = frozenset(v for v in range(n) if g.loop_count(v) and rng.random() < 0.5)
        Lp = tuple(x for x in g.loops if x.v not in X0)
        parts = tuple((e.u, e.v) for e in g.edges)
        c = ThinCover2D(X0, parts, Lp)
        assert thin_cover_value(g, c) >= generic_rank(g, 2).rank


def test_thin_cover_json():
    h = gen_Ht(3)
    c = ThinCover2D.from_dict({"X0": [], "parts": [[0, 1, 2]], "Lprime": [0, [5, 0]]}, h)
    assert c.Lprime == (h.loops[0], Loop(5, 0))
