"""Compare the numba and numpy rank kernels on random rigidity matrices.

    python benchmarks/bench_rank.py [--sizes 8 16 32 48] [--repeats 5]

Both kernels run on identical matrices; their ranks must agree.
"""

import argparse
import time

import numpy as np

from lcrigidity._kernels import rank_mod_p_numba, rank_mod_p_numpy
from lcrigidity.graph import LoopedSimpleGraph
from lcrigidity.rigidity import build_matrix, random_framework


def dense_looped_graph(n, seed):
    rng = np.random.default_rng(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5]
    loops = [v for v in range(n) for _ in range(int(rng.integers(0, 3)))]
    return LoopedSimpleGraph(n, edges, loops)


def timeit(fn, A, p, repeats):
    best = float("inf")
    r = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        r = fn(A, p)
        best = min(best, time.perf_counter() - t0)
    return r, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 48])
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    # warm the jit cache so compile time is not measured
    warm = build_matrix(random_framework(dense_looped_graph(4, 0), 2, 0))
    rank_mod_p_numba(warm.entries, warm.field.modulus)

    print(f"{'n':>4} {'shape':>12} {'rank':>6} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for n in args.sizes:
        g = dense_looped_graph(n, n)
        m = build_matrix(random_framework(g, args.d, n))
        p = m.field.modulus
        r1, t1 = timeit(rank_mod_p_numba, m.entries, p, args.repeats)
        r2, t2 = timeit(rank_mod_p_numpy, m.entries, p, args.repeats)
        assert r1 == r2, (n, r1, r2)
        shape = f"{m.shape[0]}x{m.shape[1]}"
        print(f"{n:>4} {shape:>12} {r1:>6} {t1:>10.5f} {t2:>10.5f} {t2 / t1:>8.1f}")


if __name__ == "__main__":
    main()
