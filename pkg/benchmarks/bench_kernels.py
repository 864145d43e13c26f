"""Benchmark the numba kernels against their pure-python/numpy fallbacks.

Times the two hot kernels -- the cyclic Jacobi eigensolver and the bitset
max-clique branch and bound -- on the same inputs through both code paths.
The numba path is exercised directly, so this script must run in a process
where numba is importable (leave NEARORTHO_NO_NUMBA unset).

Usage:
    python benchmarks/bench_kernels.py [--sizes 31,63,127] [--density 0.5]
                                       [--repeats 3] [--seed 0]
"""

import argparse
import time

import numpy as np

from nearortho import _kernels
from nearortho._kernels import _jacobi_numpy, _max_clique_pyint
from nearortho.spectral import build_Gpt


def time_call(fn, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def pack_rows(rows, n):
    nwords = (n + 63) // 64
    adj = np.zeros((n, nwords), dtype=np.uint64)
    mask = (1 << 64) - 1
    for v in range(n):
        for w in range(nwords):
            adj[v, w] = (rows[v] >> (64 * w)) & mask
    return adj


def random_rows(rng, n, density):
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return rows


def bench_jacobi(sizes, repeats, rng):
    print("jacobi eigensolver (symmetric dense, rel_tol 1e-12)")
    print(f"{'n':>6} {'numba':>12} {'numpy':>12} {'speedup':>9}")
    for n in sizes:
        a = rng.standard_normal((n, n))
        a = (a + a.T) / 2
        # warm the JIT outside the timed region
        _kernels._jacobi_numba(a.copy(), 1e-12, 100)
        t_nb, (v1, _, c1) = time_call(lambda: _kernels._jacobi_numba(a.copy(), 1e-12, 100), repeats)
        t_np, (v2, _, c2) = time_call(lambda: _jacobi_numpy(a.copy(), 1e-12, 100), repeats)
        assert c1 and c2 and np.allclose(v1, v2, atol=1e-9)
        print(f"{n:>6} {t_nb * 1e3:>10.2f}ms {t_np * 1e3:>10.2f}ms {t_np / t_nb:>8.1f}x")


def bench_clique(sizes, density, repeats, rng):
    print(f"max clique branch and bound (random graphs, density {density})")
    print(f"{'n':>6} {'omega':>6} {'numba':>12} {'pyint':>12} {'speedup':>9}")
    for n in sizes:
        rows = random_rows(rng, n, density)
        adj = pack_rows(rows, n)
        _kernels._max_clique_nb(adj, n)  # JIT warmup
        t_nb, best = time_call(lambda: _kernels._max_clique_nb(adj, n), repeats)
        t_py, (size_py, _) = time_call(lambda: _max_clique_pyint(rows, n), repeats)
        assert int(best[0]) == size_py
        print(f"{n:>6} {size_py:>6} {t_nb * 1e3:>10.2f}ms {t_py * 1e3:>10.2f}ms "
              f"{t_py / t_nb:>8.1f}x")


def bench_spectral_graphs(repeats):
    print("jacobi on orthogonality graphs G(p,t)")
    print(f"{'graph':>10} {'order':>6} {'numba':>12} {'numpy':>12} {'speedup':>9}")
    for p, t in [(2, 5), (3, 3), (2, 6)]:
        g = build_Gpt(p, t)
        a = g.adjacency.astype(np.float64)
        _kernels._jacobi_numba(a.copy(), 1e-12, 100)
        t_nb, _ = time_call(lambda: _kernels._jacobi_numba(a.copy(), 1e-12, 100), repeats)
        t_np, _ = time_call(lambda: _jacobi_numpy(a.copy(), 1e-12, 100), repeats)
        print(f"{f'G({p},{t})':>10} {g.order:>6} {t_nb * 1e3:>10.2f}ms "
              f"{t_np * 1e3:>10.2f}ms {t_np / t_nb:>8.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="31,63,127",
                        help="comma-separated problem sizes")
    parser.add_argument("--density", type=float, default=0.5)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if not _kernels.USE_NUMBA:
        parser.error("numba path inactive (NEARORTHO_NO_NUMBA set or numba missing)")

    sizes = [int(s) for s in args.sizes.split(",") if s]
    rng = np.random.default_rng(args.seed)
    bench_jacobi(sizes, args.repeats, rng)
    print()
    import random

    bench_clique(sizes, args.density, args.repeats, random.Random(args.seed))
    print()
    bench_spectral_graphs(args.repeats)


if __name__ == "__main__":
    main()
