"""Hot numeric kernels: cyclic Jacobi eigensolver and bitset max-clique search.

Both kernels exist twice: an @njit version and a pure-numpy/python fallback.
The fallback is selected when the environment variable NEARORTHO_NO_NUMBA is
set (to anything non-empty) or when numba is unavailable.  The two paths run
the same algorithm in the same order, so results are bit-identical; the
benchmark in benchmarks/bench_kernels.py compares their speed.
"""

from __future__ import annotations

import math
import os

import numpy as np

_FORCE_FALLBACK = bool(os.environ.get("NEARORTHO_NO_NUMBA"))

if not _FORCE_FALLBACK:
    try:
        from numba import njit

        NUMBA_AVAILABLE = True
    except ImportError:  # pragma: no cover
        NUMBA_AVAILABLE = False
else:
    NUMBA_AVAILABLE = False

USE_NUMBA = NUMBA_AVAILABLE


# ---------------------------------------------------------------------------
# Jacobi eigensolver (symmetric dense, eigenvalues only)
# ---------------------------------------------------------------------------

def _offnorm(a: np.ndarray) -> float:
    # summing the off-diagonal squares directly avoids the cancellation that
    # norm(A)^2 - sum(diag^2) hits once the off-diagonal part is tiny
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def _jacobi_numpy(a: np.ndarray, rel_tol: float, max_sweeps: int):
    """Cyclic Jacobi with vectorized row/column rotations."""
    a = a.astype(np.float64).copy()
    n = a.shape[0]
    norm0 = np.linalg.norm(a)
    if norm0 == 0.0 or n == 1:
        return np.sort(np.diag(a)), 0, True
    tol = rel_tol * norm0
    sweeps = 0
    converged = _offnorm(a) < tol
    while not converged and sweeps < max_sweeps:
        for i in range(n - 1):
            for j in range(i + 1, n):
                aij = a[i, j]
                if aij == 0.0:
                    continue
                diff = a[j, j] - a[i, i]
                if abs(diff) > 1e100 * abs(aij):
                    # rotation angle below float resolution; dropping the
                    # (denormal) entry is exact to working precision
                    a[i, j] = 0.0
                    a[j, i] = 0.0
                    continue
                theta = diff / (2.0 * aij)
                t = (1.0 if theta >= 0.0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ri = a[i, :].copy()
                rj = a[j, :].copy()
                a[i, :] = c * ri - s * rj
                a[j, :] = s * ri + c * rj
                ci = a[:, i].copy()
                cj = a[:, j].copy()
                a[:, i] = c * ci - s * cj
                a[:, j] = s * ci + c * cj
                a[i, j] = 0.0
                a[j, i] = 0.0
        sweeps += 1
        converged = _offnorm(a) < tol
    return np.sort(np.diag(a)), sweeps, converged


if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _jacobi_numba(a, rel_tol, max_sweeps):  # pragma: no cover - exercised via wrapper
        a = a.copy()
        n = a.shape[0]
        norm0 = 0.0
        for i in range(n):
            for j in range(n):
                norm0 += a[i, j] * a[i, j]
        norm0 = math.sqrt(norm0)
        diag = np.empty(n, dtype=np.float64)
        if norm0 == 0.0 or n == 1:
            for i in range(n):
                diag[i] = a[i, i]
            return np.sort(diag), 0, True
        tol = rel_tol * norm0
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j] * a[i, j]
        sweeps = 0
        converged = math.sqrt(off) < tol
        while not converged and sweeps < max_sweeps:
            for i in range(n - 1):
                for j in range(i + 1, n):
                    aij = a[i, j]
                    if aij == 0.0:
                        continue
                    theta = (a[j, j] - a[i, i]) / (2.0 * aij)
                    sign = 1.0 if theta >= 0.0 else -1.0
                    t = sign / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    c = 1.0 / math.sqrt(t * t + 1.0)
                    s = t * c
                    for k in range(n):
                        rik = a[i, k]
                        rjk = a[j, k]
                        a[i, k] = c * rik - s * rjk
                        a[j, k] = s * rik + c * rjk
                    for k in range(n):
                        cki = a[k, i]
                        ckj = a[k, j]
                        a[k, i] = c * cki - s * ckj
                        a[k, j] = s * cki + c * ckj
                    a[i, j] = 0.0
                    a[j, i] = 0.0
            sweeps += 1
            off = 0.0
            for i in range(n):
                for j in range(n):
                    if i != j:
                        off += a[i, j] * a[i, j]
            converged = math.sqrt(off) < tol
        for i in range(n):
            diag[i] = a[i, i]
        return np.sort(diag), sweeps, converged


def jacobi_eigenvalues(a: np.ndarray, rel_tol: float = 1e-12, max_sweeps: int = 100):
    """All eigenvalues of a symmetric matrix, sorted ascending.

    Returns (eigenvalues, sweeps_used, converged).  Convergence: off-diagonal
    Frobenius mass below rel_tol times the initial Frobenius norm.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if USE_NUMBA:
        vals, sweeps, converged = _jacobi_numba(a, rel_tol, max_sweeps)
        return vals, int(sweeps), bool(converged)
    vals, sweeps, converged = _jacobi_numpy(a, rel_tol, max_sweeps)
    return vals, sweeps, converged


# ---------------------------------------------------------------------------
# Max clique: branch and bound with greedy-coloring bound over bitset rows
# ---------------------------------------------------------------------------
#
# Both paths implement the same search: candidates colored greedily
# (lowest-index-first within each color class), explored highest color first,
# pruned when |current| + color <= best.  The caller pre-orders vertices by
# descending degree with ties by index, so witnesses are deterministic.

def _max_clique_pyint(rows: list[int], n: int):
    best_size = 0
    best_clique: list[int] = []
    cur = [0] * n

    def expand(cur_len: int, cand: int) -> None:
        nonlocal best_size, best_clique
        # greedy coloring of cand
        order: list[int] = []
        colors: list[int] = []
        uncolored = cand
        color = 0
        while uncolored:
            color += 1
            cls = uncolored
            while cls:
                v = (cls & -cls).bit_length() - 1
                bit = 1 << v
                uncolored &= ~bit
                cls &= ~bit & ~rows[v]
                order.append(v)
                colors.append(color)
        for i in range(len(order) - 1, -1, -1):
            if cur_len + colors[i] <= best_size:
                return
            v = order[i]
            cur[cur_len] = v
            new_cand = cand & rows[v]
            if new_cand:
                expand(cur_len + 1, new_cand)
            elif cur_len + 1 > best_size:
                best_size = cur_len + 1
                best_clique = cur[:best_size]
            cand &= ~(1 << v)

    if n:
        expand(0, (1 << n) - 1)
    return best_size, best_clique


if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _popcount64(x):  # pragma: no cover
        x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
        x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
        x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
        return np.int64((x * np.uint64(0x0101010101010101)) >> np.uint64(56))

    @njit(cache=True)
    def _words_popcount(w):  # pragma: no cover
        total = np.int64(0)
        for i in range(w.shape[0]):
            total += _popcount64(w[i])
        return total

    # no cache=True here: numba's on-disk cache is unreliable for recursive
    # functions and can segfault on stale entries
    @njit
    def _expand_nb(adj, cand, cur, cur_len, best):  # pragma: no cover
        n = adj.shape[0]
        nwords = adj.shape[1]
        m = _words_popcount(cand)
        order = np.empty(m, dtype=np.int64)
        colors = np.empty(m, dtype=np.int64)
        uncolored = cand.copy()
        cls = np.empty(nwords, dtype=np.uint64)
        pos = 0
        color = 0
        while pos < m:
            color += 1
            for w in range(nwords):
                cls[w] = uncolored[w]
            for w in range(nwords):
                while cls[w] != np.uint64(0):
                    lsb = cls[w] & (~cls[w] + np.uint64(1))
                    v = w * 64 + _popcount64(lsb - np.uint64(1))
                    uncolored[w] &= ~lsb
                    cls[w] &= ~lsb
                    for k in range(nwords):
                        cls[k] &= ~adj[v, k]
                    order[pos] = v
                    colors[pos] = color
                    pos += 1
        new_cand = np.empty(nwords, dtype=np.uint64)
        for i in range(m - 1, -1, -1):
            if cur_len + colors[i] <= best[0]:
                return
            v = order[i]
            cur[cur_len] = v
            empty = True
            for w in range(nwords):
                new_cand[w] = cand[w] & adj[v, w]
                if new_cand[w] != np.uint64(0):
                    empty = False
            if not empty:
                _expand_nb(adj, new_cand.copy(), cur, cur_len + 1, best)
            elif cur_len + 1 > best[0]:
                best[0] = cur_len + 1
                for k in range(cur_len + 1):
                    best[1 + k] = cur[k]
            cand[v // 64] &= ~(np.uint64(1) << np.uint64(v % 64))

    @njit
    def _max_clique_nb(adj, n):  # pragma: no cover
        nwords = adj.shape[1]
        best = np.zeros(n + 1, dtype=np.int64)
        cur = np.zeros(n, dtype=np.int64)
        cand = np.zeros(nwords, dtype=np.uint64)
        for v in range(n):
            cand[v // 64] |= np.uint64(1) << np.uint64(v % 64)
        _expand_nb(adj, cand, cur, 0, best)
        return best


def max_clique_bitset(rows: list[int], n: int):
    """Maximum clique of a graph given as python-int bitset adjacency rows.

    Rows must be loop-free and symmetric.  Returns (size, sorted witness).
    """
    if n == 0:
        return 0, []
    if USE_NUMBA:
        nwords = (n + 63) // 64
        adj = np.zeros((n, nwords), dtype=np.uint64)
        mask = (1 << 64) - 1
        for v in range(n):
            r = rows[v]
            for w in range(nwords):
                adj[v, w] = (r >> (64 * w)) & mask
        best = _max_clique_nb(adj, n)
        size = int(best[0])
        return size, sorted(int(x) for x in best[1 : 1 + size])
    size, clique = _max_clique_pyint(rows, n)
    return size, sorted(clique)
