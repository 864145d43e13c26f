"""The orthogonality graph G(p,t) and its pseudo-random properties.

G(p,t) has the p^t - 1 nonzero vectors of F_p^t as vertices; u, v (possibly
equal) are adjacent iff <u, v> = 0.  Loops sit on the diagonal of the
adjacency matrix and count 1 toward the degree, which makes every row sum
equal p^(t-1) - 1.  The non-principal spectral radius is checked against the
bound (p-1) p^(t/2-1), and the mixing inequality

    |e(C1, C2) - (d/n)|C1||C2|| <= lambda sqrt(|C1||C2|)

is checked with the measured lambda (ordered pairs, loops counted when the
looped vertex lies in both sets).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from nearortho._kernels import jacobi_eigenvalues
from nearortho.ff import PrimeModulus

MAX_GRAPH_ORDER = 4096
BOUND_TOL = 1e-6


class GuardrailError(ValueError):
    pass


@dataclass
class SpectralGraph:
    p: int
    t: int
    adjacency: np.ndarray  # symmetric 0/1 with diagonal loops
    vertex_entries: np.ndarray  # row i = entries of vertex i

    @property
    def order(self) -> int:
        return self.adjacency.shape[0]

    @property
    def d_reg(self) -> int:
        return self.p ** (self.t - 1) - 1

    @property
    def n_loops(self) -> int:
        return int(np.trace(self.adjacency))


@dataclass
class SpectrumReport:
    eigenvalues: np.ndarray
    lambda_max_abs_rest: float
    vinh_bound: float
    sweeps: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "lambda_max_abs_rest": self.lambda_max_abs_rest,
            "vinh_bound": self.vinh_bound,
            "sweeps": self.sweeps,
            "pass": self.passed,
        }


def build_Gpt(p: int, t: int) -> SpectralGraph:
    PrimeModulus(p)
    order = p ** t - 1
    if order > MAX_GRAPH_ORDER:
        raise GuardrailError(f"p^t - 1 = {order} exceeds {MAX_GRAPH_ORDER}")
    entries = np.array([e for e in product(range(p), repeat=t) if any(e)],
                       dtype=np.int64)
    gram = (entries @ entries.T) % p
    adjacency = (gram == 0).astype(np.int64)
    degrees = adjacency.sum(axis=1)
    expected = p ** (t - 1) - 1
    if not np.all(degrees == expected):
        raise AssertionError(
            f"G({p},{t}) is not {expected}-regular (degrees {set(degrees.tolist())})")
    return SpectralGraph(p, t, adjacency, entries)


def vinh_lambda(p: int, t: int) -> float:
    return (p - 1) * p ** (t / 2 - 1)


def spectrum(g: SpectralGraph, rel_tol: float = 1e-12, max_sweeps: int = 100) -> SpectrumReport:
    """Full spectrum via cyclic Jacobi; non-convergence is reported, never silent."""
    vals, sweeps, converged = jacobi_eigenvalues(
        g.adjacency.astype(np.float64), rel_tol=rel_tol, max_sweeps=max_sweeps)
    if not converged:
        raise RuntimeError(f"Jacobi failed to converge within {max_sweeps} sweeps")
    top = vals[-1]
    if abs(top - g.d_reg) > BOUND_TOL:
        raise AssertionError(f"largest eigenvalue {top} != degree {g.d_reg}")
    rest = vals[:-1]
    lam = float(np.max(np.abs(rest))) if rest.size else 0.0
    bound = vinh_lambda(g.p, g.t)
    return SpectrumReport(vals, lam, bound, sweeps, lam <= bound + BOUND_TOL)


def count_cross_edges(g: SpectralGraph, c1: Sequence[int], c2: Sequence[int]) -> int:
    """Ordered adjacent pairs (x1, x2), x1 in C1, x2 in C2; a loop contributes
    when its vertex lies in both sets."""
    ind1 = np.zeros(g.order, dtype=np.int64)
    ind2 = np.zeros(g.order, dtype=np.int64)
    ind1[list(c1)] = 1
    ind2[list(c2)] = 1
    return int(ind1 @ g.adjacency @ ind2)


def mixing_check(g: SpectralGraph, c1: Sequence[int], c2: Sequence[int],
                 lam: float | None = None) -> dict:
    """Expander-mixing deviation for one subset pair, against measured lambda."""
    if lam is None:
        lam = spectrum(g).lambda_max_abs_rest
    c1 = list(set(c1))
    c2 = list(set(c2))
    e = count_cross_edges(g, c1, c2)
    expected = g.d_reg / g.order * len(c1) * len(c2)
    deviation = abs(e - expected)
    bound = lam * (len(c1) * len(c2)) ** 0.5
    return {
        "e": e,
        "expected": expected,
        "deviation": deviation,
        "bound": bound,
        "ok": deviation <= bound + BOUND_TOL,
    }


def cross_product_bound_check(p: int, t: int, samples: int = 1000,
                              seed: int = 0) -> dict:
    """Check |C1| * |C2| <= p^(t+2) over cross-wise non-orthogonal subset
    pairs of F_p^t.

    Exhaustive when p^t <= 12 vertices: for every C1, the largest admissible
    C2 is exactly the set of vectors non-orthogonal to all of C1, so checking
    that maximal partner covers all pairs.  Larger instances fall back to
    randomized greedy growth; the mode used is recorded.
    """
    if t < 2:
        raise ValueError("t >= 2 required")
    PrimeModulus(p)
    n_vecs = p ** t
    bound = p ** (t + 2)
    entries = np.array(list(product(range(p), repeat=t)), dtype=np.int64)
    gram = (entries @ entries.T) % p
    nonorth = gram != 0  # rows/cols over all of F_p^t, zero vector included
    masks = []
    for i in range(n_vecs):
        row = 0
        for j in range(n_vecs):
            if nonorth[i, j]:
                row |= 1 << j
        masks.append(row)
    if n_vecs <= 12:
        best = 0
        full = (1 << n_vecs) - 1
        for c1_bits in range(1 << n_vecs):
            partner = full
            bits = c1_bits
            while bits:
                v = (bits & -bits).bit_length() - 1
                partner &= masks[v]
                bits &= bits - 1
            prod_size = c1_bits.bit_count() * partner.bit_count()
            best = max(best, prod_size)
            if prod_size > bound:
                return {"mode": "exhaustive", "ok": False, "max_product": prod_size,
                        "bound": bound}
        return {"mode": "exhaustive", "ok": True, "max_product": best, "bound": bound}
    rng = np.random.default_rng(seed)
    best = 0
    ok = True
    full = (1 << n_vecs) - 1
    for _ in range(samples):
        # greedy: grow C1 in random order, keep the maximal admissible C2
        order = rng.permutation(n_vecs)
        c1_bits = 0
        partner = full
        local_best = 0
        for v in order:
            new_partner = partner & masks[int(v)]
            if new_partner == 0:
                continue
            c1_bits |= 1 << int(v)
            partner = new_partner
            local_best = max(local_best, c1_bits.bit_count() * partner.bit_count())
        best = max(best, local_best)
        if local_best > bound:
            ok = False
    return {"mode": "randomized", "ok": ok, "max_product": best, "bound": bound}
