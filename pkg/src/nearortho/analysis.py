"""Counting and graph-application reports.

count_Npt enumerates every set of non-self-orthogonal pairwise-non-orthogonal
vectors of F_p^t (= every clique of the non-orthogonality graph, including the
empty one).  witness_graph packages a verified set as an orthogonal
representation of its own non-orthogonality graph and records clique-cover and
independence bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from nearortho.construction import MODE_CLIQUE, enumerate_V
from nearortho.ff import FpVector
from nearortho.verify import (OrthoGraph, build_graph, bipartite_check,
                              independence_number, is_k_nearly_orthogonal,
                              max_clique)

COUNT_GUARDRAIL = 24
EXACT_COVER_MAX = 20


@dataclass
class CountReport:
    p: int
    t: int
    total_sets: int
    nonempty_sets: int
    largest_size: int
    largest_witness: list[FpVector]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "t": self.t,
            "total_sets": self.total_sets,
            "nonempty_sets": self.nonempty_sets,
            "largest_size": self.largest_size,
            "largest_witness": [list(v.entries) for v in self.largest_witness],
        }


def _count_cliques(rows: list[int], n: int) -> int:
    """Number of cliques (vertex subsets inducing complete graphs), incl. empty.

    DFS over extendable vertex sets in increasing index order.
    """

    def rec(cand: int) -> int:
        total = 1  # the clique built so far, extended by nothing
        bits = cand
        while bits:
            v = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            # only extend with higher-indexed vertices to count each set once
            total += rec(cand & rows[v] & ~((1 << (v + 1)) - 1))
        return total

    return rec((1 << n) - 1)


def count_Npt(p: int, t: int) -> CountReport:
    """Exact count of sets of non-self-orthogonal, pairwise non-orthogonal
    vectors of F_p^t; the largest such set doubles as the 2^|B| lower-bound
    witness."""
    vectors = enumerate_V(p, t)
    n = len(vectors)
    if n > COUNT_GUARDRAIL:
        raise ValueError(f"{n} non-self-orthogonal vectors exceeds guardrail {COUNT_GUARDRAIL}")
    if n == 0:
        return CountReport(p, t, 1, 0, 0, [])
    g = build_graph(vectors, "non_orthogonality")
    total = _count_cliques(g.rows, n)
    size, witness_idx = max_clique(g)
    witness = [vectors[i] for i in witness_idx]
    assert 2 ** size <= total
    return CountReport(p, t, total, total - 1, size, witness)


def ramsey_bound(d: int, k: int) -> int:
    """C(d+k, k), the Erdos-Szekeres cap on any k-nearly orthogonal set in dim d."""
    if d < 1 or k < 1:
        raise ValueError("d, k >= 1 required")
    return math.comb(d + k, k)


def _greedy_clique_cover(g: OrthoGraph) -> int:
    """Largest-first clique peeling; upper bound on the clique cover number."""
    remaining = list(range(g.n))
    count = 0
    while remaining:
        sub_rows = []
        index = {v: i for i, v in enumerate(remaining)}
        for v in remaining:
            r = 0
            bits = g.rows[v]
            while bits:
                j = (bits & -bits).bit_length() - 1
                bits &= bits - 1
                if j in index:
                    r |= 1 << index[j]
            sub_rows.append(r)
        sub = OrthoGraph([g.vertices[v] for v in remaining], sub_rows,
                         [g.loop_flags[v] for v in remaining], g.mode)
        _, clique = max_clique(sub)
        taken = {remaining[i] for i in clique}
        remaining = [v for v in remaining if v not in taken]
        count += 1
    return count


def _exact_clique_cover(g: OrthoGraph) -> int:
    """Minimum number of cliques covering all vertices, via memoized DFS over
    maximal cliques containing the lowest uncovered vertex."""
    n = g.n
    rows = g.rows

    def maximal_cliques_with(v: int, allowed: int) -> list[int]:
        """Cliques containing v, maximal within `allowed` (covers may overlap,
        so restricting to maximal cliques loses nothing)."""
        out = []

        def rec(clique: int, cand: int) -> None:
            if cand == 0:
                out.append(clique)
                return
            bits = cand
            while bits:
                u = (bits & -bits).bit_length() - 1
                bits &= bits - 1
                rec(clique | (1 << u), cand & rows[u])
                cand &= ~(1 << u)

        rec(1 << v, allowed & rows[v])
        return out

    @lru_cache(maxsize=None)
    def cover(uncovered: int) -> int:
        if uncovered == 0:
            return 0
        v = (uncovered & -uncovered).bit_length() - 1
        best = n
        for clique in maximal_cliques_with(v, uncovered):
            best = min(best, 1 + cover(uncovered & ~clique))
        return best

    return cover((1 << n) - 1)


@dataclass
class WitnessGraph:
    source: list[FpVector]
    graph: OrthoGraph
    k: int
    mode: str
    xi_upper: int
    clique_cover_upper: int
    clique_cover_exact: Optional[int]
    independence_lower: int

    def to_json(self) -> dict:
        return {
            "n": self.graph.n,
            "k": self.k,
            "mode": self.mode,
            "xi_upper": self.xi_upper,
            "clique_cover_upper": self.clique_cover_upper,
            "clique_cover_exact": self.clique_cover_exact,
            "independence_lower": self.independence_lower,
        }


def witness_graph(vectors: Sequence[FpVector], k: int, mode: str = MODE_CLIQUE) -> WitnessGraph:
    """Package a verified set as a witness for the orthogonal-representation
    bounds: the set is a d-dimensional representation of its own graph."""
    vectors = list(vectors)
    verdict = (is_k_nearly_orthogonal(vectors, k) if mode == MODE_CLIQUE
               else bipartite_check(vectors, k))
    if not verdict.passed:
        raise ValueError("input set fails verification; witness_graph needs a verified set")
    g = build_graph(vectors, "non_orthogonality")
    d = vectors[0].dim if vectors else 0
    greedy = _greedy_clique_cover(g)
    exact = _exact_clique_cover(g) if g.n <= EXACT_COVER_MAX else None
    indep = independence_number(g) if g.n else 0
    return WitnessGraph(vectors, g, k, mode, d, greedy, exact, indep)


def ratio_report(w: WitnessGraph) -> dict:
    """Clique-cover lower bound ceil(n/k) over the representation dimension."""
    n = w.graph.n
    lower = -(-n // w.k) if n else 0
    ratio = Fraction(lower, w.xi_upper) if w.xi_upper else Fraction(0)
    return {
        "n": n,
        "d": w.xi_upper,
        "k": w.k,
        "clique_cover_lower": lower,
        "ratio": ratio,
        "ratio_float": float(ratio),
    }
