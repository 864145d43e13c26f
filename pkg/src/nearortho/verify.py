"""Exact verification of k-near-orthogonality and the bipartite property.

The non-orthogonality graph of a vector set is K_{k+1}-free exactly when the
set is k-nearly orthogonal, so verification is an exact max-clique search over
bitset adjacency rows.  The bipartite property is checked by enumerating
k-subsets and intersecting loop-adjusted rows.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from nearortho._kernels import max_clique_bitset
from nearortho.ff import FpVector, inner_product, is_self_orthogonal

MAX_VERTICES = 10_000
DEFAULT_SUBSET_BUDGET = 10_000_000


class GuardrailError(ValueError):
    """Instance exceeds the exact-search guardrail."""


class InconclusiveError(RuntimeError):
    """Enumeration budget exceeded; the check is neither a pass nor a fail."""


class OrthoGraph:
    """Adjacency-bitset graph over a vector set.

    mode "non_orthogonality": bit (i, j), i != j, set iff <v_i, v_j> != 0;
    mode "orthogonality" flips the relation.  Loops (the i = i relation) are
    carried separately in loop_flags, never in the rows.
    """

    __slots__ = ("vertices", "rows", "loop_flags", "mode")

    def __init__(self, vertices: Sequence[FpVector], rows: Sequence[int],
                 loop_flags: Sequence[bool], mode: str):
        self.vertices = list(vertices)
        self.rows = list(rows)
        self.loop_flags = list(loop_flags)
        self.mode = mode

    @property
    def n(self) -> int:
        return len(self.vertices)

    def degree(self, i: int) -> int:
        return self.rows[i].bit_count()

    def to_dimacs(self) -> str:
        """DIMACS undirected export; loops listed as comments."""
        lines = [f"c mode {self.mode}"]
        for i, flag in enumerate(self.loop_flags):
            if flag:
                lines.append(f"c loop {i + 1}")
        edges = [(i, j) for i in range(self.n) for j in range(i + 1, self.n)
                 if self.rows[i] >> j & 1]
        lines.append(f"p edge {self.n} {len(edges)}")
        lines.extend(f"e {i + 1} {j + 1}" for i, j in edges)
        return "\n".join(lines) + "\n"


@dataclass
class Verdict:
    passed: bool
    witness: Optional[dict] = None
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"pass": self.passed, "witness": self.witness, "stats": self.stats}


def _pairwise_matrix(vectors: Sequence[FpVector]) -> np.ndarray:
    """All pairwise inner products mod p as an n x n int matrix."""
    p = vectors[0].p
    ent = np.array([v.entries for v in vectors], dtype=np.int64)
    return (ent @ ent.T) % p


def build_graph(vectors: Sequence[FpVector], mode: str = "non_orthogonality") -> OrthoGraph:
    if mode not in ("non_orthogonality", "orthogonality"):
        raise ValueError(f"unknown mode {mode!r}")
    vectors = list(vectors)
    if len(set(vectors)) != len(vectors):
        raise ValueError("duplicate vectors")
    if not vectors:
        return OrthoGraph([], [], [], mode)
    p = vectors[0].p
    dim = vectors[0].dim
    for v in vectors:
        if v.p != p or v.dim != dim:
            raise ValueError("vectors must share modulus and dim")
    if len(vectors) > MAX_VERTICES:
        raise GuardrailError(f"{len(vectors)} vertices exceeds {MAX_VERTICES}")
    gram = _pairwise_matrix(vectors)
    related = gram != 0 if mode == "non_orthogonality" else gram == 0
    n = len(vectors)
    rows = []
    for i in range(n):
        r = 0
        for j in range(n):
            if j != i and related[i, j]:
                r |= 1 << j
        rows.append(r)
    loops = [bool(related[i, i]) for i in range(n)]
    return OrthoGraph(vectors, rows, loops, mode)


def _degree_order(g: OrthoGraph) -> list[int]:
    return sorted(range(g.n), key=lambda i: (-g.degree(i), i))


def max_clique(g: OrthoGraph) -> tuple[int, list[int]]:
    """Exact maximum clique (over distinct vertices; loops ignored).

    Returns (size, witness as sorted original vertex indices).
    """
    if g.n == 0:
        return 0, []
    if g.n > MAX_VERTICES:
        raise GuardrailError(f"{g.n} vertices exceeds {MAX_VERTICES}")
    order = _degree_order(g)
    inv = {orig: new for new, orig in enumerate(order)}
    rows = [0] * g.n
    for new_i, orig_i in enumerate(order):
        r = g.rows[orig_i]
        packed = 0
        while r:
            j = (r & -r).bit_length() - 1
            packed |= 1 << inv[j]
            r &= r - 1
        rows[new_i] = packed
    size, clique = max_clique_bitset(rows, g.n)
    return size, sorted(order[v] for v in clique)


def independence_number(g: OrthoGraph) -> int:
    """Exact maximum independent set size (clique of the complement)."""
    full = (1 << g.n) - 1
    comp_rows = [full & ~g.rows[i] & ~(1 << i) for i in range(g.n)]
    comp = OrthoGraph(g.vertices, comp_rows, g.loop_flags, g.mode)
    size, _ = max_clique(comp)
    return size


def _witness_pairs_valid(vectors: Sequence[FpVector], indices: Iterable[int]) -> bool:
    idx = list(indices)
    return all(
        inner_product(vectors[i], vectors[j]) != 0
        for a, i in enumerate(idx)
        for j in idx[a + 1:]
    )


def is_k_nearly_orthogonal(vectors: Sequence[FpVector], k: int) -> Verdict:
    """Pass iff all vectors are non-self-orthogonal and no k+1 of them are
    pairwise non-orthogonal."""
    if k < 1:
        raise ValueError("k must be >= 1")
    vectors = list(vectors)
    start = time.perf_counter()
    for i, v in enumerate(vectors):
        if is_self_orthogonal(v):
            return Verdict(False, witness={"self_orthogonal": i},
                           stats={"elapsed": time.perf_counter() - start})
    g = build_graph(vectors, "non_orthogonality")
    size, clique = max_clique(g)
    elapsed = time.perf_counter() - start
    stats = {"max_clique": size, "n": g.n, "elapsed": elapsed}
    if size <= k:
        return Verdict(True, stats=stats)
    witness = clique[: k + 1]
    assert _witness_pairs_valid(vectors, witness)
    return Verdict(False, witness={"clique": witness}, stats=stats)


def bipartite_check(vectors: Sequence[FpVector], k: int,
                    budget: int = DEFAULT_SUBSET_BUDGET) -> Verdict:
    """Pass iff every k-subset G1 has common non-orthogonal neighborhood of
    size < k.

    N*(G1) = {v : <v, u> != 0 for all u in G1}; a vector counts as
    non-orthogonal to itself (all members are non-self-orthogonal), so the
    intersection uses rows with the self bit set.  G1 and G2 may overlap.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    vectors = list(vectors)
    start = time.perf_counter()
    for i, v in enumerate(vectors):
        if is_self_orthogonal(v):
            return Verdict(False, witness={"self_orthogonal": i},
                           stats={"elapsed": time.perf_counter() - start})
    n = len(vectors)
    if n < k:
        # no k-subset exists, the condition holds vacuously
        return Verdict(True, stats={"subsets": 0, "elapsed": time.perf_counter() - start})
    import math

    n_subsets = math.comb(n, k)
    if n_subsets > budget:
        raise InconclusiveError(
            f"C({n},{k}) = {n_subsets} k-subsets exceeds budget {budget}")
    g = build_graph(vectors, "non_orthogonality")
    rows_plus = [g.rows[i] | (1 << i) for i in range(n)]
    checked = 0
    for g1 in combinations(range(n), k):
        common = rows_plus[g1[0]]
        for i in g1[1:]:
            common &= rows_plus[i]
            if common.bit_count() < k:
                break
        checked += 1
        if common.bit_count() >= k:
            members = []
            while common and len(members) < k:
                j = (common & -common).bit_length() - 1
                members.append(j)
                common &= common - 1
            return Verdict(False,
                           witness={"G1": list(g1), "G2": members},
                           stats={"subsets": checked,
                                  "elapsed": time.perf_counter() - start})
    return Verdict(True, stats={"subsets": checked,
                                "elapsed": time.perf_counter() - start})
