"""Structural covers for pairwise-non-orthogonal sets.

Over F_2: lift each vector v to (v, 1), span, and project back; the span is
self-orthogonal, so its dimension is at most floor((t+1)/2).  Over F_p: the
map v -> (v^{(x)(p-1)}, 1, ..., 1) turns non-orthogonal pairs into orthogonal
image pairs, which yields pair covers with |C1| * |C2| <= p^(t+2).

Subspaces are identified by their reduced-row-echelon basis, which is
canonical: equal subspaces produce identical SubspaceBasis values.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from nearortho.ff import FpVector, PrimeModulus, inner_product, vector
from nearortho.tensor import tensor_many

MAX_ENUM = 1 << 24  # p^t enumeration guardrail


class EnumBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class SubspaceBasis:
    """Canonical RREF basis of a subspace of F_p^ambient_dim."""

    modulus: PrimeModulus
    ambient_dim: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, v: FpVector) -> bool:
        """Membership: reducing v against the basis must reach zero."""
        if v.dim != self.ambient_dim or v.p != self.p:
            raise ValueError("ambient mismatch")
        p = self.p
        residual = list(v.entries)
        for row in self.rows:
            pivot = next(i for i, e in enumerate(row) if e)
            if residual[pivot]:
                c = residual[pivot]  # pivot entry of an RREF row is 1
                for i in range(pivot, self.ambient_dim):
                    residual[i] = (residual[i] - c * row[i]) % p
        return not any(residual)

    def vectors(self) -> list[FpVector]:
        """Materialize the whole subspace (p^rank vectors)."""
        p = self.p
        if p ** self.rank > MAX_ENUM:
            raise EnumBudgetError(f"p^rank = {p ** self.rank} exceeds {MAX_ENUM}")
        out = []
        for coeffs in product(range(p), repeat=self.rank):
            acc = [0] * self.ambient_dim
            for c, row in zip(coeffs, self.rows):
                if c:
                    for i, e in enumerate(row):
                        acc[i] = (acc[i] + c * e) % p
            out.append(FpVector(self.modulus, acc))
        return out

    def to_json(self) -> dict:
        return {"p": self.p, "ambient_dim": self.ambient_dim,
                "rows": [list(r) for r in self.rows]}


def _rref(rows: list[list[int]], p: int, width: int) -> tuple[tuple[int, ...], ...]:
    """Reduced row echelon form over F_p; zero rows dropped."""
    mat = [r[:] for r in rows]
    col = 0
    r = 0
    nrows = len(mat)
    while r < nrows and col < width:
        sel = next((i for i in range(r, nrows) if mat[i][col]), None)
        if sel is None:
            col += 1
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = pow(mat[r][col], p - 2, p)
        mat[r] = [(e * inv) % p for e in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][col]:
                c = mat[i][col]
                mat[i] = [(a - c * b) % p for a, b in zip(mat[i], mat[r])]
        r += 1
        col += 1
    return tuple(tuple(row) for row in mat[:r])


def span(vectors: Iterable[FpVector]) -> SubspaceBasis:
    vectors = list(vectors)
    if not vectors:
        raise ValueError("span of empty input needs an explicit ambient; use zero_subspace")
    p = vectors[0].p
    dim = vectors[0].dim
    for v in vectors:
        if v.p != p or v.dim != dim:
            raise ValueError("vectors must share modulus and dim")
    rows = _rref([list(v.entries) for v in vectors], p, dim)
    return SubspaceBasis(PrimeModulus(p), dim, rows)


def zero_subspace(p: int, ambient_dim: int) -> SubspaceBasis:
    return SubspaceBasis(PrimeModulus(p), ambient_dim, ())


def subspaces_orthogonal(w1: SubspaceBasis, w2: SubspaceBasis) -> bool:
    if w1.ambient_dim != w2.ambient_dim or w1.p != w2.p:
        raise ValueError("ambient mismatch")
    p = w1.p
    return all(
        sum(a * b for a, b in zip(r1, r2)) % p == 0
        for r1 in w1.rows for r2 in w2.rows
    )


def f2_cover_of(a_set: Iterable[FpVector]) -> SubspaceBasis:
    """The subspace of F_2^t that contains a pairwise-non-orthogonal set.

    Lifts each v to (v, 1) in F_2^(t+1), spans, checks the span is contained
    in its own orthogonal complement, and projects back to the first t
    coordinates.  The result contains the input and has dimension at most
    floor((t+1)/2).
    """
    a_list = list(a_set)
    if not a_list:
        raise ValueError("empty set has no distinguished cover; any subspace works")
    t = a_list[0].dim
    if any(v.p != 2 for v in a_list):
        raise ValueError("f2_cover_of is an F_2 construction")
    for u, w in combinations_with_self(a_list):
        if inner_product(u, w) == 0:
            kind = "self-orthogonal" if u is w else "orthogonal pair"
            raise ValueError(f"precondition violated: {kind} "
                             f"{list(u.entries)}, {list(w.entries)}")
    lifted = [vector(2, list(v.entries) + [1]) for v in a_list]
    w_lift = span(lifted)
    assert subspaces_orthogonal(w_lift, w_lift), "lifted span must be self-orthogonal"
    assert 2 * w_lift.rank <= t + 1
    projected = span([vector(2, row[:t]) if any(row[:t]) else vector(2, [0] * t)
                      for row in w_lift.rows])
    for v in a_list:
        assert projected.contains(v)
    assert projected.rank <= (t + 1) // 2
    return projected


def combinations_with_self(items: Sequence):
    """All unordered pairs including (x, x)."""
    for i, u in enumerate(items):
        for w in items[i:]:
            yield u, w


def enumerate_subspaces(p: int, t: int, dim: int) -> list[SubspaceBasis]:
    """All dim-dimensional subspaces of F_p^t, one canonical RREF each.

    Enumerates by pivot-column choice plus free entries; an RREF matrix is
    determined by its pivot columns and the entries right of each pivot in
    non-pivot columns.
    """
    if not 0 <= dim <= t:
        raise ValueError("dim out of range")
    modulus = PrimeModulus(p)
    if dim == 0:
        return [zero_subspace(p, t)]
    out = []
    for pivots in combinations(range(t), dim):
        free_positions = [
            (r, c)
            for r in range(dim)
            for c in range(t)
            if c > pivots[r] and c not in pivots
        ]
        for values in product(range(p), repeat=len(free_positions)):
            rows = [[0] * t for _ in range(dim)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), val in zip(free_positions, values):
                rows[r][c] = val
            out.append(SubspaceBasis(modulus, t, tuple(tuple(r) for r in rows)))
    return out


def gaussian_binomial(t: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of F_p^t."""
    if not 0 <= k <= t:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (t - i) - 1
        den *= p ** (k - i) - 1
    return num // den


def count_f2_collection(t: int) -> int:
    """Exact count of dim-floor((t+1)/2) subspaces of F_2^t, by enumeration.

    Asserts agreement with the Gaussian binomial and the coarse 2^(t^2) bound.
    """
    if t > 8:
        raise EnumBudgetError("enumeration guardrail: t <= 8")
    dim = (t + 1) // 2
    subspaces = enumerate_subspaces(2, t, dim)
    count = len(subspaces)
    assert count == len(set(subspaces))
    assert count == gaussian_binomial(t, dim, 2)
    assert count <= 2 ** (t * t)
    return count


def g_map(v: FpVector) -> FpVector:
    """v -> (v^{(x)(p-1)}, 1, ..., 1) with p-1 trailing ones, in F_p^(t^(p-1)+p-1)."""
    p = v.p
    if p == 2:
        body = list(v.entries)
    else:
        body = list(tensor_many([v] * (p - 1)).product.entries)
    return FpVector(v.modulus, body + [1] * (p - 1))


def g_image_dim(p: int, t: int) -> int:
    return t ** (p - 1) + p - 1


def g_inner_identity_check(p: int, t: int) -> dict:
    """Exhaustively verify <g(v1), g(v2)> = <v1, v2>^(p-1) + (p-1) mod p and
    the biconditional <v1, v2> = 0 iff <g(v1), g(v2)> != 0."""
    if p ** (2 * t) > MAX_ENUM:
        raise EnumBudgetError(f"p^(2t) = {p ** (2 * t)} exceeds budget")
    modulus = PrimeModulus(p)
    all_vecs = [FpVector(modulus, e) for e in product(range(p), repeat=t)]
    pairs = 0
    for v1 in all_vecs:
        g1 = g_map(v1)
        for v2 in all_vecs:
            g2 = g_map(v2)
            ip = inner_product(v1, v2)
            gip = inner_product(g1, g2)
            expected = (pow(ip, p - 1, p) + p - 1) % p if ip else (p - 1) % p
            if gip != expected:
                raise AssertionError(f"identity fails at {v1}, {v2}")
            if (ip == 0) != (gip != 0):
                raise AssertionError(f"biconditional fails at {v1}, {v2}")
            pairs += 1
    return {"p": p, "t": t, "pairs": pairs, "ok": True}


def g_preimage(w: SubspaceBasis, p: int, t: int) -> set[FpVector]:
    """{v in F_p^t : g(v) in W}, by enumeration of F_p^t."""
    if p ** t > MAX_ENUM:
        raise EnumBudgetError(f"p^t = {p ** t} exceeds budget")
    if w.ambient_dim != g_image_dim(p, t):
        raise ValueError("ambient dim does not match the g-map image space")
    modulus = PrimeModulus(p)
    return {
        v for e in product(range(p), repeat=t)
        if w.contains(g_map(v := FpVector(modulus, e)))
    }


@dataclass(frozen=True)
class CoverPair:
    c1: frozenset[FpVector]
    c2: frozenset[FpVector]
    w1: SubspaceBasis
    w2: SubspaceBasis


def cover_pair_for(a1: Iterable[FpVector], a2: Iterable[FpVector],
                   p: int, t: int) -> CoverPair:
    """Cover (C1, C2) = (g^-1(span g(A1)), g^-1(span g(A2))) for cross-wise
    non-orthogonal sets A1, A2 in F_p^t, t >= 2.

    Guarantees A1 within C1, A2 within C2, W1 orthogonal to W2, and
    |C1| * |C2| <= p^(t+2).
    """
    if t < 2:
        raise ValueError("t >= 2 required")
    a1 = list(a1)
    a2 = list(a2)
    for u in a1:
        for w in a2:
            if inner_product(u, w) == 0:
                raise ValueError(f"precondition violated: orthogonal cross pair "
                                 f"{list(u.entries)}, {list(w.entries)}")
    s = g_image_dim(p, t)
    w1 = span([g_map(v) for v in a1]) if a1 else zero_subspace(p, s)
    w2 = span([g_map(v) for v in a2]) if a2 else zero_subspace(p, s)
    assert subspaces_orthogonal(w1, w2)
    c1 = frozenset(g_preimage(w1, p, t))
    c2 = frozenset(g_preimage(w2, p, t))
    assert set(a1) <= c1 and set(a2) <= c2
    for u in c1:
        for w in c2:
            assert inner_product(u, w) != 0
    assert len(c1) * len(c2) <= p ** (t + 2)
    return CoverPair(c1, c2, w1, w2)
