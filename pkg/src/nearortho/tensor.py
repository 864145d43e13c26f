"""Tensor products of vectors and of sets (boxes).

Flat index layout is row-major lexicographic: the coordinate of
u (x) v at pair (i1, i2) sits at flat position i1*|v| + i2.  Everything
downstream (serialization, projections) depends on this fixed order.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from nearortho.ff import FieldMismatchError, FpVector, normalize_leading

MAX_PRODUCT_DIM = 1 << 20  # desk-scale guardrail on materialized products


class ProductTooLargeError(ValueError):
    pass


def tensor_pair(u: FpVector, v: FpVector) -> FpVector:
    if u.p != v.p:
        raise FieldMismatchError(f"modulus mismatch: {u.p} vs {v.p}")
    if u.dim * v.dim > MAX_PRODUCT_DIM:
        raise ProductTooLargeError(f"product dim {u.dim * v.dim} exceeds {MAX_PRODUCT_DIM}")
    p = u.p
    out = []
    for a in u.entries:
        if a == 0:
            out.extend([0] * v.dim)
        elif a == 1:
            out.extend(v.entries)
        else:
            out.extend((a * b) % p for b in v.entries)
    return FpVector(u.modulus, out)


class TensorFactorization:
    """A vector of F_p^{t^m} together with its m factor vectors in F_p^t."""

    __slots__ = ("factors", "_product")

    def __init__(self, factors: Sequence[FpVector]):
        factors = tuple(factors)
        if not factors:
            raise ValueError("need at least one factor")
        t = factors[0].dim
        p = factors[0].p
        for f in factors:
            if f.p != p or f.dim != t:
                raise FieldMismatchError("factors must share modulus and dim")
        if t ** len(factors) > MAX_PRODUCT_DIM:
            raise ProductTooLargeError(f"product dim {t ** len(factors)} exceeds {MAX_PRODUCT_DIM}")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "_product", None)

    def __setattr__(self, name, value):
        raise AttributeError("TensorFactorization is immutable")

    @property
    def m(self) -> int:
        return len(self.factors)

    @property
    def t(self) -> int:
        return self.factors[0].dim

    @property
    def p(self) -> int:
        return self.factors[0].p

    @property
    def product(self) -> FpVector:
        prod = object.__getattribute__(self, "_product")
        if prod is None:
            prod = self.factors[0]
            for f in self.factors[1:]:
                prod = tensor_pair(prod, f)
            object.__setattr__(self, "_product", prod)
        return prod

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorFactorization) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash(self.factors)

    def __repr__(self) -> str:
        return f"TensorFactorization(m={self.m}, t={self.t}, p={self.p})"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "t": self.t,
            "m": self.m,
            "factors": [list(f.entries) for f in self.factors],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TensorFactorization":
        from nearortho.ff import vector

        return cls([vector(obj["p"], e) for e in obj["factors"]])


def tensor_many(factors: Sequence[FpVector]) -> TensorFactorization:
    """Left-associated tensor product, with the factors kept around."""
    return TensorFactorization(factors)


def projection(members: Iterable[TensorFactorization], j: int) -> set[FpVector]:
    """The j-th projection (0-based): the set of j-th factors."""
    members = list(members)
    if not members:
        return set()
    m = members[0].m
    for f in members:
        if f.m != m:
            raise ValueError("mixed factor counts")
    if not 0 <= j < m:
        raise IndexError(f"projection index {j} out of range [0, {m})")
    return {f.factors[j] for f in members}


class ProductBox:
    """The set {v_1 (x) ... (x) v_m : v_j in factor_sets[j]}, never materialized."""

    __slots__ = ("factor_sets",)

    def __init__(self, factor_sets: Sequence[Iterable[FpVector]]):
        sets = tuple(frozenset(s) for s in factor_sets)
        if not sets:
            raise ValueError("need at least one factor set")
        object.__setattr__(self, "factor_sets", sets)

    def __setattr__(self, name, value):
        raise AttributeError("ProductBox is immutable")

    @property
    def m(self) -> int:
        return len(self.factor_sets)


def box_size(box: ProductBox) -> int:
    """Exact cardinality prod |A_j|, valid when every factor vector leads with 1.

    Injectivity of the product map needs the leading-1 normal form, so the
    precondition is checked and violations reported with the offending vector.
    """
    for j, fs in enumerate(box.factor_sets):
        for v in fs:
            if v.is_zero():
                raise ValueError(f"factor set {j} contains the zero vector")
            if normalize_leading(v) != v:
                raise ValueError(f"factor set {j} vector {list(v.entries)} is not leading-1")
    return math.prod(len(fs) for fs in box.factor_sets)


def box_contains(box: ProductBox, f: TensorFactorization) -> bool:
    if f.m != box.m:
        return False
    return all(f.factors[j] in box.factor_sets[j] for j in range(box.m))
