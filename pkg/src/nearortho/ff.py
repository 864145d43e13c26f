"""Prime-field scalars and vectors.

Residues are plain machine integers in [0, p).  For p = 2 each vector also
carries a packed-integer form so inner products reduce to AND + popcount
parity; that path is what the verifier and spectral code lean on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class FieldMismatchError(ValueError):
    """Operands live over different moduli or dimensions."""


class ZeroVectorError(ValueError):
    """Operation requires a nonzero vector."""


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check (p is always small here)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeModulus:
    p: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def inverse(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("no inverse of 0")
        return pow(a, self.p - 2, self.p)


class FpVector:
    """Immutable vector over F_p.

    Entries are stored as a tuple of residues; for p = 2 a packed integer
    (bit i = entry i) is computed lazily and cached.
    """

    __slots__ = ("modulus", "entries", "_packed")

    def __init__(self, modulus: PrimeModulus, entries: Iterable[int]):
        ent = tuple(int(e) for e in entries)
        if not ent:
            raise ValueError("empty vector")
        p = modulus.p
        for e in ent:
            if not 0 <= e < p:
                raise ValueError(f"entry {e} out of range [0, {p})")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "entries", ent)
        object.__setattr__(self, "_packed", None)

    def __setattr__(self, name, value):
        raise AttributeError("FpVector is immutable")

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def packed(self) -> int:
        """Packed-bit form, only defined for p = 2."""
        if self.p != 2:
            raise ValueError("packed form only exists for p = 2")
        cached = object.__getattribute__(self, "_packed")
        if cached is None:
            cached = 0
            for i, e in enumerate(self.entries):
                if e:
                    cached |= 1 << i
            object.__setattr__(self, "_packed", cached)
        return cached

    def is_zero(self) -> bool:
        return not any(self.entries)

    def scale(self, a: int) -> "FpVector":
        a %= self.p
        return FpVector(self.modulus, tuple((a * e) % self.p for e in self.entries))

    def pad(self, dim: int) -> "FpVector":
        """Extend with trailing zeros up to `dim`."""
        if dim < self.dim:
            raise ValueError(f"cannot pad dim {self.dim} down to {dim}")
        if dim == self.dim:
            return self
        return FpVector(self.modulus, self.entries + (0,) * (dim - self.dim))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpVector)
            and self.p == other.p
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.p, self.entries))

    def __repr__(self) -> str:
        return f"FpVector(p={self.p}, {list(self.entries)})"

    def to_json(self) -> dict:
        return {"p": self.p, "dim": self.dim, "entries": list(self.entries)}

    @classmethod
    def from_json(cls, obj: dict) -> "FpVector":
        v = cls(PrimeModulus(obj["p"]), obj["entries"])
        if v.dim != obj["dim"]:
            raise ValueError("dim field does not match entry count")
        return v


def vector(p: int, entries: Sequence[int]) -> FpVector:
    """Shorthand constructor used all over the tests."""
    return FpVector(PrimeModulus(p), entries)


def _check_compatible(u: FpVector, v: FpVector) -> None:
    if u.p != v.p:
        raise FieldMismatchError(f"modulus mismatch: {u.p} vs {v.p}")
    if u.dim != v.dim:
        raise FieldMismatchError(f"dimension mismatch: {u.dim} vs {v.dim}")


def inner_product(u: FpVector, v: FpVector) -> int:
    """<u, v> = sum u_i v_i mod p."""
    _check_compatible(u, v)
    if u.p == 2:
        return (u.packed & v.packed).bit_count() & 1
    return sum(a * b for a, b in zip(u.entries, v.entries)) % u.p


def inner_product_reference(u: FpVector, v: FpVector) -> int:
    """Scalar-loop reference path, kept independent of the packed p=2 path."""
    _check_compatible(u, v)
    acc = 0
    for a, b in zip(u.entries, v.entries):
        acc = (acc + a * b) % u.p
    return acc


def is_self_orthogonal(v: FpVector) -> bool:
    return inner_product(v, v) == 0


def normalize_leading(v: FpVector) -> FpVector:
    """Scale v so its first nonzero entry is 1."""
    for e in v.entries:
        if e:
            return v.scale(v.modulus.inverse(e))
    raise ZeroVectorError("zero vector has no leading entry")
