import random

import pytest

from nearortho.ff import (FieldMismatchError, FpVector, PrimeModulus,
                          ZeroVectorError, inner_product,
                          inner_product_reference, is_prime,
                          is_self_orthogonal, normalize_leading, vector)


def test_primality():
    assert [p for p in range(50) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    with pytest.raises(ValueError):
        PrimeModulus(4)
    with pytest.raises(ValueError):
        PrimeModulus(1)
    PrimeModulus(97)


def test_inner_product_examples():
    assert inner_product(vector(2, [1, 0]), vector(2, [0, 1])) == 0
    assert inner_product(vector(2, [1, 1, 1]), vector(2, [1, 1, 1])) == 1
    assert inner_product(vector(3, [1, 2]), vector(3, [2, 2])) == 0


def test_self_orthogonality_examples():
    assert is_self_orthogonal(vector(2, [1, 1]))
    assert not is_self_orthogonal(vector(2, [1, 0, 0]))
    assert is_self_orthogonal(vector(3, [1, 1, 1]))


def test_normalize_examples():
    assert normalize_leading(vector(3, [0, 2, 1])).entries == (0, 1, 2)
    assert normalize_leading(vector(5, [3, 0])).entries == (1, 0)
    assert normalize_leading(vector(2, [1, 1])).entries == (1, 1)


def test_normalize_errors_and_idempotence():
    with pytest.raises(ZeroVectorError):
        normalize_leading(vector(3, [0, 0]))
    rng = random.Random(7)
    for _ in range(200):
        p = rng.choice([2, 3, 5, 7])
        dim = rng.randint(1, 8)
        entries = [rng.randrange(p) for _ in range(dim)]
        if not any(entries):
            entries[0] = 1
        v = vector(p, entries)
        nv = normalize_leading(v)
        assert normalize_leading(nv) == nv
        assert next(e for e in nv.entries if e) == 1
        # nv is a scalar multiple of v
        assert any(nv == v.scale(a) for a in range(1, p))


def test_mismatch_errors():
    with pytest.raises(FieldMismatchError):
        inner_product(vector(2, [1, 0]), vector(3, [1, 0]))
    with pytest.raises(FieldMismatchError):
        inner_product(vector(2, [1, 0]), vector(2, [1, 0, 1]))


def test_entry_validation():
    with pytest.raises(ValueError):
        vector(2, [0, 2])
    with pytest.raises(ValueError):
        vector(3, [-1, 0])
    with pytest.raises(ValueError):
        vector(2, [])


def test_bilinearity_and_symmetry():
    rng = random.Random(42)
    for _ in range(300):
        p = rng.choice([2, 3, 5])
        dim = rng.randint(1, 6)
        u = vector(p, [rng.randrange(p) for _ in range(dim)])
        v = vector(p, [rng.randrange(p) for _ in range(dim)])
        w = vector(p, [rng.randrange(p) for _ in range(dim)])
        a = rng.randrange(p)
        assert inner_product(u, v) == inner_product(v, u)
        combo = vector(p, [(a * x + y) % p for x, y in zip(v.entries, w.entries)])
        assert inner_product(u, combo) == (a * inner_product(u, v) + inner_product(u, w)) % p


def test_packed_path_matches_reference():
    rng = random.Random(123)
    for _ in range(10_000):
        dim = rng.randint(1, 64)
        u = vector(2, [rng.randrange(2) for _ in range(dim)])
        v = vector(2, [rng.randrange(2) for _ in range(dim)])
        assert inner_product(u, v) == inner_product_reference(u, v)


def test_pad_and_json():
    v = vector(3, [1, 2])
    assert v.pad(4).entries == (1, 2, 0, 0)
    assert v.pad(2) is v
    with pytest.raises(ValueError):
        v.pad(1)
    assert FpVector.from_json(v.to_json()) == v
    assert v.to_json() == {"p": 3, "dim": 2, "entries": [1, 2]}


def test_hash_and_equality():
    assert vector(2, [1, 0]) == vector(2, [1, 0])
    assert vector(2, [1, 0]) != vector(3, [1, 0])
    assert len({vector(2, [1, 0]), vector(2, [1, 0]), vector(2, [0, 1])}) == 2
