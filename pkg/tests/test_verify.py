import random
from itertools import combinations, product

import pytest

from nearortho.ff import inner_product, vector
from nearortho.verify import (GuardrailError,
                              InconclusiveError, OrthoGraph, bipartite_check,
                              build_graph, independence_number,
                              is_k_nearly_orthogonal, max_clique)


def random_vectors(rng, p, dim, n):
    """n distinct random vectors over F_p^dim (may include self-orthogonal ones)."""
    seen = set()
    out = []
    while len(out) < n:
        v = vector(p, [rng.randrange(p) for _ in range(dim)])
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def clique_number_dp(rows, n):
    """All-subsets DP oracle: omega(G) for n <= 20."""
    best = 0
    is_clique = [False] * (1 << n)
    is_clique[0] = True
    for s in range(1, 1 << n):
        v = (s & -s).bit_length() - 1
        rest = s & (s - 1)
        is_clique[s] = is_clique[rest] and (rest & ~rows[v]) == 0
        if is_clique[s]:
            best = max(best, s.bit_count())
    return best


def test_build_graph_modes():
    vs = [vector(2, e) for e in [(1, 0), (0, 1), (1, 1)]]
    g = build_graph(vs)
    assert g.mode == "non_orthogonality"
    # (1,0).(0,1)=0, (1,0).(1,1)=1, (0,1).(1,1)=1
    assert g.rows == [0b100, 0b100, 0b011]
    # loops record self inner products: 1, 1, 0
    assert g.loop_flags == [True, True, False]
    go = build_graph(vs, "orthogonality")
    assert go.rows == [0b010, 0b001, 0b000]
    assert go.loop_flags == [False, False, True]


def test_build_graph_errors():
    with pytest.raises(ValueError, match="duplicate"):
        build_graph([vector(2, [1, 0])] * 2)
    with pytest.raises(ValueError):
        build_graph([vector(2, [1, 0]), vector(3, [1, 0])])
    with pytest.raises(ValueError):
        build_graph([vector(2, [1, 0]), vector(2, [1, 0, 1])])
    with pytest.raises(ValueError, match="mode"):
        build_graph([vector(2, [1])], "nonsense")


def test_max_clique_against_dp_oracle():
    rng = random.Random(99)
    for trial in range(150):
        p = rng.choice([2, 3, 5])
        dim = rng.randint(2, 5)
        n = rng.randint(1, min(12, p ** dim - 1))
        g = build_graph(random_vectors(rng, p, dim, n))
        size, witness = max_clique(g)
        assert size == clique_number_dp(g.rows, g.n)
        assert len(witness) == size
        assert witness == sorted(witness)
        for i, j in combinations(witness, 2):
            assert g.rows[i] >> j & 1


def test_max_clique_empty_and_singleton():
    assert max_clique(build_graph([])) == (0, [])
    assert max_clique(build_graph([vector(2, [1])])) == (1, [0])


def test_independence_number_oracle():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(1, 10)
        g = build_graph(random_vectors(rng, 3, 3, n))
        alpha = independence_number(g)
        best = 0
        for s in range(1 << n):
            bits = [i for i in range(n) if s >> i & 1]
            if all(not (g.rows[i] >> j & 1) for i, j in combinations(bits, 2)):
                best = max(best, len(bits))
        assert alpha == best


def test_is_k_nearly_orthogonal_basis():
    # standard basis of F_p^d: pairwise orthogonal, so 1-nearly orthogonal
    for p in (2, 3, 5):
        basis = [vector(p, [1 if i == j else 0 for j in range(4)]) for i in range(4)]
        v = is_k_nearly_orthogonal(basis, 1)
        assert v.passed
        assert v.stats["max_clique"] == 1


def test_is_k_nearly_orthogonal_self_orthogonal_rejected():
    vs = [vector(2, [1, 0]), vector(2, [1, 1])]  # (1,1) has <v,v> = 0 mod 2
    v = is_k_nearly_orthogonal(vs, 3)
    assert not v.passed
    assert v.witness == {"self_orthogonal": 1}


def test_is_k_nearly_orthogonal_clique_witness():
    # all-ones style family over F_3 with every pairwise product nonzero
    vs = [vector(3, e) for e in [(1, 0, 0), (2, 0, 0), (1, 1, 0), (1, 0, 1)]]
    for i, j in combinations(range(4), 2):
        assert inner_product(vs[i], vs[j]) != 0
    v = is_k_nearly_orthogonal(vs, 2)
    assert not v.passed
    clique = v.witness["clique"]
    assert len(clique) == 3
    for i, j in combinations(clique, 2):
        assert inner_product(vs[i], vs[j]) != 0
    assert is_k_nearly_orthogonal(vs, 4).passed


def test_is_k_nearly_orthogonal_k_validation():
    with pytest.raises(ValueError):
        is_k_nearly_orthogonal([vector(2, [1])], 0)


def bipartite_oracle(vectors, k):
    """Literal restatement: some k-subset G1 and k-subset G2 (overlap allowed)
    with every cross pair non-orthogonal => fail."""
    n = len(vectors)
    for g1 in combinations(range(n), k):
        for g2 in combinations(range(n), k):
            if all(inner_product(vectors[i], vectors[j]) != 0
                   for i in g1 for j in g2):
                return False, (g1, g2)
    return True, None


def test_bipartite_check_against_oracle():
    rng = random.Random(31337)
    trials = fails = 0
    while trials < 120:
        p = rng.choice([2, 3])
        dim = rng.randint(3, 4)
        # draw from the non-self-orthogonal vectors only
        pool = [vector(p, e) for e in product(range(p), repeat=dim)]
        pool = [v for v in pool if inner_product(v, v) != 0]
        n = rng.randint(3, min(9, len(pool)))
        k = rng.randint(1, 3)
        vs = rng.sample(pool, n)
        trials += 1
        verdict = bipartite_check(vs, k)
        expected, _ = bipartite_oracle(vs, k)
        assert verdict.passed == expected
        if not expected:
            fails += 1
            g1, g2 = verdict.witness["G1"], verdict.witness["G2"]
            assert len(g1) == len(g2) == k
            for i in g1:
                for j in g2:
                    assert inner_product(vs[i], vs[j]) != 0
    # both verdicts must actually occur for the comparison to mean anything
    assert 0 < fails < trials


def test_bipartite_check_edge_cases():
    vs = [vector(3, [1, 0]), vector(3, [0, 1])]
    assert bipartite_check(vs, 3).passed  # n < k: vacuously true
    # with k=1 every singleton G1 = {v} has v itself in N*(G1), so |N*| >= 1 = k
    verdict = bipartite_check(vs, 1)
    assert not verdict.passed
    assert verdict.witness["G1"] == [0] and verdict.witness["G2"] == [0]


def test_bipartite_budget():
    pool = [vector(3, e) for e in product(range(3), repeat=3)]
    vs = [v for v in pool if inner_product(v, v) != 0][:8]
    assert len(vs) == 8
    with pytest.raises(InconclusiveError):
        bipartite_check(vs, 4, budget=10)


def test_guardrail_vertex_cap():
    from nearortho import verify

    g = OrthoGraph([], [], [], "non_orthogonality")
    g.vertices = [None] * (verify.MAX_VERTICES + 1)
    with pytest.raises(GuardrailError):
        max_clique(g)


def test_to_dimacs():
    vs = [vector(2, e) for e in [(1, 0), (0, 1), (1, 1)]]
    text = build_graph(vs).to_dimacs()
    lines = text.strip().split("\n")
    assert lines[0] == "c mode non_orthogonality"
    assert "c loop 1" in lines and "c loop 2" in lines
    assert "p edge 3 2" in lines
    assert "e 1 3" in lines and "e 2 3" in lines
