"""Acceptance gate: 13 criteria, one printed pass/fail line each.

Run with `pytest -v -s tests/test_acceptance.py` to see the lines as they
print; under plain `pytest` they land in the captured-output section.
"""

import json
import random
import time
from itertools import combinations, product

from nearortho.analysis import count_Npt, ramsey_bound
from nearortho.construction import (MODE_BIPARTITE, ConstructionParams, build,
                                    enumerate_V)
from nearortho.covers import f2_cover_of, g_inner_identity_check
from nearortho.ff import inner_product, vector
from nearortho.spectral import (build_Gpt, cross_product_bound_check,
                                mixing_check, spectrum, vinh_lambda)
from nearortho.tensor import ProductBox, box_size, tensor_many
from nearortho.verify import bipartite_check, build_graph, is_k_nearly_orthogonal

SPECTRAL_TOL = 1e-6


def report(num, ok, detail):
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    assert ok, line


def test_criterion_01_v_count_f2():
    start = time.perf_counter()
    ok = all(len(enumerate_V(2, t)) == 2 ** (t - 1) for t in range(1, 17))
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 1.0
    report(1, ok, f"|V(2,t)| = 2^(t-1) for t=1..16 in {elapsed:.3f}s")


def test_criterion_02_tensor_multiplicativity():
    rng = random.Random(20240901)
    violations = 0
    cases = 1200
    for _ in range(cases):
        p = rng.choice([2, 3, 5])
        t = rng.randint(1, 4)
        m = rng.randint(1, 3)
        us = [vector(p, [rng.randrange(p) for _ in range(t)]) for _ in range(m)]
        vs = [vector(p, [rng.randrange(p) for _ in range(t)]) for _ in range(m)]
        lhs = inner_product(tensor_many(us).product, tensor_many(vs).product)
        rhs = 1
        for u, v in zip(us, vs):
            rhs = rhs * inner_product(u, v) % p
        if lhs != rhs:
            violations += 1
    report(2, violations == 0,
           f"tensor multiplicativity on {cases} random cases, {violations} violations")


def test_criterion_03_box_cardinality():
    violations = 0
    checked = 0
    for p in (2, 3):
        pool = [v for v in (vector(p, e) for e in product(range(p), repeat=2))
                if not v.is_zero() and next(x for x in v.entries if x) == 1]
        subsets = [list(c) for r in range(len(pool) + 1)
                   for c in combinations(pool, r)]
        for a1 in subsets:
            for a2 in subsets:
                materialized = {tensor_many([u, v]).product for u in a1 for v in a2}
                checked += 1
                if box_size(ProductBox([a1, a2])) != len(materialized):
                    violations += 1
    report(3, violations == 0,
           f"box cardinality exhaustive p in {{2,3}}, t=2, m=2: "
           f"{checked} boxes, {violations} violations")


def bron_kerbosch_maximal(rows, n):
    """All maximal cliques, as vertex-index lists."""
    out = []

    def rec(r, p_set, x):
        if not p_set and not x:
            out.append([i for i in range(n) if r >> i & 1])
            return
        pivot_pool = p_set | x
        u = (pivot_pool & -pivot_pool).bit_length() - 1
        ext = p_set & ~rows[u]
        while ext:
            v = (ext & -ext).bit_length() - 1
            ext &= ext - 1
            rec(r | (1 << v), p_set & rows[v], x & rows[v])
            p_set &= ~(1 << v)
            x |= 1 << v
    rec(0, (1 << n) - 1, 0)
    return out


def test_criterion_04_f2_cover_exhaustive():
    start = time.perf_counter()
    checked = 0
    ok = True
    for t in range(1, 6):
        vs = enumerate_V(2, t)
        g = build_graph(vs, "non_orthogonality")
        dim_cap = (t + 1) // 2
        for clique in bron_kerbosch_maximal(g.rows, g.n):
            members = [vs[i] for i in clique]
            cover = f2_cover_of(members)
            checked += 1
            if cover.rank > dim_cap or len(members) > 2 ** dim_cap:
                ok = False
            if not all(cover.contains(v) for v in members):
                ok = False
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 10.0
    report(4, ok, f"subspace cover of {checked} maximal sets, t <= 5, "
                  f"in {elapsed:.2f}s")


def test_criterion_05_g_map_exhaustive():
    ok = True
    total = 0
    for p, t in [(2, 2), (2, 3), (2, 4), (3, 2)]:
        res = g_inner_identity_check(p, t)
        ok = ok and res["ok"] and res["pairs"] == p ** (2 * t)
        total += res["pairs"]
    report(5, ok, f"g-map identity + biconditional on {total} pairs, 0 violations")


def test_criterion_06_vinh_spectral():
    start = time.perf_counter()
    ok = True
    details = []
    for p, t in [(2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (5, 2)]:
        g = build_Gpt(p, t)
        if g.order != p ** t - 1:
            ok = False
        rep = spectrum(g)
        lam = rep.lambda_max_abs_rest
        bound = vinh_lambda(p, t)
        if lam > bound + SPECTRAL_TOL:
            ok = False
        details.append(f"G({p},{t}) {lam:.4f}<={bound:.4f}")
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 60.0
    report(6, ok, f"Vinh bound: {'; '.join(details)} in {elapsed:.1f}s")


def test_criterion_07_expander_mixing():
    import numpy as np

    violations = 0
    pairs = 0
    for p, t in [(3, 2), (2, 4)]:
        g = build_Gpt(p, t)
        lam = spectrum(g).lambda_max_abs_rest
        rng = np.random.default_rng(77)
        for _ in range(1000):
            c1 = [int(i) for i in np.flatnonzero(rng.integers(0, 2, g.order))]
            c2 = [int(i) for i in np.flatnonzero(rng.integers(0, 2, g.order))]
            if not c1 or not c2:
                continue
            pairs += 1
            if not mixing_check(g, c1, c2, lam=lam)["ok"]:
                violations += 1
    report(7, violations == 0,
           f"mixing bound on {pairs} random subset pairs, {violations} violations")


def test_criterion_08_cross_bound_exhaustive():
    start = time.perf_counter()
    r1 = cross_product_bound_check(2, 3)
    r2 = cross_product_bound_check(3, 2)
    elapsed = time.perf_counter() - start
    ok = (r1["mode"] == r2["mode"] == "exhaustive" and r1["ok"] and r2["ok"]
          and elapsed < 30.0)
    report(8, ok, f"|C1||C2| max {r1['max_product']}<= {r1['bound']} (2,3), "
                  f"{r2['max_product']}<= {r2['bound']} (3,2) in {elapsed:.1f}s")


def test_criterion_09_las_vegas_build():
    start = time.perf_counter()
    params = ConstructionParams(2, 5, 2, 32, 4)
    run = build(params, seed=1, max_retries=20)
    recheck = is_k_nearly_orthogonal(run.result, 4)
    t1 = time.perf_counter() - start
    ok = (run.verdict.passed and len(run.result) >= 32 // 4
          and recheck.passed and t1 < 60.0)

    start = time.perf_counter()
    bp = ConstructionParams(2, 5, 2, 32, 5, mode=MODE_BIPARTITE)
    brun = build(bp, seed=1, max_retries=50)
    brecheck = bipartite_check(brun.result, 5)
    t2 = time.perf_counter() - start
    ok = ok and brun.verdict.passed and brecheck.passed and t2 < 60.0
    report(9, ok, f"clique build size {len(run.result)} in {run.retries_used} "
                  f"retries ({t1:.1f}s); bipartite build in {brun.retries_used} "
                  f"retries ({t2:.1f}s)")


def naive_count_sets(p, t):
    pool = enumerate_V(p, t)
    n = len(pool)
    assert n <= 16
    bad = [[inner_product(u, w) == 0 for w in pool] for u in pool]
    count = 0
    for mask in range(1 << n):
        members = [i for i in range(n) if mask >> i & 1]
        if all(not bad[i][j] for i, j in combinations(members, 2)):
            count += 1
    return count


def test_criterion_10_counting_oracle():
    ok = True
    checked = []
    for p, t in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 1)]:
        rep = count_Npt(p, t)
        if rep.total_sets != naive_count_sets(p, t):
            ok = False
        if 2 ** rep.largest_size > rep.total_sets:
            ok = False
        checked.append(f"({p},{t}):{rep.total_sets}")
    report(10, ok, f"count_Npt vs subset oracle: {', '.join(checked)}")


def test_criterion_11_ramsey_sanity():
    ok = True
    for p, t, m, n, k, seed in [(2, 5, 2, 32, 4, 1), (2, 4, 2, 12, 4, 3),
                                (3, 2, 2, 8, 4, 0)]:
        params = ConstructionParams(p, t, m, n, k)
        run = build(params, seed)
        if not run.verdict.passed:
            continue
        cap = ramsey_bound(params.ambient_dim, k)  # exact big integer
        if not len(run.result) < cap:
            ok = False
    report(11, ok, "every verified set is below the C(d+k,k) cap")


def clique_oracle_verdict(vs, k):
    n = len(vs)
    if any(inner_product(v, v) == 0 for v in vs):
        return False
    for subset in combinations(range(n), k + 1):
        if all(inner_product(vs[i], vs[j]) != 0 for i, j in combinations(subset, 2)):
            return False
    return True


def bipartite_oracle_verdict(vs, k):
    n = len(vs)
    if any(inner_product(v, v) == 0 for v in vs):
        return False
    for g1 in combinations(range(n), k):
        for g2 in combinations(range(n), k):
            if all(inner_product(vs[i], vs[j]) != 0 for i in g1 for j in g2):
                return False
    return True


def test_criterion_12_verifier_oracle_equivalence():
    rng = random.Random(424242)
    instances = 0
    ok = True
    while instances < 120:
        p = rng.choice([2, 3])
        dim = rng.randint(2, 4)
        pool = [vector(p, e) for e in product(range(p), repeat=dim)]
        n = rng.randint(2, min(12, len(pool)))
        k = rng.randint(1, 3)
        vs = rng.sample(pool, n)
        if is_k_nearly_orthogonal(vs, k).passed != clique_oracle_verdict(vs, k):
            ok = False
        if all(inner_product(v, v) != 0 for v in vs):
            if bipartite_check(vs, k).passed != bipartite_oracle_verdict(vs, k):
                ok = False
        instances += 1
    report(12, ok, f"verifiers agree with naive oracles on {instances} instances")


def test_criterion_13_determinism():
    params = ConstructionParams(2, 4, 2, 12, 4)
    payloads = {build(params, seed=7).to_json_str() for _ in range(2)}
    blob = payloads.pop()
    ok = not payloads and json.loads(blob)["seed"] == 7
    report(13, ok, "identical seeds give byte-identical run JSON")
