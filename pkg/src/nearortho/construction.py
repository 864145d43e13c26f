"""Randomized construction of k-nearly orthogonal sets.

Sampling draws m iid uniform factors from V (the non-self-orthogonal,
leading-1 vectors of F_p^t) per sample; the factor products are then uniform
over Q = V^(x)m because the product map is injective on leading-1 factors.
A build-verify-retry loop makes the positive-probability existence argument
executable: each retry samples fresh vectors, deduplicates, and runs the
exact verifier.

RNG contract: numpy PCG64 seeded through SeedSequence(seed, spawn_key=(retry,)).
Within a retry the stream is consumed sample-major, factor-minor: sample i
draws its m factor indices in order before sample i+1 starts.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import product
from typing import Optional

import numpy as np

from nearortho.ff import FpVector, PrimeModulus, is_self_orthogonal, normalize_leading
from nearortho.tensor import TensorFactorization, tensor_many
from nearortho.verify import Verdict, bipartite_check, is_k_nearly_orthogonal

ENUM_GUARDRAIL = 1 << 24  # p^t cap for enumerate_V

MODE_CLIQUE = "clique"
MODE_BIPARTITE = "bipartite"


class ScheduleError(ValueError):
    """Derived schedule degenerates (t would be 0); use direct parameters."""


@dataclass(frozen=True)
class ConstructionParams:
    p: int
    t: int
    m: int
    n: int
    k: int
    d: Optional[int] = None  # ambient dim; defaults to t^m
    mode: str = MODE_CLIQUE

    def __post_init__(self) -> None:
        PrimeModulus(self.p)
        if self.t < 1 or self.m < 1 or self.n < 1 or self.k < 1:
            raise ValueError("t, m, n, k must all be >= 1")
        if self.mode not in (MODE_CLIQUE, MODE_BIPARTITE):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.d is not None and self.d < self.t ** self.m:
            raise ValueError(f"d = {self.d} below t^m = {self.t ** self.m}")

    @property
    def ambient_dim(self) -> int:
        return self.d if self.d is not None else self.t ** self.m

    def to_json(self) -> dict:
        return {"p": self.p, "t": self.t, "m": self.m, "n": self.n,
                "k": self.k, "d": self.ambient_dim, "mode": self.mode}


@dataclass
class ConstructionRun:
    params: ConstructionParams
    seed: int
    retries_used: int
    samples_drawn: int
    result: list[FpVector]
    verdict: Verdict

    def to_json(self) -> dict:
        verdict = self.verdict.to_json()
        # timing is wall-clock noise; run JSON must be byte-identical per seed
        verdict["stats"] = {k: v for k, v in verdict["stats"].items() if k != "elapsed"}
        return {
            "params": self.params.to_json(),
            "seed": self.seed,
            "retries_used": self.retries_used,
            "samples_drawn": self.samples_drawn,
            "verdict": verdict,
            "result": [list(v.entries) for v in self.result],
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def enumerate_V(p: int, t: int, normalized: bool = False) -> list[FpVector]:
    """All non-self-orthogonal vectors of F_p^t, in lexicographic entry order.

    With normalized=True only leading-1 vectors are kept (no-op for p = 2,
    where every nonzero vector already leads with 1).
    """
    PrimeModulus(p)
    if p ** t > ENUM_GUARDRAIL:
        raise ValueError(f"p^t = {p ** t} exceeds enumeration guardrail")
    modulus = PrimeModulus(p)
    out = []
    for entries in product(range(p), repeat=t):
        v = FpVector(modulus, entries)
        if is_self_orthogonal(v):
            continue
        if normalized and p > 2 and normalize_leading(v) != v:
            continue
        out.append(v)
    return out


def _floor_fourth_root(x: int) -> int:
    return math.isqrt(math.isqrt(x))


def schedule_f2(k: int, d: int) -> tuple[int, int, int]:
    """t = floor(k/8), m maximal with t^m <= d, n = floor(2^(m t / 4))."""
    t = k // 8
    if t < 1:
        raise ScheduleError(f"k = {k} gives t = 0; supply t, m, n directly")
    if d < t:
        raise ValueError(f"d = {d} below t = {t}; no valid m")
    m = 1
    while t ** (m + 1) <= d and t > 1:
        m += 1
    n = _floor_fourth_root(2 ** (m * t))
    return t, m, n


def schedule_fp(p: int, k: int, d: int) -> tuple[int, int, int]:
    """t maximal with k > 32 t^(p-1), m maximal with t^m <= d,
    n = floor(p^(m t / 4))."""
    PrimeModulus(p)
    if k <= 32:
        raise ScheduleError(f"k = {k} <= 32 gives t = 0; supply t, m, n directly")
    t = 1
    while k > 32 * (t + 1) ** (p - 1):
        t += 1
    if d < t:
        raise ValueError(f"d = {d} below t = {t}; no valid m")
    m = 1
    while t ** (m + 1) <= d and t > 1:
        m += 1
    n = _floor_fourth_root(p ** (m * t))
    return t, m, n


def _retry_rng(seed: int, retry: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(retry,))))


def sample_Q(params: ConstructionParams, seed: int, count: int,
             retry: int = 0) -> list[TensorFactorization]:
    """count iid uniform samples from Q = V^(x)m, deterministic in (seed, retry)."""
    v_set = enumerate_V(params.p, params.t, normalized=True)
    rng = _retry_rng(seed, retry)
    samples = []
    for _ in range(count):
        idx = rng.integers(0, len(v_set), size=params.m)
        samples.append(tensor_many([v_set[i] for i in idx]))
    return samples


def _verify(vectors: list[FpVector], params: ConstructionParams) -> Verdict:
    if params.mode == MODE_CLIQUE:
        return is_k_nearly_orthogonal(vectors, params.k)
    return bipartite_check(vectors, params.k)


def build(params: ConstructionParams, seed: int, max_retries: int = 20) -> ConstructionRun:
    """Las Vegas loop: sample n vectors, deduplicate, verify; retry on failure.

    On success the result is padded with zeros to the ambient dimension d.
    Exhausted retries yield a FAIL verdict with the last witness, not an error.
    """
    if max_retries < 1:
        raise ValueError("max_retries must be >= 1")
    last_run = None
    for retry in range(max_retries):
        samples = sample_Q(params, seed, params.n, retry=retry)
        seen = set()
        distinct = []
        for s in samples:
            prod = s.product
            if prod not in seen:
                seen.add(prod)
                distinct.append(prod)
        padded = [v.pad(params.ambient_dim) for v in distinct]
        verdict = _verify(padded, params)
        last_run = ConstructionRun(params, seed, retry + 1,
                                   (retry + 1) * params.n, padded, verdict)
        if verdict.passed:
            return last_run
    return last_run


def union_bound(params: ConstructionParams) -> float:
    """log2 of the analytic failure-probability bound; may be positive
    (vacuous) at desk scale.

    p = 2, clique mode: m t^2 + (k+1) (log2 n - m (t-3)/2).
    Otherwise (general p / bipartite): the k-exponent analogue
    2 m t (t^(p-1) + p - 1) log2 p + k (log2 n - m (t/2 - 3) log2 p).
    """
    p, t, m, n, k = params.p, params.t, params.m, params.n, params.k
    if n == 0:
        return float("-inf")
    log2n = math.log2(n)
    if p == 2 and params.mode == MODE_CLIQUE:
        return m * t * t + (k + 1) * (log2n - m * (t - 3) / 2)
    log2p = math.log2(p)
    return 2 * m * t * (t ** (p - 1) + p - 1) * log2p + k * (log2n - m * (t / 2 - 3) * log2p)
