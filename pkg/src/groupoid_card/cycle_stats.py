"""Expectations of products of falling powers of cycle counts.

Treats the n! permutations of degree n as equiprobable and computes
E(prod_k c_k^(p_k falling)) two independent exact ways: by full enumeration
and by weighting cycle types with reciprocal centralizer orders. The two
serve as mutual oracles. A seeded Monte Carlo route covers degrees beyond
enumeration range; it uses SplitMix64 and the decreasing-index Fisher-Yates
shuffle, so every report is reproducible from (n, p, samples, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .groupoids import rational_str
from .permutations import (
    DEFAULT_ENUMERATION_CAP,
    DEFAULT_PARTITION_CAP,
    CapExceededError,
    all_cycle_types,
    cycle_counts,
    enumerate_permutations,
    falling_power,
    validate_pvector,
    weight,
)
from .rng import SplitMix64

METHOD_BRUTE = "brute"
METHOD_CYCLE_TYPE = "cycle_type"
METHOD_MONTE_CARLO = "monte_carlo"

# Raw cycle-count vectors are cached per degree up to here; brute-force sums
# stay literal sums over all n! entries either way.
_VECTOR_CACHE_MAX_DEGREE = 8
_VECTOR_CACHE: dict[int, list[tuple[int, ...]]] = {}


@dataclass(frozen=True)
class MomentReport:
    """Result of one expectation check.

    Exact methods fill lhs/rhs/equal; Monte Carlo fills estimate,
    standard_error, samples and seed, and never claims exact equality.
    """

    n: int
    p: tuple[int, ...]
    method: str
    lhs: Optional[Fraction] = None
    rhs: Optional[Fraction] = None
    equal: Optional[bool] = None
    estimate: Optional[float] = None
    standard_error: Optional[float] = None
    samples: Optional[int] = None
    seed: Optional[int] = None

    def to_json_dict(self) -> dict:
        out: dict = {"n": self.n, "p": list(self.p), "method": self.method}
        if self.lhs is not None:
            out["lhs"] = rational_str(self.lhs)
        if self.rhs is not None:
            out["rhs"] = rational_str(self.rhs)
        if self.equal is not None:
            out["equal"] = self.equal
        if self.estimate is not None:
            out["estimate"] = self.estimate
            out["standard_error"] = self.standard_error
            out["samples"] = self.samples
            out["seed"] = self.seed
            out["generator"] = "splitmix64"
        return out


def _cycle_count_vectors(n: int, cap: int):
    if n > cap:
        raise CapExceededError(f"degree {n} exceeds enumeration cap {cap}")
    if n <= _VECTOR_CACHE_MAX_DEGREE:
        vectors = _VECTOR_CACHE.get(n)
        if vectors is None:
            vectors = [cycle_counts(sigma) for sigma in enumerate_permutations(n, cap)]
            _VECTOR_CACHE[n] = vectors
        return vectors
    return (cycle_counts(sigma) for sigma in enumerate_permutations(n, cap))


def _product_of_falling(counts: Sequence[int], p: Sequence[int]) -> int:
    term = 1
    for k0, pk in enumerate(p):
        if pk:
            term *= falling_power(counts[k0], pk)
            if term == 0:
                return 0
    return term


def expected_product_brute(n: int, p: Sequence[int], cap: int = DEFAULT_ENUMERATION_CAP) -> Fraction:
    """Exact expectation by summing over every permutation of degree n."""
    pvec = validate_pvector(n, p)
    total = 0
    for counts in _cycle_count_vectors(n, cap):
        total += _product_of_falling(counts, pvec)
    return Fraction(total, math.factorial(n))


def expected_product_by_type(n: int, p: Sequence[int], partition_cap: int = DEFAULT_PARTITION_CAP) -> Fraction:
    """Exact expectation by summing over cycle types: each type contributes
    its falling-power product weighted by 1/centralizer_order. Independent of
    the enumeration route."""
    pvec = validate_pvector(n, p)
    if n > partition_cap:
        raise CapExceededError(f"degree {n} exceeds partition cap {partition_cap}")
    total = Fraction(0)
    for lam in all_cycle_types(n):
        term = _product_of_falling(lam.multiplicities, pvec)
        if term:
            total += Fraction(term, lam.centralizer_order())
    return total


def cll_rhs(n: int, p: Sequence[int]) -> Fraction:
    """Closed form the expectation must equal: prod_k 1/k^{p_k} when the
    weight p_1 + 2 p_2 + ... + n p_n is at most n, else exactly 0."""
    pvec = validate_pvector(n, p)
    if weight(pvec) > n:
        return Fraction(0)
    denom = 1
    for k, pk in enumerate(pvec, start=1):
        denom *= k**pk
    return Fraction(1, denom)


def verify_cll(n: int, p: Sequence[int], method: str = METHOD_BRUTE, cap: int = DEFAULT_ENUMERATION_CAP, partition_cap: int = DEFAULT_PARTITION_CAP) -> MomentReport:
    """Compare one exact method against the closed form, as exact rationals."""
    pvec = validate_pvector(n, p)
    if method == METHOD_BRUTE:
        lhs = expected_product_brute(n, pvec, cap)
    elif method == METHOD_CYCLE_TYPE:
        lhs = expected_product_by_type(n, pvec, partition_cap)
    else:
        raise ValueError(f"unknown exact method {method!r}")
    rhs = cll_rhs(n, pvec)
    return MomentReport(n=n, p=pvec, method=method, lhs=lhs, rhs=rhs, equal=lhs == rhs)


def expected_total_cycles(n: int) -> Fraction:
    """Expected number of cycles of a uniform permutation: the n-th harmonic
    number 1 + 1/2 + ... + 1/n, exactly."""
    if n < 1:
        raise ValueError(f"degree must be positive, got {n}")
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


def poisson_factorial_moment(mu: Fraction, p: int) -> Fraction:
    """p-th falling-factorial moment of a Poisson variable with mean mu: mu^p."""
    if p < 0:
        raise ValueError(f"moment order must be nonnegative, got {p}")
    return Fraction(mu) ** p


def uncorrelated_check(n: int, j: int, k: int) -> MomentReport:
    """Verify E(c_j c_k) = E(c_j) E(c_k) exactly, which requires j != k and
    j + k <= n (beyond that the left side vanishes while the right does not)."""
    if not (1 <= j <= n and 1 <= k <= n):
        raise ValueError(f"cycle lengths must lie in 1..{n}, got j={j}, k={k}")
    if j == k:
        raise ValueError("cycle lengths must differ")
    if j + k > n:
        raise ValueError(f"j + k = {j + k} exceeds n = {n}; there the product identity fails")
    pair = tuple(1 if m in (j, k) else 0 for m in range(1, n + 1))
    ej = tuple(1 if m == j else 0 for m in range(1, n + 1))
    ek = tuple(1 if m == k else 0 for m in range(1, n + 1))
    lhs = expected_product_by_type(n, pair)
    rhs = expected_product_by_type(n, ej) * expected_product_by_type(n, ek)
    return MomentReport(n=n, p=pair, method=METHOD_CYCLE_TYPE, lhs=lhs, rhs=rhs, equal=lhs == rhs)


def sample_permutation(n: int, rng: SplitMix64) -> list[int]:
    """One uniform permutation as an image list, via the unbiased shuffle."""
    images = list(range(n))
    rng.shuffle(images)
    return images


def monte_carlo_moment(n: int, p: Sequence[int], samples: int, seed: int) -> MomentReport:
    """Sample mean and standard error of prod_k c_k^(p_k falling) over uniform
    permutations. Deterministic given (n, p, samples, seed)."""
    pvec = validate_pvector(n, p)
    if samples < 2:
        raise ValueError(f"need at least 2 samples, got {samples}")
    needed = {k for k, pk in enumerate(pvec, start=1) if pk}
    rng = SplitMix64(seed)
    images = list(range(n))
    total = 0
    total_sq = 0
    for _ in range(samples):
        rng.shuffle(images)
        counts: dict[int, int] = {}
        seen = bytearray(n)
        for start in range(n):
            if seen[start]:
                continue
            length = 1
            seen[start] = 1
            entry = images[start]
            while entry != start:
                seen[entry] = 1
                entry = images[entry]
                length += 1
            if length in needed:
                counts[length] = counts.get(length, 0) + 1
        value = 1
        for k in needed:
            value *= falling_power(counts.get(k, 0), pvec[k - 1])
            if value == 0:
                break
        total += value
        total_sq += value * value
    mean = total / samples
    variance = (total_sq - total * total / samples) / (samples - 1)
    std_error = math.sqrt(max(variance, 0.0) / samples)
    return MomentReport(
        n=n,
        p=pvec,
        method=METHOD_MONTE_CARLO,
        rhs=cll_rhs(n, pvec),
        estimate=mean,
        standard_error=std_error,
        samples=samples,
        seed=seed,
    )
