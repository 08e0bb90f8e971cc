"""Permutations of {0, ..., n-1}: cycle structure, conjugation, enumeration.

Everything is pure and immutable. Enumeration streams are deterministic
(lexicographic on image tuples) and restartable.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

DEFAULT_ENUMERATION_CAP = 10
DEFAULT_PARTITION_CAP = 40


class CapExceededError(ValueError):
    """A request would exceed a configured desk-scale cap."""


Cycle = tuple[int, ...]


@dataclass(frozen=True)
class Permutation:
    """Bijection on {0, ..., n-1}, stored as its tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"images {images!r} are not a bijection of 0..{len(images) - 1}")

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def compose(self, other: "Permutation") -> "Permutation":
        """(self * other)(x) = self(other(x)): the right factor acts first."""
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        simg, oimg = self.images, other.images
        return Permutation(tuple(simg[i] for i in oimg))

    __mul__ = compose

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, img in enumerate(self.images):
            inv[img] = i
        return Permutation(tuple(inv))

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


def canonical_cycle(entries: Sequence[int]) -> Cycle:
    """Rotate a cycle so its minimum entry comes first."""
    entries = tuple(entries)
    if not entries:
        raise ValueError("a cycle cannot be empty")
    i = entries.index(min(entries))
    return entries[i:] + entries[:i]


def cycle_decomposition(sigma: Permutation) -> list[Cycle]:
    """Disjoint cycles covering all points, fixed points included as 1-cycles.

    Each cycle starts at its minimum entry and the list is sorted by that
    minimum, so equal permutations decompose identically.
    """
    images = sigma.images
    seen = bytearray(len(images))
    cycles: list[Cycle] = []
    for start in range(len(images)):
        if seen[start]:
            continue
        entry = start
        cycle = [entry]
        seen[entry] = 1
        entry = images[entry]
        while entry != start:
            cycle.append(entry)
            seen[entry] = 1
            entry = images[entry]
        cycles.append(tuple(cycle))
    return cycles


def cycle_count(sigma: Permutation, k: int) -> int:
    """Number of k-cycles of sigma; k must lie in 1..degree."""
    if not 1 <= k <= sigma.degree:
        raise ValueError(f"cycle length {k} out of range 1..{sigma.degree}")
    return sum(1 for cyc in cycle_decomposition(sigma) if len(cyc) == k)


def cycle_counts(sigma: Permutation) -> tuple[int, ...]:
    """All cycle counts at once: entry k-1 is the number of k-cycles."""
    counts = [0] * sigma.degree
    for cyc in cycle_decomposition(sigma):
        counts[len(cyc) - 1] += 1
    return tuple(counts)


@dataclass(frozen=True)
class CycleType:
    """Multiplicity vector of cycle lengths: multiplicities[k-1] = #k-cycles."""

    multiplicities: tuple[int, ...]

    def __post_init__(self) -> None:
        mult = tuple(int(x) for x in self.multiplicities)
        object.__setattr__(self, "multiplicities", mult)
        if any(x < 0 for x in mult):
            raise ValueError(f"negative multiplicity in {mult!r}")

    @property
    def degree(self) -> int:
        return sum(k * mk for k, mk in enumerate(self.multiplicities, start=1))

    def partition(self) -> tuple[int, ...]:
        """Cycle lengths in weakly decreasing order."""
        parts: list[int] = []
        for k in range(len(self.multiplicities), 0, -1):
            parts.extend([k] * self.multiplicities[k - 1])
        return tuple(parts)

    def centralizer_order(self) -> int:
        """prod_k k^{m_k} m_k!, the size of the conjugation stabilizer."""
        z = 1
        for k, mk in enumerate(self.multiplicities, start=1):
            z *= k**mk * math.factorial(mk)
        return z


def cycle_type(sigma: Permutation) -> CycleType:
    return CycleType(cycle_counts(sigma))


def all_cycle_types(n: int) -> Iterator[CycleType]:
    """All cycle types of degree n, i.e. integer partitions of n, as
    length-n multiplicity vectors. Parts are generated largest-first."""
    if n < 0:
        return

    def parts_gen(remaining: int, max_part: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, max_part), 0, -1):
            for rest in parts_gen(remaining - part, part):
                yield (part,) + rest

    for parts in parts_gen(n, n):
        mult = [0] * n
        for part in parts:
            mult[part - 1] += 1
        yield CycleType(tuple(mult))


def count_with_cycle_type(lam: CycleType) -> int:
    """Number of permutations with the given cycle type: n!/z where z is the
    centralizer order. Cross-validated against enumeration in the test suite."""
    return math.factorial(lam.degree) // lam.centralizer_order()


def conjugate_permutation(sigma: Permutation, tau: Permutation) -> Permutation:
    """tau . sigma . tau^{-1}; relabels points, preserving cycle type."""
    if sigma.degree != tau.degree:
        raise ValueError(f"degree mismatch: {sigma.degree} vs {tau.degree}")
    simg, timg = sigma.images, tau.images
    out = [0] * len(simg)
    for i in range(len(simg)):
        out[timg[i]] = timg[simg[i]]
    return Permutation(tuple(out))


def enumerate_permutations(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Permutation]:
    """All n! permutations, lexicographic in the image tuple, each exactly once."""
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    if n > cap:
        raise CapExceededError(f"degree {n} exceeds enumeration cap {cap}")
    return (Permutation(images) for images in itertools.permutations(range(n)))


def lex_rank(images: Sequence[int]) -> int:
    """Position of an image tuple in the lexicographic enumeration of its degree."""
    n = len(images)
    rank = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if images[j] < images[i])
        rank += smaller * math.factorial(n - 1 - i)
    return rank


def lex_unrank(n: int, rank: int) -> tuple[int, ...]:
    """Inverse of lex_rank for degree n."""
    if not 0 <= rank < math.factorial(n):
        raise ValueError(f"rank {rank} out of range for degree {n}")
    pool = list(range(n))
    out = []
    for i in range(n, 0, -1):
        idx, rank = divmod(rank, math.factorial(i - 1))
        out.append(pool.pop(idx))
    return tuple(out)


def falling_power(x: int, p: int) -> int:
    """x(x-1)...(x-p+1); the number of ordered p-tuples of distinct items
    chosen from x. Empty product for p = 0; zero when p > x."""
    if p < 0:
        raise ValueError(f"exponent must be nonnegative, got {p}")
    result = 1
    for i in range(p):
        result *= x - i
        if result == 0:
            return 0
    return result


def validate_pvector(n: int, p: Sequence[int]) -> tuple[int, ...]:
    """Check that p has length n and nonnegative integer entries."""
    pvec = tuple(int(x) for x in p)
    if len(pvec) != n:
        raise ValueError(f"p-vector has length {len(pvec)}, expected degree {n}")
    if any(x < 0 for x in pvec):
        raise ValueError(f"p-vector entries must be nonnegative: {pvec!r}")
    return pvec


def weight(p: Sequence[int]) -> int:
    """The weighted sum p_1 + 2 p_2 + ... + n p_n."""
    return sum(k * pk for k, pk in enumerate(p, start=1))


def iter_pvectors(n: int, max_entry: int = 2, max_weight: int | None = None) -> Iterator[tuple[int, ...]]:
    """All p-vectors of length n with entries <= max_entry and weight <= max_weight
    (default n), in lexicographic order."""
    if max_weight is None:
        max_weight = n
    for p in itertools.product(range(max_entry + 1), repeat=n):
        if weight(p) <= max_weight:
            yield p


# For each k with p_k > 0: (k, ordered tuple of p_k distinct canonical cycles).
CycleTupleChoice = tuple[tuple[int, tuple[Cycle, ...]], ...]


def list_cycle_tuples(sigma: Permutation, p: Sequence[int]) -> Iterator[CycleTupleChoice]:
    """Every way to choose, for each k, an ordered p_k-tuple of distinct
    k-cycles of sigma. Yields prod_k falling_power(c_k(sigma), p_k) choices;
    nothing when some p_k exceeds the available k-cycles."""
    pvec = validate_pvector(sigma.degree, p)
    by_length: dict[int, list[Cycle]] = {}
    for cyc in cycle_decomposition(sigma):
        by_length.setdefault(len(cyc), []).append(cyc)
    ks: list[int] = []
    streams: list[list[tuple[Cycle, ...]]] = []
    for k, pk in enumerate(pvec, start=1):
        if pk == 0:
            continue
        ks.append(k)
        streams.append(list(itertools.permutations(by_length.get(k, []), pk)))
    for combo in itertools.product(*streams):
        yield tuple(zip(ks, combo))
