import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from groupoid_card.permutations import (
    CapExceededError,
    CycleType,
    Permutation,
    all_cycle_types,
    canonical_cycle,
    conjugate_permutation,
    count_with_cycle_type,
    cycle_count,
    cycle_counts,
    cycle_decomposition,
    cycle_type,
    enumerate_permutations,
    falling_power,
    iter_pvectors,
    lex_rank,
    lex_unrank,
    list_cycle_tuples,
    validate_pvector,
    weight,
)

perm_images = st.integers(0, 6).flatmap(lambda n: st.permutations(list(range(n))))


def compose_cycles(n, cycles):
    # Independent reconstruction: each cycle (a0 .. ak-1) sends ai to a(i+1).
    images = list(range(n))
    for cyc in cycles:
        for i, a in enumerate(cyc):
            images[a] = cyc[(i + 1) % len(cyc)]
    return Permutation(tuple(images))


def test_permutation_validates_images():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))
    with pytest.raises(ValueError):
        Permutation((1, 2, 3))
    assert Permutation(()).degree == 0


def test_composition_applies_right_factor_first():
    s = Permutation((1, 0, 2))  # (01)
    t = Permutation((0, 2, 1))  # (12)
    assert (s * t).images == (1, 2, 0)
    assert (t * s).images == (2, 0, 1)
    with pytest.raises(ValueError):
        s * Permutation((0, 1))


def test_inverse():
    p = Permutation((2, 0, 1))
    assert (p * p.inverse()).images == (0, 1, 2)
    assert (p.inverse() * p).images == (0, 1, 2)


def test_cycle_decomposition_examples():
    assert cycle_decomposition(Permutation((0, 1, 2))) == [(0,), (1,), (2,)]
    assert cycle_decomposition(Permutation((1, 0, 2))) == [(0, 1), (2,)]
    assert cycle_decomposition(Permutation((1, 2, 0, 4, 3))) == [(0, 1, 2), (3, 4)]


def test_cycle_decomposition_is_canonical_and_covers():
    for sigma in enumerate_permutations(5):
        cycles = cycle_decomposition(sigma)
        flat = [a for cyc in cycles for a in cyc]
        assert sorted(flat) == list(range(5))
        for cyc in cycles:
            assert cyc[0] == min(cyc)
        assert [min(c) for c in cycles] == sorted(min(c) for c in cycles)


@pytest.mark.parametrize("n", range(7))
def test_decomposition_round_trip(n):
    for sigma in enumerate_permutations(n):
        assert compose_cycles(n, cycle_decomposition(sigma)) == sigma


def test_cycle_count_examples():
    assert cycle_count(Permutation((0, 1, 2)), 1) == 3
    assert cycle_count(Permutation((1, 0, 2)), 2) == 1
    five_cycle = Permutation((1, 2, 3, 4, 0))
    assert cycle_count(five_cycle, 5) == 1
    assert cycle_count(five_cycle, 1) == 0
    with pytest.raises(ValueError):
        cycle_count(five_cycle, 6)
    with pytest.raises(ValueError):
        cycle_count(five_cycle, 0)


@given(perm_images)
def test_cycle_counts_sum_to_degree(images):
    sigma = Permutation(tuple(images))
    counts = cycle_counts(sigma)
    assert sum(k * c for k, c in enumerate(counts, start=1)) == sigma.degree


def test_cycle_type_examples():
    assert cycle_type(Permutation((0, 1, 2, 3))).multiplicities == (4, 0, 0, 0)
    assert cycle_type(Permutation((1, 0, 3, 2))).multiplicities == (0, 2, 0, 0)
    assert cycle_type(Permutation((1, 2, 0, 4, 3))).multiplicities == (0, 1, 1, 0, 0)


def test_conjugation_examples():
    s = Permutation((1, 0, 2))  # (01)
    t = Permutation((0, 2, 1))  # (12)
    assert conjugate_permutation(s, Permutation.identity(3)) == s
    assert conjugate_permutation(s, t).images == (2, 1, 0)  # (02)
    with pytest.raises(ValueError):
        conjugate_permutation(s, Permutation((0, 1)))


@pytest.mark.parametrize("n", [4, 5])
def test_conjugation_preserves_cycle_type_exhaustively(n):
    perms = list(enumerate_permutations(n))
    for sigma in perms:
        for tau in perms:
            assert cycle_type(conjugate_permutation(sigma, tau)) == cycle_type(sigma)


def test_conjugation_matches_direct_composition():
    for sigma in enumerate_permutations(4):
        for tau in enumerate_permutations(4):
            assert conjugate_permutation(sigma, tau) == tau * sigma * tau.inverse()


def test_enumeration_order_and_count():
    assert [p.images for p in enumerate_permutations(0)] == [()]
    perms = [p.images for p in enumerate_permutations(3)]
    assert len(perms) == 6
    assert perms[0] == (0, 1, 2)
    assert perms[-1] == (2, 1, 0)
    assert perms == sorted(perms)
    five = list(enumerate_permutations(5))
    assert len(five) == len(set(five)) == 120


def test_enumeration_cap():
    with pytest.raises(CapExceededError):
        enumerate_permutations(11)
    with pytest.raises(CapExceededError):
        enumerate_permutations(4, cap=3)
    assert len(list(enumerate_permutations(4, cap=4))) == 24


def test_lex_rank_round_trip():
    for n in range(6):
        for rank, sigma in enumerate(enumerate_permutations(n)):
            assert lex_rank(sigma.images) == rank
            assert lex_unrank(n, rank) == sigma.images
    with pytest.raises(ValueError):
        lex_unrank(3, 6)


def test_falling_power():
    assert falling_power(5, 2) == 20
    assert falling_power(2, 3) == 0
    assert falling_power(7, 0) == 1
    assert falling_power(0, 0) == 1
    with pytest.raises(ValueError):
        falling_power(3, -1)


@given(st.integers(0, 40), st.integers(0, 12))
def test_falling_power_matches_factorial_quotient(x, p):
    if p <= x:
        assert falling_power(x, p) == math.factorial(x) // math.factorial(x - p)
    else:
        assert falling_power(x, p) == 0


def test_weight_examples():
    assert weight(()) == 0
    assert weight((0, 0, 0)) == 0
    assert weight((1, 1, 0)) == 3
    assert weight((2, 1, 0, 0)) == 4


def test_validate_pvector():
    assert validate_pvector(3, [1, 0, 2]) == (1, 0, 2)
    with pytest.raises(ValueError):
        validate_pvector(3, (1, 1))
    with pytest.raises(ValueError):
        validate_pvector(2, (-1, 0))


def test_iter_pvectors():
    vecs = list(iter_pvectors(3, max_entry=2, max_weight=3))
    assert (0, 0, 0) in vecs and (0, 0, 1) in vecs and (1, 1, 0) in vecs
    assert all(weight(p) <= 3 for p in vecs)
    assert all(max(p) <= 2 for p in vecs)
    assert vecs == sorted(vecs)
    assert (2, 1, 0) not in vecs  # weight 4


def test_canonical_cycle():
    assert canonical_cycle((2, 0, 1)) == (0, 1, 2)
    assert canonical_cycle((3,)) == (3,)
    with pytest.raises(ValueError):
        canonical_cycle(())


def test_list_cycle_tuples_examples():
    two_fixed = Permutation((0, 1))
    choices = list(list_cycle_tuples(two_fixed, (2, 0)))
    # Two orderings of the two fixed points, nothing else.
    assert choices == [
        ((1, ((0,), (1,))),),
        ((1, ((1,), (0,))),),
    ]

    double = Permutation((1, 0, 3, 2))  # (01)(23)
    pairs = list(list_cycle_tuples(double, (0, 2, 0, 0)))
    assert len(pairs) == 2
    assert {p[0][1] for p in pairs} == {((0, 1), (2, 3)), ((2, 3), (0, 1))}

    three_cycle = Permutation((1, 2, 0))
    assert list(list_cycle_tuples(three_cycle, (1, 0, 0))) == []

    # Empty p-vector yields exactly one (empty) choice.
    assert list(list_cycle_tuples(three_cycle, (0, 0, 0))) == [()]


@pytest.mark.parametrize("n", range(6))
def test_list_cycle_tuples_count_formula(n):
    for sigma in enumerate_permutations(n):
        counts = cycle_counts(sigma)
        for p in iter_pvectors(n, max_entry=2, max_weight=n + 2):
            expected = 1
            for k, pk in enumerate(p, start=1):
                expected *= falling_power(counts[k - 1], pk)
            assert sum(1 for _ in list_cycle_tuples(sigma, p)) == expected


def test_all_cycle_types_counts_are_partition_numbers():
    partition_numbers = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    for n, expected in enumerate(partition_numbers):
        types = list(all_cycle_types(n))
        assert len(types) == expected
        assert len(set(t.multiplicities for t in types)) == expected
        for lam in types:
            assert lam.degree == n
            assert len(lam.multiplicities) == n


def test_cycle_type_partition_and_centralizer():
    lam = CycleType((0, 1, 1, 0, 0))
    assert lam.partition() == (3, 2)
    assert lam.degree == 5
    assert lam.centralizer_order() == 6  # 2 * 3
    identity_type = CycleType((4, 0, 0, 0))
    assert identity_type.centralizer_order() == 24


def test_count_with_cycle_type_examples():
    assert count_with_cycle_type(CycleType((4, 0, 0, 0))) == 1
    assert count_with_cycle_type(CycleType((1, 1, 0))) == 3
    assert count_with_cycle_type(CycleType((0, 2, 0, 0))) == 3


@pytest.mark.parametrize("n", range(8))
def test_count_with_cycle_type_matches_enumeration(n):
    # The closed form must reproduce honest counting before anything trusts it.
    observed: dict[tuple[int, ...], int] = {}
    for sigma in enumerate_permutations(n):
        key = cycle_counts(sigma)
        observed[key] = observed.get(key, 0) + 1
    for lam in all_cycle_types(n):
        assert count_with_cycle_type(lam) == observed.get(lam.multiplicities, 0)
    assert sum(observed.values()) == math.factorial(n)


@pytest.mark.parametrize("n", range(11))
def test_cycle_type_counts_sum_to_factorial(n):
    assert sum(count_with_cycle_type(lam) for lam in all_cycle_types(n)) == math.factorial(n)
