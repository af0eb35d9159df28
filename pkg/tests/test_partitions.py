from collections import Counter
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.functions.combinatorial.numbers import partition as npartitions
from sympy.functions.combinatorial.numbers import stirling as sympy_stirling

from hompoincare.exactalg import ONE, T, Poly
from hompoincare.partitions import (Partition, SignedPartition, UndefinedSign, emb_count,
                                    emb_count_signed, enum_partitions, enum_signed_partitions,
                                    sgn_rel, stirling1, stirling2, theta)
from hompoincare.weylgroups import (Permutation, cycle_partition, hyperoctahedral_group,
                                    signed_cycle_partition, symmetric_group)


def P(*parts):
    return Partition(parts)


def S(*parts):
    return SignedPartition(parts)


def test_enum_partitions_examples():
    assert enum_partitions(0) == [P()]
    assert set(enum_partitions(4)) == {P(4), P(1, 3), P(2, 2), P(1, 1, 2), P(1, 1, 1, 1)}
    assert len(enum_partitions(7)) == 15


@pytest.mark.parametrize("k", range(16))
def test_partition_counts_match_sympy(k):
    parts = enum_partitions(k)
    assert len(parts) == npartitions(k)
    assert len(set(parts)) == len(parts)
    assert all(p.size == k for p in parts)


def test_enum_partitions_rejects_negative():
    with pytest.raises(ValueError):
        enum_partitions(-1)


def test_signed_partitions_examples():
    assert enum_signed_partitions(1) == [S(1), S(-1)]
    assert set(enum_signed_partitions(2)) == {S(2), S(-2), S(1, 1), S(1, -1), S(-1, 1), S(-1, -1)}
    assert enum_signed_partitions(0) == [S()]


@pytest.mark.parametrize("k", range(9))
def test_signed_count(k):
    want = sum(2 ** len(p) for p in enum_partitions(k))
    assert len(enum_signed_partitions(k)) == want


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((2, 1))
    with pytest.raises(ValueError):
        Partition((0, 1))
    with pytest.raises(ValueError):
        SignedPartition((2, -1))


def test_signed_accessors():
    lam = S(-1, 1, -2)
    assert lam.positive == P(1, 1, 2)
    assert lam.sign == 1
    assert lam.size == 4


def test_theta_examples():
    assert theta(P()) == 1
    assert theta(P(1, 1)) == 2
    # centralizer order of cycle type 1^2 2^2 3 4^2: (1^2 2!)(2^2 2!)(3)(4^2 2!)
    assert theta(P(1, 1, 2, 2, 3, 4, 4)) == 1536


@pytest.mark.parametrize("n", range(1, 8))
def test_theta_is_centralizer_order(n):
    counts = Counter(cycle_partition(w) for w in symmetric_group(n))
    for lam, c in counts.items():
        assert c * theta(lam) == factorial(n)


@pytest.mark.parametrize("k", range(9))
def test_class_sizes_sum(k):
    assert sum(Fraction(factorial(k), theta(lam)) for lam in enum_partitions(k)) == factorial(k)


def brute_embeddings(mu, lam):
    return sum(1 for idx in combinations(range(len(lam.parts)), len(mu.parts))
               if tuple(lam.parts[i] for i in idx) == mu.parts)


def test_emb_count_examples():
    assert emb_count(P(1, 2, 4), P(1, 1, 2, 2, 3, 4, 4)) == 8
    lam = P(1, 2, 2)
    assert emb_count(lam, lam) == 1
    assert emb_count(P(5), P(1, 2)) == 0


def test_emb_count_signed_examples():
    assert emb_count_signed(S(-1, 1, 2, 3), S(1, -1, 1, 2, 2, 3, -3, 4)) == 2
    assert sgn_rel(S(-1, 1, 2, 3), S(1, -1, 1, -1, 1, 2, -2, 3, -3, 4)) == -1
    lam = S(-1, 2, -3)
    assert emb_count_signed(lam, lam) == 1 and sgn_rel(lam, lam) == 1
    with pytest.raises(UndefinedSign):
        sgn_rel(S(5), S(1, 2))


@given(st.integers(0, 7), st.integers(0, 7), st.data())
def test_emb_counts_match_brute_force(k, j, data):
    lam = data.draw(st.sampled_from(enum_signed_partitions(k)))
    mu = data.draw(st.sampled_from(enum_signed_partitions(min(j, k))))
    assert emb_count_signed(mu, lam) == brute_embeddings(mu, lam)
    assert emb_count(mu.positive, lam.positive) == brute_embeddings(mu.positive, lam.positive)


@given(st.integers(0, 7), st.data())
def test_sgn_rel_is_product_of_leftover_signs(k, data):
    lam = data.draw(st.sampled_from(enum_signed_partitions(k)))
    r = data.draw(st.integers(0, len(lam.parts)))
    idx = data.draw(st.sampled_from(list(combinations(range(len(lam.parts)), r))))
    mu = SignedPartition(tuple(lam.parts[i] for i in idx))
    rest = [lam.parts[i] for i in range(len(lam.parts)) if i not in idx]
    assert sgn_rel(mu, lam) == (-1) ** sum(1 for p in rest if p < 0)


def test_stirling_examples():
    assert stirling1(3, 2) == 3
    assert all(stirling1(n, n) == 1 for n in range(10))
    assert stirling2(3, 2) == 3
    with pytest.raises(ValueError):
        stirling1(2, 3)
    assert stirling1(20, 1) == factorial(19)


@pytest.mark.parametrize("n", range(13))
def test_stirling_match_sympy(n):
    for k in range(n + 1):
        assert stirling1(n, k) == sympy_stirling(n, k, kind=1, signed=False)
        assert stirling2(n, k) == sympy_stirling(n, k, kind=2)


def test_stirling1_counts_cycles():
    for n in range(1, 7):
        counts = Counter(len(cycle_partition(w)) for w in symmetric_group(n))
        assert all(counts[k] == stirling1(n, k) for k in range(1, n + 1))


@pytest.mark.parametrize("n", range(1, 13))
def test_rising_factorial(n):
    lhs = sum((Poly.monomial(k, stirling1(n, k)) for k in range(n + 1)), Poly())
    rhs = ONE
    for j in range(n):
        rhs = rhs * (T + j)
    assert lhs == rhs


@pytest.mark.parametrize("n", range(2, 13))
def test_second_kind_alternating_sum(n):
    assert sum((-1) ** k * factorial(k - 1) * stirling2(n, k) for k in range(1, n + 1)) == 0


@pytest.mark.parametrize("n", range(1, 8))
def test_counting_identity(n):
    counts = Counter(cycle_partition(w) for w in symmetric_group(n))
    for k in range(n + 1):
        for lam in enum_partitions(k):
            for i in range(n - k + 1):
                lhs = sum(c * emb_count(lam, mu) for mu, c in counts.items() if len(mu) - len(lam) == i)
                assert lhs * theta(lam) * factorial(n - k) == factorial(n) * stirling1(n - k, i)


@pytest.mark.parametrize("n", range(1, 6))
def test_counting_signed_identity(n):
    counts = Counter(signed_cycle_partition(w) for w in hyperoctahedral_group(n))
    for k in range(n + 1):
        for lam in enum_signed_partitions(k):
            for i in range(n - k + 1):
                lhs = sum(c * emb_count_signed(lam, mu) for mu, c in counts.items()
                          if len(mu) - len(lam) == i)
                rhs = 2 ** (n - len(lam)) * factorial(n) * stirling1(n - k, i)
                assert lhs * theta(lam.positive) * factorial(n - k) == rhs


@pytest.mark.parametrize("n", range(2, 6))
def test_even_subgroup_sign_swap(n):
    counts = Counter(signed_cycle_partition(w) for w in hyperoctahedral_group(n, even=True))
    lams = enum_signed_partitions(n - 1)
    total = {lam: sum(c * emb_count_signed(lam, mu) for mu, c in counts.items()) for lam in lams}
    pairs = 0
    for a, b in combinations(lams, 2):
        if a.positive == b.positive and sum(p != q for p, q in zip(a.parts, b.parts)) == 1:
            pairs += 1
            assert total[a] == total[b]
    assert pairs > 0


def test_stirling1_small_by_hand():
    # 3 letters, 2 cycles: the three transpositions
    two_cycles = [w for w in permutations(range(3)) if len(cycle_partition(Permutation(w))) == 2]
    assert len(two_cycles) == 3
