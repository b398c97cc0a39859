import pytest
from hypothesis import given, strategies as st

from oracles import brute_pairing
from precsymp.errors import PreconditionError, ResourceError
from precsymp.pairing import (PairPartition, brute_force_check, crosswise_check, crosswise_sums,
                              find_dominant_pair, pair_partitions, prop24_transfer)

sorted_values = st.lists(st.integers(1, 30), min_size=1, max_size=5).map(
    lambda xs: tuple(sorted(xs + xs[:1] if len(xs) % 2 else xs)))


@st.composite
def values_and_partition(draw):
    a = draw(sorted_values)
    idx = draw(st.permutations(range(len(a))))
    T = [(idx[i], idx[i + 1]) for i in range(0, len(a), 2)]
    return a, T


def double_factorial(n):
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


@given(sorted_values, st.integers(0, 60))
def test_crosswise_is_optimal(a, N):
    assert brute_force_check(a, N) == crosswise_check(a, N) == brute_pairing(a, N)


@given(values_and_partition())
def test_dominant_pair(aT):
    a, T = aT
    i, j = find_dominant_pair(a, T)
    assert (i, j) in PairPartition(T)
    assert a[i] + a[j] >= max(crosswise_sums(a))


@given(values_and_partition())
def test_transfer(aT):
    a, T = aT
    N = max(a[i] + a[j] for i, j in T)
    assert prop24_transfer(a, N, T) is True
    assert prop24_transfer(a, N - 1, T) is None


@pytest.mark.parametrize("n", [0, 2, 4, 6, 8])
def test_matching_count(n):
    parts = list(pair_partitions(tuple(range(n))))
    assert len(parts) == max(double_factorial(n - 1), 1)
    assert len(set(parts)) == len(parts)


def test_validation():
    with pytest.raises(PreconditionError):
        PairPartition([(0, 1), (1, 2)])
    with pytest.raises(PreconditionError):
        PairPartition([(0, 0)])
    with pytest.raises(PreconditionError):
        find_dominant_pair((3, 1), [(0, 1)])
    with pytest.raises(PreconditionError):
        brute_force_check((1, 2, 3), 5)
    with pytest.raises(ResourceError):
        brute_force_check(tuple(range(14)), 30)


def test_crosswise_partition():
    assert PairPartition.crosswise(6) == ((0, 5), (1, 4), (2, 3))
    assert crosswise_sums((1, 2, 3, 4)) == [5, 5]
