"""Pair partitions of sorted values and the crosswise-sum bound.

Indices are 0-based throughout: for ``a = (a_0, …, a_{2n-1})`` the crosswise
pairs are ``(i, 2n-1-i)``.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .errors import PreconditionError, ResourceError

BRUTE_FORCE_LIMIT = 12


class PairPartition(tuple):
    """A partition of ``{0, …, 2n-1}`` into unordered 2-subsets, stored as sorted pairs."""

    def __new__(cls, pairs: Iterable[Sequence[int]], size: int | None = None):
        norm = []
        for p in pairs:
            i, j = p
            if i == j:
                raise PreconditionError(f"pair ({i}, {j}) repeats an index")
            norm.append((min(i, j), max(i, j)))
        norm.sort()
        seen = [x for p in norm for x in p]
        n2 = size if size is not None else len(seen)
        if sorted(seen) != list(range(n2)):
            raise PreconditionError(f"pairs {norm} do not partition range({n2})")
        return super().__new__(cls, norm)

    @classmethod
    def crosswise(cls, size: int) -> "PairPartition":
        return cls([(i, size - 1 - i) for i in range(size // 2)])


def crosswise_sums(a: Sequence[int]) -> list:
    n2 = len(a)
    return [a[i] + a[n2 - 1 - i] for i in range(n2 // 2)]


def _check_sorted(a: Sequence[int]):
    if len(a) % 2:
        raise PreconditionError("need an even number of values")
    if any(x > y for x, y in zip(a, a[1:])):
        raise PreconditionError(f"values {tuple(a)} are not sorted")


def find_dominant_pair(a: Sequence[int], T: Iterable[Sequence[int]]) -> tuple:
    """A pair of ``T`` whose sum is at least every crosswise sum of ``a``.

    Follows the inductive construction: take the pair holding the largest
    remaining index; if its partner sits in the upper half keep it, otherwise
    recurse on what is left and keep the larger of the two candidates.
    """
    a = tuple(a)
    _check_sorted(a)
    T = PairPartition(T, len(a))
    partner = {}
    for i, j in T:
        partner[i], partner[j] = j, i

    def rec(remaining: list) -> tuple:
        top = remaining[-1]
        mate = partner[top]
        half = len(remaining) // 2
        pos = remaining.index(mate)
        here = (mate, top)
        if pos >= half - 1 or len(remaining) == 2:
            return here
        rest = [x for x in remaining if x not in here]
        other = rec(rest)
        return here if a[here[0]] + a[here[1]] >= a[other[0]] + a[other[1]] else other

    i, j = rec(list(range(len(a))))
    return (min(i, j), max(i, j))


def prop24_transfer(a: Sequence[int], N: int, T: Iterable[Sequence[int]]) -> bool | None:
    """If every pair sum of ``T`` is at most ``N`` then so is every crosswise sum.

    Returns None when ``T`` does not satisfy the hypothesis; otherwise the
    (asserted) truth of the crosswise bound.
    """
    a = tuple(a)
    _check_sorted(a)
    T = PairPartition(T, len(a))
    if any(a[i] + a[j] > N for i, j in T):
        return None
    holds = all(s <= N for s in crosswise_sums(a))
    if not holds:  # would contradict the dominant-pair lemma
        raise AssertionError(f"crosswise bound fails for {a}, N={N}, T={tuple(T)}")
    return True


def pair_partitions(indices: Sequence[int]):
    """All perfect matchings of ``indices`` ((2n-1)!! of them)."""
    if not indices:
        yield ()
        return
    first, rest = indices[0], indices[1:]
    for k, other in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        for tail in pair_partitions(remaining):
            yield ((first, other),) + tail


def brute_force_check(a: Sequence[int], N: int) -> bool:
    """Whether some pair partition of ``a`` has all sums ``≤ N`` (exhaustive)."""
    a = tuple(a)
    _check_sorted(a)
    if len(a) > BRUTE_FORCE_LIMIT:
        raise ResourceError(f"brute force limited to {BRUTE_FORCE_LIMIT} values, got {len(a)}")
    return any(all(a[i] + a[j] <= N for i, j in T) for T in pair_partitions(tuple(range(len(a)))))


def crosswise_check(a: Sequence[int], N: int) -> bool:
    a = tuple(a)
    _check_sorted(a)
    return all(s <= N for s in crosswise_sums(a))
