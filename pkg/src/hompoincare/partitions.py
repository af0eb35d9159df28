"""Integer partitions, signed partitions, embedding counts and Stirling numbers."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import groupby, product
from math import comb, factorial, prod


class UndefinedSign(ValueError):
    """``sgn_rel`` asked for a pair with no embedding."""


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly increasing tuple of positive parts; ``()`` partitions 0."""

    parts: tuple = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if list(parts) != sorted(parts):
            raise ValueError(f"partition parts must be ascending: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def multiplicities(self) -> dict:
        """Run-length encoding ``{part: multiplicity}``."""
        return {v: len(list(g)) for v, g in groupby(self.parts)}

    def __repr__(self):
        return f"Partition{self.parts}"


@dataclass(frozen=True, order=True)
class SignedPartition:
    """Ordered sequence of nonzero integers whose absolute values ascend."""

    parts: tuple = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(p == 0 for p in parts):
            raise ValueError("signed partition parts must be nonzero")
        mags = [abs(p) for p in parts]
        if mags != sorted(mags):
            raise ValueError(f"absolute values must ascend: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(abs(p) for p in self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    @property
    def positive(self) -> Partition:
        """The underlying unsigned partition (lambda^+)."""
        return Partition(tuple(abs(p) for p in self.parts))

    @property
    def sign(self) -> int:
        return -1 if sum(1 for p in self.parts if p < 0) % 2 else 1

    def __repr__(self):
        return f"SignedPartition{self.parts}"


def _partitions_ascending(k: int, smallest: int):
    if k == 0:
        yield ()
        return
    for first in range(smallest, k + 1):
        rest = k - first
        if rest == 0:
            yield (first,)
        elif rest >= first:
            for tail in _partitions_ascending(rest, first):
                yield (first,) + tail


@lru_cache(maxsize=None)
def _partition_tuple(k: int) -> tuple:
    return tuple(Partition(p) for p in _partitions_ascending(k, 1))


def enum_partitions(k: int) -> list:
    """All partitions of ``k`` in lexicographic order of their ascending parts."""
    if k < 0:
        raise ValueError("cannot partition a negative integer")
    return list(_partition_tuple(k))


@lru_cache(maxsize=None)
def _signed_tuple(k: int) -> tuple:
    out = []
    for lam in _partition_tuple(k):
        for signs in product((1, -1), repeat=len(lam)):
            out.append(SignedPartition(tuple(s * p for s, p in zip(signs, lam.parts))))
    return tuple(out)


def enum_signed_partitions(k: int) -> list:
    """Every partition of ``k`` with every sign vector (``+`` before ``-``)."""
    if k < 0:
        raise ValueError("cannot partition a negative integer")
    return list(_signed_tuple(k))


def theta(lam: Partition) -> int:
    """Centralizer order of the cycle type: every part times the factorials of the multiplicities."""
    mult = lam.multiplicities()
    return prod(v ** c * factorial(c) for v, c in mult.items())


def emb_count(mu: Partition, lam: Partition) -> int:
    """Number of subsequences of ``lam`` equal to ``mu``."""
    have = lam.multiplicities()
    return prod(comb(have.get(v, 0), c) for v, c in mu.multiplicities().items())


def emb_count_signed(mu: SignedPartition, lam: SignedPartition) -> int:
    """Number of ordered subsequences (by position) of ``lam`` equal to ``mu``."""
    target = mu.parts
    ways = [1] + [0] * len(target)
    for x in lam.parts:
        for j in range(len(target), 0, -1):
            if target[j - 1] == x:
                ways[j] += ways[j - 1]
    return ways[len(target)]


def sgn_rel(mu: SignedPartition, lam: SignedPartition) -> int:
    """Product of the signs of the entries of ``lam`` left over by an embedding of ``mu``."""
    if emb_count_signed(mu, lam) == 0:
        raise UndefinedSign(f"{mu} does not embed in {lam}")
    return lam.sign * mu.sign


@lru_cache(maxsize=None)
def _stirling1(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return _stirling1(n - 1, k - 1) + (n - 1) * _stirling1(n - 1, k)


@lru_cache(maxsize=None)
def _stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return _stirling2(n - 1, k - 1) + k * _stirling2(n - 1, k)


def _check_range(n: int, k: int) -> None:
    if not (0 <= k <= n):
        raise ValueError(f"Stirling index out of range: n={n}, k={k}")


def stirling1(n: int, k: int) -> int:
    """Unsigned Stirling number of the first kind (permutations of n with k cycles)."""
    _check_range(n, k)
    return _stirling1(n, k)


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind (set partitions of n into k blocks)."""
    _check_range(n, k)
    return _stirling2(n, k)
