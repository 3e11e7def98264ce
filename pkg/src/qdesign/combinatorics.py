"""Integer partitions, cycle types, and symmetric-subspace dimensions.

Everything here is exact integer/rational arithmetic; no floats enter until
the caller converts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

MAX_T = 12


@dataclass(frozen=True)
class Partition:
    """A partition of t, identifying one conjugacy class of S_t.

    Attributes
    ----------
    parts : tuple[int, ...]
        Non-increasing positive integers summing to t.
    multiplicities : tuple[int, ...]
        Entry m-1 holds k_m, the number of parts equal to m, for m = 1..t.
    class_size : int
        Number of permutations of S_t whose cycle type is this partition.
    """

    parts: tuple[int, ...]
    multiplicities: tuple[int, ...]
    class_size: int

    @property
    def t(self) -> int:
        return sum(self.parts)


def class_size(multiplicities: Sequence[int]) -> int:
    """Size of the S_t conjugacy class with cycle type (1^k1 2^k2 ... t^kt).

    ``multiplicities`` lists k_1, k_2, ...; trailing zeros may be omitted.
    """
    ks = [int(k) for k in multiplicities]
    if any(k < 0 for k in ks):
        raise ValueError("cycle-type multiplicities must be non-negative")
    t = sum(m * k for m, k in enumerate(ks, start=1))
    if t == 0:
        raise ValueError("cycle type must cover at least one element")
    denom = 1
    for m, k in enumerate(ks, start=1):
        denom *= factorial(k) * m**k
    size, rem = divmod(factorial(t), denom)
    if rem:
        raise ValueError(f"inconsistent multiplicities {tuple(ks)}")
    return size


def _descending_partitions(n: int, max_part: int) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _descending_partitions(n - first, first):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def partitions(t: int) -> tuple[Partition, ...]:
    """All partitions of t, reverse-lexicographic: (1,...,1) first, (t,) last."""
    if not 1 <= t <= MAX_T:
        raise ValueError(f"t={t} outside supported range 1..{MAX_T}")
    out = []
    for parts in sorted(_descending_partitions(t, t)):
        mult = [0] * t
        for p in parts:
            mult[p - 1] += 1
        out.append(Partition(parts, tuple(mult), class_size(mult)))
    return tuple(out)


def sym_dim_inverse(t: int, d: int) -> Fraction:
    """Inverse dimension of the symmetric subspace of (C^d)^(x t): t!(d-1)!/(t+d-1)!."""
    if t < 1 or d < 1:
        raise ValueError("t and d must be positive integers")
    return Fraction(factorial(t) * factorial(d - 1), factorial(t + d - 1))
