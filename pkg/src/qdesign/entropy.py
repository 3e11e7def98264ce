"""Renyi, Tsallis, Shannon, and conditional Renyi entropies.

All entropies use the natural logarithm. Distributions must arrive normalized
(within 1e-10); silent renormalization is refused so upstream probability bugs
surface here instead of being absorbed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

ATOL_PROB = 1e-10

_FAMILIES = ("renyi", "tsallis", "shannon")


@dataclass(frozen=True)
class EntropyOrder:
    """An entropy family plus its order (absent for Shannon)."""

    family: str
    order: float | None = None

    def __post_init__(self) -> None:
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown entropy family {self.family!r}")
        if self.family == "shannon":
            if self.order is not None:
                raise ValueError("shannon entropy takes no order")
        else:
            if self.order is None or self.order <= 0:
                raise ValueError(f"{self.family} entropy needs a positive order")
            if self.order == 1:
                raise ValueError("order 1 is the Shannon limit; use family='shannon'")


class JointDistribution:
    """A joint distribution p(x, y) as an n_x by n_y table."""

    __slots__ = ("table",)

    def __init__(self, table) -> None:
        arr = np.array(table, dtype=float)
        if arr.ndim != 2:
            raise ValueError(f"joint table must be 2-dimensional, got shape {arr.shape}")
        if arr.min() < -ATOL_PROB:
            raise ValueError("joint table has a negative entry")
        total = arr.sum()
        if abs(total - 1.0) > ATOL_PROB:
            raise ValueError(f"joint table sums to {total}, not 1")
        arr = np.clip(arr, 0.0, None)
        arr.setflags(write=False)
        self.table = arr

    def transposed(self) -> "JointDistribution":
        return JointDistribution(self.table.T)


def _validated(p) -> np.ndarray:
    arr = np.asarray(p, dtype=float).reshape(-1)
    if arr.size == 0:
        raise ValueError("empty distribution")
    if arr.min() < -ATOL_PROB:
        raise ValueError("distribution has a negative entry")
    total = arr.sum()
    if abs(total - 1.0) > ATOL_PROB:
        raise ValueError(f"distribution sums to {total}, not 1")
    return np.clip(arr, 0.0, None)


def renyi(p, alpha: float) -> float:
    """Renyi entropy H_alpha = ln(sum p_k^alpha)/(1-alpha)."""
    if alpha <= 0:
        raise ValueError("Renyi order must be positive")
    if alpha == 1:
        raise ValueError("order 1 is the Shannon limit; use shannon()")
    arr = _validated(p)
    return float(math.log((arr**alpha).sum()) / (1.0 - alpha))


def tsallis(p, q: float) -> float:
    """Tsallis entropy T_q = (sum p_k^q - 1)/(1-q)."""
    if q <= 0:
        raise ValueError("Tsallis order must be positive")
    if q == 1:
        raise ValueError("order 1 is the Shannon limit; use shannon()")
    arr = _validated(p)
    return float(((arr**q).sum() - 1.0) / (1.0 - q))


def shannon(p) -> float:
    """Shannon entropy -sum p_k ln p_k, with 0 ln 0 = 0."""
    arr = _validated(p)
    nz = arr[arr > 0.0]
    return float(-(nz * np.log(nz)).sum())


def convert_tsallis_to_renyi(value: float, r: float) -> float:
    """Bridge f_r(x) = ln(1 + (1-r)x)/(1-r); maps T_r to H_r for any distribution."""
    if r <= 1:
        raise ValueError("the conversion is defined for r > 1")
    arg = 1.0 + (1.0 - r) * value
    if arg <= 0:
        raise ValueError(f"conversion argument {arg} outside the logarithm domain")
    return float(math.log(arg) / (1.0 - r))


def conditional_renyi(joint: JointDistribution, alpha: float) -> float:
    """Conditional Renyi entropy H_alpha(X|Y) = (alpha/(1-alpha)) ln sum_y p_y ||p(x|y)||_alpha.

    The second table axis is the conditioning variable; outcomes y with zero
    probability contribute nothing.
    """
    if alpha <= 1:
        raise ValueError("conditional Renyi entropy needs alpha > 1")
    table = joint.table
    p_y = table.sum(axis=0)
    total = 0.0
    for y in range(table.shape[1]):
        if p_y[y] <= 0.0:
            continue
        cond = table[:, y] / p_y[y]
        total += p_y[y] * float((cond**alpha).sum() ** (1.0 / alpha))
    return float(alpha / (1.0 - alpha) * math.log(total))


def entropy_value(p, order: EntropyOrder) -> float:
    """Evaluate the entropy selected by an EntropyOrder on a distribution."""
    if order.family == "renyi":
        return renyi(p, order.order)
    if order.family == "tsallis":
        return tsallis(p, order.order)
    return shannon(p)
