"""Design moment identities and entropic uncertainty bounds.

The central object is the moment polynomial F_t(rho): the average of
<psi|rho|psi>^t over a t-design equals D_t^d * F_t(rho), and both entropy
bounds are monotone images of that average.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .combinatorics import MAX_T, Partition, partitions, sym_dim_inverse
from .designs import DesignSet
from .entropy import EntropyOrder, entropy_value
from .linalg import DensityMatrix, moment_sequence
from .measurements import MeasurementAssembly, outcome_distribution

# Slack allowed on f_value = F_t(rho) when a numerically pure state lands a
# hair above 1.
_F_SLACK = 1e-10


@dataclass(frozen=True)
class FtPolynomial:
    """F_t as a sum over partitions: coefficient h_lambda/t! on prod_m mu_m^k_m."""

    t: int
    terms: tuple[tuple[Partition, Fraction], ...]

    def evaluate(self, moments: Sequence[float]) -> float:
        """Evaluate at the moment vector (mu_1, ..., mu_t)."""
        if len(moments) < self.t:
            raise ValueError(f"need moments up to order {self.t}")
        total = 0.0
        for part, coeff in self.terms:
            prod = 1.0
            for m, k in enumerate(part.multiplicities, start=1):
                if k and m > 1:
                    prod *= moments[m - 1] ** k
            total += float(coeff) * prod
        return total

    def coefficients(self) -> dict[tuple[tuple[int, int], ...], Fraction]:
        """Map each monomial {m: exponent, m >= 2} to its exact coefficient."""
        out = {}
        for part, coeff in self.terms:
            key = tuple(
                (m, k) for m, k in enumerate(part.multiplicities, start=1) if k and m > 1
            )
            out[key] = coeff
        return out


@dataclass(frozen=True)
class BoundReport:
    """One evaluated entropic uncertainty bound."""

    family: str
    order: float
    t_prime: int
    n_measurements: int
    outcomes: int
    dim: int
    f_t_value: float
    bound: float
    state_dependent: bool


@lru_cache(maxsize=None)
def f_t_polynomial(t: int) -> FtPolynomial:
    """The symbolic F_t, one exact rational term per partition of t."""
    terms = tuple(
        (part, Fraction(part.class_size, math.factorial(t))) for part in partitions(t)
    )
    return FtPolynomial(t, terms)


def f_t_rho(rho: DensityMatrix, t: int) -> float:
    """F_t(rho), evaluated from the moments tr[rho^m], m <= t."""
    if not 1 <= t <= MAX_T:
        raise ValueError(f"t={t} outside supported range 1..{MAX_T}")
    return f_t_polynomial(t).evaluate(moment_sequence(rho, t))


def f_t_lower_bound(t: int, d: int) -> Fraction:
    """Minimum of F_t over states of dimension d (attained at the maximally mixed one)."""
    num = 1
    for k in range(1, t):
        num *= k + d
    return Fraction(num, math.factorial(t) * d ** (t - 1))


def design_moment_sum(design: DesignSet, rho: DensityMatrix, t: int) -> float:
    """sum_k <psi_k|rho|psi_k>^t over the design states."""
    if design.dim != rho.dim:
        raise ValueError(f"design dim {design.dim} does not match state dim {rho.dim}")
    if not 1 <= t <= MAX_T:
        raise ValueError(f"t={t} outside supported range 1..{MAX_T}")
    values = np.einsum("kd,de,ke->k", design.vectors.conj(), rho.entries, design.vectors).real
    return float((values**t).sum())


def _validate_bound_args(d: int, n: int, M: int, t_prime: int, order: float, f_value: float) -> float:
    if d < 1 or n < 1 or M < 1:
        raise ValueError("d, n, M must be positive integers")
    if not 2 <= t_prime <= MAX_T:
        raise ValueError(f"t_prime={t_prime} outside supported range 2..{MAX_T}")
    if order < t_prime:
        raise ValueError(
            f"entropy order {order} violates the constraint order >= t_prime={t_prime}"
        )
    if not 0.0 < f_value <= 1.0 + _F_SLACK:
        raise ValueError(f"f_value={f_value} outside (0, 1]")
    return min(f_value, 1.0)


def _design_average(d: int, n: int, t_prime: int) -> Fraction:
    # (d^t'/n^(t'-1)) * D_t'^d: the exact design average of the summed
    # t'-th outcome-probability powers of one POVM.
    return Fraction(d**t_prime, n ** (t_prime - 1)) * sym_dim_inverse(t_prime, d)


def renyi_bound(
    d: int, n: int, M: int, t_prime: int, alpha: float, f_value: float = 1.0
) -> float:
    """Lower bound on sum_m H_alpha(B_m) for M rank-1 n-outcome POVMs from a design.

    Valid for alpha >= t_prime with t_prime an integer in [2, t]. ``f_value``
    is F_{t'}(rho) for the state-dependent version; 1 gives the
    state-independent bound.
    """
    f_value = _validate_bound_args(d, n, M, t_prime, alpha, f_value)
    arg = float(_design_average(d, n, t_prime)) * f_value
    return M * alpha / (t_prime * (1.0 - alpha)) * math.log(arg)


def tsallis_bound(
    d: int, n: int, M: int, t_prime: int, q: float, f_value: float = 1.0
) -> float:
    """Lower bound on sum_m T_q(B_m), the Tsallis counterpart of renyi_bound."""
    f_value = _validate_bound_args(d, n, M, t_prime, q, f_value)
    arg = float(_design_average(d, n, t_prime) * M) * f_value
    return (arg ** (q / t_prime) - M) / (1.0 - q)


def optimal_tprime(d: int, n: int, M: int, alpha: float, t_max: int) -> int:
    """argmax over integer t' in [2, min(floor(alpha), t_max)] of the state-independent
    Renyi bound; ties break toward smaller t'.

    For alpha > 1 the order enters the bound only as a common negative factor,
    so the argmax is alpha-free apart from the feasibility cap; alpha may be
    math.inf.
    """
    if t_max < 2:
        raise ValueError("t_max must be at least 2")
    cap = t_max if math.isinf(alpha) else min(int(math.floor(alpha)), t_max)
    if cap < 2:
        raise ValueError(f"no bound available: alpha={alpha} leaves no feasible t' >= 2")
    best_t, best_key = 2, None
    for t_prime in range(2, cap + 1):
        key = -math.log(float(_design_average(d, n, t_prime))) / t_prime
        if best_key is None or key > best_key:
            best_t, best_key = t_prime, key
    return best_t


def lhs_entropy_sum(
    assembly: MeasurementAssembly, rho: DensityMatrix, order: EntropyOrder
) -> float:
    """sum_m of the chosen entropy of each POVM's outcome distribution on rho."""
    return sum(
        entropy_value(outcome_distribution(povm, rho), order) for povm in assembly.povms
    )
