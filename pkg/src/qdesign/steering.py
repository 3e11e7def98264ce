"""Entropic steering tests for measurement incompatibility.

Alice holds noisy measurements, Bob their computational-basis transposes, and
both act on a maximally entangled state; transposition makes the eta = 1
correlations exact in every basis. Violation of the conditional-entropy
inequality certifies that Alice's noisy set is not jointly measurable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .designs import DesignSet, basis_grouping, catalog, partition_into_povms
from .entropy import JointDistribution, conditional_renyi
from .eur import optimal_tprime, renyi_bound
from .linalg import DensityMatrix
from .measurements import MeasurementAssembly, Povm, depolarize

GRID_POINTS = 21
DEFAULT_RESOLUTION = 1e-4

ASSEMBLY_ALIASES = {"pauli": "octahedron"}


class NoViolation(ValueError):
    """The inequality is satisfied on the whole noise range."""


@dataclass(frozen=True)
class ThresholdResult:
    eta_star: float
    alpha: float
    bound_used: float
    resolution: float


class SteeringScenario:
    """Alice's ideal assembly, Bob's assembly, the shared state, and the order."""

    __slots__ = ("alice", "bob", "shared_state", "alpha", "design_strength")

    def __init__(
        self,
        alice: MeasurementAssembly,
        alpha: float,
        bob: MeasurementAssembly | None = None,
        shared_state: DensityMatrix | None = None,
        design_strength: int | None = None,
    ) -> None:
        if alpha < 2:
            raise ValueError(f"no bound available for alpha={alpha} < 2")
        bob = alice.transpose() if bob is None else bob
        if (
            alice.n_measurements != bob.n_measurements
            or alice.outcomes != bob.outcomes
            or alice.dim != bob.dim
        ):
            raise ValueError("Alice and Bob assemblies must share M, n, d")
        if shared_state is None:
            shared_state = maximally_entangled(alice.dim)
        if shared_state.dim != alice.dim**2:
            raise ValueError("shared state must live on C^d x C^d")
        self.alice = alice
        self.bob = bob
        self.shared_state = shared_state
        self.alpha = float(alpha)
        self.design_strength = design_strength


def maximally_entangled(d: int) -> DensityMatrix:
    """|Phi+><Phi+| with |Phi+> = (1/sqrt(d)) sum_i |ii>."""
    vec = np.zeros(d * d, dtype=complex)
    vec[:: d + 1] = 1.0 / math.sqrt(d)
    return DensityMatrix(np.outer(vec, vec.conj()))


def scenario_from_design(design: DesignSet, alpha: float) -> SteeringScenario:
    """Steering scenario whose measurements partition the given design."""
    groups = basis_grouping(design) if design.name.startswith("mub-d") else None
    assembly = partition_into_povms(design, groups)
    return SteeringScenario(assembly, alpha, design_strength=design.declared_t)


def standard_scenario(name: str, alpha: float) -> SteeringScenario:
    """Named scenario: 'pauli' or any pairable catalog design name."""
    return scenario_from_design(catalog(ASSEMBLY_ALIASES.get(name, name)), alpha)


def joint_distribution(
    alice_povm: Povm, bob_povm: Povm, shared: DensityMatrix
) -> JointDistribution:
    """p(a, b) = tr[(A_a (x) B_b) rho_AB]; rows index Alice, columns Bob."""
    d = alice_povm.dim
    if bob_povm.dim != d:
        raise ValueError("Alice and Bob POVMs must share the local dimension")
    if shared.dim != d * d:
        raise ValueError("shared state dimension must be d^2")
    table = np.empty((alice_povm.outcomes, bob_povm.outcomes))
    for a, eff_a in enumerate(alice_povm.effects):
        for b, eff_b in enumerate(bob_povm.effects):
            op = np.kron(eff_a, eff_b)
            table[a, b] = np.einsum("ij,ji->", op, shared.entries).real
    return JointDistribution(table)


def esi_lhs(scenario: SteeringScenario, eta: float) -> float:
    """sum_m H_alpha(B_m | A_m^eta) on the shared state, conditioning on Alice."""
    total = 0.0
    for alice_povm, bob_povm in zip(scenario.alice.povms, scenario.bob.povms):
        noisy = depolarize(alice_povm, eta)
        joint = joint_distribution(noisy, bob_povm, scenario.shared_state)
        total += conditional_renyi(joint.transposed(), scenario.alpha)
    return total


def steering_bound(scenario: SteeringScenario) -> float:
    """The state-independent Renyi bound for Bob's measurements at the best feasible t'."""
    if scenario.design_strength is None:
        raise ValueError("scenario needs a design strength to cap t'")
    d = scenario.bob.dim
    n = scenario.bob.outcomes
    m = scenario.bob.n_measurements
    t_opt = optimal_tprime(d, n, m, scenario.alpha, t_max=scenario.design_strength)
    return renyi_bound(d, n, m, t_opt, scenario.alpha)


def scan_threshold(
    scenario: SteeringScenario, resolution: float = DEFAULT_RESOLUTION
) -> ThresholdResult:
    """Locate the noise level where the conditional-entropy sum crosses the bound.

    A 21-point grid first checks that the gap decreases with eta; if so the
    crossing is bisected, otherwise the full grid at ``resolution`` spacing is
    scanned directly.
    """
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    bound = steering_bound(scenario)

    def gap(eta: float) -> float:
        return esi_lhs(scenario, eta) - bound

    etas = np.linspace(0.0, 1.0, GRID_POINTS)
    gaps = [gap(e) for e in etas]
    if gaps[-1] >= 0.0:
        raise NoViolation(
            f"no violation detectable at this alpha={scenario.alpha}: the "
            "inequality holds on the whole noise range"
        )
    monotone = all(b <= a + 1e-9 for a, b in zip(gaps, gaps[1:]))
    if monotone:
        hi_idx = next(i for i, g in enumerate(gaps) if g < 0.0)
        if hi_idx == 0:
            return ThresholdResult(0.0, scenario.alpha, bound, resolution)
        lo, hi = float(etas[hi_idx - 1]), float(etas[hi_idx])
        while hi - lo > resolution:
            mid = (lo + hi) / 2.0
            if gap(mid) < 0.0:
                hi = mid
            else:
                lo = mid
        eta_star = (lo + hi) / 2.0
    else:
        grid = np.arange(0.0, 1.0 + resolution, resolution)
        violated = next((e for e in grid if gap(float(e)) < 0.0), None)
        if violated is None:
            raise NoViolation(
                f"no violation detectable at this alpha={scenario.alpha}"
            )
        eta_star = float(violated) - resolution / 2.0
    return ThresholdResult(float(eta_star), scenario.alpha, bound, resolution)
