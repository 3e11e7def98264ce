"""POVMs, measurement assemblies, outcome statistics, and depolarizing noise."""

from __future__ import annotations

import numpy as np

from .linalg import ATOL_SPECTRAL, DensityMatrix

ATOL_POVM = 1e-10


class NotNormalizable(ValueError):
    """Depolarizing an n-outcome POVM with n != d would break normalization."""


class Povm:
    """A positive-operator-valued measure: PSD effects summing to the identity."""

    __slots__ = ("effects",)

    def __init__(self, effects) -> None:
        arr = np.array(effects, dtype=complex)
        if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
            raise ValueError(f"effects must have shape (n, d, d), got {arr.shape}")
        if arr.shape[0] < 1:
            raise ValueError("a POVM needs at least one effect")
        for k, eff in enumerate(arr):
            if not np.allclose(eff, eff.conj().T, rtol=0.0, atol=ATOL_POVM):
                raise ValueError(f"effect {k} is not Hermitian")
            if float(np.linalg.eigvalsh(eff).min()) < -ATOL_POVM:
                raise ValueError(f"effect {k} is not positive semidefinite")
        total = arr.sum(axis=0)
        if not np.allclose(total, np.eye(arr.shape[1]), rtol=0.0, atol=ATOL_POVM):
            raise ValueError("effects do not sum to the identity")
        arr.setflags(write=False)
        self.effects = arr

    @property
    def dim(self) -> int:
        return self.effects.shape[1]

    @property
    def outcomes(self) -> int:
        return self.effects.shape[0]

    def transpose(self) -> "Povm":
        """Effect-wise transpose in the computational basis."""
        return Povm(np.transpose(self.effects, (0, 2, 1)))

    def __repr__(self) -> str:
        return f"Povm(outcomes={self.outcomes}, dim={self.dim})"


class MeasurementAssembly:
    """M POVMs with a common dimension and outcome count."""

    __slots__ = ("povms", "source_design")

    def __init__(self, povms, source_design: str | None = None) -> None:
        povms = tuple(povms)
        if not povms:
            raise ValueError("an assembly needs at least one POVM")
        d, n = povms[0].dim, povms[0].outcomes
        for p in povms[1:]:
            if p.dim != d or p.outcomes != n:
                raise ValueError("all POVMs in an assembly must share d and n")
        self.povms = povms
        self.source_design = source_design

    @property
    def n_measurements(self) -> int:
        return len(self.povms)

    @property
    def dim(self) -> int:
        return self.povms[0].dim

    @property
    def outcomes(self) -> int:
        return self.povms[0].outcomes

    def transpose(self) -> "MeasurementAssembly":
        return MeasurementAssembly(
            [p.transpose() for p in self.povms], source_design=self.source_design
        )

    def __repr__(self) -> str:
        return (
            f"MeasurementAssembly(M={self.n_measurements}, n={self.outcomes}, "
            f"d={self.dim}, source={self.source_design!r})"
        )


def outcome_distribution(povm: Povm, rho: DensityMatrix) -> np.ndarray:
    """Born-rule outcome probabilities p_k = tr[E_k rho]."""
    if povm.dim != rho.dim:
        raise ValueError(f"POVM dim {povm.dim} does not match state dim {rho.dim}")
    probs = np.einsum("kij,ji->k", povm.effects, rho.entries).real
    if probs.min() < -ATOL_SPECTRAL:
        raise ValueError("negative outcome probability beyond numerical slack")
    probs = np.clip(probs, 0.0, None)
    total = probs.sum()
    if abs(total - 1.0) > ATOL_POVM:
        raise ValueError(f"outcome probabilities sum to {total}, not 1")
    return probs


def depolarize(povm: Povm, eta: float) -> Povm:
    """Effect-wise depolarizing noise A_k -> eta*A_k + (1-eta)*I/d.

    Only defined for n = d: otherwise the noisy effects no longer sum to the
    identity and the map is rejected rather than silently renormalized.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"noise parameter eta={eta} outside [0, 1]")
    d = povm.dim
    if povm.outcomes != d:
        raise NotNormalizable(
            f"depolarization needs n = d, got n={povm.outcomes}, d={d}"
        )
    background = (1.0 - eta) * np.eye(d) / d
    return Povm([eta * eff + background for eff in povm.effects])
