"""Dense complex linear algebra for small-dimension quantum states."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

ATOL_STRUCT = 1e-12
ATOL_SPECTRAL = 1e-10


class PureState:
    """Unit vector in C^d."""

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes) -> None:
        amp = np.array(amplitudes, dtype=complex).reshape(-1)
        if amp.size < 1:
            raise ValueError("a pure state needs at least one amplitude")
        norm = float(np.linalg.norm(amp))
        if abs(norm - 1.0) > ATOL_STRUCT:
            raise ValueError(f"state norm {norm!r} deviates from 1 beyond {ATOL_STRUCT}")
        amp.setflags(write=False)
        self.amplitudes = amp

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))

    def overlap_sq(self, other: "PureState") -> float:
        """|<self|other>|^2."""
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)

    def __repr__(self) -> str:
        return f"PureState(dim={self.dim})"


class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite d x d operator."""

    __slots__ = ("entries",)

    def __init__(self, entries) -> None:
        mat = np.array(entries, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {mat.shape}")
        if not np.allclose(mat, mat.conj().T, rtol=0.0, atol=ATOL_STRUCT):
            raise ValueError("density matrix is not Hermitian")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > ATOL_STRUCT:
            raise ValueError(f"density matrix trace {tr!r} deviates from 1")
        if float(np.linalg.eigvalsh(mat).min()) < -ATOL_SPECTRAL:
            raise ValueError("density matrix has a negative eigenvalue")
        mat.setflags(write=False)
        self.entries = mat

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def maximally_mixed(cls, d: int) -> "DensityMatrix":
        return cls(np.eye(d) / d)

    def expectation(self, psi: PureState) -> float:
        """<psi|rho|psi>."""
        if psi.dim != self.dim:
            raise ValueError("state and density matrix dimensions differ")
        return float(np.vdot(psi.amplitudes, self.entries @ psi.amplitudes).real)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


@dataclass(frozen=True)
class BlochVector:
    """Expectation values (<sigma_x>, <sigma_y>, <sigma_z>) of a qubit state."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        if self.norm > 1.0 + ATOL_STRUCT:
            raise ValueError(f"Bloch vector norm {self.norm} exceeds 1")

    @property
    def norm(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)

    def dot(self, other: "BlochVector") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z


def moment(rho: DensityMatrix, m: int) -> float:
    """tr[rho^m], by repeated multiplication."""
    return moment_sequence(rho, m)[-1]


def moment_sequence(rho: DensityMatrix, max_m: int) -> list[float]:
    """[tr[rho^1], ..., tr[rho^max_m]], sharing the intermediate products."""
    if max_m < 1:
        raise ValueError("moment order must be >= 1")
    out = []
    power = rho.entries
    for _ in range(max_m):
        out.append(float(np.trace(power).real))
        power = power @ rho.entries
    return out


def bloch_to_state(b: BlochVector) -> PureState:
    """Pure qubit state with the given unit Bloch vector.

    The global phase is fixed by making the |0> amplitude real non-negative,
    so catalogs and file output are reproducible.
    """
    if abs(b.norm - 1.0) > ATOL_STRUCT:
        raise ValueError(f"Bloch vector norm {b.norm} is not 1")
    a0 = math.sqrt(max((1.0 + b.z) / 2.0, 0.0))
    r = math.hypot(b.x, b.y)
    if r < ATOL_STRUCT:
        a1 = complex(math.sqrt(max((1.0 - b.z) / 2.0, 0.0)))
    else:
        a1 = (b.x + 1j * b.y) / r * math.sqrt(max((1.0 - b.z) / 2.0, 0.0))
    amp = np.array([a0, a1])
    return PureState(amp / np.linalg.norm(amp))


def state_to_bloch(psi: PureState) -> BlochVector:
    """Bloch vector of a qubit pure state."""
    if psi.dim != 2:
        raise ValueError("Bloch correspondence requires dim = 2")
    a0, a1 = psi.amplitudes
    cross = a0.conjugate() * a1
    return BlochVector(2.0 * cross.real, 2.0 * cross.imag, float(abs(a0) ** 2 - abs(a1) ** 2))
