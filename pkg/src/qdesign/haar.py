"""Seeded Monte Carlo sampling of Haar-random pure states.

Serves as the independent oracle for design averages: states are normalized
vectors of i.i.d. standard complex Gaussians, which makes the distribution
unitarily invariant by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, PureState

DEFAULT_SAMPLES = 100_000
_BLOCK = 20_000


@dataclass(frozen=True)
class SampleEstimate:
    """Monte Carlo mean with its standard error; bit-reproducible for a fixed seed."""

    mean: float
    stderr: float
    samples: int
    seed: int


def _sample_block(d: int, count: int, rng: np.random.Generator) -> np.ndarray:
    block = rng.standard_normal((count, d)) + 1j * rng.standard_normal((count, d))
    return block / np.linalg.norm(block, axis=1)[:, None]


def sample_pure(d: int, rng: np.random.Generator) -> PureState:
    """One Haar-random pure state in C^d."""
    if d < 1:
        raise ValueError("dimension must be positive")
    if d == 1:
        return PureState([1.0])
    return PureState(_sample_block(d, 1, rng)[0])


def random_density(d: int, rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    """A random mixed state: normalized G G^dagger with Gaussian G of the given rank."""
    rank = d if rank is None else rank
    if not 1 <= rank <= d:
        raise ValueError(f"rank must lie in 1..{d}")
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    mat = g @ g.conj().T
    return DensityMatrix(mat / np.trace(mat).real)


def haar_moment_estimate(
    rho: DensityMatrix, t: int, samples: int = DEFAULT_SAMPLES, seed: int = 0
) -> SampleEstimate:
    """Monte Carlo estimate of the Haar average of <psi|rho|psi>^t."""
    if samples < 1000:
        raise ValueError("use at least 1000 samples")
    if t < 1:
        raise ValueError("t must be >= 1")
    rng = np.random.default_rng(seed)
    values = np.empty(samples)
    done = 0
    while done < samples:
        count = min(_BLOCK, samples - done)
        block = _sample_block(rho.dim, count, rng)
        quad = np.einsum("kd,de,ke->k", block.conj(), rho.entries, block).real
        values[done : done + count] = quad**t
        done += count
    mean = float(values.mean())
    stderr = float(values.std(ddof=1) / math.sqrt(samples))
    return SampleEstimate(mean, stderr, samples, seed)
