"""Catalog, serialization, and verification of quantum designs.

A design is verified through the scalar frame-potential criterion: the set is
a t-design exactly when (1/K^2) sum_{j,k} |<psi_j|psi_k>|^(2t) equals the
inverse symmetric-subspace dimension D_t^d, and the frame potential can never
fall below that target.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .combinatorics import MAX_T, sym_dim_inverse
from .linalg import ATOL_STRUCT, BlochVector, PureState, bloch_to_state
from .measurements import MeasurementAssembly, Povm

VERIFY_TOL = 1e-9

POLYHEDRON_NAMES = (
    "octahedron",
    "icosahedron",
    "icosidodecahedron",
    "snub-cube-regular",
    "snub-cube-7design",
)

# Squared coordinates of the 7-design snub-cube seed: the three roots of
# 105 x^3 - 105 x^2 + 21 x - 1, which force the orbit-averaged 4th and 6th
# coordinate power sums to their sphere values 3/5 and 3/7.
_SNUB7_SEED_SQ = (0.0710944373419743, 0.178522012776102, 0.750383549881924)

# Real root of x^3 + x^2 + x = 1; the regular snub cube is the orbit of
# (1, xi, 1/xi) normalized.
_XI = 0.543689012692076


class DesignVerificationError(ValueError):
    """A vector set failed frame-potential verification at its declared strength."""


class NoOrthogonalPairs(ValueError):
    """The design has no antipodal pairing, so it only supports single-POVM use."""


@dataclass(frozen=True)
class VerificationReport:
    t_tested: int
    frame_potential: float
    target: float
    deviation: float
    passed: bool


class DesignSet:
    """A named set of unit vectors in C^d with a declared design strength."""

    __slots__ = ("name", "dim", "vectors", "declared_t")

    def __init__(self, name: str, dim: int, vectors, declared_t: int) -> None:
        arr = np.array(vectors, dtype=complex)
        if arr.ndim != 2 or arr.shape[1] != dim:
            raise ValueError(f"vectors must have shape (K, {dim}), got {arr.shape}")
        if arr.shape[0] < 1:
            raise ValueError("a design needs at least one vector")
        norms = np.linalg.norm(arr, axis=1)
        if np.abs(norms - 1.0).max() > ATOL_STRUCT:
            raise ValueError("norm violation: design vectors must be unit vectors")
        if not 1 <= declared_t <= MAX_T:
            raise ValueError(f"declared_t={declared_t} outside supported range 1..{MAX_T}")
        arr.setflags(write=False)
        self.name = name
        self.dim = dim
        self.vectors = arr
        self.declared_t = declared_t
        report = verify_design(self, declared_t)
        if not report.passed:
            raise DesignVerificationError(
                f"verification failed, deviation ≈ {report.deviation:.2g} "
                f"at t={declared_t}"
            )

    @property
    def size(self) -> int:
        return self.vectors.shape[0]

    def states(self) -> list[PureState]:
        return [PureState(v) for v in self.vectors]

    def __repr__(self) -> str:
        return f"DesignSet({self.name!r}, dim={self.dim}, K={self.size}, t={self.declared_t})"


def _overlap_grid(vectors: np.ndarray) -> np.ndarray:
    gram = vectors @ vectors.conj().T
    return np.abs(gram) ** 2


def frame_potential_of_vectors(vectors, t: int) -> float:
    """Order-t frame potential of an arbitrary (K, d) set of unit vectors."""
    if not 1 <= t <= MAX_T:
        raise ValueError(f"t={t} outside supported range 1..{MAX_T}")
    arr = np.asarray(vectors, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] < 1:
        raise ValueError("empty design")
    return float((_overlap_grid(arr) ** t).mean())


def frame_potential(design: DesignSet, t: int) -> float:
    """(1/K^2) sum_{j,k} |<psi_j|psi_k>|^(2t)."""
    return frame_potential_of_vectors(design.vectors, t)


def verify_design(design: DesignSet, t: int, tol: float = VERIFY_TOL) -> VerificationReport:
    """Compare the order-t frame potential against its design target D_t^d."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    fp = frame_potential(design, t)
    target = float(sym_dim_inverse(t, design.dim))
    deviation = abs(fp - target)
    return VerificationReport(t, fp, target, deviation, deviation <= tol)


def first_failing_t(design: DesignSet, up_to: int, tol: float = VERIFY_TOL) -> VerificationReport | None:
    """Verify at every strength 1..up_to; report the first failure, if any."""
    for s in range(1, up_to + 1):
        report = verify_design(design, s, tol)
        if not report.passed:
            return report
    return None


# --- catalog construction -------------------------------------------------


def _bloch_design(name: str, points: np.ndarray, declared_t: int) -> DesignSet:
    states = [bloch_to_state(BlochVector(*p)).amplitudes for p in points]
    return DesignSet(name, 2, states, declared_t)


def _chiral_octahedral_rotations() -> list[np.ndarray]:
    mats = []
    for perm in itertools.permutations(range(3)):
        base = np.zeros((3, 3))
        for row, col in enumerate(perm):
            base[row, col] = 1.0
        for signs in itertools.product((1.0, -1.0), repeat=3):
            mat = np.array(signs)[:, None] * base
            if round(np.linalg.det(mat)) == 1:
                mats.append(mat)
    return mats


def _snub_orbit(seed: np.ndarray) -> np.ndarray:
    seed = seed / np.linalg.norm(seed)
    return np.array([rot @ seed for rot in _chiral_octahedral_rotations()])


def _octahedron_points() -> np.ndarray:
    return np.array(
        [
            [1, 0, 0], [-1, 0, 0],
            [0, 1, 0], [0, -1, 0],
            [0, 0, 1], [0, 0, -1],
        ],
        dtype=float,
    )


def _icosahedron_points() -> np.ndarray:
    # North/south poles plus two pentagonal rings at z = +-1/sqrt(5).
    ring_r = 2.0 / math.sqrt(5.0)
    ring_z = 1.0 / math.sqrt(5.0)
    pts = [[0.0, 0.0, 1.0]]
    for k in range(5):
        phi = 2.0 * math.pi * k / 5.0
        pts.append([ring_r * math.cos(phi), ring_r * math.sin(phi), ring_z])
    for k in range(5):
        phi = 2.0 * math.pi * k / 5.0 + math.pi / 5.0
        pts.append([ring_r * math.cos(phi), ring_r * math.sin(phi), -ring_z])
    pts.append([0.0, 0.0, -1.0])
    return np.array(pts)


def _icosidodecahedron_points() -> np.ndarray:
    # Edge midpoints of the icosahedron, scaled back to the sphere.
    ico = _icosahedron_points()
    dots = ico @ ico.T
    edge_dot = 1.0 / math.sqrt(5.0)
    mids = []
    for i in range(len(ico)):
        for j in range(i + 1, len(ico)):
            if abs(dots[i, j] - edge_dot) < 1e-9:
                mid = (ico[i] + ico[j]) / 2.0
                mids.append(mid / np.linalg.norm(mid))
    if len(mids) != 30:
        raise RuntimeError(f"expected 30 icosahedron edges, found {len(mids)}")
    return np.array(mids)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(math.isqrt(p)) + 1))


def _mub_vectors(p: int) -> np.ndarray:
    """Full set of p+1 mutually unbiased bases in prime dimension p."""
    if p == 2:
        inv = 1.0 / math.sqrt(2.0)
        return np.array(
            [
                [1, 0], [0, 1],                      # Z
                [inv, inv], [inv, -inv],             # X
                [inv, 1j * inv], [inv, -1j * inv],   # Y
            ],
            dtype=complex,
        )
    omega = np.exp(2j * np.pi / p)
    rows = [np.eye(p, dtype=complex)[k] for k in range(p)]
    js = np.arange(p)
    for a in range(p):
        for k in range(p):
            rows.append(omega ** ((a * js * js + k * js) % p) / math.sqrt(p))
    return np.array(rows)


def catalog_names() -> list[str]:
    """Built-in design names (the mub-d{p} family extends to any prime p <= 47)."""
    return list(POLYHEDRON_NAMES) + ["mub-d2", "mub-d3", "mub-d5"]


def catalog(name: str) -> DesignSet:
    """Construct a named design from the built-in catalog."""
    if name == "octahedron":
        return _bloch_design(name, _octahedron_points(), 3)
    if name == "icosahedron":
        return _bloch_design(name, _icosahedron_points(), 5)
    if name == "icosidodecahedron":
        return _bloch_design(name, _icosidodecahedron_points(), 5)
    if name == "snub-cube-regular":
        seed = np.array([1.0, _XI, 1.0 / _XI])
        return _bloch_design(name, _snub_orbit(seed), 3)
    if name == "snub-cube-7design":
        seed = np.sqrt(np.array(_SNUB7_SEED_SQ))
        return _bloch_design(name, _snub_orbit(seed), 7)
    if name.startswith("mub-d"):
        try:
            p = int(name[len("mub-d"):])
        except ValueError:
            raise ValueError(f"unknown design name {name!r}") from None
        if not _is_prime(p):
            raise ValueError(f"MUB catalog requires a prime dimension, got {p}")
        if p > 47:
            raise ValueError(f"MUB dimension {p} beyond supported size (p <= 47)")
        return DesignSet(name, p, _mub_vectors(p), 2)
    raise ValueError(f"unknown design name {name!r}")


# --- serialization ---------------------------------------------------------


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def save_design(design: DesignSet, path) -> None:
    """Write the design file: canonical field order, 17 significant digits."""
    lines = ["{"]
    lines.append(f'  "name": {json.dumps(design.name)},')
    lines.append(f'  "dim": {design.dim},')
    lines.append(f'  "declared_t": {design.declared_t},')
    lines.append('  "vectors": [')
    for i, vec in enumerate(design.vectors):
        amps = ", ".join(f"[{_fmt(a.real)}, {_fmt(a.imag)}]" for a in vec)
        comma = "," if i < design.size - 1 else ""
        lines.append(f"    [{amps}]{comma}")
    lines.append("  ]")
    lines.append("}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_design(path) -> DesignSet:
    """Parse and re-verify a design file.

    Loaded designs are checked at every strength up to declared_t so that a
    failure is reported at the first strength where it occurs.
    """
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"design file parse error: {exc}") from exc
    for field in ("name", "dim", "declared_t", "vectors"):
        if field not in doc:
            raise ValueError(f"design file missing field {field!r}")
    dim = int(doc["dim"])
    vectors = np.array(
        [[complex(re, im) for re, im in vec] for vec in doc["vectors"]], dtype=complex
    )
    if vectors.ndim != 2 or vectors.shape[1] != dim:
        raise ValueError("design file vectors do not match the declared dimension")
    norms = np.linalg.norm(vectors, axis=1)
    if np.abs(norms - 1.0).max() > ATOL_STRUCT:
        raise ValueError("norm violation: design file contains a non-unit vector")
    declared_t = int(doc["declared_t"])
    probe = DesignSet(str(doc["name"]), dim, vectors, 1)
    failure = first_failing_t(probe, declared_t)
    if failure is not None:
        raise DesignVerificationError(
            f"verification failed, deviation ≈ {failure.deviation:.2g} at t={failure.t_tested}"
        )
    return DesignSet(str(doc["name"]), dim, vectors, declared_t)


# --- measurement extraction ------------------------------------------------


def basis_grouping(design: DesignSet) -> list[list[int]]:
    """Group consecutive blocks of d states (the natural grouping for MUB sets)."""
    d = design.dim
    if design.size % d:
        raise ValueError(f"design size {design.size} is not a multiple of d={d}")
    return [list(range(b * d, (b + 1) * d)) for b in range(design.size // d)]


def partition_into_povms(design: DesignSet, groups=None) -> MeasurementAssembly:
    """Split a design into M rank-1 POVMs with n outcomes each (K = n*M).

    Without an explicit grouping, qubit designs are paired into antipodal
    (orthogonal) couples, one projective measurement per pair. An explicit
    ``groups`` argument assigns the states to M equally-sized POVMs; each
    group must then satisfy the POVM normalization on its own.
    """
    vectors = design.vectors
    if groups is None:
        if design.dim != 2:
            raise ValueError("automatic pairing is only defined for d = 2; pass groups")
        overlaps = _overlap_grid(vectors)
        partner = [-1] * design.size
        for i in range(design.size):
            mates = [j for j in range(design.size) if j != i and overlaps[i, j] <= 1e-10]
            if len(mates) != 1:
                raise NoOrthogonalPairs(
                    f"design {design.name!r} has no antipodal pairing; "
                    "treat it as a single POVM"
                )
            partner[i] = mates[0]
        groups = []
        seen = set()
        for i in range(design.size):
            if i not in seen:
                groups.append([i, partner[i]])
                seen.update(groups[-1])
    sizes = {len(g) for g in groups}
    if len(sizes) != 1:
        raise ValueError("all POVM groups must have the same size")
    n = sizes.pop()
    if n * len(groups) != design.size:
        raise ValueError("groups must partition the design")
    if sorted(i for g in groups for i in g) != list(range(design.size)):
        raise ValueError("groups must cover every design state exactly once")
    weight = design.dim / n
    povms = []
    for group in groups:
        effects = [weight * np.outer(vectors[i], vectors[i].conj()) for i in group]
        povms.append(Povm(effects))
    return MeasurementAssembly(povms, source_design=design.name)


def as_single_povm(design: DesignSet) -> MeasurementAssembly:
    """Treat all K design states as one rank-1 POVM with K outcomes."""
    weight = design.dim / design.size
    effects = [weight * np.outer(v, v.conj()) for v in design.vectors]
    return MeasurementAssembly([Povm(effects)], source_design=design.name)
