from __future__ import annotations

import json
import math

import numpy as np
import pytest

from qdesign.combinatorics import sym_dim_inverse
from qdesign.designs import (
    DesignSet,
    DesignVerificationError,
    NoOrthogonalPairs,
    as_single_povm,
    basis_grouping,
    catalog,
    frame_potential,
    frame_potential_of_vectors,
    load_design,
    partition_into_povms,
    save_design,
    verify_design,
)

EXPECTED_SIZES = {
    "octahedron": 6,
    "icosahedron": 12,
    "icosidodecahedron": 30,
    "snub-cube-regular": 24,
    "snub-cube-7design": 24,
    "mub-d2": 6,
    "mub-d3": 12,
    "mub-d5": 30,
}


def test_catalog_sizes(designs):
    for name, size in EXPECTED_SIZES.items():
        assert designs[name].size == size


def test_octahedron_frame_potential_by_pair_count(designs):
    # 6 self-overlaps of 1 and 24 cross pairs of 1/2: (6 + 24/8)/36
    assert frame_potential(designs["octahedron"], 3) == pytest.approx(0.25, abs=1e-14)
    assert frame_potential(designs["octahedron"], 4) == pytest.approx(7.5 / 36, abs=1e-14)


def test_single_state_frame_potential():
    lone = DesignSet("point", 2, [[1.0, 0.0]], 1)
    for t in (1, 3, 7):
        assert frame_potential(lone, t) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize(
    "name,passing_t,failing_t",
    [
        ("octahedron", 3, 4),
        ("icosahedron", 5, 6),
        ("icosidodecahedron", 5, 6),
        ("snub-cube-regular", 3, 4),
        ("snub-cube-7design", 7, 8),
    ],
)
def test_design_strengths(designs, name, passing_t, failing_t):
    design = designs[name]
    assert verify_design(design, passing_t).passed
    assert not verify_design(design, failing_t).passed


def test_monotone_strength(designs):
    """Every design passing at t also passes at every lower strength."""
    for design in designs.values():
        for s in range(1, design.declared_t + 1):
            assert verify_design(design, s).passed, (design.name, s)


def test_mub_unbiasedness(designs):
    for name in ("mub-d2", "mub-d3", "mub-d5"):
        design = designs[name]
        d = design.dim
        gram = np.abs(design.vectors @ design.vectors.conj().T) ** 2
        for i in range(design.size):
            for j in range(design.size):
                if i // d == j // d:
                    expected = 1.0 if i == j else 0.0
                else:
                    expected = 1.0 / d
                assert gram[i, j] == pytest.approx(expected, abs=1e-12)


def test_mub_requires_prime_dimension():
    with pytest.raises(ValueError, match="prime"):
        catalog("mub-d4")
    with pytest.raises(ValueError):
        catalog("mub-d97")


def test_unknown_catalog_name():
    with pytest.raises(ValueError, match="unknown design"):
        catalog("dodecahedron")


def test_welch_bound_on_random_sets(rng):
    """The frame potential of any unit-vector set sits above the design target."""
    for _ in range(1000):
        k, d, t = int(rng.integers(2, 7)), 2, int(rng.integers(1, 5))
        vecs = rng.standard_normal((k, d)) + 1j * rng.standard_normal((k, d))
        vecs /= np.linalg.norm(vecs, axis=1)[:, None]
        assert frame_potential_of_vectors(vecs, t) >= float(sym_dim_inverse(t, d)) - 1e-9


def test_verification_report_fields(designs):
    report = verify_design(designs["icosahedron"], 6)
    assert report.t_tested == 6
    assert report.target == pytest.approx(1.0 / 7.0)
    assert report.deviation == pytest.approx(report.frame_potential - report.target)
    assert report.frame_potential >= report.target - 1e-9


def test_save_load_round_trip(designs, tmp_path):
    path = tmp_path / "octa.json"
    save_design(designs["octahedron"], path)
    loaded = load_design(path)
    assert loaded.name == "octahedron"
    assert loaded.declared_t == 3
    assert np.abs(loaded.vectors - designs["octahedron"].vectors).max() <= 1e-15
    # canonical files are a serialization fixed point
    again = tmp_path / "octa2.json"
    save_design(loaded, again)
    assert again.read_bytes() == path.read_bytes()


def test_load_rejects_non_unit_vector(tmp_path):
    path = tmp_path / "bad.json"
    doc = {
        "name": "bad",
        "dim": 2,
        "declared_t": 1,
        "vectors": [[[1.0, 0.0], [0.5, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
    }
    path.write_text(json.dumps(doc))
    with pytest.raises(ValueError, match="norm violation"):
        load_design(path)


def test_load_reports_first_failing_strength(designs, tmp_path):
    path = tmp_path / "octa.json"
    save_design(designs["octahedron"], path)
    doc = json.loads(path.read_text())
    doc["declared_t"] = 5
    path.write_text(json.dumps(doc))
    with pytest.raises(DesignVerificationError, match=r"0.0083.*t=4"):
        load_design(path)


def test_load_parse_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ValueError, match="parse error"):
        load_design(path)


def test_octahedron_partitions_into_three_mubs(designs):
    assembly = partition_into_povms(designs["octahedron"])
    assert assembly.n_measurements == 3
    assert assembly.outcomes == 2
    assert assembly.source_design == "octahedron"


@pytest.mark.parametrize(
    "name,m_count", [("icosahedron", 6), ("icosidodecahedron", 15)]
)
def test_polyhedron_pairings(designs, name, m_count):
    assembly = partition_into_povms(designs[name])
    assert assembly.n_measurements == m_count
    assert assembly.outcomes == 2


def test_povm_effects_are_rescaled_design_states(designs):
    design = designs["icosahedron"]
    assembly = partition_into_povms(design)
    pooled = sum(eff for povm in assembly.povms for eff in povm.effects)
    assert np.allclose(pooled, assembly.n_measurements * np.eye(2), atol=1e-10)
    # every effect is (d/n) |psi><psi| for one of the design states
    for povm in assembly.povms:
        for eff in povm.effects:
            matches = [
                np.allclose(eff, np.outer(v, v.conj()), atol=1e-12)
                for v in design.vectors
            ]
            assert sum(matches) == 1


def test_snub_cubes_have_no_orthogonal_pairs(designs):
    for name in ("snub-cube-regular", "snub-cube-7design"):
        with pytest.raises(NoOrthogonalPairs):
            partition_into_povms(designs[name])


def test_single_povm_treatment(designs):
    assembly = as_single_povm(designs["snub-cube-7design"])
    assert assembly.n_measurements == 1
    assert assembly.outcomes == 24
    total = assembly.povms[0].effects.sum(axis=0)
    assert np.allclose(total, np.eye(2), atol=1e-10)


def test_mub_basis_grouping(designs):
    design = designs["mub-d3"]
    assembly = partition_into_povms(design, basis_grouping(design))
    assert assembly.n_measurements == 4
    assert assembly.outcomes == 3


def test_partition_rejects_bad_groups(designs):
    design = designs["octahedron"]
    with pytest.raises(ValueError, match="partition"):
        partition_into_povms(design, [[0, 1], [2, 3]])
    with pytest.raises(ValueError, match="cover"):
        partition_into_povms(design, [[0, 1], [2, 3], [4, 4]])
    with pytest.raises(ValueError, match="same size"):
        partition_into_povms(design, [[0, 1, 2], [3, 4], [5]])


def test_design_set_rejects_wrong_declaration():
    eigh = np.eye(2, dtype=complex)
    with pytest.raises(DesignVerificationError):
        DesignSet("z-only", 2, eigh, 2)  # a single basis is not a 2-design
