from __future__ import annotations

import json
import math
from fractions import Fraction

import pytest

from qdesign.cli import main
from qdesign.designs import catalog, save_design


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_octahedron_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--design", "octahedron", "--t", "3")
    assert code == 0
    assert "PASS" in out


def test_verify_snub_regular_fails_t4(capsys):
    code, out, _ = run_cli(capsys, "verify", "--design", "snub-cube-regular", "--t", "4")
    assert code == 2
    assert "FAIL" in out
    deviation = float(out.split("deviation=")[1].split()[0])
    assert deviation == pytest.approx(3.9333e-05, rel=1e-3)


def test_verify_icosahedron_fails_t6(capsys):
    code, out, _ = run_cli(capsys, "verify", "--design", "icosahedron", "--t", "6")
    assert code == 2


def test_verify_design_file(capsys, tmp_path):
    path = tmp_path / "octa.json"
    save_design(catalog("octahedron"), path)
    code, out, _ = run_cli(capsys, "verify", "--design", str(path), "--t", "3")
    assert code == 0


def test_verify_unknown_design(capsys):
    code, _, err = run_cli(capsys, "verify", "--design", "nonagon", "--t", "2")
    assert code == 1
    assert "unknown design" in err


def test_bound_pauli_renyi(capsys):
    code, out, _ = run_cli(capsys, "bound", "--design", "octahedron", "--renyi", "2")
    assert code == 0
    assert "tprime=2" in out
    value = float(out.split("state-independent bound = ")[1].split()[0])
    assert value == pytest.approx(3 * math.log(1.5), abs=1e-9)


def test_bound_icosahedron_renyi(capsys):
    code, out, _ = run_cli(capsys, "bound", "--design", "icosahedron", "--renyi", "3")
    assert code == 0
    assert "tprime=3" in out
    value = float(out.split("state-independent bound = ")[1].split()[0])
    assert value == pytest.approx(3 * math.log(2), abs=1e-9)


def test_bound_single_povm_tsallis(capsys):
    code, out, _ = run_cli(
        capsys,
        "bound", "--design", "snub-cube-7design",
        "--single-povm", "--tsallis", "4", "--tprime", "4",
    )
    assert code == 0
    value = float(out.split("state-independent bound = ")[1].split()[0])
    arg = float(Fraction(2**4, 24**3) * Fraction(1, 5))
    assert value == pytest.approx((arg - 1) / (1 - 4), abs=1e-12)


def test_bound_snub_requires_single_povm_flag(capsys):
    code, _, err = run_cli(capsys, "bound", "--design", "snub-cube-7design", "--renyi", "3")
    assert code == 1
    assert "--single-povm" in err


def test_bound_with_state_file(capsys, tmp_path):
    path = tmp_path / "state.json"
    path.write_text(json.dumps({"dim": 2, "entries": [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]]}))
    code, out, _ = run_cli(
        capsys, "bound", "--design", "octahedron", "--renyi", "2", "--state", str(path)
    )
    assert code == 0
    assert "state-dependent bound" in out
    f_value = float(out.split("F_t'(rho) = ")[1].split()[0])
    assert f_value == pytest.approx(0.75, abs=1e-12)


def test_bound_infeasible_alpha(capsys):
    code, _, err = run_cli(capsys, "bound", "--design", "octahedron", "--renyi", "1.5")
    assert code == 1
    assert "no bound available" in err


def test_figure_fig2a(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "figure", "--id", "fig2a", "--outdir", str(tmp_path))
    assert code == 0
    lines = (tmp_path / "fig2a.csv").read_text().splitlines()
    assert lines[0] == "p,F1,F2,F3,F4,F5,F6,F7"
    assert len(lines) == 102
    first = lines[1].split(",")
    assert first[0] == "0"
    assert all(float(x) == pytest.approx(1.0, abs=1e-12) for x in first[1:])
    manifest = json.loads((tmp_path / "fig2a.manifest.json").read_text())
    assert manifest["outputs"] == ["fig2a.csv"]
    assert manifest["command"] == "figure"


def test_figure_fig2b_projective_optimum(capsys, tmp_path):
    run_cli(capsys, "figure", "--id", "fig2b", "--outdir", str(tmp_path))
    rows = (tmp_path / "fig2b.csv").read_text().splitlines()[1:]
    table = {int(r.split(",")[0]): int(r.split(",")[1]) for r in rows}
    assert table[2] == 3
    assert all(2 <= v <= 10 for v in table.values())


def test_figure_fig2c_exclusion_region(capsys, tmp_path):
    run_cli(capsys, "figure", "--id", "fig2c", "--outdir", str(tmp_path))
    rows = (tmp_path / "fig2c.csv").read_text().splitlines()[1:]
    for row in rows:
        n, d, excluded, tprime = row.split(",")
        if int(n) < int(d):
            assert excluded == "1" and tprime == ""
        else:
            assert excluded == "0" and tprime != ""


def test_figure_fig3a_crossover(capsys, tmp_path):
    run_cli(capsys, "figure", "--id", "fig3a", "--outdir", str(tmp_path))
    lines = (tmp_path / "fig3a.csv").read_text().splitlines()
    assert lines[0] == "alpha,bound_tprime2,bound_tprime3,bound_tprime4,bound_tprime5"
    for line in lines[1:]:
        alpha, *cells = line.split(",")
        alpha = float(alpha)
        if alpha < 3:
            assert cells[0] != "" and cells[1] == ""
        else:
            assert float(cells[1]) > float(cells[0])


def test_figure_output_is_deterministic(capsys, tmp_path):
    a_dir, b_dir = tmp_path / "a", tmp_path / "b"
    run_cli(capsys, "figure", "--id", "fig3b", "--outdir", str(a_dir))
    run_cli(capsys, "figure", "--id", "fig3b", "--outdir", str(b_dir))
    assert (a_dir / "fig3b.csv").read_bytes() == (b_dir / "fig3b.csv").read_bytes()
    assert (
        a_dir / "fig3b.manifest.json"
    ).read_bytes() == (b_dir / "fig3b.manifest.json").read_bytes()


def test_steering_pauli(capsys):
    code, out, _ = run_cli(capsys, "steering", "--set", "pauli", "--alpha", "2")
    assert code == 0
    eta = float(out.split("eta_star=")[1].split()[0])
    assert eta == pytest.approx(1 / math.sqrt(3), abs=1e-3)


def test_steering_rejects_low_alpha(capsys):
    code, _, err = run_cli(capsys, "steering", "--set", "pauli", "--alpha", "1.5")
    assert code == 1
    assert "no bound available" in err


def test_haar_check(capsys):
    code, out, _ = run_cli(
        capsys,
        "haar-check", "--design", "octahedron", "--t", "3",
        "--samples", "5000", "--seed", "11",
    )
    assert code == 0
    assert "PASS" in out


def test_haar_check_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("QDESIGN_SEED", "77")
    code, out, _ = run_cli(
        capsys, "haar-check", "--design", "octahedron", "--t", "2", "--samples", "2000"
    )
    assert code == 0
    assert "seed=77" in out


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as excinfo:
        main(["verify", "--design", "octahedron"])  # missing --t
    assert excinfo.value.code == 1


def test_haar_check_rejects_excess_strength(capsys):
    code, _, err = run_cli(capsys, "haar-check", "--design", "octahedron", "--t", "5")
    assert code == 1
    assert "exceeds declared strength" in err
