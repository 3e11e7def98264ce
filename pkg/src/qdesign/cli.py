"""Command-line surface: verification, bounds, figure data, steering scans.

Exit codes: 0 success/pass, 2 verification or inequality failure, 1 usage or
input error. All CSV output is deterministic: 12 significant digits,
locale-independent, stable row order.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .designs import (
    DesignSet,
    DesignVerificationError,
    NoOrthogonalPairs,
    as_single_povm,
    basis_grouping,
    catalog,
    catalog_names,
    load_design,
    partition_into_povms,
    verify_design,
)
from .eur import design_moment_sum, f_t_rho, optimal_tprime, renyi_bound, tsallis_bound
from .haar import haar_moment_estimate, random_density
from .combinatorics import sym_dim_inverse
from .linalg import DensityMatrix
from .steering import NoViolation, standard_scenario, scan_threshold

SEED_ENV_VAR = "QDESIGN_SEED"
FIGURE_IDS = ("fig2a", "fig2b", "fig2c", "fig3a", "fig3b")

# t' grid cap for figure scans: for n >> d the state-independent bound keeps
# creeping up with t', so an optimal-t' grid needs a finite ceiling.
T_SCAN_MAX = 10


@dataclass(frozen=True)
class RunManifest:
    """Provenance record written next to every emitted data file."""

    command: str
    parameters: dict
    toolkit_version: str
    outputs: list[str]
    seed: int | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; usage errors are 1
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _resolve_design(spec: str) -> DesignSet:
    if os.path.sep in spec or spec.endswith(".json") or Path(spec).exists():
        return load_design(spec)
    return catalog(spec)


def _load_state(path: str) -> DensityMatrix:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"state file parse error: {exc}") from exc
    entries = [[complex(re, im) for re, im in row] for row in doc["entries"]]
    return DensityMatrix(entries)


def _assembly_shape(design: DesignSet, single_povm: bool) -> tuple[int, int]:
    """(M, n) for the measurement split of a design."""
    if single_povm:
        assembly = as_single_povm(design)
    else:
        groups = basis_grouping(design) if design.name.startswith("mub-d") else None
        assembly = partition_into_povms(design, groups)
    return assembly.n_measurements, assembly.outcomes


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV_VAR)
    return int(env) if env else 0


# --- subcommands ------------------------------------------------------------


def _cmd_verify(args) -> int:
    try:
        design = _resolve_design(args.design)
    except DesignVerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = verify_design(design, args.t, args.tol)
    verdict = "PASS" if report.passed else "FAIL"
    print(f"design={design.name} dim={design.dim} K={design.size} declared_t={design.declared_t}")
    print(
        f"t={report.t_tested} frame_potential={_fmt(report.frame_potential)} "
        f"target={_fmt(report.target)} deviation={_fmt(report.deviation)} -> {verdict}"
    )
    return 0 if report.passed else 2


def _cmd_bound(args) -> int:
    try:
        design = _resolve_design(args.design)
        m_count, n_outcomes = _assembly_shape(design, args.single_povm)
    except NoOrthogonalPairs as exc:
        print(f"error: {exc} (rerun with --single-povm)", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    family = "renyi" if args.renyi is not None else "tsallis"
    order = args.renyi if args.renyi is not None else args.tsallis
    d = design.dim
    try:
        t_prime = (
            args.tprime
            if args.tprime is not None
            else optimal_tprime(d, n_outcomes, m_count, order, t_max=design.declared_t)
        )
        evaluate = renyi_bound if family == "renyi" else tsallis_bound
        independent = evaluate(d, n_outcomes, m_count, t_prime, order)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(
        f"design={design.name} M={m_count} n={n_outcomes} d={d} "
        f"family={family} order={_fmt(order)} tprime={t_prime}"
    )
    print(f"state-independent bound = {_fmt(independent)}")
    if args.state:
        try:
            rho = _load_state(args.state)
            f_value = f_t_rho(rho, t_prime)
            dependent = evaluate(d, n_outcomes, m_count, t_prime, order, f_value)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        print(f"F_t'(rho) = {_fmt(f_value)}")
        print(f"state-dependent bound = {_fmt(dependent)}")
    return 0


def _cmd_steering(args) -> int:
    try:
        scenario = standard_scenario(args.set, args.alpha)
    except NoOrthogonalPairs as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        result = scan_threshold(scenario, args.resolution)
    except NoViolation as exc:
        print(f"no violation: {exc}")
        return 2
    print(f"set={args.set} alpha={_fmt(result.alpha)} bound={_fmt(result.bound_used)}")
    print(f"eta_star={_fmt(result.eta_star)} resolution={_fmt(result.resolution)}")
    return 0


def _cmd_haar_check(args) -> int:
    seed = _resolve_seed(args)
    try:
        design = _resolve_design(args.design)
        if args.t > design.declared_t:
            raise ValueError(
                f"t={args.t} exceeds declared strength {design.declared_t} of {design.name}"
            )
        rho = random_density(design.dim, np.random.default_rng(seed))
        closed = float(sym_dim_inverse(args.t, design.dim)) * f_t_rho(rho, args.t)
        design_avg = design_moment_sum(design, rho, args.t) / design.size
        estimate = haar_moment_estimate(rho, args.t, samples=args.samples, seed=seed)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    mc_dev = abs(estimate.mean - closed)
    design_dev = abs(design_avg - closed)
    print(f"design={design.name} t={args.t} d={design.dim} seed={seed} samples={estimate.samples}")
    print(f"design average   = {_fmt(design_avg)}")
    print(f"moment identity  = {_fmt(closed)}")
    print(f"haar mc estimate = {_fmt(estimate.mean)} +/- {_fmt(estimate.stderr)}")
    ok = design_dev <= 1e-9 and mc_dev <= 4.0 * estimate.stderr
    print("agreement -> " + ("PASS" if ok else "FAIL"))
    return 0 if ok else 2


# --- figure data ------------------------------------------------------------


def _mixed_zero_state(p: float) -> DensityMatrix:
    return DensityMatrix((1.0 - p) * np.diag([1.0, 0.0]) + p * np.eye(2) / 2.0)


def _fig2a() -> tuple[list[str], list[list[str]]]:
    header = ["p"] + [f"F{t}" for t in range(1, 8)]
    rows = []
    for i in range(101):
        p = i / 100.0
        rho = _mixed_zero_state(p)
        rows.append([_fmt(p)] + [_fmt(f_t_rho(rho, t)) for t in range(1, 8)])
    return header, rows


def _fig2b() -> tuple[list[str], list[list[str]]]:
    header = ["d", "optimal_tprime"]
    rows = []
    for d in range(2, 51):
        t_opt = optimal_tprime(d, d, 1, math.inf, t_max=T_SCAN_MAX)
        rows.append([str(d), str(t_opt)])
    return header, rows


def _fig2c() -> tuple[list[str], list[list[str]]]:
    header = ["n", "d", "excluded", "optimal_tprime"]
    rows = []
    for n in [2] + list(range(5, 101, 5)):
        for d in range(1, 51):
            if n < d:
                rows.append([str(n), str(d), "1", ""])
            else:
                t_opt = optimal_tprime(d, n, 1, math.inf, t_max=T_SCAN_MAX)
                rows.append([str(n), str(d), "0", str(t_opt)])
    return header, rows


def _bound_grid(
    orders: list[float], tprimes: range, d: int, n: int, m_count: int
) -> tuple[list[str], list[list[str]]]:
    header = ["alpha"] + [f"bound_tprime{t}" for t in tprimes]
    rows = []
    for order in orders:
        cells = [_fmt(order)]
        for t_prime in tprimes:
            if order + 1e-12 < t_prime:
                cells.append("")
            else:
                cells.append(_fmt(renyi_bound(d, n, m_count, t_prime, order)))
        rows.append(cells)
    return header, rows


def _fig3a() -> tuple[list[str], list[list[str]]]:
    orders = [i / 20.0 for i in range(40, 201)]
    return _bound_grid(orders, range(2, 6), d=2, n=2, m_count=6)


def _fig3b() -> tuple[list[str], list[list[str]]]:
    orders = [i / 20.0 for i in range(40, 241)]
    return _bound_grid(orders, range(2, 8), d=2, n=24, m_count=1)


_FIGURES = {
    "fig2a": _fig2a,
    "fig2b": _fig2b,
    "fig2c": _fig2c,
    "fig3a": _fig3a,
    "fig3b": _fig3b,
}


def _cmd_figure(args) -> int:
    if args.id not in _FIGURES:
        print(f"error: unknown figure id {args.id!r}", file=sys.stderr)
        return 1
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    header, rows = _FIGURES[args.id]()
    csv_path = outdir / f"{args.id}.csv"
    lines = [",".join(header)] + [",".join(row) for row in rows]
    csv_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    manifest = RunManifest(
        command="figure",
        parameters={"id": args.id},
        toolkit_version=__version__,
        outputs=[csv_path.name],
    )
    manifest_path = outdir / f"{args.id}.manifest.json"
    manifest_path.write_text(manifest.to_json(), encoding="utf-8")
    print(str(csv_path))
    print(str(manifest_path))
    return 0


# --- entry point ------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="qdesign", description=__doc__)
    parser.add_argument("--version", action="version", version=f"qdesign {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="verify a design at strength t")
    p_verify.add_argument("--design", required=True, help="catalog name or design file path")
    p_verify.add_argument("--t", type=int, required=True)
    p_verify.add_argument("--tol", type=float, default=1e-9)
    p_verify.set_defaults(func=_cmd_verify)

    p_bound = sub.add_parser("bound", help="evaluate an uncertainty bound")
    p_bound.add_argument("--design", required=True)
    group = p_bound.add_mutually_exclusive_group(required=True)
    group.add_argument("--renyi", type=float, metavar="ALPHA")
    group.add_argument("--tsallis", type=float, metavar="Q")
    p_bound.add_argument("--tprime", type=int, default=None)
    p_bound.add_argument("--state", default=None, help="density-matrix JSON file")
    p_bound.add_argument(
        "--single-povm", action="store_true", help="treat all K states as one POVM"
    )
    p_bound.set_defaults(func=_cmd_bound)

    p_fig = sub.add_parser("figure", help="emit figure grid data as CSV")
    p_fig.add_argument("--id", required=True, choices=FIGURE_IDS)
    p_fig.add_argument("--outdir", default=".")
    p_fig.set_defaults(func=_cmd_figure)

    p_steer = sub.add_parser("steering", help="scan the noise threshold of a steering test")
    p_steer.add_argument(
        "--set",
        required=True,
        help="pauli, icosahedron, icosidodecahedron, or another pairable design",
    )
    p_steer.add_argument("--alpha", type=float, required=True)
    p_steer.add_argument("--resolution", type=float, default=1e-4)
    p_steer.set_defaults(func=_cmd_steering)

    p_haar = sub.add_parser("haar-check", help="check a design average against the Haar oracle")
    p_haar.add_argument("--design", required=True)
    p_haar.add_argument("--t", type=int, required=True)
    p_haar.add_argument("--samples", type=int, default=100_000)
    p_haar.add_argument(
        "--seed", type=int, default=None, help=f"RNG seed (default: ${SEED_ENV_VAR} or 0)"
    )
    p_haar.set_defaults(func=_cmd_haar_check)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
