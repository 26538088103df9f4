"""Command-line interface.

Subcommands: solve, sweep, grad, gradcheck, optimize, landscape, kinematic,
asymptotic.  Every artifact is plain JSON or CSV with full double precision,
and every seeded command is deterministic: identical invocations produce
byte-identical files.  When --out is given, stdout mirrors the file content.

Exit codes: 0 success; 1 usage error (bad arguments or unreadable input);
2 numerical failure (overflow, non-convergent quadrature, failed gradient
check); 3 a landscape battery found a refinement-surviving candidate trap.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .gradient import analytic_gradient, fd_gradient
from .kinematic import kinematic_scan
from .optimizer import AscentConfig, ascend, multi_start
from .potential import PotentialError, read_spec
from .scattering import EnergyError, EvanescentOverflowError, solve
from .stationary_phase import PhaseIntegralCase, QuadratureError, convergence_sweep

__all__ = ["main", "CommandResult"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_TRAP = 3

GRADCHECK_COSINE_MIN = 0.999


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    artifacts: tuple[str, ...] = ()


def _fmt(x: float) -> str:
    """Shortest representation that round-trips the double exactly."""
    return repr(float(x))


def _csv(header: list[str], rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _emit(text: str, out_path: str | None) -> tuple[str, ...]:
    if out_path is not None:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return (out_path,) if out_path is not None else ()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _positive_energy(value: float) -> float:
    if not value > 0.0:
        raise ValueError(f"energy must be > 0, got {value}")
    return value


def _cmd_solve(args) -> CommandResult:
    spec = read_spec(args.potential)
    _, amps = solve(spec, _positive_energy(args.energy))
    artifacts = _emit(_json_text(amps.to_dict()), args.out)
    return CommandResult(EXIT_OK, artifacts)


def _cmd_sweep(args) -> CommandResult:
    spec = read_spec(args.potential)
    if not 0.0 < args.emin < args.emax:
        raise ValueError(f"need 0 < emin < emax, got [{args.emin}, {args.emax}]")
    if args.n < 2:
        raise ValueError(f"need n >= 2 energies, got {args.n}")
    rows = []
    for energy in np.linspace(args.emin, args.emax, args.n):
        _, amps = solve(spec, float(energy))
        rows.append((amps.energy, amps.T, amps.R))
    artifacts = _emit(_csv(["E", "T", "R"], rows), args.out)
    return CommandResult(EXIT_OK, artifacts)


def _cmd_grad(args) -> CommandResult:
    spec = read_spec(args.potential)
    kernel = analytic_gradient(spec, _positive_energy(args.energy), args.samples_per_cell)
    artifacts = _emit(_csv(["x", "g"], kernel.csv_rows()), args.out)
    return CommandResult(EXIT_OK, artifacts)


def _cmd_gradcheck(args) -> CommandResult:
    spec = read_spec(args.potential)
    energy = _positive_energy(args.energy)
    if args.h <= 0.0:
        raise ValueError(f"h must be > 0, got {args.h}")
    analytic = analytic_gradient(spec, energy, args.samples_per_cell).cell_gradient
    oracle = fd_gradient(spec, energy, args.h)
    n_a, n_o = np.linalg.norm(analytic), np.linalg.norm(oracle)
    if n_a <= 1e-12 and n_o <= 1e-12:
        cosine, rel_l2 = 1.0, 0.0  # both vanish: a critical point, trivially aligned
    else:
        cosine = float(np.dot(analytic, oracle) / (n_a * n_o))
        rel_l2 = float(np.linalg.norm(analytic - oracle) / n_o)
    passed = cosine >= GRADCHECK_COSINE_MIN
    payload = {
        "cosine": cosine,
        "rel_l2": rel_l2,
        "norm_analytic": float(n_a),
        "norm_fd": float(n_o),
        "h": args.h,
        "pass": passed,
    }
    artifacts = _emit(_json_text(payload), args.out)
    return CommandResult(EXIT_OK if passed else EXIT_NUMERICAL, artifacts)


def _ascent_config(args) -> AscentConfig:
    box = tuple(args.box) if args.box is not None else None
    return AscentConfig(
        max_iters=args.max_iters,
        grad_tol=args.grad_tol,
        t_tol=args.t_tol,
        step0=args.step0,
        backtrack=args.backtrack,
        armijo=args.armijo,
        box=box,
        seed=args.seed,
    )


def _cmd_optimize(args) -> CommandResult:
    spec = read_spec(args.potential)
    report = ascend(spec, _positive_energy(args.energy), _ascent_config(args))
    artifacts = _emit(_json_text(report.to_dict()), args.out)
    if args.trajectory is not None:
        lines = ["iter,T"] + [f"{i},{_fmt(t)}" for i, t in report.trajectory]
        with open(args.trajectory, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
        artifacts = artifacts + (args.trajectory,)
    return CommandResult(EXIT_OK, artifacts)


def _cmd_landscape(args) -> CommandResult:
    summary = multi_start(
        n_starts=args.starts,
        n_cells=args.cells,
        amplitude=args.amplitude,
        energy=_positive_energy(args.energy),
        cfg=_ascent_config(args),
        half_width=args.half_width,
    )
    artifacts = _emit(_json_text(summary.to_dict()), args.out)
    code = EXIT_TRAP if summary.candidate_traps else EXIT_OK
    return CommandResult(code, artifacts)


def _cmd_kinematic(args) -> CommandResult:
    rows = kinematic_scan(args.n, args.radius, args.seed)
    artifacts = _emit(_csv(["abs_z", "T"], rows), args.out)
    return CommandResult(EXIT_OK, artifacts)


def _parse_float_list(text: str, name: str) -> tuple[float, ...]:
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError as exc:
        raise ValueError(f"{name}: expected comma-separated numbers, got {text!r}") from exc
    if not values:
        raise ValueError(f"{name}: empty list")
    return values


def _cmd_asymptotic(args) -> CommandResult:
    x_list = _parse_float_list(args.x_list, "--x-list")
    eta_list = _parse_float_list(args.eta_list, "--eta-list")
    base = PhaseIntegralCase(
        energy=args.energy, sigma=args.sigma, eta=eta_list[0], x=x_list[0], branch=args.branch
    )
    rows = convergence_sweep(base, x_list, eta_list)
    for row in rows:
        if row.regularization_dominates:
            print(
                f"warning: eta={row.eta:g} >= sigma={args.sigma:g}, "
                "regularization dominates",
                file=sys.stderr,
            )
    table = ((r.x, r.eta, r.value.real, r.value.imag, r.rel_error) for r in rows)
    artifacts = _emit(_csv(["x", "eta", "re", "im", "rel_error"], table), args.out)
    return CommandResult(EXIT_OK, artifacts)


def _add_ascent_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-iters", type=int, default=5000)
    p.add_argument("--grad-tol", type=float, default=1e-8)
    p.add_argument("--t-tol", type=float, default=1e-3)
    p.add_argument("--step0", type=float, default=0.5)
    p.add_argument("--backtrack", type=float, default=0.5)
    p.add_argument("--armijo", type=float, default=1e-4)
    p.add_argument("--box", type=float, nargs=2, metavar=("LO", "HI"), default=None)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="barrierscape",
        description="1D transmission through piecewise-constant barriers: "
        "solve, gradients, ascent experiments, asymptotic checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="T, R and amplitudes at one energy (JSON)")
    p.add_argument("--potential", required=True)
    p.add_argument("--energy", type=float, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("sweep", help="T(E), R(E) over an energy grid (CSV)")
    p.add_argument("--potential", required=True)
    p.add_argument("--emin", type=float, required=True)
    p.add_argument("--emax", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("grad", help="pointwise gradient kernel g(x) (CSV)")
    p.add_argument("--potential", required=True)
    p.add_argument("--energy", type=float, required=True)
    p.add_argument("--samples-per-cell", type=int, default=32)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_grad)

    p = sub.add_parser("gradcheck", help="analytic vs finite-difference gradient (JSON)")
    p.add_argument("--potential", required=True)
    p.add_argument("--energy", type=float, required=True)
    p.add_argument("--h", type=float, default=1e-5)
    p.add_argument("--samples-per-cell", type=int, default=64)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gradcheck)

    p = sub.add_parser("optimize", help="gradient ascent from one start (JSON + CSV)")
    p.add_argument("--potential", required=True)
    p.add_argument("--energy", type=float, required=True)
    _add_ascent_flags(p)
    p.add_argument("--out")
    p.add_argument("--trajectory")
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("landscape", help="seeded multi-start trap search (JSON)")
    p.add_argument("--starts", type=int, default=100)
    p.add_argument("--cells", type=int, default=8)
    p.add_argument("--amplitude", type=float, default=3.0)
    p.add_argument("--energy", type=float, required=True)
    p.add_argument("--half-width", type=float, default=1.0)
    _add_ascent_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_landscape)

    p = sub.add_parser("kinematic", help="T vs |z| over random transfer matrices (CSV)")
    p.add_argument("--n", type=int, default=10000)
    p.add_argument("--radius", type=float, default=10.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_kinematic)

    p = sub.add_parser("asymptotic", help="regularized oscillatory-integral sweep (CSV)")
    p.add_argument("--energy", type=float, default=10.0)
    p.add_argument("--sigma", type=float, default=0.05)
    p.add_argument("--x-list", default="50,100,200,400")
    p.add_argument("--eta-list", default="1e-3,1e-4")
    p.add_argument("--branch", type=int, choices=(1, -1), default=1)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_asymptotic)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage; fold every parser failure into 1
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        result = args.func(args)
    except (EvanescentOverflowError, QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (PotentialError, EnergyError, FileNotFoundError, IsADirectoryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
