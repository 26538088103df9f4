#!/usr/bin/env python3
"""Convergence map for the regularized oscillatory-integral identity.

Sweeps the (x, eta) grid for both phase branches and writes one CSV per
branch.  Expected picture: the increasing branch settles onto 2*pi*i*f(E_c)
as x grows (as long as eta stays small against 1/x), the decreasing branch
empties out, and rows with eta >= sigma are flagged as regularization-
dominated.

Usage:
    python scripts/phase_identity_sweep.py --out-dir results
"""

from __future__ import annotations

import argparse
from pathlib import Path

from barrierscape.stationary_phase import PhaseIntegralCase, convergence_sweep


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--energy", type=float, default=10.0)
    ap.add_argument("--sigma", type=float, default=0.05)
    ap.add_argument("--x-list", default="50,100,200,400")
    ap.add_argument("--eta-list", default="1e-2,1e-3,1e-4")
    ap.add_argument("--out-dir", default="results")
    args = ap.parse_args()

    x_list = tuple(float(t) for t in args.x_list.split(","))
    eta_list = tuple(float(t) for t in args.eta_list.split(","))
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    for branch, tag in ((1, "plus"), (-1, "minus")):
        base = PhaseIntegralCase(
            energy=args.energy, sigma=args.sigma, eta=eta_list[0], x=x_list[0], branch=branch
        )
        rows = convergence_sweep(base, x_list, eta_list)
        lines = ["x,eta,re,im,rel_error,regularization_dominates"]
        for r in rows:
            lines.append(
                f"{r.x!r},{r.eta!r},{r.value.real!r},{r.value.imag!r},"
                f"{r.rel_error!r},{int(r.regularization_dominates)}"
            )
        path = out / f"phase_sweep_branch_{tag}.csv"
        path.write_text("\n".join(lines) + "\n")
        best = min(rows, key=lambda r: r.rel_error)
        print(
            f"branch {branch:+d}: best relative error {best.rel_error:.3e} "
            f"at x={best.x:g}, eta={best.eta:g}  -> {path}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
