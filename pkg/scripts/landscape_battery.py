#!/usr/bin/env python3
"""Multi-start gradient-ascent battery over random barriers.

Runs K seeded ascent runs at fixed energy, probes the curvature at every
endpoint, and writes a JSON summary plus a per-run CSV.  The question the
battery answers: does monotone gradient ascent on T ever hang up at a
critical point with T < 1 that survives cell refinement?

Usage:
    python scripts/landscape_battery.py --out-dir results [--starts 100]
"""

from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

from barrierscape.optimizer import AscentConfig, hessian_probe, multi_start


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--starts", type=int, default=100)
    ap.add_argument("--cells", type=int, default=8)
    ap.add_argument("--amplitude", type=float, default=3.0)
    ap.add_argument("--energy", type=float, default=1.0)
    ap.add_argument("--seed", type=int, default=20250825)
    ap.add_argument("--t-tol", type=float, default=1e-10)
    ap.add_argument("--max-iters", type=int, default=20000)
    ap.add_argument("--out-dir", default="results")
    args = ap.parse_args()

    cfg = AscentConfig(max_iters=args.max_iters, t_tol=args.t_tol, seed=args.seed)
    t0 = time.perf_counter()
    summary = multi_start(
        args.starts, args.cells, args.amplitude, args.energy, cfg, samples_per_cell=16
    )
    elapsed_ascent = time.perf_counter() - t0

    t0 = time.perf_counter()
    eigs = [
        hessian_probe(r.final_spec, args.energy)[1] for r in summary.reports
    ]
    elapsed_hess = time.perf_counter() - t0

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    payload = summary.to_dict()
    payload["hessian_max_eigs"] = eigs
    payload["elapsed_ascent_s"] = elapsed_ascent
    payload["elapsed_hessian_s"] = elapsed_hess
    (out / "landscape_summary.json").write_text(json.dumps(payload, indent=2) + "\n")

    lines = ["start,status,n_iterations,final_T,final_abs_A,final_max_abs_g,hessian_max_eig"]
    for i, (r, eig) in enumerate(zip(summary.reports, eigs)):
        lines.append(
            f"{i},{r.status},{r.n_iterations},{r.final_T!r},{r.final_abs_A!r},"
            f"{r.final_max_abs_g!r},{eig!r}"
        )
    (out / "landscape_runs.csv").write_text("\n".join(lines) + "\n")

    print(
        f"{args.starts} starts at E={args.energy}: "
        f"{summary.n_converged_T1} reached T=1, "
        f"{summary.n_converged_critical} critical, "
        f"{summary.n_iter_limit} hit the iteration cap, "
        f"{summary.n_stalled} stalled"
    )
    print(f"worst final T: {summary.worst_final_T!r}")
    print(f"worst endpoint Hessian max eigenvalue: {max(eigs):.3e}")
    print(f"candidate traps surviving refinement: {list(summary.candidate_traps)}")
    print(f"timing: ascent {elapsed_ascent:.1f}s, hessian probes {elapsed_hess:.1f}s")
    return 3 if summary.candidate_traps else 0


if __name__ == "__main__":
    raise SystemExit(main())
