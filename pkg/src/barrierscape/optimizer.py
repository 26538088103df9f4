"""Projected gradient ascent on cell heights, multi-start batteries, and
curvature probes for classifying candidate landscape traps.

The experiment this module supports: start many random barriers, run
monotone gradient ascent on T at fixed energy, and tally where the runs
stop.  A "candidate trap" is an ascent endpoint whose gradient vanishes
while T stays away from 1 *and* whose gradient still vanishes when the cell
grid is refined 2x and 4x (a genuinely critical potential shape, not an
artifact of the finite cell basis).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gradient import analytic_gradient
from .potential import PotentialSpec, refine, sample_random, validate
from .scattering import solve

__all__ = [
    "AscentConfig",
    "RunReport",
    "MultiStartSummary",
    "STATUS_CONVERGED_T1",
    "STATUS_CONVERGED_CRITICAL",
    "STATUS_ITER_LIMIT",
    "STATUS_STALLED",
    "ascend",
    "multi_start",
    "hessian_probe",
    "survives_refinement",
]

STATUS_CONVERGED_T1 = "converged_T1"
STATUS_CONVERGED_CRITICAL = "converged_critical"
STATUS_ITER_LIMIT = "iter_limit"
STATUS_STALLED = "stalled"

_MAX_BACKTRACKS = 60


@dataclass(frozen=True)
class AscentConfig:
    max_iters: int = 5000
    grad_tol: float = 1e-8
    t_tol: float = 1e-3
    step0: float = 0.5
    backtrack: float = 0.5
    armijo: float = 1e-4
    box: tuple[float, float] | None = None
    seed: int = 0

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        for name in ("grad_tol", "t_tol", "step0"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be > 0")
        if not 0.0 < self.backtrack < 1.0:
            raise ValueError(f"backtrack must be in (0, 1), got {self.backtrack}")
        if not 0.0 < self.armijo < 1.0:
            raise ValueError(f"armijo must be in (0, 1), got {self.armijo}")
        if self.box is not None:
            lo, hi = self.box
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ValueError(f"box must be a finite (lo, hi) with lo < hi, got {self.box}")


@dataclass(frozen=True)
class RunReport:
    trajectory: tuple[tuple[int, float], ...]  # (iteration, T) after each accepted step
    final_spec: PotentialSpec
    final_T: float
    final_abs_A: float
    final_max_abs_g: float
    status: str
    n_iterations: int
    box_clamped: bool  # any cell pinned at a box bound at the endpoint

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "n_iterations": self.n_iterations,
            "final_T": self.final_T,
            "final_abs_A": self.final_abs_A,
            "final_max_abs_g": self.final_max_abs_g,
            "box_clamped": self.box_clamped,
            "final_half_width": self.final_spec.half_width,
            "final_cells": list(self.final_spec.cells),
        }


def _project(v: np.ndarray, box: tuple[float, float] | None) -> np.ndarray:
    return v if box is None else np.clip(v, box[0], box[1])


def ascend(
    spec: PotentialSpec,
    energy: float,
    cfg: AscentConfig = AscentConfig(),
    samples_per_cell: int = 32,
) -> RunReport:
    """Monotone gradient ascent of T over cell heights.

    Stopping hierarchy per iteration: 1 - T <= t_tol (converged_T1), then
    max|g| <= grad_tol (converged_critical), then the iteration budget.
    Armijo backtracking line search; more than 60 consecutive shrinks in one
    search means the landscape is numerically flat along the gradient and the
    run reports `stalled`.
    """
    validate(spec)
    v = _project(np.asarray(spec.cells, dtype=float), cfg.box)
    current = spec.with_cells(v)
    t_now = solve(current, energy)[1].T
    trajectory = [(0, t_now)]
    status = STATUS_ITER_LIMIT
    iteration = 0
    step = cfg.step0
    while True:
        if 1.0 - t_now <= cfg.t_tol:
            status = STATUS_CONVERGED_T1
            break
        if iteration >= cfg.max_iters:
            status = STATUS_ITER_LIMIT
            break
        kernel = analytic_gradient(current, energy, samples_per_cell)
        if kernel.max_abs <= cfg.grad_tol:
            status = STATUS_CONVERGED_CRITICAL
            break
        d = kernel.cell_gradient
        accepted = False
        s = step
        for _ in range(_MAX_BACKTRACKS + 1):
            v_try = _project(v + s * d, cfg.box)
            t_try = solve(current.with_cells(v_try), energy)[1].T
            if t_try >= t_now + cfg.armijo * float(np.dot(d, v_try - v)):
                accepted = True
                break
            s *= cfg.backtrack
        if not accepted:
            status = STATUS_STALLED
            break
        v = v_try
        current = current.with_cells(v)
        t_now = t_try
        iteration += 1
        trajectory.append((iteration, t_now))
        # reuse the accepted scale, probing one growth notch next iteration
        step = s / cfg.backtrack
    kernel = analytic_gradient(current, energy, samples_per_cell)
    _, amps = solve(current, energy)
    clamped = bool(
        cfg.box is not None
        and np.any((v <= cfg.box[0] + 1e-12) | (v >= cfg.box[1] - 1e-12))
    )
    return RunReport(
        trajectory=tuple(trajectory),
        final_spec=current,
        final_T=amps.T,
        final_abs_A=abs(amps.A),
        final_max_abs_g=kernel.max_abs,
        status=status,
        n_iterations=iteration,
        box_clamped=clamped,
    )


def survives_refinement(
    spec: PotentialSpec,
    energy: float,
    grad_tol: float,
    factors: tuple[int, ...] = (2, 4),
    samples_per_cell: int = 32,
) -> bool:
    """True iff the gradient still vanishes on every refined cell grid.

    A vanishing cell-basis gradient can be an artifact of coarse cells; a
    point only counts as a candidate trap if max|g| stays below grad_tol
    after splitting each cell 2x and 4x.
    """
    for factor in factors:
        kernel = analytic_gradient(refine(spec, factor), energy, samples_per_cell)
        if kernel.max_abs > grad_tol:
            return False
    return True


@dataclass(frozen=True)
class MultiStartSummary:
    reports: tuple[RunReport, ...]
    n_converged_T1: int
    n_converged_critical: int
    n_iter_limit: int
    n_stalled: int
    worst_final_T: float
    candidate_traps: tuple[int, ...]   # start indices surviving refinement re-test
    boundary_clamped: tuple[int, ...]  # converged_critical endpoints pinned by the box
    energy: float
    n_cells: int
    amplitude: float
    seed: int

    def to_dict(self) -> dict:
        return {
            "n_starts": len(self.reports),
            "energy": self.energy,
            "n_cells": self.n_cells,
            "amplitude": self.amplitude,
            "seed": self.seed,
            "n_converged_T1": self.n_converged_T1,
            "n_converged_critical": self.n_converged_critical,
            "n_iter_limit": self.n_iter_limit,
            "n_stalled": self.n_stalled,
            "worst_final_T": self.worst_final_T,
            "candidate_traps": list(self.candidate_traps),
            "boundary_clamped": list(self.boundary_clamped),
            "runs": [r.to_dict() for r in self.reports],
        }


def multi_start(
    n_starts: int,
    n_cells: int,
    amplitude: float,
    energy: float,
    cfg: AscentConfig = AscentConfig(),
    half_width: float = 1.0,
    samples_per_cell: int = 32,
) -> MultiStartSummary:
    """Seeded battery of ascent runs; start i draws its cells with seed cfg.seed + i."""
    if n_starts < 1:
        raise ValueError(f"n_starts must be >= 1, got {n_starts}")
    reports = []
    traps = []
    clamped = []
    for i in range(n_starts):
        start = sample_random(n_cells, amplitude, cfg.seed + i, half_width)
        report = ascend(start, energy, cfg, samples_per_cell)
        reports.append(report)
        if report.status == STATUS_CONVERGED_CRITICAL:
            if report.box_clamped:
                clamped.append(i)
            elif survives_refinement(report.final_spec, energy, cfg.grad_tol,
                                     samples_per_cell=samples_per_cell):
                traps.append(i)
    statuses = [r.status for r in reports]
    return MultiStartSummary(
        reports=tuple(reports),
        n_converged_T1=statuses.count(STATUS_CONVERGED_T1),
        n_converged_critical=statuses.count(STATUS_CONVERGED_CRITICAL),
        n_iter_limit=statuses.count(STATUS_ITER_LIMIT),
        n_stalled=statuses.count(STATUS_STALLED),
        worst_final_T=min(r.final_T for r in reports),
        candidate_traps=tuple(traps),
        boundary_clamped=tuple(clamped),
        energy=energy,
        n_cells=n_cells,
        amplitude=amplitude,
        seed=cfg.seed,
    )


def hessian_probe(spec: PotentialSpec, energy: float, h: float = 1e-3) -> tuple[np.ndarray, float]:
    """Central-difference Hessian of T in cell space and its largest eigenvalue.

    At a true maximum the spectrum is non-positive up to the O(h^2) truncation
    and roundoff of the probe itself.
    """
    if h <= 0.0:
        raise ValueError(f"h must be > 0, got {h}")
    validate(spec)
    base = np.asarray(spec.cells, dtype=float)
    n = len(base)

    def t_at(v: np.ndarray) -> float:
        return solve(spec.with_cells(v), energy)[1].T

    t0 = t_at(base)
    hess = np.empty((n, n))
    for j in range(n):
        vp = base.copy()
        vp[j] += h
        vm = base.copy()
        vm[j] -= h
        hess[j, j] = (t_at(vp) - 2.0 * t0 + t_at(vm)) / (h * h)
    for j in range(n):
        for l in range(j + 1, n):
            vpp = base.copy(); vpp[[j, l]] += h
            vmm = base.copy(); vmm[[j, l]] -= h
            vpm = base.copy(); vpm[j] += h; vpm[l] -= h
            vmp = base.copy(); vmp[j] -= h; vmp[l] += h
            hess[j, l] = hess[l, j] = (t_at(vpp) - t_at(vpm) - t_at(vmp) + t_at(vmm)) / (
                4.0 * h * h
            )
    return hess, float(np.max(np.linalg.eigvalsh(hess)))
