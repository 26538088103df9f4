"""Analytic gradient of the transmission objective over cell heights.

The first-order response of T = |B|^2 to a potential perturbation dv(x)
supported inside the barrier is an explicit bilinear form in the two
scattering solutions:

    dT = int g(x) dv(x) dx,
    g(x) = -(T / k) * Im[ conj(psi2(x)) * psi1(x) * conj(A) / conj(B) ]

The 1/k prefactor is the density-of-states factor that converts
plane-wave-normalized solutions to energy normalization.  An equivalent
algebraic form of the same kernel, used as a cross-check in the tests, is
g(x) = (1/k) * Im[ conj(B) * psi2(x) * psi1(x) ].

Per-cell derivatives dT/dV_j integrate g over cell j (composite trapezoid on
the wavefield grid).  A central-difference oracle lives alongside for
verification; the two routes are kept deliberately independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .potential import PotentialSpec, validate
from .scattering import _propagate_fields, solve

__all__ = [
    "GradientKernel",
    "CriticalityReport",
    "analytic_gradient",
    "fd_gradient",
    "criticality_test",
]


@dataclass(frozen=True)
class GradientKernel:
    """Pointwise kernel g on the wavefield grid plus its per-cell integrals."""

    grid: np.ndarray
    values: np.ndarray         # g(x), real-valued
    energy: float
    cell_gradient: np.ndarray  # dT/dV_j, j = 0..N-1

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def csv_rows(self):
        for x, g in zip(self.grid, self.values):
            yield (x, g)


def analytic_gradient(
    spec: PotentialSpec, energy: float, samples_per_cell: int = 32
) -> GradientKernel:
    """Evaluate the kernel g and the cell-height gradient of T at one energy."""
    validate(spec)
    _, amps = solve(spec, energy)
    field = _propagate_fields(spec, amps, samples_per_cell)
    ratio = amps.A.conjugate() / amps.B.conjugate()
    g = (-amps.T / amps.k) * np.imag(np.conj(field.psi2) * field.psi1 * ratio)
    n = len(spec.cells)
    cell_gradient = np.empty(n)
    for j in range(n):
        sl = slice(j * samples_per_cell, (j + 1) * samples_per_cell + 1)
        cell_gradient[j] = np.trapezoid(g[sl], field.grid[sl])
    return GradientKernel(
        grid=field.grid, values=g, energy=amps.energy, cell_gradient=cell_gradient
    )


def fd_gradient(spec: PotentialSpec, energy: float, h: float = 1e-5) -> np.ndarray:
    """Central-difference dT/dV_j; the independent oracle for analytic_gradient."""
    if not math.isfinite(h) or h <= 0.0:
        raise ValueError(f"h must be finite and > 0, got {h!r}")
    validate(spec)
    base = np.asarray(spec.cells, dtype=float)
    out = np.empty(len(base))
    for j in range(len(base)):
        vp = base.copy()
        vp[j] += h
        vm = base.copy()
        vm[j] -= h
        tp = solve(spec.with_cells(vp), energy)[1].T
        tm = solve(spec.with_cells(vm), energy)[1].T
        out[j] = (tp - tm) / (2.0 * h)
    return out


@dataclass(frozen=True)
class CriticalityReport:
    critical: bool
    T: float
    abs_A: float
    max_abs_g: float
    tol: float

    def to_dict(self) -> dict:
        return {
            "critical": self.critical,
            "T": self.T,
            "abs_A": self.abs_A,
            "max_abs_g": self.max_abs_g,
            "tol": self.tol,
        }


def criticality_test(
    spec: PotentialSpec, energy: float, tol: float = 1e-8, samples_per_cell: int = 32
) -> CriticalityReport:
    """Is max|g| <= tol?  At critical points the reflection vanishes and T = 1."""
    if tol <= 0.0:
        raise ValueError(f"tol must be > 0, got {tol}")
    kernel = analytic_gradient(spec, energy, samples_per_cell)
    _, amps = solve(spec, energy)
    return CriticalityReport(
        critical=bool(kernel.max_abs <= tol),
        T=amps.T,
        abs_A=abs(amps.A),
        max_abs_g=kernel.max_abs,
        tol=tol,
    )
