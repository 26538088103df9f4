"""Compact-support piecewise-constant potentials (the control space).

A potential is zero outside [-half_width, half_width] and constant on each of
N equal-width cells inside.  Units throughout the package: hbar = 1, m = 1/2,
so the free dispersion is E = k^2.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "PotentialSpec",
    "PotentialError",
    "validate",
    "sample_random",
    "read_spec",
    "write_spec",
    "refine",
]


class PotentialError(ValueError):
    """Invalid potential description (bad field value or malformed file)."""


@dataclass(frozen=True)
class PotentialSpec:
    """Piecewise-constant potential supported on [-half_width, half_width].

    cells[j] is the constant value on the j-th of the N uniform cells
    (width 2*half_width/N), counted from the left edge of the support.
    Cell values may be negative (wells); only the continuum E > 0 is ever
    probed by the solvers in this package.
    """

    half_width: float
    cells: tuple[float, ...]

    def __post_init__(self):
        try:
            cells = tuple(float(v) for v in self.cells)
            half_width = float(self.half_width)
        except (TypeError, ValueError) as exc:
            raise PotentialError(f"non-numeric field in potential spec: {exc}") from exc
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "half_width", half_width)

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    @property
    def cell_width(self) -> float:
        return 2.0 * self.half_width / len(self.cells)

    def cell_edges(self) -> np.ndarray:
        """The N+1 cell boundaries, from -half_width to +half_width."""
        return np.linspace(-self.half_width, self.half_width, len(self.cells) + 1)

    def with_cells(self, cells) -> "PotentialSpec":
        """Same support, new cell values (used by optimizers and FD probes)."""
        return PotentialSpec(self.half_width, tuple(float(v) for v in cells))

    def flipped(self) -> "PotentialSpec":
        """Spatially mirrored potential, V(-x)."""
        return PotentialSpec(self.half_width, tuple(reversed(self.cells)))


def validate(spec: PotentialSpec) -> PotentialSpec:
    """Check a spec for use by the solvers; raise PotentialError naming the bad field."""
    if not math.isfinite(spec.half_width) or spec.half_width <= 0.0:
        raise PotentialError(f"half_width: must be finite and > 0, got {spec.half_width!r}")
    if len(spec.cells) == 0:
        raise PotentialError("cells: empty cell list")
    for j, v in enumerate(spec.cells):
        if not math.isfinite(v):
            raise PotentialError(f"cells[{j}]: non-finite value {v!r}")
    return spec


def sample_random(n_cells: int, amplitude: float, seed: int, half_width: float = 1.0) -> PotentialSpec:
    """Cells drawn i.i.d. uniform on [-amplitude, amplitude]; deterministic in seed."""
    if n_cells < 1:
        raise PotentialError(f"n_cells: must be >= 1, got {n_cells}")
    if not math.isfinite(amplitude) or amplitude < 0.0:
        raise PotentialError(f"amplitude: must be finite and >= 0, got {amplitude!r}")
    rng = np.random.default_rng(seed)
    cells = rng.uniform(-amplitude, amplitude, size=n_cells)
    return validate(PotentialSpec(half_width, tuple(cells)))


def refine(spec: PotentialSpec, factor: int) -> PotentialSpec:
    """Split every cell into `factor` equal sub-cells; represents the same V(x)."""
    if factor < 1:
        raise PotentialError(f"factor: must be >= 1, got {factor}")
    validate(spec)
    return spec.with_cells(np.repeat(spec.cells, factor))


def write_spec(spec: PotentialSpec, path) -> None:
    """JSON round-trips bit-exactly: floats are serialized via repr."""
    validate(spec)
    payload = {"half_width": spec.half_width, "cells": list(spec.cells)}
    Path(path).write_text(json.dumps(payload) + "\n", encoding="utf-8")


def read_spec(path) -> PotentialSpec:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise PotentialError(f"{path}: malformed potential file ({exc})") from exc
    if not isinstance(raw, dict):
        raise PotentialError(f"{path}: expected a JSON object with half_width and cells")
    missing = sorted({"half_width", "cells"} - raw.keys())
    if missing:
        raise PotentialError(f"{path}: missing field(s) {missing}")
    half_width, cells = raw["half_width"], raw["cells"]
    if isinstance(half_width, bool) or not isinstance(half_width, (int, float)):
        raise PotentialError(f"{path}: half_width must be a number, got {half_width!r}")
    if not isinstance(cells, list):
        raise PotentialError(f"{path}: cells must be a list of numbers")
    for j, v in enumerate(cells):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise PotentialError(f"{path}: cells[{j}] is not a number: {v!r}")
    return validate(PotentialSpec(float(half_width), tuple(float(v) for v in cells)))
