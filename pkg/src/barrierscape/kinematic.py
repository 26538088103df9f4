"""Transmission as a function on the transfer-matrix group itself.

Any SU(1,1) element factors as alpha = sqrt(1+|z|^2) e^{i phi}, beta = z, so
T = 1/(1+|z|^2) depends on the group coordinates only through |z|.  Its sole
extremum over the group is the global maximum T = 1 at z = 0 — there is
nothing to get stuck on at this level; any critical structure of a concrete
control problem must come from how controls map into the group.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .scattering import Monodromy

__all__ = [
    "KinematicPoint",
    "kinematic_T",
    "decompose",
    "reconstruct",
    "radial_derivative",
    "kinematic_scan",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class KinematicPoint:
    """Canonical coordinates (z, phi) of an SU(1,1) element."""

    z: complex
    phi: float  # in [0, 2*pi)


def kinematic_T(m: Monodromy) -> float:
    """T = 1/(1+|beta|^2); coincides with |B|^2 for matrices built by solve()."""
    return 1.0 / (1.0 + abs(m.beta) ** 2)


def decompose(m: Monodromy) -> KinematicPoint:
    phi = math.atan2(m.alpha.imag, m.alpha.real) % _TWO_PI
    return KinematicPoint(z=m.beta, phi=phi)


def reconstruct(point: KinematicPoint) -> Monodromy:
    alpha = math.sqrt(1.0 + abs(point.z) ** 2) * cmath.exp(1j * point.phi)
    return Monodromy(alpha, point.z)


def radial_derivative(abs_z: float) -> float:
    """dT/d|z| = -2|z|/(1+|z|^2)^2: strictly negative away from the origin."""
    return -2.0 * abs_z / (1.0 + abs_z * abs_z) ** 2


def kinematic_scan(n: int, radius: float, seed: int) -> np.ndarray:
    """Sample n points uniformly on the |z| <= radius disk; return (|z|, T) rows.

    Rows are sorted by |z| ascending, so T is non-increasing down the table.
    Each sample goes through reconstruct() with a random phase to exercise the
    full parameterization rather than the bare formula.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if radius < 0.0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.uniform(size=n))
    theta = rng.uniform(0.0, _TWO_PI, size=n)
    phases = rng.uniform(0.0, _TWO_PI, size=n)
    rows = np.empty((n, 2))
    for i in range(n):
        z = r[i] * cmath.exp(1j * theta[i])
        m = reconstruct(KinematicPoint(z=z, phi=phases[i]))
        rows[i, 0] = abs(m.beta)
        rows[i, 1] = kinematic_T(m)
    return rows[np.argsort(rows[:, 0])]
