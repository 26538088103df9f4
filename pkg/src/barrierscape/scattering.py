"""Exact transfer-matrix scattering for piecewise-constant potentials.

Each constant cell has a closed-form transfer matrix in the free plane-wave
basis; the full potential is a left-to-right composition of cells.  All
matrices live in SU(1,1): [[alpha, beta], [conj(beta), conj(alpha)]] with
|alpha|^2 - |beta|^2 = 1, which encodes flux conservation.

Convention: a slab matrix maps the coefficients of e^{+ikx}, e^{-ikx} on its
left (phases referenced to the slab's left edge) to those on its right
(phases referenced to the right edge), so adjacent slabs compose by plain
matrix product.  `solve` re-anchors the final phases to x = 0, matching the
asymptotic forms

    psi1 = e^{ikx} + A e^{-ikx}  (x < -a),   B e^{ikx}            (x > +a)
    psi2 = D e^{-ikx}            (x < -a),   e^{-ikx} + C e^{ikx} (x > +a)
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .potential import PotentialSpec, validate

__all__ = [
    "Monodromy",
    "ScatteringAmplitudes",
    "WaveField",
    "EnergyError",
    "EvanescentOverflowError",
    "slab_monodromy",
    "compose",
    "identity_monodromy",
    "solve",
    "wavefields",
    "transmission",
]

# cosh/sinh leave double range near kappa*width ~ 710; refuse well before that
EVANESCENT_CAP = 350.0
# |q|*width below which the removable q -> 0 limit is taken by series
_SERIES_CUTOFF_SQ = 1e-8


class EnergyError(ValueError):
    """Raised for E <= 0: only scattering energies are meaningful here."""


class EvanescentOverflowError(ValueError):
    """Slab too opaque: kappa*width beyond the representable hyperbolic range."""


@dataclass(frozen=True)
class Monodromy:
    """SU(1,1) transfer matrix, stored as its two independent entries."""

    alpha: complex
    beta: complex

    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.alpha, self.beta], [self.beta.conjugate(), self.alpha.conjugate()]],
            dtype=complex,
        )

    @property
    def su11_defect(self) -> float:
        """|alpha|^2 - |beta|^2 - 1; zero in exact arithmetic."""
        return abs(self.alpha) ** 2 - abs(self.beta) ** 2 - 1.0


def identity_monodromy() -> Monodromy:
    return Monodromy(1.0 + 0.0j, 0.0 + 0.0j)


def _check_energy(energy: float) -> float:
    energy = float(energy)
    if not math.isfinite(energy) or energy <= 0.0:
        raise EnergyError(f"scattering requires E > 0, got {energy!r}")
    return energy


def _cs(zeta: float) -> tuple[float, float]:
    """cos(sqrt(zeta)) and sin(sqrt(zeta))/sqrt(zeta) as entire functions of zeta.

    zeta = (E - v) * width^2.  Negative zeta falls back to the real hyperbolic
    pair; |zeta| below the series cutoff uses a Taylor branch so the removable
    q -> 0 singularity never divides by a small number.
    """
    if abs(zeta) < _SERIES_CUTOFF_SQ:
        c = 1.0 - 0.5 * zeta * (1.0 - zeta / 12.0 * (1.0 - zeta / 30.0))
        s = 1.0 - zeta / 6.0 * (1.0 - zeta / 20.0 * (1.0 - zeta / 42.0))
        return c, s
    if zeta > 0.0:
        r = math.sqrt(zeta)
        return math.cos(r), math.sin(r) / r
    r = math.sqrt(-zeta)
    return math.cosh(r), math.sinh(r) / r


def slab_monodromy(energy: float, v: float, width: float) -> Monodromy:
    """Exact transfer matrix of one constant slab of the given width.

    Oscillatory (E > v), evanescent (E < v, real hyperbolic functions) and
    degenerate (E = v) regimes are all covered by one analytic expression.
    """
    energy = _check_energy(energy)
    width = float(width)
    if not math.isfinite(width) or width <= 0.0:
        raise ValueError(f"slab width must be finite and > 0, got {width!r}")
    u = energy - float(v)  # q^2, signed
    if u < 0.0 and math.sqrt(-u) * width > EVANESCENT_CAP:
        raise EvanescentOverflowError(
            f"kappa*width = {math.sqrt(-u) * width:.3g} exceeds cap {EVANESCENT_CAP:g}"
        )
    k = math.sqrt(energy)
    c, s = _cs(u * width * width)
    half = 0.5 * width * s
    alpha = complex(c, half * (k + u / k))
    beta = complex(0.0, half * (u / k - k))
    return Monodromy(alpha, beta)


def compose(left: Monodromy, right: Monodromy) -> Monodromy:
    """Transfer matrix of `left` followed by `right` (matrix product R @ L).

    Maps coefficients at left infinity of the combined region to those at
    right infinity; SU(1,1) is closed under this product.
    """
    a = right.alpha * left.alpha + right.beta * left.beta.conjugate()
    b = right.alpha * left.beta + right.beta * left.alpha.conjugate()
    return Monodromy(a, b)


@dataclass(frozen=True)
class ScatteringAmplitudes:
    """Reflection/transmission data of one potential at one energy."""

    energy: float
    k: float
    A: complex  # left-incidence reflection
    B: complex  # left-incidence transmission
    C: complex  # right-incidence reflection
    D: complex  # right-incidence transmission
    T: float
    R: float

    def to_dict(self) -> dict:
        """Flat JSON-friendly form (E, T, R plus Re/Im of each amplitude)."""
        out = {"E": self.energy, "k": self.k, "T": self.T, "R": self.R}
        for name in ("A", "B", "C", "D"):
            val = getattr(self, name)
            out[f"{name}_re"] = val.real
            out[f"{name}_im"] = val.imag
        return out


def _amplitudes(m: Monodromy, energy: float) -> ScatteringAmplitudes:
    """Amplitudes from the x=0-anchored monodromy: A = -M21/M22, B = 1/M22."""
    m22 = m.alpha.conjugate()
    m21 = m.beta.conjugate()
    a = -m21 / m22
    b = 1.0 / m22
    c = m.beta / m22
    d = 1.0 / m22
    return ScatteringAmplitudes(
        energy=energy,
        k=math.sqrt(energy),
        A=a,
        B=b,
        C=c,
        D=d,
        T=abs(b) ** 2,
        R=abs(a) ** 2,
    )


def solve(spec: PotentialSpec, energy: float) -> tuple[Monodromy, ScatteringAmplitudes]:
    """Monodromy (anchored at x = 0) and scattering amplitudes of the potential."""
    validate(spec)
    energy = _check_energy(energy)
    width = spec.cell_width
    m = identity_monodromy()
    for v in spec.cells:
        m = compose(m, slab_monodromy(energy, v, width))
    # re-anchor the plane-wave phases from the support edges to x = 0
    k = math.sqrt(energy)
    m = Monodromy(m.alpha * cmath.exp(-2j * k * spec.half_width), m.beta)
    return m, _amplitudes(m, energy)


def transmission(spec: PotentialSpec, energy: float) -> float:
    """Convenience wrapper: T alone (the optimization objective)."""
    return solve(spec, energy)[1].T


@dataclass(frozen=True)
class WaveField:
    """Both scattering solutions sampled on a uniform per-cell grid."""

    grid: np.ndarray   # samples_per_cell * N + 1 points spanning [-a, +a]
    psi1: np.ndarray   # left-incidence solution
    psi2: np.ndarray   # right-incidence solution
    energy: float

    def csv_rows(self):
        for x, p1, p2 in zip(self.grid, self.psi1, self.psi2):
            yield (x, p1.real, p1.imag, p2.real, p2.imag)


def _cell_cs(u: float, offsets: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized (cos(q t), t*sin(q t)/(q t)) over local offsets t for one cell."""
    if abs(u) * offsets[-1] ** 2 < _SERIES_CUTOFF_SQ:
        zeta = u * offsets**2
        c = 1.0 - 0.5 * zeta * (1.0 - zeta / 12.0 * (1.0 - zeta / 30.0))
        s = 1.0 - zeta / 6.0 * (1.0 - zeta / 20.0 * (1.0 - zeta / 42.0))
        return c, offsets * s
    if u > 0.0:
        q = math.sqrt(u)
        return np.cos(q * offsets), np.sin(q * offsets) / q
    kappa = math.sqrt(-u)
    return np.cosh(kappa * offsets), np.sinh(kappa * offsets) / kappa


def wavefields(spec: PotentialSpec, energy: float, samples_per_cell: int = 32) -> WaveField:
    """Sample psi1 and psi2 on the support by exact per-cell propagation."""
    _, amps = solve(spec, energy)
    return _propagate_fields(spec, amps, samples_per_cell)


def _propagate_fields(
    spec: PotentialSpec, amps: ScatteringAmplitudes, samples_per_cell: int
) -> WaveField:
    if samples_per_cell < 1:
        raise ValueError(f"samples_per_cell must be >= 1, got {samples_per_cell}")
    a = spec.half_width
    w = spec.cell_width
    k = amps.k
    e_left = cmath.exp(-1j * k * a)   # e^{ikx} at x = -a
    e_left_c = cmath.exp(1j * k * a)  # e^{-ikx} at x = -a
    # boundary data (value, derivative) of both solutions at the left edge
    s1 = np.array(
        [e_left + amps.A * e_left_c, 1j * k * (e_left - amps.A * e_left_c)], dtype=complex
    )
    s2 = np.array([amps.D * e_left_c, -1j * k * amps.D * e_left_c], dtype=complex)

    offsets = np.linspace(0.0, w, samples_per_cell + 1)
    n = len(spec.cells)
    npts = samples_per_cell * n + 1
    grid = np.empty(npts)
    psi1 = np.empty(npts, dtype=complex)
    psi2 = np.empty(npts, dtype=complex)
    for j, v in enumerate(spec.cells):
        u = amps.energy - v
        c, ts = _cell_cs(u, offsets)
        uts = u * ts
        # (psi, psi') propagator inside the cell: [[c, ts], [-u*ts, c]]
        p1 = c * s1[0] + ts * s1[1]
        p2 = c * s2[0] + ts * s2[1]
        lo = j * samples_per_cell
        grid[lo : lo + samples_per_cell] = -a + j * w + offsets[:-1]
        psi1[lo : lo + samples_per_cell] = p1[:-1]
        psi2[lo : lo + samples_per_cell] = p2[:-1]
        s1 = np.array([p1[-1], -uts[-1] * s1[0] + c[-1] * s1[1]])
        s2 = np.array([p2[-1], -uts[-1] * s2[0] + c[-1] * s2[1]])
    grid[-1] = a
    psi1[-1] = s1[0]
    psi2[-1] = s2[0]
    return WaveField(grid=grid, psi1=psi1, psi2=psi2, energy=amps.energy)
