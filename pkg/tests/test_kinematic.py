import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from barrierscape.kinematic import (
    KinematicPoint,
    decompose,
    kinematic_T,
    kinematic_scan,
    radial_derivative,
    reconstruct,
)
from barrierscape.potential import sample_random
from barrierscape.scattering import Monodromy, identity_monodromy, solve

complex_z = st.builds(
    complex, st.floats(-20.0, 20.0), st.floats(-20.0, 20.0)
)


def test_identity_decomposes_to_origin():
    p = decompose(identity_monodromy())
    assert p.z == 0j
    assert p.phi == 0.0


def test_pinned_example():
    m = Monodromy(math.sqrt(2.0) * cmath.exp(0.25j * math.pi), 1.0 + 0.0j)
    p = decompose(m)
    assert p.z == pytest.approx(1.0 + 0.0j, abs=1e-15)
    assert p.phi == pytest.approx(math.pi / 4.0, abs=1e-15)


@settings(max_examples=200, deadline=None)
@given(z=complex_z, phi=st.floats(0.0, 2.0 * math.pi, exclude_max=True))
def test_roundtrip_reconstruct_decompose(z, phi):
    m = reconstruct(KinematicPoint(z=z, phi=phi))
    assert abs(m.su11_defect) <= 1e-12 * (1.0 + abs(z) ** 2)
    p = decompose(m)
    assert abs(p.z - z) <= 1e-12 * max(1.0, abs(z))
    dphi = (p.phi - phi + math.pi) % (2.0 * math.pi) - math.pi
    assert abs(dphi) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(z=complex_z, phi=st.floats(0.0, 2.0 * math.pi, exclude_max=True))
def test_kinematic_T_depends_only_on_abs_z(z, phi):
    m = reconstruct(KinematicPoint(z=z, phi=phi))
    assert kinematic_T(m) == pytest.approx(1.0 / (1.0 + abs(z) ** 2), rel=1e-13)


def test_kinematic_T_agrees_with_scattering_T():
    spec = sample_random(8, 3.0, seed=5)
    for energy in (0.5, 1.0, 4.5):
        m, amps = solve(spec, energy)
        assert kinematic_T(m) == pytest.approx(amps.T, rel=1e-12)


def test_radial_derivative_negative_off_origin():
    assert radial_derivative(0.0) == 0.0
    for r in np.linspace(1e-6, 50.0, 100):
        assert radial_derivative(float(r)) < 0.0


def test_scan_sorted_monotone_and_below_one():
    rows = kinematic_scan(2000, 10.0, seed=42)
    assert rows.shape == (2000, 2)
    assert np.all(np.diff(rows[:, 0]) >= 0.0)
    # T strictly decreasing wherever |z| strictly increases
    dz = np.diff(rows[:, 0])
    dt = np.diff(rows[:, 1])
    assert np.all(dt[dz > 0] < 0.0)
    assert np.all(rows[:, 1] <= 1.0)
    assert np.all(rows[:, 1] > 0.0)
    # at radius 10 the far edge is pinned near 1/101; nothing reaches T=1
    assert rows[-1, 1] > 1.0 / 102.0
    assert np.all(rows[rows[:, 0] > 0.0, 1] < 1.0)


def test_scan_zero_radius_all_transparent():
    rows = kinematic_scan(50, 0.0, seed=0)
    assert np.all(rows[:, 0] == 0.0)
    assert np.all(rows[:, 1] == 1.0)


def test_scan_deterministic():
    a = kinematic_scan(100, 3.0, seed=9)
    b = kinematic_scan(100, 3.0, seed=9)
    assert np.array_equal(a, b)


def test_scan_rejects_bad_args():
    with pytest.raises(ValueError):
        kinematic_scan(0, 1.0, seed=0)
    with pytest.raises(ValueError):
        kinematic_scan(10, -1.0, seed=0)
