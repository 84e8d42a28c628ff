"""Orbit integration fidelity and variational cross-checks in floating point."""

import math
from fractions import Fraction as Q

import numpy as np
import pytest

from homopot import orbit as O
from homopot.varequ import build_higher_ve


def test_drift_repulsive():
    p = O.OrbitParams(k=-3, phi0=2.0, t_span=(0.0, 5.0))
    traj = O.integrate_orbit(p)
    assert traj.max_drift < 1e-9
    # phidot(0) from the first integral: (1/2) phidot^2 = 1 - phi^-3
    assert abs(traj.phidot[0] - math.sqrt(2 * (1 - 2.0**-3))) < 1e-12


def test_initial_drift_exact():
    p = O.OrbitParams(k=-3, phi0=2.0)
    phidot0 = O.initial_phidot(p)
    assert O.first_integral(-3, 1, 2.0, phidot0) == pytest.approx(1.0, abs=1e-15)


def test_cubic_turning_point():
    p = O.OrbitParams(k=3, phi0=0.5, t_span=(0.0, 1.2))
    traj = O.integrate_orbit(p)
    assert traj.max_drift < 1e-9
    assert traj.phi.max() <= 1.0 + 1e-9          # energy ceiling phi^3 <= 1
    assert traj.phidot.min() < 0 < traj.phidot.max()  # it actually turned


def test_time_change_defect():
    for cfg in ((-3, 1, 2.0, (0, 5)), (3, 1, 0.5, (0, 1.2)), (-3, 2, 1.2, (0, 2))):
        k, k0, phi0, span = cfg
        traj = O.integrate_orbit(O.OrbitParams(k=k, k0=k0, phi0=phi0, t_span=span))
        assert O.time_change_check(traj) < 1e-9, cfg


def test_collision_guard():
    # fast infall (above the normalized energy) must stop at the guard
    p = O.OrbitParams(k=-3, phi0=2.0, phidot0=-5.0, t_span=(0.0, 50.0),
                      collision_guard=0.5)
    with pytest.raises(O.OrbitError, match="collision"):
        O.integrate_orbit(p)


def test_energy_region_guard():
    with pytest.raises(O.OrbitError):
        O.initial_phidot(O.OrbitParams(k=3, phi0=1.5))  # phi^3 > 1


def test_ve_superposition():
    traj = O.integrate_orbit(O.OrbitParams(k=-3, phi0=2.0, t_span=(0.0, 3.0)))
    system = build_higher_ve(None, 1, -3, lam=Q(-3), force_sign=-1)
    y0 = np.array([0.3, -0.2, 1.0, 0.7], dtype=complex)
    a = O.integrate_ve(system, traj, y0)
    b = O.integrate_ve(system, traj, 2.5 * y0)
    assert np.max(np.abs(b.y - 2.5 * a.y)) < 1e-7
    assert a.max_residual < 1e-7


def test_zero_initial_conditions():
    traj = O.integrate_orbit(O.OrbitParams(k=-3, phi0=2.0, t_span=(0.0, 2.0)))
    system = build_higher_ve(None, 1, -3, lam=Q(-3), force_sign=-1)
    sol = O.integrate_ve(system, traj, np.zeros(4, dtype=complex))
    assert np.max(np.abs(sol.y)) == 0.0


def test_pk_match():
    traj = O.integrate_orbit(O.OrbitParams(k=-3, phi0=2.0, t_span=(0.0, 4.0)))
    assert O.pk_comparison(traj) < 1e-6


def test_tangential_solution_is_phidot():
    # time-translation symmetry: X1 = phidot solves the tangential block
    traj = O.integrate_orbit(O.OrbitParams(k=-3, phi0=2.0, t_span=(0.0, 3.0)))
    system = build_higher_ve(None, 1, -3, lam=Q(-3), force_sign=-1)
    phi0, phidot0 = traj.state_at(0.0)
    acc0 = -(-3) * phi0 ** (-4)
    y0 = np.zeros(4, dtype=complex)
    y0[system.position((0, 0, 1, 0))] = phidot0
    y0[system.position((1, 0, 0, 0))] = acc0
    sol = O.integrate_ve(system, traj, y0)
    pos = system.position((0, 0, 1, 0))
    for t in np.linspace(0.1, 2.9, 15):
        _, pd = traj.state_at(t)
        assert abs(sol.at(t)[pos] - pd) < 1e-8


def test_level2_residual():
    from homopot.parse import parse_potential
    from homopot.potential import jet_at
    traj = O.integrate_orbit(O.OrbitParams(k=-3, phi0=2.0, t_span=(0.0, 3.0)))
    jet = jet_at(parse_potential("r^-3"), (1, 0), 2)
    system = build_higher_ve(jet, 2, -3, lam=Q(-3), force_sign=-1)
    rng = np.random.default_rng(3)
    y0 = rng.standard_normal(system.dim) + 1j * rng.standard_normal(system.dim)
    sol = O.integrate_ve(system, traj, y0)
    assert sol.max_residual < 1e-7


def test_scenarios_ship_and_run(tmp_path):
    cfgs = O.load_scenarios()
    assert len(cfgs) >= 3
    res = O.run_scenario(cfgs[0])
    assert res["max_drift"] < 1e-9
    traj = O.integrate_orbit(O.params_from_config(cfgs[0]))
    out = tmp_path / "traj.csv"
    traj.to_csv(out)
    header = out.read_text().splitlines()[0]
    assert header == "t,phi,phidot,drift"


def test_level_guard():
    traj = O.integrate_orbit(O.OrbitParams(k=-3, phi0=2.0, t_span=(0.0, 1.0)))
    system = build_higher_ve(None, 4, -3, lam=Q(-3), force_sign=-1)
    with pytest.raises(ValueError, match="levels"):
        O.integrate_ve(system, traj, np.zeros(system.dim, dtype=complex))
