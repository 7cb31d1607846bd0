import numpy as np
import pytest

from spsolver import (
    ConfigError,
    GfdnConfig,
    HarmonicPotential,
    NumericalError,
    PhysicsParams,
    RadialGrid,
    TsspConfig,
    ZeroPotential,
    compute_ground_state,
    evolve,
    gaussian_initial,
    kinetic_half_step,
    mass,
    potential_step,
    psi_from_u,
    tssp_step,
)

FREE = PhysicsParams(potential=ZeroPotential())


def harmonic_params(**kw):
    return PhysicsParams(potential=HarmonicPotential(), **kw)


def single_mode(grid, k):
    u = np.sin(k * np.pi * grid.r_interior / grid.R).astype(complex)
    return u / grid.norm_h(u)


def test_kinetic_half_step_exact_flight():
    grid = RadialGrid(8.0, 32)
    dt = 0.07
    for k in (1, 9):
        u = single_mode(grid, k)
        out = kinetic_half_step(grid, kinetic_half_step(grid, u, dt), dt)
        expected = np.exp(-0.5j * dt * grid.mu[k - 1] ** 2) * u
        assert np.max(np.abs(out - expected)) <= 1e-13


def test_kinetic_half_step_zero_dt_identity():
    grid = RadialGrid(8.0, 64)
    rng = np.random.default_rng(1)
    u = rng.standard_normal(63) + 1j * rng.standard_normal(63)
    assert np.max(np.abs(kinetic_half_step(grid, u, 0.0) - u)) <= 1e-15 * np.max(
        np.abs(u)
    )


def test_kinetic_half_step_preserves_norm():
    grid = RadialGrid(8.0, 64)
    rng = np.random.default_rng(2)
    u = rng.standard_normal(63) + 1j * rng.standard_normal(63)
    assert abs(grid.norm_h(kinetic_half_step(grid, u, 0.3)) - grid.norm_h(u)) <= 1e-13


def test_potential_step_free_identity():
    grid = RadialGrid(8.0, 64)
    rng = np.random.default_rng(3)
    u = rng.standard_normal(63) + 1j * rng.standard_normal(63)
    out = potential_step(grid, u, FREE, 0.25)
    assert np.max(np.abs(out - u)) <= 1e-14 * np.max(np.abs(u))


def test_potential_step_harmonic_phase():
    grid = RadialGrid(16.0, 128)
    dt = 0.05
    u = gaussian_initial(grid).astype(complex)
    out = potential_step(grid, u, harmonic_params(), dt)
    expected = u * np.exp(-1j * dt * 0.5 * grid.r_interior**2)
    assert np.max(np.abs(out - expected)) <= 1e-14


def test_potential_step_preserves_modulus():
    grid = RadialGrid(16.0, 128)
    u = gaussian_initial(grid).astype(complex)
    out = potential_step(grid, u, harmonic_params(c_p=100.0, alpha=1.0), 0.01)
    assert np.max(np.abs(np.abs(out) - np.abs(u))) <= 1e-15


def test_tssp_step_free_single_mode():
    grid = RadialGrid(8.0, 32)
    dt = 0.01
    k = 4
    u = single_mode(grid, k)
    out = tssp_step(grid, u, FREE, dt)
    expected = np.exp(-0.5j * dt * grid.mu[k - 1] ** 2) * u
    assert np.max(np.abs(out - expected)) <= 1e-13


def test_tssp_mass_conserved_many_steps():
    grid = RadialGrid(16.0, 128)
    u = gaussian_initial(grid).astype(complex)
    m0 = mass(grid, u)
    params = harmonic_params(c_p=100.0, alpha=1.0)
    for _ in range(200):
        u = tssp_step(grid, u, params, 0.01)
    assert abs(mass(grid, u) - m0) <= 1e-12


def test_time_reversal_linear_case():
    grid = RadialGrid(16.0, 128)
    u0 = gaussian_initial(grid).astype(complex)
    u = tssp_step(grid, u0, harmonic_params(), 0.02)
    back = tssp_step(grid, u, harmonic_params(), -0.02)
    assert np.max(np.abs(back - u0)) <= 1e-10


def test_stationary_ground_state_short_run():
    grid = RadialGrid(8.0, 128)
    gs = compute_ground_state(grid, harmonic_params(), GfdnConfig(dt=0.01))
    psi0_abs = np.abs(gs.phi_psi)
    u = gs.phi_u.astype(complex)
    for _ in range(200):
        u = tssp_step(grid, u, harmonic_params(), 0.001)
    dev = np.max(np.abs(np.abs(psi_from_u(grid, u)) - psi0_abs))
    assert dev <= 1e-6


def test_temporal_self_refinement_second_order():
    grid = RadialGrid(8.0, 64)
    params = harmonic_params(c_p=10.0, alpha=0.5)
    u0 = gaussian_initial(grid).astype(complex)

    def run(dt, n):
        u = u0.copy()
        for _ in range(n):
            u = tssp_step(grid, u, params, dt)
        return u

    ref = run(0.0025, 400)
    err_coarse = np.max(np.abs(run(0.02, 50) - ref))
    err_fine = np.max(np.abs(run(0.01, 100) - ref))
    assert 3.2 <= err_coarse / err_fine <= 4.8


def test_config_validation():
    with pytest.raises(ConfigError):
        TsspConfig(dt=0.0, t_final=1.0)
    with pytest.raises(ConfigError):
        TsspConfig(dt=0.01, t_final=-1.0)
    with pytest.raises(ConfigError):
        TsspConfig(dt=0.01, t_final=1.0, record_every=0)
    with pytest.raises(ConfigError):
        TsspConfig(dt=0.01, t_final=1.0, snapshot_times=(2.0,))
    with pytest.raises(ConfigError, match="whole number"):
        TsspConfig(dt=0.3, t_final=1.0).n_steps()


def test_evolve_zero_horizon():
    grid = RadialGrid(16.0, 128)
    u0 = gaussian_initial(grid)
    trace = evolve(grid, u0, harmonic_params(), TsspConfig(dt=0.01, t_final=0.0))
    assert len(trace.observables) == 1
    assert trace.observables[0].time == 0.0
    assert abs(trace.observables[0].mass - 1.0) <= 1e-10


def test_evolve_records_and_snapshots():
    grid = RadialGrid(16.0, 128)
    u0 = gaussian_initial(grid)
    config = TsspConfig(
        dt=0.01, t_final=0.2, record_every=5, snapshot_times=(0.0, 0.1)
    )
    trace = evolve(grid, u0, harmonic_params(c_p=100.0, alpha=1.0), config)
    assert trace.times[0] == 0.0
    assert trace.times[-1] == pytest.approx(0.2, abs=1e-12)
    assert np.all(np.diff(trace.times) > 0)
    assert np.max(np.abs(trace.masses - 1.0)) <= 1e-10
    assert len(trace.snapshots) == 2
    t0, psi0 = trace.snapshots[0]
    assert t0 == 0.0
    assert psi0 == pytest.approx(psi_from_u(grid, u0.astype(complex)), abs=1e-12)
    t1, psi1 = trace.snapshots[1]
    assert t1 == pytest.approx(0.1, abs=1e-12)
    # snapshots stay consistent with the stored reduced field convention
    assert psi1[-1] == 0.0


def test_evolve_rejects_bad_mass():
    grid = RadialGrid(16.0, 128)
    with pytest.raises(ConfigError, match="unit mass"):
        evolve(
            grid,
            2.0 * gaussian_initial(grid),
            harmonic_params(),
            TsspConfig(dt=0.01, t_final=0.1),
        )


def test_blow_up_reports_time_and_partial_trace():
    from spsolver.dynamics import _blow_up

    err = _blow_up(0.42, observables=[1, 2], snapshots=[])
    assert isinstance(err, NumericalError)
    assert err.time == 0.42
    assert err.partial.observables == [1, 2]
