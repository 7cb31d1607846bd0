"""Time evolution by second-order Strang splitting, sine-pseudospectral
in space.

One step from t_n to t_n + dt composes half a kinetic flight, a full
potential rotation, and another half flight:

    U^(1)   = exp(-i dt mu_k^2 / 4) in sine space,
    U^(2)_j = exp(-i dt b_j(U^(1))) U^(1)_j,
    U^{n+1} = exp(-i dt mu_k^2 / 4) in sine space,

where b is the effective-potential bracket evaluated at U^(1), including a
fresh Hartree solve from U^(1) itself.  Every sub-step multiplies by
unimodular factors, so the discrete mass ||U||_h is conserved exactly and
the scheme is unconditionally stable in that norm.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, NumericalError
from .grid import RadialGrid
from .model import ObservableSet, PhysicsParams, energy, mass, psi_from_u
from .ground_state import effective_potential
from .poisson import density_from_u, solve_hartree_bar


@dataclass(frozen=True)
class TsspConfig:
    """Stepping controls: step size, horizon, and recording cadence.

    Observables are recorded at step 0, every record_every steps, and at the
    final step.  snapshot_times are snapped to the nearest step boundary;
    t_final must be a whole number of steps.
    """

    dt: float
    t_final: float
    record_every: int = 1
    snapshot_times: tuple = ()

    def __post_init__(self):
        if not np.isfinite(self.dt) or self.dt <= 0:
            raise ConfigError(f"tssp: dt must be positive, got {self.dt}")
        if not np.isfinite(self.t_final) or self.t_final < 0:
            raise ConfigError(f"tssp: t_final must be >= 0, got {self.t_final}")
        if int(self.record_every) != self.record_every or self.record_every < 1:
            raise ConfigError(
                f"tssp: record_every must be a positive integer, got {self.record_every}"
            )
        object.__setattr__(self, "snapshot_times", tuple(self.snapshot_times))
        for t in self.snapshot_times:
            if not (0.0 <= t <= self.t_final):
                raise ConfigError(
                    f"tssp: snapshot time {t} outside [0, {self.t_final}]"
                )

    def n_steps(self) -> int:
        n = int(round(self.t_final / self.dt))
        if abs(n * self.dt - self.t_final) > 1e-9 * max(1.0, self.t_final):
            raise ConfigError(
                f"tssp: t_final = {self.t_final} is not a whole number of "
                f"dt = {self.dt} steps"
            )
        return n


@dataclass
class DynamicsTrace:
    """Recorded observables and full-field snapshots of one evolution."""

    observables: list
    snapshots: list

    @property
    def times(self) -> np.ndarray:
        return np.array([o.time for o in self.observables])

    @property
    def masses(self) -> np.ndarray:
        return np.array([o.mass for o in self.observables])

    @property
    def energies(self) -> np.ndarray:
        return np.array([o.energy for o in self.observables])

    @property
    def psi_origin_abs(self) -> np.ndarray:
        return np.array([o.psi_origin_abs for o in self.observables])


def kinetic_half_step(grid: RadialGrid, u, dt: float) -> np.ndarray:
    """Free flight over dt/2: coefficients pick up exp(-i dt mu_k^2 / 4)."""
    coeffs = grid.dst_forward(np.asarray(u, dtype=complex))
    return grid.dst_inverse(np.exp(-0.25j * dt * grid.mu**2) * coeffs)


def potential_step(grid: RadialGrid, u, params: PhysicsParams, dt: float) -> np.ndarray:
    """Full-step phase rotation by the effective potential evaluated at u.

    The Hartree field is recomputed from u itself, never lagged; the factor
    is unimodular node by node, so |u_j| is untouched.
    """
    u = np.asarray(u, dtype=complex)
    b = effective_potential(grid, u, params)
    return np.exp(-1j * dt * b) * u


def tssp_step(grid: RadialGrid, u, params: PhysicsParams, dt: float) -> np.ndarray:
    """One Strang step: half kinetic, full potential, half kinetic."""
    u1 = kinetic_half_step(grid, u, dt)
    u2 = potential_step(grid, u1, params, dt)
    return kinetic_half_step(grid, u2, dt)


def _observe(grid, u, params, t):
    vbar = solve_hartree_bar(grid, density_from_u(grid, u))
    psi0 = grid.derivative_at_origin(grid.dst_forward(u)) / (2.0 * np.sqrt(np.pi))
    return ObservableSet(
        time=t,
        mass=mass(grid, u),
        energy=energy(grid, u, vbar, params),
        psi_origin_abs=abs(psi0),
    )


def _blow_up(t, observables, snapshots):
    err = NumericalError(
        f"non-finite values appeared in the state at t = {t!r}", time=t
    )
    # carry what was recorded so far, so callers can flush partial output
    err.partial = DynamicsTrace(observables=observables, snapshots=snapshots)
    return err


def evolve(
    grid: RadialGrid, u0, params: PhysicsParams, config: TsspConfig
) -> DynamicsTrace:
    """Step the reduced field to t_final, recording diagnostics.

    u0 must carry unit discrete mass (within 1e-8); snapshots store the
    recovered psi on all nodes, origin included, at the snapped times.
    """
    u = np.asarray(u0, dtype=complex).copy()
    m0 = mass(grid, u)
    if abs(m0 - 1.0) > 1e-8:
        raise ConfigError(
            f"evolve: initial state must have unit mass, got {m0!r}; "
            "enlarge the domain or renormalize"
        )
    n_steps = config.n_steps()
    snap_steps = sorted({int(round(t / config.dt)) for t in config.snapshot_times})

    observables = [_observe(grid, u, params, 0.0)]
    snapshots = []
    if snap_steps and snap_steps[0] == 0:
        snapshots.append((0.0, psi_from_u(grid, u)))
        snap_steps = snap_steps[1:]

    for n in range(1, n_steps + 1):
        u = tssp_step(grid, u, params, config.dt)
        t = n * config.dt
        if not np.all(np.isfinite(u.view(float))):
            raise _blow_up(t, observables, snapshots)
        if n % config.record_every == 0 or n == n_steps:
            observables.append(_observe(grid, u, params, t))
        if snap_steps and n == snap_steps[0]:
            snapshots.append((t, psi_from_u(grid, u)))
            snap_steps = snap_steps[1:]

    return DynamicsTrace(observables=observables, snapshots=snapshots)
