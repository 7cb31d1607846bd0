"""Ground states via the normalized gradient flow, discretized by a
backward Euler sine-pseudospectral scheme.

Each outer step freezes the effective potential at the current iterate,

    b_j = V_ext(r_j) + W_j(phi^n) - alpha * (2*sqrt(pi)*r_j)^(-2/3) |phi_j^n|^(2/3),

solves the implicit linear system

    (1/dt - 1/2 D + diag(b)) phi+ = phi^n / dt,

with D the sine-pseudospectral second derivative, and renormalizes
phi^{n+1} = phi+ / ||phi+||_h.  The stationary point of this iteration is
the unit-mass energy minimizer.

The implicit system is solved by a stabilized fixed-point sweep that is
diagonal in sine space: with the shift alpha_s = (max b + min b)/2 each
sweep solves

    (1/dt + alpha_s - 1/2 D) phi^(m+1) = phi^n/dt + (alpha_s - b) * phi^(m),

whose contraction factor is bounded by max|b - alpha_s| / (1/dt + alpha_s
+ mu_1^2/2) whenever that denominator is positive, so moderate dt converges
in a handful of sweeps.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ConvergenceError
from .grid import RadialGrid
from .model import TWO_SQRT_PI, PhysicsParams, energy, psi_from_u, u_from_psi
from .poisson import density_from_u, hartree_term, solve_hartree_bar


@dataclass(frozen=True)
class GfdnConfig:
    """Gradient-flow iteration controls.

    The outer loop stops when ||phi^{n+1} - phi^n||_inf / dt <= tol_outer,
    a step-size-independent stationarity measure.  initial_guess, when
    given, is a real reduced-variable field of unit discrete mass.
    """

    dt: float = 0.01
    tol_outer: float = 1e-10
    tol_inner: float = 1e-12
    max_outer: int = 50000
    max_inner: int = 500
    initial_guess: np.ndarray | None = None

    def __post_init__(self):
        if not np.isfinite(self.dt) or self.dt <= 0:
            raise ConfigError(f"gfdn: dt must be positive, got {self.dt}")
        for name in ("tol_outer", "tol_inner"):
            tol = getattr(self, name)
            if not (0.0 < tol < 1.0):
                raise ConfigError(f"gfdn: {name} must lie in (0, 1), got {tol}")
        for name in ("max_outer", "max_inner"):
            cap = getattr(self, name)
            if int(cap) != cap or cap < 1:
                raise ConfigError(f"gfdn: {name} must be a positive integer, got {cap}")


@dataclass(frozen=True)
class GroundStateResult:
    """Converged (or capped) ground-state data.

    phi_u is the reduced-variable state of unit mass; phi_psi the recovered
    wave function on all nodes including the origin; residual the final
    ||phi^{n+1} - phi^n||_inf / dt.
    """

    phi_u: np.ndarray
    phi_psi: np.ndarray
    energy: float
    outer_iterations: int
    residual: float
    converged: bool


def _bracket(grid, state, vbar, params):
    """Effective-potential bracket from a precomputed Hartree field."""
    r = grid.r_interior
    vext = np.asarray(params.potential.values(grid))[1:-1]
    slater = params.alpha * (TWO_SQRT_PI * r) ** (-2.0 / 3.0) * np.abs(state) ** (2.0 / 3.0)
    return vext + hartree_term(grid, vbar, params.c_p) - slater


def effective_potential(grid: RadialGrid, state, params: PhysicsParams) -> np.ndarray:
    """b_j = V_ext + Hartree term - Slater term, evaluated at the state.

    Shared between the gradient flow (real states) and the splitting
    propagator (complex states); only |state| enters.
    """
    vbar = solve_hartree_bar(grid, density_from_u(grid, state))
    return _bracket(grid, state, vbar, params)


def besp_linear_solve(
    grid: RadialGrid,
    phi_n,
    b,
    dt: float,
    tol_inner: float = 1e-12,
    max_inner: int = 500,
) -> np.ndarray:
    """Solve (1/dt - 1/2 D + diag(b)) phi+ = phi^n/dt in sine space.

    Returns phi+ once the assembled residual
    (phi+ - phi^n)/dt - 1/2 D phi+ + b*phi+ has sup-norm at most
    tol_inner * sup|phi^n/dt|.  Raises ConvergenceError (carrying the last
    residual) if max_inner sweeps do not get there, which signals dt too
    large for the potential spread.
    """
    phi_n = grid._interior(phi_n)
    b = grid._interior(b)
    alpha_s = 0.5 * (float(np.max(b)) + float(np.min(b)))
    denom = 1.0 / dt + alpha_s + 0.5 * grid.mu**2
    rhs = phi_n / dt
    scale = float(np.max(np.abs(rhs)))
    if scale == 0.0:
        return np.zeros_like(phi_n)
    phi = phi_n
    residual = np.inf
    for _ in range(int(max_inner)):
        g = rhs + (alpha_s - b) * phi
        phi = grid.dst_inverse(grid.dst_forward(g) / denom)
        assembled = (phi - phi_n) / dt - 0.5 * grid.laplacian(phi) + b * phi
        residual = float(np.max(np.abs(assembled)))
        if residual <= tol_inner * scale:
            return phi
    raise ConvergenceError(
        f"implicit step did not converge in {max_inner} sweeps "
        f"(residual {residual:.3e}, target {tol_inner * scale:.3e})",
        residual=residual,
    )


def besp_normalize(grid: RadialGrid, phi_plus) -> np.ndarray:
    """Renormalize to unit discrete mass: phi+ / ||phi+||_h."""
    norm = grid.norm_h(phi_plus)
    if norm == 0.0:
        raise ConvergenceError("gradient flow collapsed to the zero field")
    return np.asarray(phi_plus) / norm


def _default_guess(grid):
    psi = np.pi**-0.75 * np.exp(-grid.r**2 / 2.0)
    return besp_normalize(grid, u_from_psi(grid, psi))


def compute_ground_state(
    grid: RadialGrid, params: PhysicsParams, config: GfdnConfig
) -> GroundStateResult:
    """Run the normalized gradient flow to stationarity.

    The energy along the iterates is monitored and a warning (not a failure)
    is emitted if it increases beyond round-off; the normalized discrete
    flow carries no monotonicity guarantee.  On hitting max_outer the result
    comes back with converged=False and the last residual instead of
    raising, so callers can inspect the partial state.
    """
    if config.initial_guess is not None:
        phi = np.asarray(config.initial_guess, dtype=float)
        grid._interior(phi)
        m = grid.norm_h(phi) ** 2
        if abs(m - 1.0) > 1e-12:
            raise ConfigError(
                f"gfdn: initial guess must have unit mass, got {m!r}"
            )
    else:
        phi = _default_guess(grid)

    energy_prev = None
    warned_energy = False
    residual = np.inf
    converged = False
    iterations = 0
    for iterations in range(1, config.max_outer + 1):
        vbar = solve_hartree_bar(grid, density_from_u(grid, phi))
        e_n = energy(grid, phi, vbar, params)
        if (
            not warned_energy
            and energy_prev is not None
            and e_n > energy_prev + 1e-10 * abs(energy_prev)
        ):
            warnings.warn(
                f"energy increased along the gradient flow at iteration "
                f"{iterations} ({energy_prev!r} -> {e_n!r})",
                stacklevel=2,
            )
            warned_energy = True
        energy_prev = e_n

        b = _bracket(grid, phi, vbar, params)
        phi_plus = besp_linear_solve(
            grid, phi, b, config.dt, config.tol_inner, config.max_inner
        )
        phi_new = besp_normalize(grid, phi_plus)
        residual = float(np.max(np.abs(phi_new - phi))) / config.dt
        phi = phi_new
        if residual <= config.tol_outer:
            converged = True
            break

    # the minimizer is unique up to sign; pin the first interior node >= 0
    if phi[0] < 0:
        phi = -phi
    vbar = solve_hartree_bar(grid, density_from_u(grid, phi))
    return GroundStateResult(
        phi_u=phi,
        phi_psi=psi_from_u(grid, phi),
        energy=energy(grid, phi, vbar, params),
        outer_iterations=iterations,
        residual=residual,
        converged=converged,
    )
