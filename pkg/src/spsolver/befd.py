"""Backward Euler finite-difference reference solver on the untransformed
radial model.

This is the benchmark companion of the spectral ground-state solver: the
same normalized gradient flow, but second-order centered differences of the
radial Laplacian psi'' + (2/r) psi' acting on psi itself (all nodes r_0..r_J,
Neumann at the origin, Dirichlet at R), and a finite-difference Hartree
solve of

    -(V_P'' + (2/r) V_P') = |psi|^2,   V_P'(0) = 0,   V_P'(R) + V_P(R)/R = 0.

The Robin closure is the exact far-field relation of a monopole, which the
unit-mass density satisfies once the domain holds essentially all of it.
At r = 0 the removable singularity is handled by even reflection, where the
operator limit is 3 psi''(0).  Everything reduces to tridiagonal solves.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .errors import ConfigError
from .grid import RadialGrid
from .ground_state import GfdnConfig
from .model import TWO_SQRT_PI, PhysicsParams


@dataclass(frozen=True)
class BefdResult:
    """Ground state in psi variables on all nodes, with its Hartree field."""

    phi: np.ndarray
    vp: np.ndarray
    energy: float
    outer_iterations: int
    residual: float
    converged: bool


def mass_3d(grid: RadialGrid, phi) -> float:
    """Trapezoidal 3D mass 4*pi*h_r*sum_j w_j r_j^2 |phi_j|^2."""
    phi = np.asarray(phi)
    w = np.ones(grid.J + 1)
    w[0] = w[-1] = 0.5
    return float(4.0 * np.pi * grid.h_r * np.sum(w * grid.r**2 * np.abs(phi) ** 2))


def befd_hartree(grid: RadialGrid, phi) -> np.ndarray:
    """Second-order finite-difference Hartree potential V_P on all nodes."""
    phi = np.asarray(phi)
    if phi.shape != (grid.J + 1,):
        raise ValueError(f"phi must have J+1 = {grid.J + 1} values, got {phi.shape}")
    J, h, R, r = grid.J, grid.h_r, grid.R, grid.r
    rho = np.abs(phi) ** 2

    lower = np.zeros(J + 1)
    diag = np.zeros(J + 1)
    upper = np.zeros(J + 1)
    # origin: operator limit 3 V'' with even ghost V_{-1} = V_1
    diag[0] = 6.0 / h**2
    upper[1] = -6.0 / h**2
    j = np.arange(1, J)
    diag[j] = 2.0 / h**2
    lower[j - 1] = -(1.0 / h**2 - 1.0 / (h * r[j]))
    upper[j + 1] = -(1.0 / h**2 + 1.0 / (h * r[j]))
    # outer: Robin ghost V_{J+1} = V_{J-1} - 2h V_J / R
    diag[J] = 2.0 / h**2 + 2.0 / (h * R) + 2.0 / R**2
    lower[J - 1] = -2.0 / h**2

    ab = np.zeros((3, J + 1))
    ab[0, 1:] = upper[1:]
    ab[1, :] = diag
    ab[2, :-1] = lower[:-1]
    return solve_banded((1, 1), ab, rho)


def _implicit_step(grid, psi, ceff, dt):
    """Solve (1/dt - 1/2 L + diag(ceff)) phi+ = psi/dt with phi+_J = 0."""
    J, h, r = grid.J, grid.h_r, grid.r
    n = J  # unknowns j = 0..J-1
    lower = np.zeros(n)
    diag = np.zeros(n)
    upper = np.zeros(n)
    # origin: L|_0 = 6 (psi_1 - psi_0) / h^2 from the even ghost
    diag[0] = 1.0 / dt + 3.0 / h**2 + ceff[0]
    upper[1] = -3.0 / h**2
    j = np.arange(1, n)
    diag[j] = 1.0 / dt + 1.0 / h**2 + ceff[j]
    lower[j - 1] = -0.5 * (1.0 / h**2 - 1.0 / (h * r[j]))
    jj = j[:-1]  # the j = J-1 superdiagonal entry hits psi_J = 0 and drops
    upper[jj + 1] = -0.5 * (1.0 / h**2 + 1.0 / (h * r[jj]))

    ab = np.zeros((3, n))
    ab[0, 1:] = upper[1:]
    ab[1, :] = diag
    ab[2, :-1] = lower[:-1]
    phi_plus = solve_banded((1, 1), ab, psi[:n] / dt)
    return np.concatenate([phi_plus, [0.0]])


def _derivative_fd4(phi, h):
    """Fourth-order first derivative on all nodes.

    Even reflection across the origin (radial fields are even in r); beyond
    R the field is extended by zero, which is adequate only for states that
    have decayed there, the regime this diagnostic is used in.
    """
    padded = np.concatenate([phi[2:0:-1], phi, [0.0, 0.0]])
    i = np.arange(2, 2 + len(phi))
    return (padded[i - 2] - 8 * padded[i - 1] + 8 * padded[i + 1] - padded[i + 2]) / (
        12.0 * h
    )


def befd_energy(grid: RadialGrid, phi, params: PhysicsParams, vp=None) -> float:
    """Energy of a psi-space state by finite differences and trapezoid sums.

    Independent of the spectral machinery: the derivative is a fourth-order
    stencil and the quadrature trapezoidal, so the value is limited by the
    quadrature, not by the O(h^2) accuracy of the state itself.
    """
    phi = np.asarray(phi)
    if vp is None:
        vp = befd_hartree(grid, phi)
    vext = np.asarray(params.potential.values(grid))
    dphi = _derivative_fd4(phi, grid.h_r)
    w = np.ones(grid.J + 1)
    w[0] = w[-1] = 0.5
    integrand = (
        0.5 * dphi**2
        + (vext + 0.5 * params.c_p * vp) * np.abs(phi) ** 2
        - 0.75 * params.alpha * np.abs(phi) ** (8.0 / 3.0)
    )
    return float(4.0 * np.pi * grid.h_r * np.sum(w * grid.r**2 * integrand))


def befd_ground_state(
    grid: RadialGrid, params: PhysicsParams, config: GfdnConfig
) -> BefdResult:
    """Normalized gradient flow with the finite-difference spatial operator.

    Shares the outer loop, stopping rule, and tolerances with the spectral
    solver so that cross-method comparisons isolate the spatial
    discretization.  The initial guess, when given in reduced variables, is
    converted by psi_j = U_j/(2*sqrt(pi)*r_j) with the origin filled by the
    even-symmetry extrapolation (4 psi_1 - psi_2)/3.
    """
    if config.initial_guess is not None:
        u = np.asarray(config.initial_guess, dtype=float)
        grid._interior(u)
        psi = np.zeros(grid.J + 1)
        psi[1:-1] = u / (TWO_SQRT_PI * grid.r_interior)
        psi[0] = (4.0 * psi[1] - psi[2]) / 3.0
    else:
        psi = np.pi**-0.75 * np.exp(-grid.r**2 / 2.0)
        psi[-1] = 0.0
    m = mass_3d(grid, psi)
    if m == 0.0:
        raise ConfigError("befd: initial guess has zero mass")
    psi = psi / np.sqrt(m)

    vext = np.asarray(params.potential.values(grid))
    residual = np.inf
    converged = False
    iterations = 0
    vp = befd_hartree(grid, psi)
    for iterations in range(1, config.max_outer + 1):
        ceff = vext + params.c_p * vp - params.alpha * np.abs(psi) ** (2.0 / 3.0)
        phi_plus = _implicit_step(grid, psi, ceff, config.dt)
        psi_new = phi_plus / np.sqrt(mass_3d(grid, phi_plus))
        residual = float(np.max(np.abs(psi_new - psi))) / config.dt
        psi = psi_new
        vp = befd_hartree(grid, psi)
        if residual <= config.tol_outer:
            converged = True
            break

    if psi[1] < 0:
        psi = -psi
    return BefdResult(
        phi=psi,
        vp=vp,
        energy=befd_energy(grid, psi, params, vp),
        outer_iterations=iterations,
        residual=residual,
        converged=converged,
    )
