"""Physical parameters, the psi <-> U change of variables, and the
conserved functionals of the reduced radial model.

For spherically symmetric states the 3D problem collapses to the half-line,
and the substitution U(r) = 2*sqrt(pi)*r*psi(r) turns the radial Laplacian
into a plain second derivative with U(0) = 0.  Mass and energy become
integrals over r alone:

    mass(U)   = int_0^inf |U|^2 dr
    energy(U) = int_0^inf [ 1/2 |U'|^2 + (V_ext + C_P*V/(8*pi*r)) |U|^2
                            - (3*alpha/4) (2*sqrt(pi)*r)^(-2/3) |U|^(8/3) ] dr

with V = 4*pi*r*V_P the scaled Hartree potential.  Discretely the mass and
the local terms use the interior rectangle sum h_r * sum_j, matching the
norm the gradient-flow normalization uses, and the kinetic term is evaluated
exactly through the sine-coefficient Parseval identity.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .grid import RadialGrid

TWO_SQRT_PI = 2.0 * np.sqrt(np.pi)


class HarmonicPotential:
    """Isotropic trap V_ext(r) = 0.5 * gamma^2 * r^2."""

    def __init__(self, gamma: float = 1.0):
        if not np.isfinite(gamma):
            raise ConfigError(f"potential: gamma must be finite, got {gamma}")
        self.gamma = float(gamma)

    def values(self, grid: RadialGrid) -> np.ndarray:
        return 0.5 * self.gamma**2 * grid.r**2

    def __repr__(self):
        return f"HarmonicPotential(gamma={self.gamma})"


class ZeroPotential:
    """Free case, V_ext = 0."""

    def values(self, grid: RadialGrid) -> np.ndarray:
        return np.zeros(grid.J + 1)

    def __repr__(self):
        return "ZeroPotential()"


class TabulatedPotential:
    """External potential sampled on the run grid's nodes r_0..r_J.

    Values must match the node count exactly; no interpolation is done, so
    the spectral accuracy of the solvers is not silently degraded.
    """

    def __init__(self, values):
        values = np.asarray(values, dtype=float)
        if values.ndim != 1:
            raise ConfigError("potential: tabulated values must be a 1-D sequence")
        if not np.all(np.isfinite(values)):
            raise ConfigError("potential: tabulated values must all be finite")
        values.flags.writeable = False
        self.node_values = values

    def values(self, grid: RadialGrid) -> np.ndarray:
        if self.node_values.shape != (grid.J + 1,):
            raise ConfigError(
                f"potential: tabulated values have length {len(self.node_values)}, "
                f"grid needs J+1 = {grid.J + 1}"
            )
        return self.node_values

    def __repr__(self):
        return f"TabulatedPotential(<{len(self.node_values)} values>)"


@dataclass(frozen=True)
class PhysicsParams:
    """Coupling constants and external potential.

    c_p > 0 is the repulsive Hartree coupling (c_p < 0 attractive); alpha
    is the local exchange coefficient, physically nonnegative.
    """

    c_p: float = 0.0
    alpha: float = 0.0
    potential: object = field(default_factory=ZeroPotential)

    def __post_init__(self):
        if not np.isfinite(self.c_p):
            raise ConfigError(f"params: c_p must be finite, got {self.c_p}")
        if not np.isfinite(self.alpha):
            raise ConfigError(f"params: alpha must be finite, got {self.alpha}")
        if self.alpha < 0:
            warnings.warn(
                "alpha < 0 flips the sign of the exchange term; "
                "physical electrons have alpha >= 0",
                stacklevel=2,
            )


@dataclass(frozen=True)
class ObservableSet:
    """Diagnostics recorded along a run."""

    time: float
    mass: float
    energy: float
    psi_origin_abs: float


def u_from_psi(grid: RadialGrid, psi) -> np.ndarray:
    """Reduced field U_j = 2*sqrt(pi)*r_j*psi_j on interior nodes.

    psi holds values on all nodes r_0..r_J; the endpoints are dropped since
    U(0) = 0 by construction and U(R) is pinned to zero by truncation.
    """
    psi = np.asarray(psi)
    if psi.shape != (grid.J + 1,):
        raise ValueError(f"psi must have J+1 = {grid.J + 1} values, got {psi.shape}")
    return TWO_SQRT_PI * grid.r_interior * psi[1:-1]


def psi_from_u(grid: RadialGrid, u) -> np.ndarray:
    """Recover psi on all nodes r_0..r_J from the reduced field.

    psi_j = U_j / (2*sqrt(pi)*r_j) away from the origin; at r = 0 the
    removable singularity is resolved by the sine-series derivative,
    psi_0 = (sum_k mu_k c_k) / (2*sqrt(pi)).  psi_J = 0 by truncation.
    """
    u = np.asarray(u)
    psi = np.zeros(grid.J + 1, dtype=np.result_type(u.dtype, float))
    psi[1:-1] = u / (TWO_SQRT_PI * grid.r_interior)
    origin = grid.derivative_at_origin(grid.dst_forward(u)) / TWO_SQRT_PI
    psi[0] = origin if np.iscomplexobj(psi) else origin.real
    return psi


def mass(grid: RadialGrid, u) -> float:
    """Discrete mass h_r * sum_j |U_j|^2 (the squared h-norm)."""
    return grid.norm_h(u) ** 2


def energy(grid: RadialGrid, u, vbar, params: PhysicsParams) -> float:
    """Discrete energy of the reduced field.

    vbar is the homogenized Hartree field V - r/R computed from this same u
    (the functional is defined through the self-consistent Poisson solve, so
    the caller supplies it; see ``poisson.solve_hartree_bar``).  The kinetic
    term uses the Parseval form (R/4) * sum_k mu_k^2 |c_k|^2; the local terms
    use the interior rectangle sum.
    """
    u = np.asarray(u)
    coeffs = grid.dst_forward(u)
    kinetic = 0.25 * grid.R * np.sum(grid.mu**2 * np.abs(coeffs) ** 2)
    dens = np.abs(u) ** 2
    r = grid.r_interior
    vext = np.asarray(params.potential.values(grid))[1:-1]
    external = grid.h_r * np.sum(vext * dens)
    hartree = (
        grid.h_r
        * (params.c_p / (8.0 * np.pi))
        * np.sum((np.asarray(vbar) / r + 1.0 / grid.R) * dens)
    )
    slater = (
        -0.75
        * params.alpha
        * grid.h_r
        * np.sum((TWO_SQRT_PI * r) ** (-2.0 / 3.0) * np.abs(u) ** (8.0 / 3.0))
    )
    return float(kinetic + external + hartree + slater)


def gaussian_initial(grid: RadialGrid, sigma: float = 1.0) -> np.ndarray:
    """Unit-mass Gaussian initial state in reduced variables.

    Samples psi_0(r) = (2*pi*sigma^2)^(-3/4) * exp(-r^2/(4*sigma^2)), whose
    continuum mass is exactly 1, and maps it to U.  Warns when the discrete
    mass deviates from 1 by more than 1e-6, which signals a domain too small
    for the Gaussian tail.
    """
    if not np.isfinite(sigma) or sigma <= 0:
        raise ConfigError(f"gaussian_initial: sigma must be positive, got {sigma}")
    psi = (2.0 * np.pi * sigma**2) ** (-0.75) * np.exp(-grid.r**2 / (4.0 * sigma**2))
    u = u_from_psi(grid, psi)
    m = mass(grid, u)
    if abs(m - 1.0) > 1e-6:
        warnings.warn(
            f"discrete mass of the Gaussian initial state is {m:.3e}; "
            "domain radius R is likely too small",
            stacklevel=2,
        )
    return u
