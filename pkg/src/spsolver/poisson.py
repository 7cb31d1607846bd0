"""Sine-pseudospectral solve of the homogenized Hartree problem.

The scaled Hartree potential V = 4*pi*r*V_P satisfies -V'' = |U|^2/r with
V(0) = 0 and V(R) = 1 on the truncated domain.  The linear translation
Vbar = V - r/R homogenizes the outer boundary, so Vbar expands in the sine
basis and the solve is a division by mu_k^2 in coefficient space:

    Vbar_j = sum_k mu_k^(-2) rho_k sin(j*k*pi/J),   rho_j = |U_j|^2 / r_j.

No mode is singular (mu_k > 0), and the residual identity
-laplacian(Vbar) = rho holds to round-off by construction.
"""

import numpy as np

from .grid import RadialGrid


def density_from_u(grid: RadialGrid, u) -> np.ndarray:
    """Source density rho_j = |U_j|^2 / r_j on interior nodes."""
    return np.abs(grid._interior(u)) ** 2 / grid.r_interior


def solve_hartree_bar(grid: RadialGrid, rho) -> np.ndarray:
    """Homogenized Hartree field Vbar with -Vbar'' = rho, zero at both ends."""
    return grid.dst_inverse(grid.dst_forward(rho) / grid.mu**2)


def hartree_term(grid: RadialGrid, vbar, c_p: float) -> np.ndarray:
    """Hartree contribution to the effective potential at interior nodes.

    W_j = C_P * Vbar_j / (4*pi*r_j) + C_P/(4*pi*R); the constant carries the
    r/R translation back into the potential.
    """
    vbar = grid._interior(vbar)
    return c_p * vbar / (4.0 * np.pi * grid.r_interior) + c_p / (4.0 * np.pi * grid.R)
