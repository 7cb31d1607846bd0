"""Shared test oracles: direct O(J^2) transform sums, dense operator
assembly, and closed-form reference states."""

import numpy as np


def dst_forward_direct(grid, f):
    """Brute-force c_k = (2/J) sum_j f_j sin(j*k*pi/J)."""
    j = np.arange(1, grid.J)
    k = np.arange(1, grid.J)
    table = np.sin(np.outer(j, k) * np.pi / grid.J)
    return (2.0 / grid.J) * (table.T @ np.asarray(f))


def dst_inverse_direct(grid, coeffs):
    """Brute-force f_j = sum_k c_k sin(j*k*pi/J)."""
    j = np.arange(1, grid.J)
    k = np.arange(1, grid.J)
    table = np.sin(np.outer(j, k) * np.pi / grid.J)
    return table @ np.asarray(coeffs)


def assemble_implicit_matrix(grid, b, dt):
    """Dense (J-1)x(J-1) matrix of (1/dt - 1/2 D + diag(b)) by applying the
    spectral operator to unit vectors."""
    n = grid.J - 1
    mat = np.zeros((n, n))
    for col in range(n):
        e = np.zeros(n)
        e[col] = 1.0
        mat[:, col] = -0.5 * grid.laplacian(e)
    mat += np.diag(np.asarray(b))
    mat += np.eye(n) / dt
    return mat


def harmonic_ground_psi(r):
    """Unit-mass ground state of the isotropic unit trap."""
    return np.pi**-0.75 * np.exp(-np.asarray(r) ** 2 / 2.0)


def gaussian_psi0(r):
    """Unit-mass Gaussian with the wider profile used as initial data."""
    return (2.0 * np.pi) ** -0.75 * np.exp(-np.asarray(r) ** 2 / 4.0)
