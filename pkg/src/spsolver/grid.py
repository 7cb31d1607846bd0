"""Uniform radial grid on [0, R] and the discrete sine transform machinery.

Fields with homogeneous Dirichlet ends are stored on the interior nodes
r_j = j*h_r, j = 1..J-1, only; the endpoint values at r_0 = 0 and r_J = R
are implicitly zero and never stored, which makes boundary violations
unrepresentable.

The transform pair expands such a field in the modes sin(k*pi*r/R) with
frequencies mu_k = k*pi/R:

    forward:  c_k = (2/J) * sum_{j=1}^{J-1} f_j sin(j*k*pi/J)
    inverse:  f_j = sum_{k=1}^{J-1} c_k sin(j*k*pi/J)

Both are evaluated in O(J log J) through the type-I DST of scipy.fft, whose
normalization differs from the sums above only by the constant factors J
(forward) and 2 (inverse).  The sine basis diagonalizes the second-derivative
operator with Dirichlet ends, so the spectral Laplacian is a multiplication
by -mu_k^2 in coefficient space.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.fft import dct, dst

from .errors import ConfigError


@dataclass(frozen=True)
class RadialGrid:
    """Truncated radial domain [0, R] with J uniform subintervals.

    J must be even (the fast transform length 2J stays a friendly FFT size
    and the midpoint r = R/2 is a node) and at least 4 so the interior is
    nonempty.  Node arrays are read-only; grids are safe to share.
    """

    R: float
    J: int
    h_r: float = field(init=False, repr=False)
    r: np.ndarray = field(init=False, repr=False)
    r_interior: np.ndarray = field(init=False, repr=False)
    mu: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        R = self.R
        J = self.J
        if not np.isfinite(R) or R <= 0:
            raise ConfigError(f"grid: R must be positive and finite, got R={R}")
        if int(J) != J:
            raise ConfigError(f"grid: J must be an integer, got J={J}")
        J = int(J)
        if J < 4:
            raise ConfigError(f"grid: J must be at least 4, got J={J}")
        if J % 2 != 0:
            raise ConfigError(f"grid: J must be even, got J={J}")
        object.__setattr__(self, "R", float(R))
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "h_r", float(R) / J)
        r = np.arange(J + 1) * self.h_r
        mu = np.arange(1, J) * (np.pi / float(R))
        for name, arr in (("r", r), ("r_interior", r[1:-1]), ("mu", mu)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    def _interior(self, values) -> np.ndarray:
        values = np.asarray(values)
        if values.shape != (self.J - 1,):
            raise ValueError(
                f"interior field must have length J-1 = {self.J - 1}, "
                f"got shape {values.shape}"
            )
        return values

    def dst_forward(self, f) -> np.ndarray:
        """Sine coefficients c_k = (2/J) sum_j f_j sin(j*k*pi/J), k = 1..J-1."""
        return dst(self._interior(f), type=1) / self.J

    def dst_inverse(self, coeffs) -> np.ndarray:
        """Nodal values f_j = sum_k c_k sin(j*k*pi/J), j = 1..J-1."""
        return dst(self._interior(coeffs), type=1) / 2.0

    def laplacian(self, f) -> np.ndarray:
        """Sine-pseudospectral second derivative: multiply by -mu_k^2 in
        coefficient space.  Exact for every discrete sine mode."""
        return self.dst_inverse(-self.mu**2 * self.dst_forward(f))

    def derivative_at_origin(self, coeffs) -> complex:
        """d/dr of the sine interpolant at r = 0, i.e. sum_k mu_k c_k."""
        return complex(np.sum(self.mu * self._interior(coeffs)))

    def derivative(self, f) -> np.ndarray:
        """d/dr of the sine interpolant at all nodes j = 0..J.

        The derivative of a sine series is the cosine series with
        coefficients mu_k c_k; the synthesis runs through the type-I DCT.
        """
        g = self.mu * self.dst_forward(f)
        padded = np.zeros(self.J + 1, dtype=g.dtype)
        padded[1:-1] = g
        return dct(padded, type=1) / 2.0

    def norm_h(self, f) -> float:
        """Discrete L2 norm sqrt(h_r * sum_j |f_j|^2) over interior nodes."""
        return float(np.sqrt(self.h_r * np.sum(np.abs(self._interior(f)) ** 2)))
