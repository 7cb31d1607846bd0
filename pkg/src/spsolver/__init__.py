"""Sine-pseudospectral solvers for the spherically symmetric
Schrodinger-Poisson-Slater system in reduced radial variables."""

from .befd import BefdResult, befd_energy, befd_ground_state, befd_hartree, mass_3d
from .dynamics import (
    DynamicsTrace,
    TsspConfig,
    evolve,
    kinetic_half_step,
    potential_step,
    tssp_step,
)
from .errors import ConfigError, ConvergenceError, NumericalError
from .grid import RadialGrid
from .ground_state import (
    GfdnConfig,
    GroundStateResult,
    besp_linear_solve,
    besp_normalize,
    compute_ground_state,
    effective_potential,
)
from .model import (
    HarmonicPotential,
    ObservableSet,
    PhysicsParams,
    TabulatedPotential,
    ZeroPotential,
    energy,
    gaussian_initial,
    mass,
    psi_from_u,
    u_from_psi,
)
from .poisson import density_from_u, hartree_term, solve_hartree_bar

__version__ = "0.1.0"

__all__ = [
    "BefdResult",
    "ConfigError",
    "ConvergenceError",
    "DynamicsTrace",
    "GfdnConfig",
    "GroundStateResult",
    "HarmonicPotential",
    "NumericalError",
    "ObservableSet",
    "PhysicsParams",
    "RadialGrid",
    "TabulatedPotential",
    "TsspConfig",
    "ZeroPotential",
    "befd_energy",
    "befd_ground_state",
    "befd_hartree",
    "besp_linear_solve",
    "besp_normalize",
    "compute_ground_state",
    "density_from_u",
    "effective_potential",
    "energy",
    "evolve",
    "gaussian_initial",
    "hartree_term",
    "kinetic_half_step",
    "mass",
    "mass_3d",
    "potential_step",
    "psi_from_u",
    "solve_hartree_bar",
    "tssp_step",
    "u_from_psi",
]
