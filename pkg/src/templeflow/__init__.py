"""Exact solutions and validation tools for the simplified Bouchut-Boyaval system.

    rho_t + (rho u)_x = 0
    (rho u)_t + (rho u^2 + s^2 v)_x = 0
    (rho v)_t + (rho u v + u)_x = 0
"""

from .core import (
    ConservedState,
    Hypotheses,
    Params,
    PrimitiveState,
    RiemannInvariants,
    check_hypotheses,
    eigenvalues,
    riemann_invariants,
    right_eigenvectors,
    to_conserved,
    to_primitive,
)
from .riemann import RiemannClassification, WaveFan, classify, sample_fan, solve_classical
from .delta_shock import DeltaShockWave, solve_delta
from .cauchy import CauchySolver, PiecewiseConstantData, SampledData, solve_cauchy
from .entropy import EntropyPair, Quadratic, entropy_flux, entropy_value

__version__ = "0.1.0"

__all__ = [
    "ConservedState",
    "Hypotheses",
    "Params",
    "PrimitiveState",
    "RiemannInvariants",
    "check_hypotheses",
    "eigenvalues",
    "riemann_invariants",
    "right_eigenvectors",
    "to_conserved",
    "to_primitive",
    "RiemannClassification",
    "WaveFan",
    "classify",
    "sample_fan",
    "solve_classical",
    "DeltaShockWave",
    "solve_delta",
    "CauchySolver",
    "PiecewiseConstantData",
    "SampledData",
    "solve_cauchy",
    "EntropyPair",
    "Quadratic",
    "entropy_flux",
    "entropy_value",
]
