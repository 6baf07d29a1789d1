"""Entropy / entropy-flux pairs of the sBB system.

Every entropy has the form

    eta = rho (F(u + s v) + G(u - s v) + H(v + 1/rho))
    q   = (rho u + s) F(u + s v) + (rho u - s) G(u - s v) + rho u H(v + 1/rho)

for scalar functions F, G, H; convex F, G, H give a convex entropy.
In Lagrangian mass coordinates the pair becomes
``eta~ = F(nu + s kappa) + G(nu - s kappa) + H(omega + kappa)`` and
``q~ = s F(nu + s kappa) - s G(nu - s kappa)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import Params, PrimitiveState
from .errors import ArgumentError
from .numerics import PolynomialBump, locate_jumps, midpoint_nodes

__all__ = [
    "Quadratic",
    "Zero",
    "EntropyPair",
    "function_from_config",
    "entropy_value",
    "entropy_flux",
    "entropy_density",
    "entropy_flux_density",
    "lagrangian_pair",
    "weak_residual",
]


@dataclass(frozen=True)
class Quadratic:
    """``a (x - b)^2``; convex for ``a >= 0``."""

    a: float = 1.0
    b: float = 0.0

    def __call__(self, x):
        d = np.asarray(x, dtype=float) - self.b
        return self.a * d * d

    def derivative(self, x):
        return 2.0 * self.a * (np.asarray(x, dtype=float) - self.b)

    def to_config(self) -> dict:
        return {"family": "quadratic", "a": self.a, "b": self.b}


@dataclass(frozen=True)
class Zero:
    def __call__(self, x):
        return np.zeros_like(np.asarray(x, dtype=float))

    def derivative(self, x):
        return np.zeros_like(np.asarray(x, dtype=float))

    def to_config(self) -> dict:
        return {"family": "zero"}


def function_from_config(spec) -> Callable:
    """Build a built-in scalar function from ``{"family": ..., ...}``."""
    if spec is None:
        return Zero()
    family = spec.get("family")
    if family == "quadratic":
        return Quadratic(float(spec.get("a", 1.0)), float(spec.get("b", 0.0)))
    if family == "zero":
        return Zero()
    raise ArgumentError(f"unknown entropy function family {family!r}")


@dataclass(frozen=True)
class EntropyPair:
    """Generating functions ``F, G, H``.

    Derivative callbacks are optional and not used by the pair formulas.
    """

    F: Callable = Zero()
    G: Callable = Zero()
    H: Callable = Zero()
    dF: Optional[Callable] = None
    dG: Optional[Callable] = None
    dH: Optional[Callable] = None

    @classmethod
    def from_config(cls, spec: dict) -> "EntropyPair":
        funcs = {k: function_from_config(spec.get(k)) for k in ("F", "G", "H")}
        return cls(**funcs, dF=funcs["F"].derivative, dG=funcs["G"].derivative, dH=funcs["H"].derivative)

    def to_config(self) -> dict:
        out = {}
        for name in ("F", "G", "H"):
            fn = getattr(self, name)
            if not hasattr(fn, "to_config"):
                raise ArgumentError(f"{name} is not a built-in function and cannot be serialised")
            out[name] = fn.to_config()
        return out


def entropy_density(rho, u, v, s: float, pair: EntropyPair):
    """Array version of :func:`entropy_value`."""
    rho, u, v = (np.asarray(a, dtype=float) for a in (rho, u, v))
    return rho * (pair.F(u + s * v) + pair.G(u - s * v) + pair.H(v + 1.0 / rho))


def entropy_flux_density(rho, u, v, s: float, pair: EntropyPair):
    rho, u, v = (np.asarray(a, dtype=float) for a in (rho, u, v))
    m = rho * u
    return (m + s) * pair.F(u + s * v) + (m - s) * pair.G(u - s * v) + m * pair.H(v + 1.0 / rho)


def entropy_value(p: PrimitiveState, params: Params, pair: EntropyPair) -> float:
    return float(entropy_density(p.rho, p.u, p.v, params.s, pair))


def entropy_flux(p: PrimitiveState, params: Params, pair: EntropyPair) -> float:
    return float(entropy_flux_density(p.rho, p.u, p.v, params.s, pair))


def lagrangian_pair(state, params: Params, pair: EntropyPair) -> tuple[float, float]:
    """``(eta~, q~)`` for a state with attributes ``omega, nu, kappa``."""
    if not (state.omega > 0.0):
        raise ArgumentError(f"omega must be positive, got {state.omega!r}")
    s = params.s
    f = pair.F(state.nu + s * state.kappa)
    g = pair.G(state.nu - s * state.kappa)
    h = pair.H(state.omega + state.kappa)
    return float(f + g + h), float(s * f - s * g)


def weak_residual(sampler, params: Params, pair: EntropyPair, box, mesh: int, power: int = 2,
                  fit_jumps: bool = True) -> float:
    """``int int (eta phi_t + q phi_x) dx dt`` for a polynomial bump ``phi`` on ``box``.

    ``sampler(t, x)`` returns ``(rho, u, v)`` arrays.  The t-direction uses
    the ``mesh``-point midpoint rule.  In x the ``mesh`` cells are split at
    discontinuities located by bisection and each piece gets a 3-point
    Gauss rule, so piecewise-constant solutions are integrated exactly in x
    and the error is the second-order midpoint error in t.  Pass
    ``fit_jumps=False`` for continuous solutions to skip the bisection.
    """
    t0, t1, x0, x1 = box
    if not (t1 > t0 > 0.0 and x1 > x0):
        raise ArgumentError("box must satisfy 0 < t0 < t1 and x0 < x1")
    if mesh < 2:
        raise ArgumentError("mesh must be at least 2")
    phi = PolynomialBump(t0, t1, x0, x1, power)
    s = params.s
    tt, ht = midpoint_nodes(t0, t1, mesh)
    edges = np.linspace(x0, x1, mesh + 1)
    T = np.repeat(tt, mesh)
    A = np.tile(edges[:-1], mesh)
    B = np.tile(edges[1:], mesh)
    if fit_jumps:
        jt, jx = locate_jumps(sampler, T, A, B)
    else:
        jt, jx = np.empty(0), np.empty(0)
    gx, gw = np.polynomial.legendre.leggauss(3)
    total = 0.0
    row_of_jump = np.searchsorted(tt, jt)
    for i, t in enumerate(tt):
        cuts = np.sort(np.concatenate([edges, jx[row_of_jump == i]]))
        lo, hi = cuts[:-1], cuts[1:]
        half = 0.5 * (hi - lo)
        xq = (0.5 * (lo + hi))[:, None] + half[:, None] * gx[None, :]
        wq = half[:, None] * gw[None, :]
        tq = np.full_like(xq, t)
        rho, u, v = sampler(tq, xq)
        integrand = (entropy_density(rho, u, v, s, pair) * phi.dt(tq, xq)
                     + entropy_flux_density(rho, u, v, s, pair) * phi.dx(tq, xq))
        total += ht * float(np.sum(wq * integrand))
    return total
