"""Delta-shock Riemann solutions for ``lambda1(Ul) >= lambda3(Ur)``.

When the 1-characteristics from the left overtake the 3-characteristics
from the right no fan of contacts exists and mass concentrates on a
single line ``x = u_delta t`` as a Dirac measure of weight
``w(t) = w_slope t``.  The speed, weight and transported value ``g``
follow from the generalized Rankine-Hugoniot relation

    dx/dt      = u_delta
    dw/dt      = -[rho] u_delta + [rho u]
    d(w u_d)/dt = -[rho u] u_delta + [rho u^2 + s^2 v]
    d(w g)/dt  = -[rho v] u_delta + [rho u v + u]

with jumps ``[q] = q_l - q_r`` and ``x(0) = w(0) = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Params, PrimitiveState, eigenvalues, riemann_invariants
from .errors import ArgumentError, ClassificationError, InconsistencyError
from .numerics import BumpTest, gauss_legendre

__all__ = [
    "DeltaShockWave",
    "Jumps",
    "jumps",
    "discriminants",
    "delta_condition_check",
    "quadratic_roots",
    "solve_delta",
    "entropy_check",
    "grh_residual",
    "measure_residuals",
]


@dataclass(frozen=True)
class DeltaShockWave:
    """Delta shock ``(w(t) delta(x - u_delta t), u_delta, g)``."""

    u_delta: float
    w_slope: float
    g: float

    def __post_init__(self):
        if self.w_slope < 0.0:
            raise ArgumentError(f"w_slope must be nonnegative, got {self.w_slope!r}")

    def x(self, t):
        return self.u_delta * t

    def w(self, t):
        return self.w_slope * t

    def as_dict(self) -> dict:
        return {"u_delta": self.u_delta, "w_slope": self.w_slope, "g": self.g}


@dataclass(frozen=True)
class Jumps:
    """Jumps ``q_l - q_r`` of the conserved quantities and fluxes."""

    rho: float
    m: float
    n: float
    flux_m: float
    flux_n: float
    u: float
    v: float


def jumps(ul: PrimitiveState, ur: PrimitiveState, params: Params) -> Jumps:
    s2 = params.s ** 2
    return Jumps(
        rho=ul.rho - ur.rho,
        m=ul.rho * ul.u - ur.rho * ur.u,
        n=ul.rho * ul.v - ur.rho * ur.v,
        flux_m=(ul.rho * ul.u * ul.u + s2 * ul.v) - (ur.rho * ur.u * ur.u + s2 * ur.v),
        flux_n=(ul.rho * ul.u * ul.v + ul.u) - (ur.rho * ur.u * ur.v + ur.u),
        u=ul.u - ur.u,
        v=ul.v - ur.v,
    )


def discriminants(ul: PrimitiveState, ur: PrimitiveState, params: Params) -> tuple[float, float]:
    """Reduced discriminant of the speed quadratic, computed two ways.

    ``[rho u]^2 - [rho][rho u^2 + s^2 v]`` and the factored form
    ``rho_l rho_r [u]^2 - s^2 [rho][v]``; they agree identically.
    """
    j = jumps(ul, ur, params)
    return (
        j.m * j.m - j.rho * j.flux_m,
        ul.rho * ur.rho * j.u * j.u - params.s ** 2 * j.rho * j.v,
    )


def delta_condition_check(ul: PrimitiveState, ur: PrimitiveState, params: Params) -> bool:
    """Sufficient condition for an admissible delta shock.

    ``(lambda1(Ul) - lambda3(Ur))^2 / 2 >= max(-s^2/rho_r dR2, s^2/rho_l dR2)``
    with ``dR2 = R2(Ur) - R2(Ul)``.
    """
    s2 = params.s ** 2
    gap = eigenvalues(ul, params)[0] - eigenvalues(ur, params)[2]
    d_r2 = riemann_invariants(ur, params).R2 - riemann_invariants(ul, params).R2
    return 0.5 * gap * gap >= max(-s2 / ur.rho * d_r2, s2 / ul.rho * d_r2)


def quadratic_roots(ul: PrimitiveState, ur: PrimitiveState, params: Params) -> tuple[float, float]:
    """Both roots of ``[rho] u^2 - 2 [rho u] u + [rho u^2 + s^2 v] = 0``, ascending."""
    j = jumps(ul, ur, params)
    if j.rho == 0.0:
        raise ArgumentError("speed equation is linear when [rho] = 0")
    disc = j.m * j.m - j.rho * j.flux_m
    if disc < 0.0:
        raise InconsistencyError(f"negative discriminant {disc!r}")
    root = math.sqrt(disc)
    q = j.m + math.copysign(root, j.m) if j.m != 0.0 else root
    if q == 0.0:
        return (0.0, 0.0)
    a, b = q / j.rho, j.flux_m / q
    return (min(a, b), max(a, b))


def entropy_check(wave: DeltaShockWave, ul: PrimitiveState, ur: PrimitiveState, params: Params, tol: float = 0.0) -> bool:
    """Admissibility ``lambda3(Ur) <= u_delta <= lambda1(Ul)`` (closed, up to ``tol``)."""
    lam1 = eigenvalues(ul, params)[0]
    lam3 = eigenvalues(ur, params)[2]
    return lam3 - tol <= wave.u_delta <= lam1 + tol


def _speed(j: Jumps, root: float) -> float:
    # ([rho u] - sqrt(D)) / [rho], rationalised so that [rho] = 0 is covered
    denom = j.m + root
    if denom > 0.0:
        return j.flux_m / denom
    return (j.m - root) / j.rho


def solve_delta(ul: PrimitiveState, ur: PrimitiveState, params: Params) -> DeltaShockWave:
    """Unique admissible delta shock for the Riemann data ``(Ul, Ur)``.

    ``g`` comes from the integrated third relation
    ``w(t) g = -[rho v] x(t) + [rho u v + u] t``, so it is constant in t.
    """
    from .riemann import RiemannClassification, classify

    kind = classify(ul, ur, params)
    if kind is not RiemannClassification.DELTA_SHOCK:
        raise ClassificationError(f"Riemann data is {kind.value}, not DeltaShock", kind=kind)
    lam1 = eigenvalues(ul, params)[0]
    lam3 = eigenvalues(ur, params)[2]
    j = jumps(ul, ur, params)
    disc = j.m * j.m - j.rho * j.flux_m
    if not disc > 0.0:
        raise InconsistencyError(f"discriminant must be positive, got {disc!r}")
    root = math.sqrt(disc)
    u_delta = _speed(j, root)
    g = (-j.n * u_delta + j.flux_n) / root
    wave = DeltaShockWave(u_delta, root, g)
    scale = max(abs(lam1), abs(lam3), 1.0)
    if not entropy_check(wave, ul, ur, params, tol=1e-12 * scale):
        raise ClassificationError(
            "no admissible delta shock: selected root violates the entropy condition",
            kind=RiemannClassification.DEGENERATE_NO_SOLUTION,
        )
    return wave


def grh_residual(wave: DeltaShockWave, ul: PrimitiveState, ur: PrimitiveState, params: Params, t: float) -> np.ndarray:
    """Residuals of the integrated generalized Rankine-Hugoniot relation at time ``t``.

    Entries: path ``x - u_delta t``, mass ``w + [rho] x - [rho u] t``,
    momentum ``w u_delta + [rho u] x - [rho u^2 + s^2 v] t`` and
    ``w g + [rho v] x - [rho u v + u] t``.
    """
    if not (t > 0.0):
        raise ArgumentError(f"t must be positive, got {t!r}")
    j = jumps(ul, ur, params)
    x = wave.x(t)
    w = wave.w(t)
    return np.array([
        x - wave.u_delta * t,
        w - (-j.rho * x + j.m * t),
        w * wave.u_delta - (-j.m * x + j.flux_m * t),
        w * wave.g - (-j.n * x + j.flux_n * t),
    ])


def measure_residuals(
    wave: DeltaShockWave,
    ul: PrimitiveState,
    ur: PrimitiveState,
    params: Params,
    phi: BumpTest,
    nodes: int = 160,
) -> np.ndarray:
    """Weak-form integrals ``(I1, I2, I3)`` of the measure solution against ``phi``.

    The bulk terms are integrated in sheared coordinates ``xi = x - u_delta t``
    so the discontinuity is a fixed line; each side gets its own Gauss rule.
    The delta part contributes ``int w(t) (phi_t + u_delta phi_x)(t, x(t)) {1, u_delta, g} dt``.
    """
    s2 = params.s ** 2
    t0, t1, x0, x1 = phi.box
    if t0 <= 0.0:
        raise ArgumentError("test function support must lie in t > 0")
    tt, wt = gauss_legendre(t0, t1, nodes)
    total = np.zeros(3)
    for t, weight in zip(tt, wt):
        xs = wave.x(t)
        for state, lo, hi in ((ul, x0, min(x1, xs)), (ur, max(x0, xs), x1)):
            if hi <= lo:
                continue
            xq, wq = gauss_legendre(lo, hi, nodes)
            pt = phi.dt(t, xq)
            px = phi.dx(t, xq)
            rho, u, v = state.rho, state.u, state.v
            adv = pt + u * px
            total[0] += weight * np.sum(wq * rho * adv)
            total[1] += weight * np.sum(wq * (rho * u * adv + s2 * v * px))
            total[2] += weight * np.sum(wq * (rho * v * adv + u * px))
    # concentrated part along the path
    xp = wave.x(tt)
    along = phi.dt(tt, xp) + wave.u_delta * phi.dx(tt, xp)
    carried = wt * wave.w(tt) * along
    total += np.array([1.0, wave.u_delta, wave.g]) * np.sum(carried)
    return total
