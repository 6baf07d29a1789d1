"""Explicit Cauchy solutions through the Euler-Lagrange transformation.

The change of variables ``dy = rho dx - rho u dt`` with
``Y0(x) = int_0^x rho0`` turns the sBB system into the linear system

    omega_t - nu_y = 0,  nu_t + s^2 kappa_y = 0,  kappa_t + nu_y = 0

for ``omega = 1/rho``, ``nu = u``, ``kappa = v``.  Its d'Alembert solution
is mapped back with the Eulerian position ``x = X(t, y)``, which is
strictly increasing in ``y`` while ``omega > 0``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import Hypotheses, Params, PrimitiveState, check_hypotheses
from .errors import ArgumentError, DomainError, InconsistencyError, PreconditionError
from .numerics import invert_monotone

__all__ = [
    "PiecewiseConstantData",
    "SampledData",
    "LagrangianMap",
    "LagrangianData",
    "LagrangianState",
    "build_lagrangian_map",
    "lagrangian_solution",
    "eulerian_position",
    "CauchySolver",
    "solve_cauchy",
    "entropy_residual_on_solution",
]

log = logging.getLogger(__name__)

DEFAULT_RESOLUTION = 4096


class PiecewiseConstantData:
    """Initial data constant on the segments ``[edges[i], edges[i+1])``.

    Outside ``[edges[0], edges[-1]]`` the boundary segments extend to
    infinity.  At an interior edge the right-hand value is taken.
    """

    def __init__(self, edges, rho, u, v):
        self.edges = np.asarray(edges, dtype=float)
        self.rho = np.asarray(rho, dtype=float)
        self.u = np.asarray(u, dtype=float)
        self.v = np.asarray(v, dtype=float)
        k = self.rho.size
        if k < 1 or self.edges.size != k + 1:
            raise ArgumentError("need len(edges) == len(rho) + 1 >= 2")
        if not (self.u.size == self.v.size == k):
            raise ArgumentError("rho, u, v must have the same length")
        if np.any(np.diff(self.edges) <= 0.0):
            raise ArgumentError("edges must be strictly increasing")
        if np.any(self.rho <= 0.0):
            raise DomainError("rho0 must be positive")

    @classmethod
    def riemann(cls, left: PrimitiveState, right: PrimitiveState, x_min: float, x_max: float, x0: float = 0.0):
        return cls([x_min, x0, x_max], [left.rho, right.rho], [left.u, right.u], [left.v, right.v])

    @property
    def window(self) -> tuple[float, float]:
        return float(self.edges[0]), float(self.edges[-1])

    @property
    def breakpoints(self) -> np.ndarray:
        return self.edges[1:-1]

    def _index(self, x):
        return np.searchsorted(self.breakpoints, x, side="right")

    def evaluate(self, x):
        idx = self._index(np.asarray(x, dtype=float))
        return self.rho[idx], self.u[idx], self.v[idx]

    def samples(self):
        return self.rho, self.u, self.v

    def interval_integrals(self, nodes):
        """Exact integrals of ``rho, rho u, rho v`` between consecutive nodes.

        ``nodes`` must contain every breakpoint inside its range.
        """
        mids = 0.5 * (nodes[1:] + nodes[:-1])
        dx = np.diff(nodes)
        rho, u, v = self.evaluate(mids)
        return rho * dx, rho * u * dx, rho * v * dx


class SampledData:
    """Uniform samples of ``(rho0, u0, v0)`` on ``[x_min, x_max]``, linearly interpolated.

    Outside the window the boundary samples are held constant.
    """

    def __init__(self, x_min, x_max, rho, u, v):
        self.rho = np.asarray(rho, dtype=float)
        self.u = np.asarray(u, dtype=float)
        self.v = np.asarray(v, dtype=float)
        if self.rho.size < 2 or not (self.rho.shape == self.u.shape == self.v.shape):
            raise ArgumentError("need at least two samples of equal length for rho, u, v")
        if not (x_max > x_min):
            raise ArgumentError("empty window")
        if np.any(self.rho <= 0.0):
            raise DomainError("rho0 must be positive")
        self.x_min = float(x_min)
        self.x_max = float(x_max)
        self.x = np.linspace(self.x_min, self.x_max, self.rho.size)

    @property
    def window(self) -> tuple[float, float]:
        return self.x_min, self.x_max

    @property
    def breakpoints(self) -> np.ndarray:
        return np.empty(0)

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        return np.interp(x, self.x, self.rho), np.interp(x, self.x, self.u), np.interp(x, self.x, self.v)

    def samples(self):
        return self.rho, self.u, self.v

    def interval_integrals(self, nodes):
        rho, u, v = self.evaluate(nodes)
        dx = np.diff(nodes)

        def trap(f):
            return 0.5 * (f[1:] + f[:-1]) * dx

        return trap(rho), trap(rho * u), trap(rho * v)


def _interp_linear_ext(q, xp, fp, slope_left, slope_right):
    q = np.asarray(q, dtype=float)
    out = np.interp(q, xp, fp)
    lo = q < xp[0]
    hi = q > xp[-1]
    if lo.any():
        out = np.where(lo, fp[0] + slope_left * (q - xp[0]), out)
    if hi.any():
        out = np.where(hi, fp[-1] + slope_right * (q - xp[-1]), out)
    return out


@dataclass(frozen=True, eq=False)
class LagrangianMap:
    """Tabulated ``Y0(x) = int_0^x rho0`` with the cumulative momentum and ``rho v``.

    ``m_table``/``n_table`` hold ``int_0^x rho0 u0`` and ``int_0^x rho0 v0``
    at ``x_table``; composed with ``X0`` they give the y-integrals of
    ``u0(X0)`` and ``v0(X0)`` needed by the Eulerian position.
    Beyond the table every quantity continues linearly with the boundary
    data.
    """

    x_table: np.ndarray
    y_table: np.ndarray
    m_table: np.ndarray
    n_table: np.ndarray
    left: tuple[float, float, float]
    right: tuple[float, float, float]

    @property
    def spacing(self) -> float:
        return float(np.max(np.diff(self.x_table)))

    def Y0(self, x):
        return _interp_linear_ext(x, self.x_table, self.y_table, self.left[0], self.right[0])

    def X0(self, y):
        return _interp_linear_ext(y, self.y_table, self.x_table, 1.0 / self.left[0], 1.0 / self.right[0])

    def momentum(self, y):
        """``int_0^y u0(X0(xi)) dxi``."""
        return _interp_linear_ext(y, self.y_table, self.m_table, self.left[1], self.right[1])

    def relaxed(self, y):
        """``int_0^y v0(X0(xi)) dxi``."""
        return _interp_linear_ext(y, self.y_table, self.n_table, self.left[2], self.right[2])


def build_lagrangian_map(data, resolution: int = DEFAULT_RESOLUTION) -> LagrangianMap:
    if resolution < 2:
        raise ArgumentError("resolution must be at least 2")
    x_min, x_max = data.window
    nodes = np.unique(np.concatenate([
        np.linspace(x_min, x_max, resolution),
        data.breakpoints,
        [0.0],
    ]))
    ints = data.interval_integrals(nodes)
    origin = int(np.searchsorted(nodes, 0.0))
    tables = []
    for f in ints:
        cum = np.concatenate([[0.0], np.cumsum(f)])
        tables.append(cum - cum[origin])
    y_table, m_table, n_table = tables
    if np.any(np.diff(y_table) <= 0.0):
        raise DomainError("Y0 is not strictly increasing; rho0 must be positive")
    left = tuple(float(a[0]) for a in data.evaluate(np.array([x_min - 1.0])))
    right = tuple(float(a[0]) for a in data.evaluate(np.array([x_max + 1.0])))
    return LagrangianMap(nodes, y_table, m_table, n_table, left, right)


@dataclass(frozen=True)
class LagrangianState:
    """``(omega, nu, kappa) = (1/rho, u, v)`` at a Lagrangian point (scalars or arrays)."""

    omega: object
    nu: object
    kappa: object

    def __post_init__(self):
        if not np.all(np.asarray(self.omega) > 0.0):
            raise DomainError("omega must be positive")


@dataclass(frozen=True)
class LagrangianData:
    """Initial data as functions of the mass coordinate ``y``."""

    omega0: Callable
    nu0: Callable
    kappa0: Callable

    @classmethod
    def from_eulerian(cls, data, lmap: LagrangianMap) -> "LagrangianData":
        def omega0(y):
            return 1.0 / data.evaluate(lmap.X0(y))[0]

        def nu0(y):
            return data.evaluate(lmap.X0(y))[1]

        def kappa0(y):
            return data.evaluate(lmap.X0(y))[2]

        return cls(omega0, nu0, kappa0)


def lagrangian_solution(ldata: LagrangianData, t, y, params: Params) -> LagrangianState:
    """d'Alembert solution of the Lagrangian system at ``(t, y)``, ``t >= 0``."""
    if np.any(np.asarray(t) < 0.0):
        raise ArgumentError("t must be nonnegative")
    s = params.s
    y = np.asarray(y, dtype=float)
    yp = y + s * t
    ym = y - s * t
    nu_p, nu_m = ldata.nu0(yp), ldata.nu0(ym)
    ka_p, ka_m = ldata.kappa0(yp), ldata.kappa0(ym)
    kappa = 0.5 * (ka_p + ka_m) - (nu_p - nu_m) / (2.0 * s)
    nu = 0.5 * (nu_p + nu_m) - 0.5 * s * (ka_p - ka_m)
    omega = ldata.omega0(y) + ldata.kappa0(y) - kappa
    if np.ndim(omega) == 0:
        return LagrangianState(float(omega), float(nu), float(kappa))
    return LagrangianState(omega, nu, kappa)


def eulerian_position(lmap: LagrangianMap, t, y, params: Params):
    """``X(t, y)`` with ``X(0, y) = X0(y)`` and ``dX/dy = omega``, ``dX/dt = nu``."""
    s = params.s
    y = np.asarray(y, dtype=float)
    yp = y + s * t
    ym = y - s * t
    return (
        (lmap.momentum(yp) - lmap.momentum(ym)) / (2.0 * s)
        + lmap.relaxed(y)
        + lmap.X0(y)
        - 0.5 * lmap.relaxed(yp)
        - 0.5 * lmap.relaxed(ym)
    )


class CauchySolver:
    """Global solution for data satisfying H1, H2 and the strict-gap condition.

    The Lagrangian map is built once; evaluations at different ``(t, x)``
    are independent.
    """

    def __init__(self, data, params: Params, hypotheses: Hypotheses, resolution: int = DEFAULT_RESOLUTION):
        report = check_hypotheses(*data.samples(), hypotheses, params)
        if not report.ok:
            failed = report.failed()
            raise PreconditionError(f"initial data violates {', '.join(failed)}", failed=failed)
        self.data = data
        self.params = params
        self.hypotheses = hypotheses
        self.map = build_lagrangian_map(data, resolution)
        log.debug("Lagrangian map with %d nodes", self.map.x_table.size)

    def position(self, t, y):
        return eulerian_position(self.map, t, y, self.params)

    def mass_coordinate(self, t, x):
        """``y = Y(t, x)``: inverse of the strictly increasing ``X(t, .)``."""
        x = np.asarray(x, dtype=float)
        guess = self.map.Y0(x)
        return invert_monotone(lambda y: self.position(t, y), x, guess - 1.0, guess + 1.0)

    def solve(self, t, x):
        """``(rho, u, v)`` arrays at times ``t >= 0`` and positions ``x`` (broadcast)."""
        t = np.asarray(t, dtype=float)
        if np.any(t < 0.0):
            raise ArgumentError("t must be nonnegative")
        s = self.params.s
        x = np.atleast_1d(np.asarray(x, dtype=float))
        t, x = np.broadcast_arrays(t, x)
        y = self.mass_coordinate(t, x)
        rho0, _, v0 = self.data.evaluate(self.map.X0(y))
        _, u_p, v_p = self.data.evaluate(self.map.X0(y + s * t))
        _, u_m, v_m = self.data.evaluate(self.map.X0(y - s * t))
        gamma_p, gamma_m = 0.5 * (u_p + u_m), 0.5 * (u_p - u_m)
        ups_p, ups_m = 0.5 * (v_p + v_m), 0.5 * (v_p - v_m)
        u = gamma_p - s * ups_m
        v = ups_p - gamma_m / s
        denom = 1.0 + rho0 * (v0 - v)
        if np.any(denom <= 0.0):
            raise InconsistencyError("non-positive density denominator")
        return rho0 / denom, u, v

    def state(self, t: float, x: float) -> PrimitiveState:
        rho, u, v = self.solve(t, x)
        return PrimitiveState(float(rho[0]), float(u[0]), float(v[0]))


def solve_cauchy(data, params: Params, t: float, x: float, hypotheses: Hypotheses,
                 resolution: int = DEFAULT_RESOLUTION) -> PrimitiveState:
    return CauchySolver(data, params, hypotheses, resolution).state(t, x)


def entropy_residual_on_solution(solver: CauchySolver, pair, box, mesh: int) -> float:
    """Weak entropy residual of the Cauchy solution over a space-time ``box``.

    Discontinuities are fitted only when the data has breakpoints.
    """
    from .entropy import weak_residual

    fit = solver.data.breakpoints.size > 0
    return weak_residual(solver.solve, solver.params, pair, box, mesh, fit_jumps=fit)
