"""First-order finite-volume reference solver on the conservative form.

Global Lax-Friedrichs (Rusanov flux with one dissipation speed
``alpha = max |lambda|`` for the whole grid) and outflow boundaries.  It is
deliberately simple: it is used only to cross-check exact solutions.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass

import numpy as np

from .core import ConservedState, Params
from .errors import ArgumentError, BreakdownError, CFLError, DomainError

__all__ = [
    "Grid",
    "SimulationResult",
    "flux",
    "flux_array",
    "max_speed",
    "stable_dt",
    "lax_friedrichs_step",
    "conservation_defect",
    "simulate",
    "l1_error",
    "windowed_mass",
    "write_csv",
]

log = logging.getLogger(__name__)

MAX_CFL = 0.5
# slack on the CFL test so that dt = cfl*dx/alpha never trips on round-off
_CFL_SLACK = 1e-12


@dataclass(frozen=True)
class Grid:
    """Cell averages ``cells[j] = (rho, m, n)`` on a uniform grid."""

    x_min: float
    x_max: float
    cells: np.ndarray

    def __post_init__(self):
        cells = np.asarray(self.cells, dtype=float)
        if cells.ndim != 2 or cells.shape[1] != 3:
            raise ArgumentError("cells must have shape (n_cells, 3)")
        if cells.shape[0] < 4:
            raise ArgumentError(f"need at least 4 cells, got {cells.shape[0]}")
        if not (self.x_max > self.x_min):
            raise ArgumentError("empty window")
        if not np.all(cells[:, 0] > 0.0):
            raise DomainError("cell densities must be positive")
        object.__setattr__(self, "cells", cells)

    @property
    def n_cells(self) -> int:
        return self.cells.shape[0]

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_cells

    @property
    def centers(self) -> np.ndarray:
        return self.x_min + self.dx * (np.arange(self.n_cells) + 0.5)

    @property
    def edges(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_cells + 1)

    def totals(self) -> np.ndarray:
        return self.cells.sum(axis=0) * self.dx

    def primitive(self):
        rho, m, n = self.cells.T
        return rho, m / rho, n / rho

    @classmethod
    def from_initial_data(cls, data, n_cells: int, x_min=None, x_max=None) -> "Grid":
        """Exact cell averages of piecewise-constant data (trapezoidal for samples)."""
        lo, hi = data.window
        x_min = lo if x_min is None else x_min
        x_max = hi if x_max is None else x_max
        if n_cells < 4:
            raise ArgumentError(f"need at least 4 cells, got {n_cells}")
        edges = np.linspace(x_min, x_max, n_cells + 1)
        inner = data.breakpoints
        inner = inner[(inner > x_min) & (inner < x_max)]
        if inner.size == 0 and hasattr(data, "x"):
            inner = data.x[(data.x > x_min) & (data.x < x_max)]
        nodes = np.union1d(edges, inner)
        pieces = np.column_stack(data.interval_integrals(nodes))
        starts = np.searchsorted(nodes, edges[:-1])
        cells = np.add.reduceat(pieces, starts, axis=0) / np.diff(edges)[:, None]
        return cls(x_min, x_max, cells)

    @classmethod
    def from_function(cls, func, x_min: float, x_max: float, n_cells: int) -> "Grid":
        """Midpoint samples of a primitive-state function ``func(x) -> (rho, u, v)``."""
        x = x_min + (x_max - x_min) / n_cells * (np.arange(n_cells) + 0.5)
        rho, u, v = (np.broadcast_to(np.asarray(a, dtype=float), x.shape) for a in func(x))
        return cls(x_min, x_max, np.column_stack([rho, rho * u, rho * v]))


@dataclass(frozen=True)
class SimulationResult:
    grid: Grid
    steps: int
    t: float
    max_conservation_defect: float


def flux_array(cells, s: float) -> np.ndarray:
    cells = np.asarray(cells, dtype=float)
    rho, m, n = cells[..., 0], cells[..., 1], cells[..., 2]
    return np.stack([m, (m * m + s * s * n) / rho, (m * n + m) / rho], axis=-1)


def flux(c: ConservedState, params: Params) -> np.ndarray:
    """Conservative flux ``(m, m^2/rho + s^2 n/rho, m n/rho + m/rho)``."""
    return flux_array(c.as_array(), params.s)


def max_speed(grid: Grid, params: Params) -> float:
    rho, m, _ = grid.cells.T
    return float(np.max(np.abs(m / rho) + params.s / rho))


def stable_dt(grid: Grid, params: Params, cfl: float) -> float:
    return cfl * grid.dx / max_speed(grid, params)


def _interface_fluxes(cells, alpha, s):
    padded = np.concatenate([cells[:1], cells, cells[-1:]])
    f = flux_array(padded, s)
    return 0.5 * (f[1:] + f[:-1]) - 0.5 * alpha * (padded[1:] - padded[:-1])


def lax_friedrichs_step(grid: Grid, dt: float, params: Params, cfl: float = MAX_CFL) -> Grid:
    """One conservative update of length ``dt``.

    Raises :class:`CFLError` if ``dt`` exceeds ``cfl * dx / max|lambda|`` or
    ``cfl > 0.5``, and :class:`BreakdownError` if a density turns non-positive.
    """
    if not (0.0 < cfl <= MAX_CFL):
        raise CFLError(f"CFL number must lie in (0, {MAX_CFL}], got {cfl!r}")
    if not (dt > 0.0):
        raise CFLError(f"dt must be positive, got {dt!r}")
    alpha = max_speed(grid, params)
    if dt * alpha > cfl * grid.dx * (1.0 + _CFL_SLACK):
        raise CFLError(f"dt={dt!r} violates CFL {cfl} (limit {cfl * grid.dx / alpha!r})")
    F = _interface_fluxes(grid.cells, alpha, params.s)
    new = grid.cells - dt / grid.dx * (F[1:] - F[:-1])
    if not np.all(new[:, 0] > 0.0):
        bad = int(np.argmin(new[:, 0]))
        raise BreakdownError(f"density became non-positive in cell {bad} (rho={new[bad, 0]!r})")
    return Grid(grid.x_min, grid.x_max, new)


def conservation_defect(before: Grid, after: Grid, dt: float, params: Params) -> np.ndarray:
    """Relative defect of ``sum U dx`` per component after one step.

    Interior fluxes telescope; what crosses the two outflow boundaries is
    ``dt * f(edge cell)``, so the balance is
    ``sum(after) - sum(before) + dt (f(U_last) - f(U_first))``.
    """
    f_left = flux_array(before.cells[0], params.s)
    f_right = flux_array(before.cells[-1], params.s)
    balance = after.totals() - before.totals() + dt * (f_right - f_left)
    scale = np.abs(before.cells).sum(axis=0) * before.dx + dt * (np.abs(f_left) + np.abs(f_right))
    return np.abs(balance) / np.maximum(scale, np.finfo(float).tiny)


def simulate(data, t_end: float, n_cells: int, cfl: float, params: Params,
             x_min=None, x_max=None) -> SimulationResult:
    """Advance cell averages of ``data`` to exactly ``t_end``."""
    if t_end < 0.0:
        raise ArgumentError("t_end must be nonnegative")
    grid = data if isinstance(data, Grid) else Grid.from_initial_data(data, n_cells, x_min, x_max)
    t, steps, worst = 0.0, 0, 0.0
    while t < t_end:
        dt = min(stable_dt(grid, params, cfl), t_end - t)
        new = lax_friedrichs_step(grid, dt, params, cfl)
        worst = max(worst, float(np.max(conservation_defect(grid, new, dt, params))))
        grid = new
        t = t_end if dt == t_end - t else t + dt
        steps += 1
    log.debug("simulated %d steps on %d cells, max conservation defect %.3g", steps, grid.n_cells, worst)
    return SimulationResult(grid, steps, t, worst)


def l1_error(grid: Grid, other) -> float:
    """``sum |d rho| dx + sum |d m| dx + sum |d n| dx``.

    ``other`` is a grid on the same window and resolution, or a function
    ``x -> (rho, u, v)`` sampled at the cell centres.
    """
    if isinstance(other, Grid):
        if (other.x_min, other.x_max, other.n_cells) != (grid.x_min, grid.x_max, grid.n_cells):
            raise ArgumentError("grids cover different windows or resolutions")
        ref = other.cells
    else:
        ref = Grid.from_function(other, grid.x_min, grid.x_max, grid.n_cells).cells
    return float(np.sum(np.abs(grid.cells - ref)) * grid.dx)


def windowed_mass(grid: Grid, center: float, half_width: float, background=None) -> float:
    """``int (rho - background) dx`` over cells whose centre lies within ``half_width`` of ``center``.

    ``background`` maps cell centres to a density; ``None`` means zero.
    """
    x = grid.centers
    inside = np.abs(x - center) <= half_width
    rho = grid.cells[inside, 0]
    if background is not None:
        rho = rho - np.asarray(background(x[inside]), dtype=float)
    return float(np.sum(rho) * grid.dx)


def write_csv(grid: Grid, stream) -> None:
    """Rows ``x_center, rho, m, n`` with 17 significant digits."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["x_center", "rho", "m", "n"])
    for x, row in zip(grid.centers, grid.cells):
        writer.writerow(["%.17g" % x] + ["%.17g" % q for q in row])
