"""Residual checks behind ``templeflow validate``.

Each builder takes already-solved objects so a caller can hand in a
modified fan or wave and see the corresponding rows fail.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cauchy import CauchySolver, PiecewiseConstantData, entropy_residual_on_solution
from .core import Params, PrimitiveState, check_hypotheses, eigenvalues, riemann_invariants
from .delta_shock import DeltaShockWave, delta_condition_check, grh_residual
from .entropy import weak_residual
from .fv_oracle import l1_error, simulate, windowed_mass
from .riemann import WaveFan, rh_residual, sample_fan_arrays

__all__ = ["Check", "classical_checks", "delta_checks", "cauchy_checks", "format_table"]

RH_TOL = 1e-10
LAMBDA_TOL = 1e-12
ENTROPY_TOL = 1e-4
ENTROPY_MESH = 400
MASS_TOL = 0.15
ROUNDTRIP_TOL = 1e-8
CONSERVATION_TOL = 1e-12


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tol: float
    passed: bool

    def as_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "tol": self.tol, "pass": self.passed}


def _below(name, value, tol):
    value = float(value)
    return Check(name, value, tol, bool(value <= tol))


def _fan_window(speeds, t, x_range):
    reach = max(abs(s) for s in speeds) * t
    half = max(abs(x_range[0]), abs(x_range[1]), 1.5 * reach + 0.1)
    return -half, half


def classical_checks(fan: WaveFan, params: Params, pairs, oracle=None, x_range=(-1.0, 1.0)) -> list[Check]:
    rows = []
    states = fan.states
    for i, sigma in enumerate(fan.speeds):
        res = rh_residual(states[i], states[i + 1], sigma, params)
        rows.append(_below(f"rh_residual_{i + 1}", np.max(np.abs(res)), RH_TOL))
    for i in range(3):
        # the i-th eigenvalue is continuous across the i-th contact
        a = eigenvalues(states[i], params)[i]
        b = eigenvalues(states[i + 1], params)[i]
        rows.append(_below(f"lambda{i + 1}_constancy", abs(a - b), LAMBDA_TOL * max(1.0, abs(a))))
    s = params.s
    ul, ur = fan.left, fan.right
    gap = (eigenvalues(ur, params)[2] - eigenvalues(ul, params)[0]) / s
    margin = gap - abs(riemann_invariants(ur, params).R2 - riemann_invariants(ul, params).R2)
    rows.append(Check("gap_lemma_margin", float(margin), 0.0, bool(margin > 0.0)))
    reach = max(abs(v) for v in fan.speeds)
    box = (0.2, 1.0, -1.2 * reach - 0.1, 1.2 * reach + 0.1)
    sampler = lambda t, x: sample_fan_arrays(fan, t, x)  # noqa: E731
    for k, pair in enumerate(pairs):
        r = weak_residual(sampler, params, pair, box, ENTROPY_MESH)
        rows.append(_below(f"entropy_residual_{k + 1}", abs(r), ENTROPY_TOL))
    if oracle is not None:
        x_min, x_max = _fan_window(fan.speeds, oracle.t_end, x_range)
        data = PiecewiseConstantData.riemann(ul, ur, x_min, x_max)
        exact = lambda x: sample_fan_arrays(fan, oracle.t_end, x)  # noqa: E731
        coarse = simulate(data, oracle.t_end, oracle.n_cells, oracle.cfl, params)
        fine = simulate(data, oracle.t_end, 2 * oracle.n_cells, oracle.cfl, params)
        ratio = l1_error(coarse.grid, exact) / l1_error(fine.grid, exact)
        rows.append(Check("fv_l1_refinement_ratio", float(ratio), 1.0, bool(ratio > 1.0)))
        worst = max(coarse.max_conservation_defect, fine.max_conservation_defect)
        rows.append(_below("fv_conservation_defect", worst, CONSERVATION_TOL))
    return rows


def delta_checks(wave: DeltaShockWave, ul: PrimitiveState, ur: PrimitiveState, params: Params,
                 times=(0.5, 1.0, 5.0), oracle=None, x_range=(-1.0, 1.0)) -> list[Check]:
    rows = []
    for t in times:
        if t <= 0.0:
            continue
        res = grh_residual(wave, ul, ur, params, t)
        rows.append(_below(f"grh_residual_t={t:g}", np.max(np.abs(res)), RH_TOL * max(1.0, t)))
    lam1 = eigenvalues(ul, params)[0]
    lam3 = eigenvalues(ur, params)[2]
    margin = min(wave.u_delta - lam3, lam1 - wave.u_delta)
    rows.append(Check("entropy_condition_margin", float(margin), 0.0, bool(margin >= 0.0)))
    ok = delta_condition_check(ul, ur, params)
    rows.append(Check("delta_condition", float(ok), 1.0, bool(ok)))
    if oracle is not None:
        x_min, x_max = _fan_window((lam1, lam3, wave.u_delta), oracle.t_end, x_range)
        data = PiecewiseConstantData.riemann(ul, ur, x_min, x_max)
        run = simulate(data, oracle.t_end, oracle.n_cells, oracle.cfl, params)
        xd = wave.x(oracle.t_end)
        background = lambda x: np.where(x < xd, ul.rho, ur.rho)  # noqa: E731
        mass = windowed_mass(run.grid, xd, 40 * run.grid.dx, background)
        expected = wave.w(oracle.t_end)
        rows.append(_below("fv_windowed_mass_rel_error", abs(mass - expected) / expected, MASS_TOL))
        rows.append(_below("fv_conservation_defect", run.max_conservation_defect, CONSERVATION_TOL))
    return rows


def cauchy_checks(solver: CauchySolver, pairs, times, x_range, oracle=None, mesh: int = 64) -> list[Check]:
    rows = []
    report = check_hypotheses(*solver.data.samples(), solver.hypotheses, solver.params)
    checks = (("H1", report.h1_ok), ("H1_constants", report.constants_ok), ("H2", report.h2_ok), ("gap", report.gap_ok))
    for name, ok in checks:
        rows.append(Check(f"hypothesis_{name}", float(ok), 1.0, bool(ok)))
    x0, x1 = x_range
    t_max = max(times)
    y = np.linspace(solver.map.Y0(x0), solver.map.Y0(x1), 101)
    for t in times:
        back = solver.mass_coordinate(t, solver.position(t, y))
        rows.append(_below(f"roundtrip_t={t:g}", np.max(np.abs(back - y)), ROUNDTRIP_TOL))
    if t_max > 0.2:
        box = (0.2 * t_max, t_max, x0, x1)
        for k, pair in enumerate(pairs):
            r = entropy_residual_on_solution(solver, pair, box, mesh)
            rows.append(_below(f"entropy_residual_{k + 1}", abs(r), ENTROPY_TOL))
    if oracle is not None:
        exact = lambda x: solver.solve(oracle.t_end, x)  # noqa: E731
        coarse = simulate(solver.data, oracle.t_end, oracle.n_cells, oracle.cfl, solver.params, x0, x1)
        fine = simulate(solver.data, oracle.t_end, 2 * oracle.n_cells, oracle.cfl, solver.params, x0, x1)
        e0, e1 = l1_error(coarse.grid, exact), l1_error(fine.grid, exact)
        ratio = e0 / e1 if e1 > 0.0 else float("inf")
        rows.append(Check("fv_l1_refinement_ratio", float(ratio), 1.0, bool(ratio > 1.0 or e0 < 1e-12)))
    return rows


def format_table(rows) -> str:
    width = max([len(r.name) for r in rows] + [4])
    lines = [f"{'name':<{width}}  {'value':>24}  {'tol':>10}  result"]
    for r in rows:
        lines.append(f"{r.name:<{width}}  {r.value:>24.17g}  {r.tol:>10.3g}  {'PASS' if r.passed else 'FAIL'}")
    return "\n".join(lines)
