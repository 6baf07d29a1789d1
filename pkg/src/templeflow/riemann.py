"""Classical Riemann solver: three contact discontinuities.

For ``lambda1(Ul) < lambda3(Ur)`` the solution is the self-similar fan

    Ul | lambda1(Ul) | U* | u* | U** | lambda3(Ur) | Ur

where ``U*`` lies on the 1-contact curve of ``Ul`` and ``U**`` on the
3-contact curve through ``Ur``; the 2-contact between them carries a jump
in ``rho`` only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import Params, PrimitiveState, eigenvalues, riemann_invariants
from .errors import ArgumentError, ClassificationError

__all__ = [
    "RiemannClassification",
    "WaveFan",
    "contact_curve",
    "intermediate_states",
    "gap_lemma_check",
    "classify",
    "solve_classical",
    "sample_fan",
    "sample_fan_arrays",
    "rh_residual",
]

# relative tolerance for the measure-zero degenerate configuration
DEGENERATE_RTOL = 1e-12


class RiemannClassification(enum.Enum):
    CLASSICAL = "Classical"
    DELTA_SHOCK = "DeltaShock"
    DEGENERATE_NO_SOLUTION = "DegenerateNoSolution"


@dataclass(frozen=True)
class WaveFan:
    """Four constant states separated by the 1-, 2- and 3-contacts."""

    left: PrimitiveState
    star: PrimitiveState
    star2: PrimitiveState
    right: PrimitiveState
    speeds: tuple[float, float, float]

    def __post_init__(self):
        s1, s2, s3 = self.speeds
        if not (s1 <= s2 <= s3):
            raise ArgumentError(f"wave speeds must be ordered, got {self.speeds}")

    @property
    def states(self) -> tuple[PrimitiveState, ...]:
        return (self.left, self.star, self.star2, self.right)


def contact_curve(i: int, base: PrimitiveState, rho: float, params: Params) -> PrimitiveState:
    """State with depth ``rho`` on the ``i``-contact curve through ``base``."""
    s = params.s
    if i == 1:
        return PrimitiveState(rho, base.u - s / base.rho + s / rho, base.v + 1.0 / base.rho - 1.0 / rho)
    if i == 2:
        return PrimitiveState(rho, base.u, base.v)
    if i == 3:
        return PrimitiveState(rho, base.u + s / base.rho - s / rho, base.v + 1.0 / base.rho - 1.0 / rho)
    raise ArgumentError(f"wave family must be 1, 2 or 3, got {i!r}")


def _inverse_star_depths(ul: PrimitiveState, ur: PrimitiveState, params: Params) -> tuple[float, float]:
    s = params.s
    half_gap = (eigenvalues(ur, params)[2] - eigenvalues(ul, params)[0]) / (2.0 * s)
    half_jump = 0.5 * (riemann_invariants(ur, params).R2 - riemann_invariants(ul, params).R2)
    return half_gap - half_jump, half_gap + half_jump


def gap_lemma_check(ul: PrimitiveState, ur: PrimitiveState, params: Params) -> bool:
    """``|R2(Ur) - R2(Ul)| < (lambda3(Ur) - lambda1(Ul)) / s``.

    Equivalent to positivity of both intermediate depths.
    """
    s = params.s
    jump = riemann_invariants(ur, params).R2 - riemann_invariants(ul, params).R2
    return abs(jump) < (eigenvalues(ur, params)[2] - eigenvalues(ul, params)[0]) / s


def intermediate_states(ul: PrimitiveState, ur: PrimitiveState, params: Params) -> tuple[PrimitiveState, PrimitiveState]:
    """Middle states ``(U*, U**)`` of the classical fan."""
    s = params.s
    inv_star, inv_star2 = _inverse_star_depths(ul, ur, params)
    if not (inv_star > 0.0 and inv_star2 > 0.0):
        raise ClassificationError(
            f"inconsistent input: intermediate depths not positive (1/rho*={inv_star!r}, 1/rho**={inv_star2!r})",
            kind=RiemannClassification.DEGENERATE_NO_SOLUTION,
        )
    left_inv = ul.u + s * ul.v
    right_inv = ur.u - s * ur.v
    u_mid = 0.5 * (left_inv + right_inv)
    v_mid = (left_inv - right_inv) / (2.0 * s)
    return PrimitiveState(1.0 / inv_star, u_mid, v_mid), PrimitiveState(1.0 / inv_star2, u_mid, v_mid)


def _close(a: float, b: float, rtol: float = DEGENERATE_RTOL) -> bool:
    return abs(a - b) <= rtol * max(abs(a), abs(b), 1.0)


def _is_parallel_degenerate(ul: PrimitiveState, ur: PrimitiveState, params: Params) -> bool:
    lam1 = eigenvalues(ul, params)[0]
    lam3 = eigenvalues(ur, params)[2]
    return _close(lam1, lam3) and _close(ul.rho, ur.rho) and _close(ul.rho * ul.v, ur.rho * ur.v)


def classify(ul: PrimitiveState, ur: PrimitiveState, params: Params) -> RiemannClassification:
    """Decide which solution structure the Riemann data admits.

    Classical data must also pass the gap lemma; otherwise an intermediate
    depth would be non-positive and no physical fan exists.
    """
    from .delta_shock import delta_condition_check

    if _is_parallel_degenerate(ul, ur, params):
        return RiemannClassification.DEGENERATE_NO_SOLUTION
    lam1 = eigenvalues(ul, params)[0]
    lam3 = eigenvalues(ur, params)[2]
    if lam1 < lam3:
        if gap_lemma_check(ul, ur, params):
            return RiemannClassification.CLASSICAL
        return RiemannClassification.DEGENERATE_NO_SOLUTION
    if ul.rho == ur.rho and ul.u == ur.u:
        return RiemannClassification.DEGENERATE_NO_SOLUTION
    if delta_condition_check(ul, ur, params):
        return RiemannClassification.DELTA_SHOCK
    return RiemannClassification.DEGENERATE_NO_SOLUTION


def solve_classical(ul: PrimitiveState, ur: PrimitiveState, params: Params) -> WaveFan:
    kind = classify(ul, ur, params)
    if kind is not RiemannClassification.CLASSICAL:
        raise ClassificationError(f"Riemann data is {kind.value}, not Classical", kind=kind)
    star, star2 = intermediate_states(ul, ur, params)
    speeds = (eigenvalues(ul, params)[0], star.u, eigenvalues(ur, params)[2])
    return WaveFan(ul, star, star2, ur, speeds)


def _region(fan: WaveFan, xi):
    s1, s2, s3 = fan.speeds
    # half-open intervals [s1, s2), [s2, s3), [s3, inf)
    return (xi >= s1).astype(int) + (xi >= s2) + (xi >= s3)


def sample_fan(fan: WaveFan, t: float, x: float) -> PrimitiveState:
    """State of the fan at ``(t, x)``, ``t > 0``."""
    if not (t > 0.0):
        raise ArgumentError(f"t must be positive, got {t!r}")
    idx = int(_region(fan, np.asarray(x / t)))
    return fan.states[idx]


def sample_fan_arrays(fan: WaveFan, t: float, x) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised :func:`sample_fan` returning ``(rho, u, v)`` arrays; ``t`` may be an array."""
    t = np.asarray(t, dtype=float)
    if not np.all(t > 0.0):
        raise ArgumentError("t must be positive")
    x = np.asarray(x, dtype=float)
    idx = _region(fan, x / t)
    table = np.array([[st.rho, st.u, st.v] for st in fan.states])
    vals = table[idx]
    return vals[..., 0], vals[..., 1], vals[..., 2]


def rh_residual(left: PrimitiveState, right: PrimitiveState, sigma: float, params: Params) -> np.ndarray:
    """Rankine-Hugoniot residuals ``-sigma [q] + [f(q)]`` with ``[q] = q_left - q_right``."""
    s2 = params.s * params.s

    def cons(p):
        return np.array([p.rho, p.rho * p.u, p.rho * p.v])

    def flux(p):
        return np.array([p.rho * p.u, p.rho * p.u * p.u + s2 * p.v, p.rho * p.u * p.v + p.u])

    return -sigma * (cons(left) - cons(right)) + (flux(left) - flux(right))

