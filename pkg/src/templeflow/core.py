"""State types, eigenstructure and Riemann invariants of the sBB system.

The simplified Bouchut-Boyaval (sBB) system reads

    rho_t + (rho u)_x = 0
    (rho u)_t + (rho u^2 + s^2 v)_x = 0
    (rho v)_t + (rho u v + u)_x = 0

with a constant stress parameter ``s > 0``.  All three characteristic
fields are linearly degenerate, so every elementary wave is a contact
discontinuity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError, DomainError

__all__ = [
    "Params",
    "PrimitiveState",
    "ConservedState",
    "RiemannInvariants",
    "Hypotheses",
    "HypothesesReport",
    "to_conserved",
    "to_primitive",
    "eigenvalues",
    "riemann_invariants",
    "eigenvalues_from_invariants",
    "right_eigenvectors",
    "check_hypotheses",
    "total_variation",
]


def _check_rho(rho):
    if not (rho > 0.0) or not math.isfinite(rho):
        raise DomainError(f"rho must be positive and finite (vacuum is unsupported), got {rho!r}")


@dataclass(frozen=True)
class Params:
    """Model constants.  Only the stress constant ``s`` enters the sBB system."""

    s: float

    def __post_init__(self):
        if not (self.s > 0.0) or not math.isfinite(self.s):
            raise ArgumentError(f"s must be positive, got {self.s!r}")


@dataclass(frozen=True)
class PrimitiveState:
    """Layer depth ``rho``, velocity ``u`` and relaxed pressure ``v = pi/s^2``."""

    rho: float
    u: float
    v: float

    def __post_init__(self):
        _check_rho(self.rho)

    def as_array(self) -> np.ndarray:
        return np.array([self.rho, self.u, self.v])


@dataclass(frozen=True)
class ConservedState:
    """Conservative variables ``(rho, m, n) = (rho, rho u, rho v)``."""

    rho: float
    m: float
    n: float

    def __post_init__(self):
        _check_rho(self.rho)

    def as_array(self) -> np.ndarray:
        return np.array([self.rho, self.m, self.n])


@dataclass(frozen=True)
class RiemannInvariants:
    R1: float
    R2: float
    R3: float


def to_conserved(p: PrimitiveState) -> ConservedState:
    return ConservedState(p.rho, p.rho * p.u, p.rho * p.v)


def to_primitive(c: ConservedState) -> PrimitiveState:
    return PrimitiveState(c.rho, c.m / c.rho, c.n / c.rho)


def eigenvalues(p: PrimitiveState, params: Params) -> tuple[float, float, float]:
    """Characteristic speeds ``(u - s/rho, u, u + s/rho)``."""
    gap = params.s / p.rho
    return (p.u - gap, p.u, p.u + gap)


def riemann_invariants(p: PrimitiveState, params: Params) -> RiemannInvariants:
    """``R1 = s^2 v - s u``, ``R2 = v + 1/rho``, ``R3 = s^2 v + s u``."""
    s = params.s
    r = RiemannInvariants(s * s * p.v - s * p.u, p.v + 1.0 / p.rho, s * s * p.v + s * p.u)
    # R3 - R1 = 2 s u up to rounding of the two products
    scale = max(abs(r.R1), abs(r.R3), abs(2.0 * s * p.u), 1.0)
    if abs((r.R3 - r.R1) - 2.0 * s * p.u) > 1e-12 * scale:
        raise ArgumentError("inconsistent Riemann invariants (R3 - R1 != 2 s u)")
    return r


def eigenvalues_from_invariants(r: RiemannInvariants, params: Params) -> tuple[float, float, float]:
    s = params.s
    return (r.R3 / s - s * r.R2, (r.R3 - r.R1) / (2.0 * s), s * r.R2 - r.R1 / s)


def right_eigenvectors(c: ConservedState, params: Params) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Unit right eigenvectors of the flux Jacobian in ``(rho, m, n)``.

    r1 and r3 point from the fixed points ``(0, s, -1)`` and ``(0, -s, -1)``
    towards the state, r2 is radial from the origin, so each integral curve
    is a straight line.
    """
    s = params.s
    dirs = (
        np.array([c.rho, c.m - s, c.n + 1.0]),
        np.array([c.rho, c.m, c.n]),
        np.array([c.rho, c.m + s, c.n + 1.0]),
    )
    out = []
    for d in dirs:
        norm = float(np.linalg.norm(d))
        if norm == 0.0:
            raise DomainError("zero-length eigenvector direction")
        out.append(d / norm)
    return tuple(out)


def total_variation(values) -> float:
    """Sum of absolute successive differences of a sampled function."""
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        return 0.0
    return float(np.sum(np.abs(np.diff(values))))


@dataclass(frozen=True)
class Hypotheses:
    """Bounds of the admissibility hypotheses H1 (``c1..c5``) and H2 (``tv_bound``).

    The compatibility requirement ``c5 - (c4 - c1)/(2 s) > 0`` involves the
    model constant and is checked by :meth:`is_consistent`.
    """

    c1: float
    c2: float
    c3: float
    c4: float
    c5: float
    tv_bound: float

    def __post_init__(self):
        if self.c1 > self.c2 or self.c3 > self.c4:
            raise ArgumentError("H1 bounds must satisfy c1 <= c2 and c3 <= c4")
        if not (self.tv_bound > 0.0):
            raise ArgumentError("tv_bound must be positive")

    def is_consistent(self, params: Params) -> bool:
        return self.c5 - (self.c4 - self.c1) / (2.0 * params.s) > 0.0

    @classmethod
    def tightest(cls, rho, u, v, params: Params, slack: float = 1e-9) -> "Hypotheses":
        """Smallest H1/H2 bounds that admit the sampled data.

        ``c5`` sits ``slack`` (relative) below the minimum of ``v + 1/rho``
        because that bound is strict; the variation budget is padded the
        same way.
        """
        rho, u, v = (np.asarray(a, dtype=float) for a in (rho, u, v))
        s = params.s
        minus = u - s * v
        plus = u + s * v
        r2 = v + 1.0 / rho
        c5 = float(r2.min())
        c5 -= slack * max(abs(c5), 1.0)
        tv = max(total_variation(minus), total_variation(plus))
        return cls(
            float(minus.min()),
            float(minus.max()),
            float(plus.min()),
            float(plus.max()),
            c5,
            tv * (1.0 + slack) + slack,
        )


@dataclass(frozen=True)
class HypothesesReport:
    h1_ok: bool
    h2_ok: bool
    gap_ok: bool
    constants_ok: bool = True
    details: dict = field(default_factory=dict, compare=False)

    @property
    def ok(self) -> bool:
        return self.h1_ok and self.h2_ok and self.gap_ok and self.constants_ok

    def failed(self) -> list[str]:
        names = []
        if not self.h1_ok:
            names.append("H1")
        if not self.constants_ok:
            names.append("H1-constants")
        if not self.h2_ok:
            names.append("H2")
        if not self.gap_ok:
            names.append("gap")
        return names


def check_hypotheses(rho, u, v, h: Hypotheses, params: Params) -> HypothesesReport:
    """Evaluate H1, H2 and the strict-gap condition on sampled initial data.

    ``rho``, ``u``, ``v`` are samples ordered in x.  ``h1_ok`` covers the
    pointwise bounds only; compatibility of the bounds with ``s`` is
    reported separately as ``constants_ok``.
    """
    rho, u, v = (np.atleast_1d(np.asarray(a, dtype=float)) for a in (rho, u, v))
    if rho.size == 0:
        raise ArgumentError("empty sample set")
    if not (rho.shape == u.shape == v.shape):
        raise ArgumentError("rho, u, v must have the same shape")
    if np.any(rho <= 0.0):
        raise DomainError("rho samples must be positive")
    s = params.s
    minus = u - s * v
    plus = u + s * v
    r2 = v + 1.0 / rho
    h1 = bool(
        np.all((h.c1 <= minus) & (minus <= h.c2))
        and np.all((h.c3 <= plus) & (plus <= h.c4))
        and np.all(r2 > h.c5)
    )
    tv_minus = total_variation(minus)
    tv_plus = total_variation(plus)
    h2 = tv_minus <= h.tv_bound and tv_plus <= h.tv_bound
    lo = float(np.min(u + s / rho))
    hi = float(np.max(u - s / rho))
    details = {
        "tv_minus": tv_minus,
        "tv_plus": tv_plus,
        "inf_u_plus_s_over_rho": lo,
        "sup_u_minus_s_over_rho": hi,
    }
    return HypothesesReport(h1, h2, lo > hi, h.is_consistent(params), details)
