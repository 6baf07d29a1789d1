"""Small numerical helpers: bump test functions, Gauss rules, monotone inversion."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


def bump(r):
    """C-infinity bump ``exp(-1/(1-r^2))`` on ``|r| < 1``, zero outside."""
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    inside = np.abs(r) < 1.0
    ri = r[inside]
    out[inside] = np.exp(-1.0 / (1.0 - ri * ri))
    return out


def bump_derivative(r):
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    inside = np.abs(r) < 1.0
    ri = r[inside]
    d = 1.0 - ri * ri
    out[inside] = np.exp(-1.0 / d) * (-2.0 * ri / (d * d))
    return out


@dataclass(frozen=True)
class BumpTest:
    """Tensor bump ``phi(t, x) = B((t - tc)/ht) * B((x - xc)/hx)``.

    Its support is the open box ``(tc - ht, tc + ht) x (xc - hx, xc + hx)``.
    """

    tc: float
    xc: float
    ht: float
    hx: float

    @classmethod
    def on_box(cls, t0, t1, x0, x1):
        return cls(0.5 * (t0 + t1), 0.5 * (x0 + x1), 0.5 * (t1 - t0), 0.5 * (x1 - x0))

    @property
    def box(self):
        return (self.tc - self.ht, self.tc + self.ht, self.xc - self.hx, self.xc + self.hx)

    def __call__(self, t, x):
        return bump((t - self.tc) / self.ht) * bump((x - self.xc) / self.hx)

    def dt(self, t, x):
        return bump_derivative((t - self.tc) / self.ht) / self.ht * bump((x - self.xc) / self.hx)

    def dx(self, t, x):
        return bump((t - self.tc) / self.ht) * bump_derivative((x - self.xc) / self.hx) / self.hx


@lru_cache(maxsize=32)
def _leggauss(n):
    return np.polynomial.legendre.leggauss(n)


def gauss_legendre(a: float, b: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the ``n``-point Gauss-Legendre rule on ``[a, b]``."""
    x, w = _leggauss(n)
    half = 0.5 * (b - a)
    return 0.5 * (a + b) + half * x, half * w


def midpoint_nodes(a: float, b: float, n: int) -> tuple[np.ndarray, float]:
    h = (b - a) / n
    return a + h * (np.arange(n) + 0.5), h


def invert_monotone(func, target, lo, hi, iterations: int = 200):
    """Solve ``func(y) = target`` for increasing ``func`` by vectorised bisection.

    ``lo``/``hi`` are initial guesses; the bracket is widened by doubling
    until it contains the target.  The final answer interpolates linearly
    inside the last bracket.
    """
    target = np.asarray(target, dtype=float)
    lo = np.broadcast_to(np.asarray(lo, dtype=float), target.shape).copy()
    hi = np.broadcast_to(np.asarray(hi, dtype=float), target.shape).copy()
    width = np.maximum(hi - lo, 1.0)
    for _ in range(200):
        f_lo = func(lo)
        bad = f_lo > target
        if not bad.any():
            break
        lo[bad] -= width[bad]
        width[bad] *= 2.0
    width = np.maximum(hi - lo, 1.0)
    for _ in range(200):
        f_hi = func(hi)
        bad = f_hi < target
        if not bad.any():
            break
        hi[bad] += width[bad]
        width[bad] *= 2.0
    f_lo = func(lo)
    f_hi = func(hi)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        done = (mid <= lo) | (mid >= hi)
        if done.all():
            break
        f_mid = func(mid)
        below = f_mid < target
        lo = np.where(below, mid, lo)
        f_lo = np.where(below, f_mid, f_lo)
        hi = np.where(below, hi, mid)
        f_hi = np.where(below, f_hi, f_mid)
    span = f_hi - f_lo
    frac = np.where(span > 0.0, (target - f_lo) / np.where(span > 0.0, span, 1.0), 0.0)
    return lo + np.clip(frac, 0.0, 1.0) * (hi - lo)


@dataclass(frozen=True)
class PolynomialBump:
    """Tensor bump ``(1 - a^2)^k (1 - b^2)^k`` on a box, ``a, b`` the scaled coordinates.

    For ``k = 2`` it is C^1 with a jump in the second derivative at the box
    edges, so composite midpoint sums over the box show a clean second-order
    error instead of the super-algebraic (and noisy) decay of a C-infinity bump.
    """

    t0: float
    t1: float
    x0: float
    x1: float
    power: int = 2

    @property
    def box(self):
        return (self.t0, self.t1, self.x0, self.x1)

    def _scaled(self, t, x):
        ht = 0.5 * (self.t1 - self.t0)
        hx = 0.5 * (self.x1 - self.x0)
        a = (np.asarray(t, dtype=float) - 0.5 * (self.t0 + self.t1)) / ht
        b = (np.asarray(x, dtype=float) - 0.5 * (self.x0 + self.x1)) / hx
        return a, b, ht, hx

    def _f(self, r):
        return np.where(np.abs(r) < 1.0, (1.0 - r * r) ** self.power, 0.0)

    def _df(self, r):
        k = self.power
        return np.where(np.abs(r) < 1.0, -2.0 * k * r * (1.0 - r * r) ** (k - 1), 0.0)

    def __call__(self, t, x):
        a, b, _, _ = self._scaled(t, x)
        return self._f(a) * self._f(b)

    def dt(self, t, x):
        a, b, ht, _ = self._scaled(t, x)
        return self._df(a) / ht * self._f(b)

    def dx(self, t, x):
        a, b, _, hx = self._scaled(t, x)
        return self._f(a) * self._df(b) / hx


def _differs(a, b, rtol):
    scale = np.maximum(np.maximum(np.abs(a), np.abs(b)), 1.0)
    return np.any(np.abs(a - b) > rtol * scale, axis=0)


def locate_jumps(sampler, t, left, right, rtol: float = 1e-10, rounds: int = 4, iterations: int = 60):
    """Positions of discontinuities of ``sampler(t, x)`` inside the cells ``[left, right]``.

    ``sampler`` returns a tuple of arrays.  Cells whose end values differ are
    bisected until the bracket is at round-off size; each extra round looks
    for a further jump between the last one found and the right end.
    Returns flat arrays ``(t_jump, x_jump)``.
    """
    t = np.asarray(t, dtype=float)
    a = np.asarray(left, dtype=float)
    b = np.asarray(right, dtype=float)
    sb = np.array(sampler(t, b))
    found_t, found_x = [], []
    for _ in range(rounds):
        sa = np.array(sampler(t, a))
        mask = _differs(sa, sb, rtol)
        if not mask.any():
            break
        t, a, b, sa, sb = t[mask], a[mask], b[mask], sa[:, mask], sb[:, mask]
        lo, hi = a.copy(), b.copy()
        for _ in range(iterations):
            mid = 0.5 * (lo + hi)
            same = ~_differs(np.array(sampler(t, mid)), sa, rtol)
            lo = np.where(same, mid, lo)
            hi = np.where(same, hi, mid)
        found_t.append(t)
        found_x.append(0.5 * (lo + hi))
        a = hi
    if not found_t:
        return np.empty(0), np.empty(0)
    return np.concatenate(found_t), np.concatenate(found_x)
