"""Problem-agnostic numerical kernels.

Bracketed root refinement (bisection with secant/inverse-quadratic
acceleration, Brent style), nullspace extraction for 4x4 systems by
Gaussian elimination with full pivoting, and adaptive Gauss-Legendre
quadrature over finite panels plus exponentially decaying tails.

All functions are pure and thread-safe.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import (
    BracketInvalid,
    DecayViolation,
    InvalidInput,
    NoConvergence,
    NotSingular,
    RankDeficiency2,
)

_EPS = sys.float_info.epsilon

ROOT_ITERATION_CAP = 200
SUBDIVISION_CAP = 40
TAIL_PANEL_CAP = 50


@dataclass(frozen=True)
class Bracket:
    """A sign-change interval: lo < hi and f_lo * f_hi < 0."""

    lo: float
    hi: float
    f_lo: float
    f_hi: float


@dataclass(frozen=True)
class QuadratureSpec:
    """Gauss-Legendre panel order and convergence tolerances."""

    panel_order: int = 16
    rel_tol: float = 1e-12
    abs_tol: float = 1e-14

    def __post_init__(self):
        if self.panel_order < 2:
            raise InvalidInput("panel_order must be >= 2")
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0):
            raise InvalidInput("tolerances must be positive")


DEFAULT_QUADRATURE = QuadratureSpec()


def refine_root(
    f: Callable[[float], float],
    bracket: Bracket,
    tol: float,
    max_iter: int = ROOT_ITERATION_CAP,
) -> float:
    """Refine a bracketed root of ``f`` to an interval of width <= ``tol``.

    Uses Brent's method: the sign change is never lost, and secant /
    inverse-quadratic steps accelerate convergence when they behave.
    Deterministic for identical inputs.
    """
    if tol <= 0.0:
        raise InvalidInput("tol must be positive")
    a, b = bracket.lo, bracket.hi
    fa, fb = bracket.f_lo, bracket.f_hi
    if not (a < b) or not (fa * fb < 0.0):
        raise BracketInvalid(f"not a sign-change bracket: [{a}, {b}]")

    c, fc = a, fa
    d = e = b - a
    for _ in range(max_iter):
        if fb * fc > 0.0:
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * _EPS * abs(b) + 0.5 * tol
        xm = 0.5 * (c - b)
        if abs(xm) <= tol1 or fb == 0.0:
            return b
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                # secant
                p = 2.0 * xm * s
                q = 1.0 - s
            else:
                # inverse quadratic
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * xm * q - abs(tol1 * q), abs(e * q)):
                e = d
                d = p / q
            else:
                d = xm
                e = d
        else:
            d = xm
            e = d
        a, fa = b, fb
        b += d if abs(d) > tol1 else math.copysign(tol1, xm)
        fb = f(b)
    raise NoConvergence(f"root refinement exceeded {max_iter} iterations")


def nullspace_4x4(matrix, sing_tol: float = 1e-8) -> np.ndarray:
    """Unit-norm kernel vector of a numerically singular 4x4 matrix.

    Gaussian elimination with full pivoting; the final pivot is declared
    zero when it falls below ``sing_tol`` relative to the largest pivot.
    Sign convention: the first component of largest magnitude is positive.

    Raises :class:`NotSingular` when the rank test finds full rank and
    :class:`RankDeficiency2` when two or more pivots vanish.
    """
    u = np.array(matrix, dtype=float)
    if u.shape != (4, 4):
        raise InvalidInput("expected a 4x4 matrix")
    if not np.all(np.isfinite(u)):
        raise InvalidInput("matrix entries must be finite")

    col_perm = list(range(4))
    p0 = 0.0
    rank = 4
    for k in range(4):
        sub = np.abs(u[k:, k:])
        flat = int(sub.argmax())
        i, j = divmod(flat, 4 - k)
        p = float(sub[i, j])
        if k == 0:
            p0 = p
        if p <= sing_tol * p0:
            rank = k
            break
        i += k
        j += k
        if i != k:
            u[[k, i]] = u[[i, k]]
        if j != k:
            u[:, [k, j]] = u[:, [j, k]]
            col_perm[k], col_perm[j] = col_perm[j], col_perm[k]
        for r in range(k + 1, 4):
            factor = u[r, k] / u[k, k]
            if factor != 0.0:
                u[r, k:] -= factor * u[k, k:]
    if rank == 4:
        raise NotSingular(f"no pivot below {sing_tol:g} relative; not an eigenvalue")
    if rank <= 2:
        raise RankDeficiency2(
            f"kernel dimension {4 - rank} >= 2 (degenerate level)",
            kernel_dim=4 - rank,
        )

    x = np.zeros(4)
    x[3] = 1.0
    for k in (2, 1, 0):
        x[k] = -float(u[k, k + 1 :] @ x[k + 1 :]) / u[k, k]
    out = np.zeros(4)
    for pos, orig in enumerate(col_perm):
        out[orig] = x[pos]
    out /= math.sqrt(float(out @ out))
    return fix_sign(out)


def fix_sign(vec: np.ndarray) -> np.ndarray:
    """Flip ``vec`` so its first largest-magnitude component is positive."""
    i = int(np.abs(vec).argmax())
    return -vec if vec[i] < 0.0 else vec


@lru_cache(maxsize=8)
def _gauss_rule(order: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return tuple(nodes.tolist()), tuple(weights.tolist())


def integrate_panel(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Adaptive Gauss-Legendre integral of ``f`` over [a, b].

    A panel is accepted when its two-half refinement agrees with the
    single-panel estimate to max(rel_tol * |I|, abs_tol); the absolute
    budget is halved on each subdivision.
    """
    if not a < b:
        raise InvalidInput("require a < b")
    nodes, weights = _gauss_rule(spec.panel_order)

    def one(lo: float, hi: float) -> float:
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        acc = 0.0
        for x, w in zip(nodes, weights):
            acc += w * f(mid + half * x)
        return acc * half

    def recurse(lo: float, hi: float, whole: float, abs_tol: float, depth: int) -> float:
        mid = 0.5 * (lo + hi)
        left = one(lo, mid)
        right = one(mid, hi)
        total = left + right
        if abs(total - whole) <= max(spec.rel_tol * abs(total), abs_tol):
            return total
        if depth >= SUBDIVISION_CAP:
            raise NoConvergence(f"quadrature depth {SUBDIVISION_CAP} exceeded on [{lo}, {hi}]")
        half_tol = 0.5 * abs_tol
        return recurse(lo, mid, left, half_tol, depth + 1) + recurse(
            mid, hi, right, half_tol, depth + 1
        )

    return recurse(a, b, one(a, b), spec.abs_tol, 0)


def integrate_tail(
    f: Callable[[float], float],
    a: float,
    decay_rate: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    max_panel_width: float | None = None,
) -> float:
    """Integral of an exponentially decaying ``f`` over [a, infinity).

    Marches panels of width 5/decay_rate (about five e-foldings each,
    optionally capped by ``max_panel_width`` for oscillatory factors),
    integrating each adaptively, and stops once a panel contributes less
    than ``spec.abs_tol`` in magnitude.
    """
    if not decay_rate > 0.0:
        raise InvalidInput("decay_rate must be positive")
    width = 5.0 / decay_rate
    if max_panel_width is not None:
        if not max_panel_width > 0.0:
            raise InvalidInput("max_panel_width must be positive")
        width = min(width, max_panel_width)

    total = 0.0
    lo = a
    for _ in range(TAIL_PANEL_CAP):
        hi = lo + width
        contribution = integrate_panel(f, lo, hi, spec)
        total += contribution
        if abs(contribution) < spec.abs_tol:
            return total
        lo = hi
    raise DecayViolation(
        f"tail integral not below {spec.abs_tol:g} after {TAIL_PANEL_CAP} panels"
    )
