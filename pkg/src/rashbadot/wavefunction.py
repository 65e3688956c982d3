"""Bound-state coefficients, normalization and spinor evaluation.

For an energy on the spectrum, the kernel of the matching matrix gives
the coefficient vector (c1, c2, d1, d2) of the radial pair

    r < 1:   u = c1 f1(m)   + d1 g1(m)
             w = c1 g1(m+1) + d1 f1(m+1)
    r >= 1:  u = c2 f2(m)   + d2 g2(m)
             w = c2 g2(m+1) - d2 f2(m+1)

(note the minus sign on d2 in the exterior w).  The state is then
rescaled so that  integral_0^inf (u^2 + w^2) r dr = 1,  computed as an
adaptive panel on [0, 1] plus an exponential-tail quadrature with
density decay rate 2 sqrt(v - e - beta^2/4).  The full spinor is

    Psi_m(r, phi) = ( u(r) e^{i m phi},  w(r) e^{i (m+1) phi} ).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    ArgumentOutOfRange,
    BoundaryPoint,
    DegenerateState,
    InvalidInput,
    NotNormalized,
    NotSingular,
    RankDeficiency2,
)
from .numerics import (
    DEFAULT_QUADRATURE,
    QuadratureSpec,
    fix_sign,
    integrate_panel,
    integrate_tail,
    nullspace_4x4,
)
from .radial_basis import (
    DotParameters,
    exterior_pair,
    exterior_wave_numbers,
    interior_pair,
    interior_wave_numbers,
)
from .special_functions import bessel_j_many, bessel_k_many
from .spectral_solver import _channel_function, _match_rows_scaled

DEFAULT_SING_TOL = 1e-8


@dataclass(frozen=True)
class BoundState:
    """One bound state: energy, matching coefficients, normalization flag."""

    params: DotParameters
    e: float
    c1: float
    c2: float
    d1: float
    d2: float
    normalized: bool = False

    @property
    def coefficients(self) -> tuple[float, float, float, float]:
        return (self.c1, self.c2, self.d1, self.d2)


@dataclass(frozen=True)
class SpinorSample:
    """Radial sample (r, u(r), w(r))."""

    r: float
    u: float
    w: float


def _channel_kernel(rows: list[list[float]]) -> tuple[float, float]:
    """Kernel direction of a singular 2x2, taken from its larger row."""
    (a, b), (c, d) = rows
    if math.hypot(a, b) >= math.hypot(c, d):
        return (-b, a)
    return (-d, c)


def solve_coefficients(
    params: DotParameters, e: float, sing_tol: float = DEFAULT_SING_TOL
) -> BoundState:
    """Unit-norm coefficient vector at a spectrum energy (unnormalized state).

    Sign convention: the first largest-magnitude coefficient is positive.
    Raises :class:`NotSingular` when e is not actually an eigenvalue and
    :class:`RankDeficiency2` for degenerate levels.
    """
    if params.beta == 0.0:
        return _solve_coefficients_channels(params, e, sing_tol)
    # solve the kernel on the exterior-column-equilibrated matrix (the
    # K columns are exponentially small, which would smear the kernel
    # direction by ~1e-6), then map back and renormalize
    rows, exponent = _match_rows_scaled(params, e)
    vec = nullspace_4x4(rows, sing_tol)
    if exponent > 700.0:
        # true exterior coefficients would be ~e^{+exponent}
        raise ArgumentOutOfRange(
            f"exterior coefficients overflow double precision (decay exponent {exponent:.0f})"
        )
    grow = math.exp(exponent)
    vec = np.array([vec[0], vec[1] * grow, vec[2], vec[3] * grow])
    vec = fix_sign(vec / math.sqrt(float(vec @ vec)))
    c1, c2, d1, d2 = (float(x) for x in vec)
    return BoundState(params=params, e=e, c1=c1, c2=c2, d1=d1, d2=d2)


def _solve_coefficients_channels(
    params: DotParameters, e: float, sing_tol: float
) -> BoundState:
    """beta = 0: the two spin channels decouple exactly, so solve the
    singular 2x2 block and keep exact zeros in the other block."""
    residual_m = abs(_channel_function(params, params.m)(e))
    residual_m1 = abs(_channel_function(params, params.m + 1)(e))
    singular_m = residual_m <= 10.0 * sing_tol
    singular_m1 = residual_m1 <= 10.0 * sing_tol
    if singular_m and singular_m1:
        raise RankDeficiency2(
            f"both spin channels singular at e = {e}", kernel_dim=2
        )
    if not (singular_m or singular_m1):
        raise NotSingular(f"neither spin channel is singular at e = {e}")

    b1m, b1m1 = interior_pair(params.m, e, params.beta, 1.0)
    b2m, b2m1 = exterior_pair(params.m, e, params.v, params.beta, 1.0)
    if singular_m:
        pair = _channel_kernel([[b1m.f, -b2m.f], [b1m.df, -b2m.df]])
        vec = [pair[0], pair[1], 0.0, 0.0]
    else:
        pair = _channel_kernel([[b1m1.f, b2m1.f], [b1m1.df, b2m1.df]])
        vec = [0.0, 0.0, pair[0], pair[1]]
    norm = math.hypot(*vec)
    unit = fix_sign(np.array(vec) / norm)
    c1, c2, d1, d2 = (float(x) for x in unit)
    return BoundState(params=params, e=e, c1=c1, c2=c2, d1=d1, d2=d2)


def radial_components(state: BoundState, r: float) -> tuple[float, float]:
    """(u(r), w(r)) with region dispatch at r = 1 (r = 1 uses the exterior)."""
    params = state.params
    m = params.m
    if r < 0.0:
        raise InvalidInput("r must be nonnegative")
    if r == 0.0:
        u = state.c1 if m == 0 else 0.0
        w = state.d1 if m + 1 == 0 else 0.0
        return u, w
    if r < 1.0:
        bm, bm1 = interior_pair(m, state.e, params.beta, r)
        u = state.c1 * bm.f + state.d1 * bm.g
        w = state.c1 * bm1.g + state.d1 * bm1.f
    else:
        bm, bm1 = exterior_pair(m, state.e, params.v, params.beta, r)
        u = state.c2 * bm.f + state.d2 * bm.g
        w = state.c2 * bm1.g - state.d2 * bm1.f
    return u, w


def radial_derivatives(state: BoundState, r: float) -> tuple[float, float]:
    """(u'(r), w'(r)), same region dispatch as :func:`radial_components`."""
    params = state.params
    m = params.m
    if not r > 0.0:
        raise InvalidInput("r must be positive")
    if r < 1.0:
        bm, bm1 = interior_pair(m, state.e, params.beta, r)
        du = state.c1 * bm.df + state.d1 * bm.dg
        dw = state.c1 * bm1.dg + state.d1 * bm1.df
    else:
        bm, bm1 = exterior_pair(m, state.e, params.v, params.beta, r)
        du = state.c2 * bm.df + state.d2 * bm.dg
        dw = state.c2 * bm1.dg - state.d2 * bm1.df
    return du, dw


def radial_density_integral(
    state: BoundState, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """integral_0^inf (u^2 + w^2) r dr for the state's coefficients."""
    params = state.params

    def density(r: float) -> float:
        u, w = radial_components(state, r)
        return (u * u + w * w) * r

    decay = 2.0 * math.sqrt(params.v - state.e - 0.25 * params.beta * params.beta)
    # the beta-oscillations inside each tail panel are resolved by the
    # adaptive subdivision of integrate_panel
    inside = integrate_panel(density, 0.0, 1.0, spec)
    outside = integrate_tail(density, 1.0, decay, spec)
    return inside + outside


def normalize(state: BoundState, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> BoundState:
    """Rescale the coefficients by one positive factor so the radial
    density integrates to 1."""
    total = radial_density_integral(state, spec)
    if not total > 1e-300:
        raise DegenerateState(f"normalization integral {total!r} vanished")
    factor = 1.0 / math.sqrt(total)
    return replace(
        state,
        c1=state.c1 * factor,
        c2=state.c2 * factor,
        d1=state.d1 * factor,
        d2=state.d2 * factor,
        normalized=True,
    )


def _require_normalized(state: BoundState) -> None:
    if not state.normalized:
        raise NotNormalized("state must be normalized first")


def evaluate_radial(state: BoundState, r: float) -> SpinorSample:
    """Sample (r, u, w) of a normalized state; r = 0 via the origin limit."""
    _require_normalized(state)
    u, w = radial_components(state, r)
    return SpinorSample(r=r, u=u, w=w)


def evaluate_spinor(state: BoundState, r: float, phi: float) -> tuple[complex, complex]:
    """Spinor components (u e^{i m phi}, w e^{i (m+1) phi})."""
    _require_normalized(state)
    u, w = radial_components(state, r)
    m = state.params.m
    return (
        u * cmath.exp(complex(0.0, m * phi)),
        w * cmath.exp(complex(0.0, (m + 1) * phi)),
    )


def _interior_tables(m: int, e: float, beta: float, r: float):
    k = interior_wave_numbers(e, beta)
    orders = range(m - 2, m + 4)
    jm = bessel_j_many(orders, k.k_minus * r)
    jp = bessel_j_many(orders, k.k_plus * r)

    def value(n):
        return 0.5 * (jm[n] + jp[n]), 0.5 * (jm[n] - jp[n])

    def first(n):
        dm = 0.5 * k.k_minus * (jm[n - 1] - jm[n + 1])
        dp = 0.5 * k.k_plus * (jp[n - 1] - jp[n + 1])
        return 0.5 * (dm + dp), 0.5 * (dm - dp)

    def second(n):
        sm = 0.25 * k.k_minus**2 * (jm[n - 2] - 2.0 * jm[n] + jm[n + 2])
        sp = 0.25 * k.k_plus**2 * (jp[n - 2] - 2.0 * jp[n] + jp[n + 2])
        return 0.5 * (sm + sp), 0.5 * (sm - sp)

    return value, first, second


def _exterior_tables(m: int, e: float, v: float, beta: float, r: float):
    k = exterior_wave_numbers(e, v, beta)
    z = k.k_plus * r
    table = bessel_k_many(range(m - 2, m + 4), z)

    def value(n):
        kn = table[n]
        return kn.real, kn.imag

    def first(n):
        deriv = -0.5 * k.k_plus * (table[n - 1] + table[n + 1])
        return deriv.real, deriv.imag

    def second(n):
        curve = 0.25 * k.k_plus**2 * (table[n - 2] + 2.0 * table[n] + table[n + 2])
        return curve.real, curve.imag

    return value, first, second


def ode_residual(state: BoundState, r: float) -> tuple[float, float]:
    """Residuals of the two coupled radial equations at radius r,
    scaled by the largest term magnitude of each equation.

    Second derivatives come from applying the ladder identities twice,
    so the residual isolates assembly errors from differencing noise.
    """
    _require_normalized(state)
    if r == 0.0 or r == 1.0:
        raise BoundaryPoint("residual undefined exactly at r = 0 and r = 1")
    if r < 0.0:
        raise InvalidInput("r must be nonnegative")
    params = state.params
    m = params.m
    beta = params.beta
    interior = r < 1.0
    if interior:
        value, first, second = _interior_tables(m, state.e, beta, r)
        c_hi, c_lo = state.c1, state.d1
        # u = c1 f1(m) + d1 g1(m);  w = c1 g1(m+1) + d1 f1(m+1)
        fm, gm = value(m)
        dfm, dgm = first(m)
        sfm, sgm = second(m)
        u = c_hi * fm + c_lo * gm
        du = c_hi * dfm + c_lo * dgm
        ddu = c_hi * sfm + c_lo * sgm
        fm1, gm1 = value(m + 1)
        dfm1, dgm1 = first(m + 1)
        sfm1, sgm1 = second(m + 1)
        w = c_hi * gm1 + c_lo * fm1
        dw = c_hi * dgm1 + c_lo * dfm1
        ddw = c_hi * sgm1 + c_lo * sfm1
        radial_u = state.e * r * r - m * m
        radial_w = state.e * r * r - (m + 1) * (m + 1)
    else:
        value, first, second = _exterior_tables(m, state.e, params.v, beta, r)
        fm, gm = value(m)
        dfm, dgm = first(m)
        sfm, sgm = second(m)
        u = state.c2 * fm + state.d2 * gm
        du = state.c2 * dfm + state.d2 * dgm
        ddu = state.c2 * sfm + state.d2 * sgm
        fm1, gm1 = value(m + 1)
        dfm1, dgm1 = first(m + 1)
        sfm1, sgm1 = second(m + 1)
        w = state.c2 * gm1 - state.d2 * fm1
        dw = state.c2 * dgm1 - state.d2 * dfm1
        ddw = state.c2 * sgm1 - state.d2 * sfm1
        radial_u = -((params.v - state.e) * r * r + m * m)
        radial_w = -((params.v - state.e) * r * r + (m + 1) * (m + 1))

    r2 = r * r
    coupling_u = beta * r2 * (dw + (m + 1) * w / r)
    coupling_w = beta * r2 * (du - m * u / r)
    terms_u = (r2 * ddu, r * du, radial_u * u, coupling_u)
    terms_w = (r2 * ddw, r * dw, radial_w * w, coupling_w)
    residual_u = terms_u[0] + terms_u[1] + terms_u[2] - coupling_u
    residual_w = terms_w[0] + terms_w[1] + terms_w[2] + coupling_w
    scale_u = max(max(abs(t) for t in terms_u), 1e-300)
    scale_w = max(max(abs(t) for t in terms_w), 1e-300)
    return residual_u / scale_u, residual_w / scale_w
