"""Laplace transform of the Brownian put value and its lambda-derivatives.

Let u(s, x) = E[(K - exp(X(s)))^+ | X(0) = x] be the zero-rate put value
under the Brownian component alone (drift mu, volatility sigma).  Its
Laplace transform in time,

    m(lam, x) = int_0^inf u(s, x) exp(-lam s) ds,

solves the second-order ODE

    lam m - (K - e^x)^+ = mu m' + (sigma^2/2) m''

with m -> K/lam as x -> -inf and m -> 0 as x -> +inf.  Writing
z = x - log K, the solution is piecewise exponential around the strike:

    m(lam, x) = A e^{theta1 z} + (K - e^x)/lam      for z <= 0,
    m(lam, x) = A e^{theta2 z}                      for z >  0,

where theta1 > 0 > theta2 are the roots of sigma^2 th^2/2 + mu th = lam
and A = K / (lam (theta1 - theta2)) makes the two branches C^1 at the
strike.

Every lambda-derivative m^(n) = d^n m / d lam^n keeps this shape with
polynomial prefactors in z:

    m^(n)(lam, x) = P_n(z) e^{theta1 z} + (-1)^n n! (K - e^x)/lam^{n+1}
                                                     for z <= 0,
    m^(n)(lam, x) = Q_n(z) e^{theta2 z}              for z >  0,

deg P_n = deg Q_n = n.  Differentiating the ODE n times yields

    lam m^(n) + n m^(n-1) = mu (m^(n))' + (sigma^2/2) (m^(n))'',

and matching powers of z gives, per branch i with w_i = mu + sigma^2
theta_i (so w_1 = +sqrt(mu^2 + 2 lam sigma^2), w_2 = -sqrt(...), never
zero), the back-substitution recursion for the coefficients a_{ij} of
z^{j-1}:

    n a_{ij}^{(n-1)} = j w_i a_{i(j+1)}^{(n)}
                       + (sigma^2/2) (j+1) j a_{i(j+2)}^{(n)},   j = n..1,

solved downward from a_{i(n+1)}^{(n)} = a_{in}^{(n-1)} / w_i.  The two
constant terms are equal (value matching at z = 0; the power-law terms
vanish there) and are fixed by slope matching:

    a^{(n)}_{11} = a^{(n)}_{21}
                 = [a^{(n)}_{22} - a^{(n)}_{12} + (-1)^n n! K / lam^{n+1}]
                   / (theta1 - theta2).

The recentered variable z is essential: coefficients on e^{theta_i x}
instead of e^{theta_i z} would carry K^{-theta_i} factors, which
overflow already at theta ~ 30 (typical for lam = 5, sigma = 0.1).

Coefficient tables are built level by level in double precision up to
``MAX_LEVEL``.  If the C^1 slope residual of a freshly built level
exceeds 1e-9 relative (deep factorial cancellation at high levels), the
whole stack is rebuilt once in extended precision via mpmath and the
table is flagged ``extended=True``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import VgParams

__all__ = [
    "ThetaRoots",
    "CoeffTable",
    "MAX_LEVEL",
    "theta_roots",
    "base_level",
    "extend_to_level",
    "build_coeff_table",
    "eval_m",
    "eval_m_dx",
    "eval_m_exponential_part",
]

MAX_LEVEL = 64

# relative C^1 slope residual above which a level triggers the
# extended-precision rebuild
_C1_RTOL = 1e-9

_MP_DPS = 60


@dataclass(frozen=True)
class ThetaRoots:
    """Roots of (sigma^2/2) th^2 + mu th = lam, ordered theta1 > 0 > theta2."""

    theta1: float
    theta2: float


def theta_roots(lam: float, params: VgParams) -> ThetaRoots:
    """Solve the characteristic equation of the Laplace-domain ODE.

    Vieta: theta1 + theta2 = -2 mu / sigma^2,
           theta1 * theta2 = -2 lam / sigma^2.
    """
    if not (lam > 0.0) or not math.isfinite(lam):
        raise ValueError(f"lam must be positive and finite, got {lam!r}")
    sig2 = params.sigma * params.sigma
    disc = math.sqrt(params.mu * params.mu + 2.0 * lam * sig2)
    return ThetaRoots(
        theta1=(-params.mu + disc) / sig2,
        theta2=(-params.mu - disc) / sig2,
    )


@dataclass(frozen=True)
class CoeffTable:
    """Polynomial coefficients of m^(0..N) in the recentered variable z.

    ``levels_itm[n]`` / ``levels_otm[n]`` hold the coefficients
    (a_{i1}, ..., a_{i(n+1)}) of z^0..z^n multiplying e^{theta_i z} on
    the in-the-money branch (x <= log K, i = 1) and the out-of-the-money
    branch (x > log K, i = 2).  The power-law terms on the ITM branch,
    (-1)^n n! (K - e^x)/lam^{n+1}, are implicit.  Immutable; extension
    returns a new table.
    """

    lam: float
    strike: float
    params: VgParams
    roots: ThetaRoots
    levels_itm: tuple[tuple[float, ...], ...]
    levels_otm: tuple[tuple[float, ...], ...]
    extended: bool = False

    @property
    def max_level(self) -> int:
        return len(self.levels_itm) - 1

    def c1_residual(self, n: int) -> float:
        """Relative mismatch of the two branch slopes at z = 0 at level n."""
        _require_level(self, n)
        s1, s2 = _branch_slopes(self, n)
        scale = max(abs(s1), abs(s2), 1e-300)
        return abs(s1 - s2) / scale


def _require_level(table: CoeffTable, n: int) -> None:
    if n < 0:
        raise ValueError(f"derivative level must be >= 0, got {n}")
    if n > table.max_level:
        raise ValueError(
            f"table holds levels 0..{table.max_level}, level {n} requested; "
            f"extend it first"
        )


def _branch_slopes(table: CoeffTable, n: int) -> tuple[float, float]:
    """d/dx of both branches at z = 0 (the C^1 matching quantities)."""
    a1 = table.levels_itm[n]
    a2 = table.levels_otm[n]
    pw_slope = (-1.0) ** n * math.factorial(n) * table.strike / table.lam ** (n + 1)
    lin1 = a1[1] if n >= 1 else 0.0
    lin2 = a2[1] if n >= 1 else 0.0
    s1 = a1[0] * table.roots.theta1 + lin1 - pw_slope
    s2 = a2[0] * table.roots.theta2 + lin2
    return s1, s2


def _next_tail(prev, w, sig2, n):
    """Coefficients a_{i2}..a_{i(n+1)} of level n from level n-1 (branch i).

    Index k of the returned list holds a_{i(k+1)}; slot 0 (the constant
    a_{i1}) is filled by C^1 matching afterwards.  Works unchanged on
    floats and mpmath numbers.
    """
    cur = [0 * w] * (n + 1)
    for j in range(n, 0, -1):
        t = n * prev[j - 1]
        if j + 1 <= n:
            t = t - 0.5 * sig2 * (j + 1) * j * cur[j + 1]
        cur[j] = t / (j * w)
    return cur


def _build_levels(lam, strike, params: VgParams, max_n: int, mp_ctx=None):
    """Levels 0..max_n of both branches; generic over float / mpmath."""
    if mp_ctx is None:
        mu = params.mu
        sig2 = params.sigma * params.sigma
        lam_ = lam
        strike_ = strike
    else:
        mu = mp_ctx.mpf(params.mu)
        sig2 = mp_ctx.mpf(params.sigma) ** 2
        lam_ = mp_ctx.mpf(lam)
        strike_ = mp_ctx.mpf(strike)
    disc = (mu * mu + 2.0 * lam_ * sig2) ** 0.5
    th1 = (-mu + disc) / sig2
    th2 = (-mu - disc) / sig2
    w1 = mu + sig2 * th1  # = +disc
    w2 = mu + sig2 * th2  # = -disc
    if w1 == 0 or w2 == 0:
        # impossible for lam > 0 (w_i = +-sqrt(mu^2 + 2 lam sigma^2))
        raise ArithmeticError("degenerate characteristic roots: mu + sigma^2 theta = 0")

    levels1: list[list] = []
    levels2: list[list] = []
    for n in range(max_n + 1):
        if n == 0:
            a0 = strike_ / (lam_ * (th1 - th2))
            cur1, cur2 = [a0], [a0]
        else:
            cur1 = _next_tail(levels1[n - 1], w1, sig2, n)
            cur2 = _next_tail(levels2[n - 1], w2, sig2, n)
            pw_slope = (-1) ** n * math.factorial(n) * strike_ / lam_ ** (n + 1)
            a = (cur2[1] - cur1[1] + pw_slope) / (th1 - th2)
            cur1[0] = a
            cur2[0] = a
        levels1.append(cur1)
        levels2.append(cur2)
    return th1, th2, levels1, levels2


def build_coeff_table(
    lam: float, strike: float, params: VgParams, max_level: int = 0
) -> CoeffTable:
    """Build the coefficient table for levels 0..max_level at this lam.

    Double precision first; one extended-precision rebuild (flagged on
    the result) if any level's C^1 slope residual exceeds tolerance.
    """
    if not (lam > 0.0) or not math.isfinite(lam):
        raise ValueError(f"lam must be positive and finite, got {lam!r}")
    if not (strike > 0.0) or not math.isfinite(strike):
        raise ValueError(f"strike must be positive and finite, got {strike!r}")
    if not 0 <= max_level <= MAX_LEVEL:
        raise ValueError(
            f"level must be between 0 and {MAX_LEVEL}, got {max_level}"
        )

    th1, th2, lv1, lv2 = _build_levels(lam, strike, params, max_level)
    table = CoeffTable(
        lam=lam,
        strike=strike,
        params=params,
        roots=ThetaRoots(th1, th2),
        levels_itm=tuple(tuple(c) for c in lv1),
        levels_otm=tuple(tuple(c) for c in lv2),
    )
    if all(table.c1_residual(n) <= _C1_RTOL for n in range(max_level + 1)):
        return table

    # factorial cancellation broke double precision; redo in mpmath once
    import mpmath

    with mpmath.workdps(_MP_DPS):
        th1m, th2m, lv1m, lv2m = _build_levels(
            lam, strike, params, max_level, mp_ctx=mpmath
        )
        return CoeffTable(
            lam=lam,
            strike=strike,
            params=params,
            roots=ThetaRoots(float(th1m), float(th2m)),
            levels_itm=tuple(tuple(float(c) for c in cs) for cs in lv1m),
            levels_otm=tuple(tuple(float(c) for c in cs) for cs in lv2m),
            extended=True,
        )


def base_level(lam: float, strike: float, params: VgParams) -> CoeffTable:
    """Table holding level 0 only: the transform m itself."""
    return build_coeff_table(lam, strike, params, max_level=0)


def extend_to_level(table: CoeffTable, n: int) -> CoeffTable:
    """Return a table holding levels 0..n (a new object; input unchanged)."""
    if n < 0:
        raise ValueError(f"level must be >= 0, got {n}")
    if n <= table.max_level:
        return table
    return build_coeff_table(table.lam, table.strike, table.params, max_level=n)


def _horner(coeffs, z: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _horner_dz(coeffs, z: float) -> float:
    acc = 0.0
    for k in range(len(coeffs) - 1, 0, -1):
        acc = acc * z + k * coeffs[k]
    return acc


def eval_m(table: CoeffTable, n: int, x: float) -> float:
    """m^(n)(lam, x): the n-th lambda-derivative of the put transform.

    Sign alternates with n, since m^(n) = (-1)^n int_0^inf u s^n e^{-lam s} ds.
    The strike point x = log K belongs to the ITM branch; both branches
    agree there by construction.
    """
    _require_level(table, n)
    z = x - math.log(table.strike)
    if z <= 0.0:
        poly = _horner(table.levels_itm[n], z)
        pw = (
            (-1.0) ** n
            * math.factorial(n)
            * (table.strike - math.exp(x))
            / table.lam ** (n + 1)
        )
        return poly * math.exp(table.roots.theta1 * z) + pw
    poly = _horner(table.levels_otm[n], z)
    return poly * math.exp(table.roots.theta2 * z)


def eval_m_exponential_part(table: CoeffTable, n: int, x: float) -> float:
    """The exponentially decaying part of m^(n): eval_m without the
    power-law terms on the ITM branch (on the OTM branch they coincide).

    This part decays super-polynomially in lam (like e^{-c sqrt(lam)}
    off the strike), which is what makes fractional differentiation of
    it by quadrature viable.
    """
    _require_level(table, n)
    z = x - math.log(table.strike)
    if z <= 0.0:
        return _horner(table.levels_itm[n], z) * math.exp(table.roots.theta1 * z)
    return _horner(table.levels_otm[n], z) * math.exp(table.roots.theta2 * z)


def eval_m_dx(table: CoeffTable, n: int, x: float) -> float:
    """Analytic d/dx of eval_m (same branch conventions)."""
    _require_level(table, n)
    z = x - math.log(table.strike)
    if z <= 0.0:
        coeffs = table.levels_itm[n]
        theta = table.roots.theta1
        pw_dx = -((-1.0) ** n) * math.factorial(n) * math.exp(x) / table.lam ** (n + 1)
        poly = _horner(coeffs, z)
        dpoly = _horner_dz(coeffs, z)
        return (dpoly + theta * poly) * math.exp(theta * z) + pw_dx
    coeffs = table.levels_otm[n]
    theta = table.roots.theta2
    poly = _horner(coeffs, z)
    dpoly = _horner_dz(coeffs, z)
    return (dpoly + theta * poly) * math.exp(theta * z)
