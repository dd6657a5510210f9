"""European put prices under the variance gamma model, four independent ways.

``price_put_cgz``
    The closed-form route.  The key observation: a gamma-distributed
    maturity turns the time integral into a Laplace transform, so the
    put price is a fractional lambda-derivative of the Brownian put
    transform m(lam, x) at lam = 1/nu.  With rho = t/nu and
    n <= rho - 1 < n + 1,

        P = (1/nu)^rho / Gamma(rho) * (-1)^{n+1}
            * D^{rho-1-n} m^(n)(lam, log S) |_{lam = 1/nu},

    which is fully closed-form when rho is a positive integer
    (D^0 = -identity) and needs one well-behaved quadrature otherwise.
    For rho < 1 the same expression is used with n = 0 and a negative
    order rho - 1.  The fractional derivative splits exactly: the
    power-law terms of m^(n) go through the power rule, the
    exponentially decaying remainder through the f''-quadrature with
    f'' = (exponential part of) m^(n+2).

``price_put_mixture``
    Direct gamma-weighted average of zero-rate Black-Scholes prices
    over the random clock.

``price_put_fourier``
    Damped-payoff Fourier inversion of the variance gamma
    characteristic function (strike-damped call, put by parity).

``price_put_mc``
    Monte Carlo over the time-changed Brownian motion.

Calls come from puts through zero-rate parity: C = P + S - K.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import gammaln, ndtr
from scipy.stats import gamma as gamma_dist

from .fracderiv import (
    DEFAULT_QUADRATURE,
    QuadratureAccuracyError,
    QuadratureConfig,
    frac_deriv_power,
    frac_deriv_quadrature,
)
from .laplace import build_coeff_table, eval_m, eval_m_exponential_part
from .model import OptionSpec, VgParams

__all__ = [
    "METHODS",
    "PriceQuote",
    "McConfig",
    "black_scholes_put",
    "vg_charfunc",
    "price_put_cgz",
    "price_put_mixture",
    "price_put_fourier",
    "fourier_put_ladder",
    "price_put_mc",
    "call_from_put",
]

METHODS = ("cgz", "mixture", "fourier", "mc")

# t/nu within this relative distance of an integer takes the exact branch
_INTEGER_RTOL = 1e-9

# slack on the hard no-arbitrage bounds (K - S)^+ <= P <= K
_BOUND_SLACK = 1e-9

# Fourier damping: default exponent and fallbacks tried on bound violations
_DAMPING_SWEEP = (1.5, 0.75, 2.5)

# paths per Monte Carlo chunk (one RNG substream each)
_MC_CHUNK = 1_000_000


@dataclass(frozen=True)
class PriceQuote:
    """A price with its provenance.

    diagnostics is the method's own accuracy handle: a propagated
    quadrature error estimate, the Monte Carlo standard error, or None
    for exact closed-form evaluation.  elapsed is wall time in seconds.
    """

    value: float
    method: str
    diagnostics: float | None = None
    elapsed: float = 0.0

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if not math.isfinite(self.value) or self.value < -_BOUND_SLACK:
            raise ValueError(f"price must be finite and non-negative, got {self.value!r}")


@dataclass(frozen=True)
class McConfig:
    """Monte Carlo knobs: total paths, RNG seed, antithetic pairing."""

    path_count: int = 100_000
    seed: int = 0
    antithetic: bool = True

    def __post_init__(self):
        if self.path_count < 1:
            raise ValueError(f"path_count must be >= 1, got {self.path_count}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed must fit an unsigned 64-bit integer, got {self.seed!r}")


def _require_put(spec: OptionSpec) -> None:
    if spec.side != "put":
        raise ValueError(
            f"this routine prices puts; got side={spec.side!r} "
            f"(use call_from_put for calls)"
        )


def _check_put_bounds(value: float, spec: OptionSpec, method: str) -> None:
    intrinsic = max(spec.strike - spec.spot, 0.0)
    slack = _BOUND_SLACK * max(1.0, spec.strike)
    if not (intrinsic - slack <= value <= spec.strike + slack):
        raise ArithmeticError(
            f"{method} price {value!r} violates no-arbitrage bounds "
            f"[{intrinsic!r}, {spec.strike!r}]"
        )


def black_scholes_put(x: float, strike: float, s: float, params: VgParams):
    """Zero-rate Black-Scholes put at log-spot x, variance sigma^2 s.

    With the martingale drift, exp(X(s)) has mean e^x and log-variance
    sigma^2 s, so

        P = K Phi(-d2) - e^x Phi(-d1),
        d1 = (x - log K)/(sigma sqrt(s)) + sigma sqrt(s)/2,
        d2 = d1 - sigma sqrt(s).

    Accepts scalar or array s (elementwise, all positive).
    """
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr <= 0.0):
        raise ValueError("clock value s must be positive")
    vol = params.sigma * np.sqrt(s_arr)
    d1 = (x - math.log(strike)) / vol + 0.5 * vol
    d2 = d1 - vol
    out = strike * ndtr(-d2) - math.exp(x) * ndtr(-d1)
    return float(out) if out.ndim == 0 else out


def vg_charfunc(u, t: float, params: VgParams):
    """Characteristic function of X(gamma(t)) (log return over maturity t):

        E[e^{iu X(gamma(t))}] = (1 - nu (iu mu - sigma^2 u^2 / 2))^{-t/nu}.

    Accepts real or complex u, scalar or array.  For the complex
    arguments used by damped Fourier inversion the base stays in the
    right half-plane whenever nu sigma^2 a (a+1) / 2 < 1, so the
    principal power is the correct branch.
    """
    u = np.asarray(u)
    w = 1j * u * params.mu - 0.5 * params.sigma**2 * u * u
    out = (1.0 - params.nu * w) ** (-t / params.nu)
    return complex(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# closed-form route


def price_put_cgz(
    spec: OptionSpec,
    params: VgParams,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> PriceQuote:
    """Closed-form price via the fractional derivative of the put transform.

    Exact (diagnostics None) when t/nu is a positive integer; otherwise
    one adaptive quadrature on (0, 1) with a propagated error estimate.
    """
    _require_put(spec)
    t0 = time.perf_counter()
    lam0 = 1.0 / params.nu
    rho = spec.maturity / params.nu
    x = spec.log_spot
    strike = spec.strike
    # (1/nu)^rho / Gamma(rho), kept in log space (rho may reach ~60)
    log_pref = rho * math.log(lam0) - gammaln(rho)

    k = round(rho)
    if k >= 1 and abs(rho - k) <= _INTEGER_RTOL * max(1.0, rho):
        n = k - 1
        table = build_coeff_table(lam0, strike, params, max_level=n)
        value = math.exp(log_pref) * (-1.0) ** n * eval_m(table, n, x)
        diag = None
    else:
        n = max(math.floor(rho - 1.0), 0)
        alpha = rho - 1.0 - n

        def f_second(lam: float) -> float:
            tab = build_coeff_table(lam, strike, params, max_level=n + 2)
            return eval_m_exponential_part(tab, n + 2, x)

        d_exp, qerr = frac_deriv_quadrature(f_second, alpha, lam0, cfg)
        d_pow = 0.0
        if x <= math.log(strike):
            coef = (-1.0) ** n * math.factorial(n) * (strike - spec.spot)
            d_pow = coef * frac_deriv_power(alpha, n + 1.0, lam0)
        value = math.exp(log_pref) * (-1.0) ** (n + 1) * (d_exp + d_pow)
        diag = math.exp(log_pref) * qerr

    _check_put_bounds(value, spec, "cgz")
    return PriceQuote(value, "cgz", diag, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# gamma-mixture baseline


def price_put_mixture(
    spec: OptionSpec,
    params: VgParams,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> PriceQuote:
    """Average Black-Scholes over the gamma clock:

        P = int_0^inf BSput(s) dGamma(s; t/nu, 1/nu).

    The integration domain is cut at the 1 - 1e-12 quantile; for shape
    > 1 it is split at the density mode, for shape < 1 the integrable
    s^{shape-1} endpoint singularity is handled by weighted quadrature.
    """
    _require_put(spec)
    t0 = time.perf_counter()
    shape = spec.maturity / params.nu
    rate = 1.0 / params.nu
    x = spec.log_spot
    strike = spec.strike
    upper = float(gamma_dist.ppf(1.0 - 1e-12, shape, scale=params.nu))
    log_norm = shape * math.log(rate) - gammaln(shape)

    def density_integrand(s: float) -> float:
        return black_scholes_put(x, strike, s, params) * math.exp(
            log_norm + (shape - 1.0) * math.log(s) - rate * s
        )

    pieces = []
    if shape > 1.0:
        mode = (shape - 1.0) * params.nu
        pieces.append(
            quad(density_integrand, 0.0, mode,
                 epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
                 limit=cfg.max_subdivisions, full_output=True)
        )
        pieces.append(
            quad(density_integrand, mode, upper,
                 epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
                 limit=cfg.max_subdivisions, full_output=True)
        )
    elif shape < 1.0:
        # pull the singular factor s^{shape-1} into the quadrature weight;
        # the weighted rule probes s = 0, where the smooth factor tends to
        # the intrinsic value times the normalization
        intrinsic = max(strike - spec.spot, 0.0)

        def smooth_part(s: float) -> float:
            if s <= 0.0:
                return intrinsic * math.exp(log_norm)
            return black_scholes_put(x, strike, s, params) * math.exp(
                log_norm - rate * s
            )

        pieces.append(
            quad(smooth_part, 0.0, upper, weight="alg", wvar=(shape - 1.0, 0.0),
                 epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
                 limit=cfg.max_subdivisions, full_output=True)
        )
    else:
        pieces.append(
            quad(density_integrand, 0.0, upper,
                 epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
                 limit=cfg.max_subdivisions, full_output=True)
        )

    value = sum(p[0] for p in pieces)
    err = sum(p[1] for p in pieces)
    if any(len(p) > 3 for p in pieces) or not math.isfinite(value):
        raise QuadratureAccuracyError(
            "gamma-mixture quadrature did not converge", value, err
        )
    _check_put_bounds(value, spec, "mixture")
    return PriceQuote(value, "mixture", err, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# Fourier baseline


def _moment_bound_ok(a: float, params: VgParams) -> bool:
    # E[S^{a+1}] < inf, and the damped characteristic function stays on
    # the principal branch along the integration contour
    return 1.0 - params.nu * params.sigma**2 * a * (a + 1.0) / 2.0 > 0.0


def _fourier_call_damped(
    spec: OptionSpec, params: VgParams, cfg: QuadratureConfig, a: float
) -> tuple[float, float]:
    """Damped call price for one damping exponent a; returns (call, err)."""
    t = spec.maturity
    rel_strike = spec.log_spot - spec.log_strike  # log-moneyness m

    def eta(v: float) -> complex:
        u = v - 1j * (a + 1.0)
        denom = a * a + a - v * v + 1j * (2.0 * a + 1.0) * v
        return vg_charfunc(u, t, params) / denom

    prefactor = spec.spot * math.exp(a * rel_strike) / math.pi
    # aim one order below the propagated target so the price error sits
    # near cfg.abs_tol * K after multiplication
    epsabs = max(1e-13, cfg.abs_tol * max(1.0, spec.strike) / max(prefactor, 1.0))

    if abs(rel_strike) >= 1e-3:
        omega = abs(rel_strike)
        sign = 1.0 if rel_strike > 0 else -1.0
        rc = quad(lambda v: eta(v).real, 0.0, np.inf, weight="cos", wvar=omega,
                  epsabs=epsabs, limit=cfg.max_subdivisions, limlst=200,
                  full_output=True)
        rs = quad(lambda v: eta(v).imag, 0.0, np.inf, weight="sin", wvar=omega,
                  epsabs=epsabs, limit=cfg.max_subdivisions, limlst=200,
                  full_output=True)
        integral = rc[0] - sign * rs[0]
        err = rc[1] + rs[1]
        failed = len(rc) > 3 or len(rs) > 3
    else:
        def integrand(v: float) -> float:
            return (np.exp(1j * rel_strike * v) * eta(v)).real

        r = quad(integrand, 0.0, np.inf,
                 epsabs=epsabs, epsrel=cfg.rel_tol,
                 limit=cfg.max_subdivisions, full_output=True)
        integral, err = r[0], r[1]
        failed = len(r) > 3

    call = prefactor * integral
    if failed or not math.isfinite(call):
        raise QuadratureAccuracyError(
            "Fourier inversion did not converge", call, prefactor * err
        )
    return call, prefactor * err


def price_put_fourier(
    spec: OptionSpec,
    params: VgParams,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    damping: float | None = None,
) -> PriceQuote:
    """Damped Fourier inversion: strike-damped call integral, put by parity.

    The damping exponent defaults to 1.5 and falls back over the sweep
    (0.75, 2.5) if the inverted price lands outside no-arbitrage bounds
    or the moment condition rejects the exponent.
    """
    _require_put(spec)
    t0 = time.perf_counter()
    sweep = (damping,) if damping is not None else _DAMPING_SWEEP
    intrinsic = max(spec.strike - spec.spot, 0.0)
    slack = _BOUND_SLACK * max(1.0, spec.strike)
    last_error: Exception | None = None
    for a in sweep:
        if not (a > 0.0) or not _moment_bound_ok(a, params):
            last_error = ValueError(
                f"damping exponent {a!r} violates the moment condition"
            )
            continue
        try:
            call, err = _fourier_call_damped(spec, params, cfg, a)
        except QuadratureAccuracyError as exc:
            last_error = exc
            continue
        value = call - spec.spot + spec.strike
        if intrinsic - slack <= value <= spec.strike + slack:
            value = max(value, 0.0)  # inversion noise may dip a hair below zero
            return PriceQuote(value, "fourier", err, time.perf_counter() - t0)
        last_error = ArithmeticError(
            f"fourier price {value!r} out of bounds at damping {a!r}"
        )
    raise last_error if last_error is not None else ArithmeticError(
        "no damping exponent admissible"
    )


def fourier_put_ladder(
    spot: float,
    maturity: float,
    params: VgParams,
    n_points: int = 4096,
    grid_step: float = 0.25,
    damping: float = 1.5,
) -> tuple[np.ndarray, np.ndarray]:
    """Price a whole log-strike ladder in one FFT pass.

    Discretizes the damped call integral on a frequency grid of
    ``n_points`` nodes spaced ``grid_step`` apart (Simpson weights) and
    reads prices off the conjugate log-strike grid centered at the
    spot.  Returns (strikes, put_prices), both ascending.  Accuracy is
    grid-limited; use price_put_fourier for a single tight price.
    """
    if not _moment_bound_ok(damping, params):
        raise ValueError(f"damping exponent {damping!r} violates the moment condition")
    n = int(n_points)
    if n < 16 or n & (n - 1):
        raise ValueError(f"n_points must be a power of two >= 16, got {n_points!r}")
    a = damping
    t = maturity
    x = math.log(spot)
    v = grid_step * np.arange(n)
    lam_k = 2.0 * math.pi / (n * grid_step)  # log-strike spacing
    b = 0.5 * n * lam_k
    log_strikes = x - b + lam_k * np.arange(n)

    u = v - 1j * (a + 1.0)
    psi = vg_charfunc(u, t, params) / (
        a * a + a - v * v + 1j * (2.0 * a + 1.0) * v
    )
    # Simpson weights h/3 * (1, 4, 2, 4, ...); the damped-call transform of
    # the log-spot carries the real factor e^{(a+1) x} alongside the phase
    weights = np.full(n, grid_step / 3.0)
    weights[1::2] *= 4.0
    weights[2::2] *= 2.0
    transformed = np.fft.fft(np.exp(1j * v * b) * psi * weights)
    calls = np.exp((a + 1.0) * x - a * log_strikes) / math.pi * transformed.real
    strikes = np.exp(log_strikes)
    puts = calls - spot + strikes
    return strikes, puts


# ---------------------------------------------------------------------------
# Monte Carlo baseline


def price_put_mc(
    spec: OptionSpec,
    params: VgParams,
    cfg: McConfig = McConfig(),
) -> PriceQuote:
    """Simulate the time-changed Brownian motion and average the payoff.

    Paths are drawn in fixed-size chunks, each from its own RNG
    substream spawned from (seed, chunk index), so results do not
    depend on how the chunks are scheduled.  With antithetic pairing
    the averaging unit is the pair mean and the standard error is
    estimated across pairs.
    """
    _require_put(spec)
    t0 = time.perf_counter()
    shape = spec.maturity / params.nu
    units_total = (cfg.path_count + 1) // 2 if cfg.antithetic else cfg.path_count
    unit_chunk = _MC_CHUNK // 2 if cfg.antithetic else _MC_CHUNK
    n_chunks = (units_total + unit_chunk - 1) // unit_chunk
    streams = np.random.SeedSequence(cfg.seed).spawn(n_chunks)

    total = 0.0
    total_sq = 0.0
    done = 0
    for idx in range(n_chunks):
        m = min(unit_chunk, units_total - done)
        rng = np.random.default_rng(streams[idx])
        clock = rng.gamma(shape, scale=params.nu, size=m)
        z = rng.standard_normal(m)
        drift = params.mu * clock
        shock = params.sigma * np.sqrt(clock)
        pay = np.maximum(spec.strike - spec.spot * np.exp(drift + shock * z), 0.0)
        if cfg.antithetic:
            pay_anti = np.maximum(
                spec.strike - spec.spot * np.exp(drift - shock * z), 0.0
            )
            units = 0.5 * (pay + pay_anti)
        else:
            units = pay
        total += float(units.sum())
        total_sq += float(np.square(units).sum())
        done += m

    mean = total / units_total
    if units_total > 1:
        var = max(total_sq - units_total * mean * mean, 0.0) / (units_total - 1)
        stderr = math.sqrt(var / units_total)
    else:
        stderr = float("inf")
    return PriceQuote(mean, "mc", stderr, time.perf_counter() - t0)


def call_from_put(put: float, spot: float, strike: float) -> float:
    """Zero-rate put-call parity: C = P + S - K."""
    if put < 0.0:
        raise ValueError(f"put price must be non-negative, got {put!r}")
    return put + spot - strike
