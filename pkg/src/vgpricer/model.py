"""Model parameters, option contracts, and the gamma time change.

The underlying is an exponential variance gamma process: arithmetic
Brownian motion X with drift mu and volatility sigma, run on an
independent gamma clock gamma(t) with unit mean rate and variance rate
nu, so that

    S(t) = S(0) * exp( X(gamma(t)) ),
    gamma(t) ~ Gamma(shape = t/nu, rate = 1/nu).

Rates are zero throughout, so the spot itself must be a martingale.
Conditioning on the clock gives E[exp(X(s))] = exp((mu + sigma^2/2) s),
hence the drift is pinned at

    mu = -sigma^2 / 2

exactly.  ``VgParams`` derives mu when it is omitted and rejects any
explicitly supplied drift that deviates beyond round-off; there is no
way to build a parameter set that breaks the martingale property.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

__all__ = [
    "VgParams",
    "OptionSpec",
    "GammaTimeLaw",
    "make_vg_params",
    "gamma_maturity_density",
]

# tolerance (relative to sigma^2/2) for accepting an explicit drift
_MU_RTOL = 1e-12


@dataclass(frozen=True)
class VgParams:
    """Parameters of the time-changed Brownian motion.

    sigma : volatility of the Brownian component, > 0
    nu    : variance rate of the gamma clock, > 0
    mu    : drift of the Brownian component; derived as -sigma^2/2 when
            omitted, and validated against that value when supplied
    """

    sigma: float
    nu: float
    mu: float | None = None

    def __post_init__(self):
        if not (self.sigma > 0.0) or not math.isfinite(self.sigma):
            raise ValueError(f"sigma must be positive and finite, got {self.sigma!r}")
        if not (self.nu > 0.0) or not math.isfinite(self.nu):
            raise ValueError(f"nu must be positive and finite, got {self.nu!r}")
        implied = -0.5 * self.sigma * self.sigma
        if self.mu is None:
            object.__setattr__(self, "mu", implied)
        elif abs(self.mu - implied) > _MU_RTOL * abs(implied):
            raise ValueError(
                f"mu={self.mu!r} violates the zero-rate martingale condition; "
                f"expected -sigma^2/2 = {implied!r}"
            )


def make_vg_params(sigma: float, nu: float) -> VgParams:
    """Build a parameter set with the martingale drift mu = -sigma^2/2."""
    return VgParams(sigma=sigma, nu=nu)


@dataclass(frozen=True)
class OptionSpec:
    """A European option on the variance gamma spot.

    spot, strike and maturity must be positive; side is 'put' or 'call'.
    """

    spot: float
    strike: float
    maturity: float
    side: str = "put"

    def __post_init__(self):
        for name in ("spot", "strike", "maturity"):
            v = getattr(self, name)
            if not (v > 0.0) or not math.isfinite(v):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")
        if self.side not in ("put", "call"):
            raise ValueError(f"side must be 'put' or 'call', got {self.side!r}")

    @property
    def log_spot(self) -> float:
        return math.log(self.spot)

    @property
    def log_strike(self) -> float:
        return math.log(self.strike)


@dataclass(frozen=True)
class GammaTimeLaw:
    """Law of the gamma clock at a fixed calendar time.

    gamma(t) ~ Gamma(shape, rate) with density

        f(s) = rate^shape * s^(shape-1) * exp(-rate s) / Gamma(shape),  s > 0,

    mean shape/rate = t and variance shape/rate^2 = t*nu for the
    maturity law shape = t/nu, rate = 1/nu.  For shape < 1 the density
    is unbounded at the origin but remains integrable.
    """

    shape: float
    rate: float

    def __post_init__(self):
        if not (self.shape > 0.0) or not math.isfinite(self.shape):
            raise ValueError(f"shape must be positive and finite, got {self.shape!r}")
        if not (self.rate > 0.0) or not math.isfinite(self.rate):
            raise ValueError(f"rate must be positive and finite, got {self.rate!r}")

    @classmethod
    def from_maturity(cls, t: float, nu: float) -> "GammaTimeLaw":
        if not (t > 0.0):
            raise ValueError(f"maturity must be positive, got {t!r}")
        if not (nu > 0.0):
            raise ValueError(f"nu must be positive, got {nu!r}")
        return cls(shape=t / nu, rate=1.0 / nu)

    @property
    def mean(self) -> float:
        return self.shape / self.rate

    @property
    def variance(self) -> float:
        return self.shape / self.rate**2

    def density(self, s):
        """Density at s (scalar or array); requires s > 0 elementwise."""
        s = np.asarray(s, dtype=float)
        if np.any(s <= 0.0) or not np.all(np.isfinite(s)):
            raise ValueError("density is defined for positive finite s only")
        log_pdf = (
            self.shape * math.log(self.rate)
            + (self.shape - 1.0) * np.log(s)
            - self.rate * s
            - gammaln(self.shape)
        )
        out = np.exp(log_pdf)
        return float(out) if out.ndim == 0 else out


def gamma_maturity_density(s, t: float, nu: float):
    """Density of gamma(t) at clock value s, for maturity t and variance rate nu."""
    return GammaTimeLaw.from_maturity(t, nu).density(s)
