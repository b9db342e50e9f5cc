"""Predicted gap counts from the pair-density model, and numeric diagnostics
comparing empirical champion statistics against the model's inequality chain."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from scipy.integrate import quad

from .gaps import ChampionReport, champions, gap_histogram
from .primes import SieveConfig, primes_upto
from .primorials import primorial_floor
from .series import singular_series

MODELS = ("asymptotic", "integral")

# Empirical peak-count lower bound: twice the twin-prime constant, rounded down.
PEAK_LOWER_COEFFICIENT = 1.32


@dataclass(frozen=True)
class Prediction:
    """Model count of consecutive-prime gaps of size d up to x."""

    x: int
    d: int
    model: str
    predicted_count: float

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "d": self.d,
            "model": self.model,
            "predicted": self.predicted_count,
        }


@lru_cache(maxsize=128)
def _reciprocal_log_squared_integral(x: int) -> float:
    """Integral of dt / (log t)^2 from 2 to x, by adaptive quadrature."""
    value, _ = quad(lambda t: 1.0 / math.log(t) ** 2, 2.0, float(x), epsabs=0.0, epsrel=1e-11, limit=500)
    return value


def predicted_count(x: int, d: int, model: str = "asymptotic") -> Prediction:
    """Density constant times x/(log x)^2, or times the integral refinement.

    Odd distances have density zero, so their prediction is exactly 0.
    """
    if x < 3:
        raise ValueError(f"prediction requires x >= 3, got {x}")
    if d < 1:
        raise ValueError(f"gap size must be >= 1, got {d}")
    if model not in MODELS:
        raise ValueError(f"model must be one of {MODELS}, got {model!r}")
    density = singular_series(d).value
    if density == 0.0:
        value = 0.0
    elif model == "asymptotic":
        value = density * x / math.log(x) ** 2
    else:
        value = density * _reciprocal_log_squared_integral(x)
    return Prediction(x=x, d=d, model=model, predicted_count=value)


def predicted_champion(x: int) -> set[int]:
    """Model champion: argmax of the density constant over even d <= sqrt(log x).

    Primorial dominance makes this the largest primorial below the window,
    returned as a set to mirror the empirical champion interface.
    """
    if x < 10:
        raise ValueError(f"predicted champion requires x >= 10, got {x}")
    window = math.sqrt(math.log(x))
    if window < 2:
        raise ValueError(f"champion window sqrt(log x) = {window:.4f} < 2 admits no even gap")
    return {primorial_floor(window)}


@dataclass(frozen=True)
class RatioWitness:
    """Growth of the density constant between the sqrt(log x) and (log x)^2 windows.

    `ratio` divides the constants at the two primorial floors; it is checked
    against the covering product of (p-1)/(p-2) over odd primes in roughly
    [loglog(x)/3, 3*loglog(x)], the window in which the floors' prime
    supports can differ.  Purely diagnostic at finite x.
    """

    x: int
    sqrt_log_x: float
    log_x_squared: float
    lower_floor: int
    upper_floor: int
    lower_series: float
    upper_series: float
    ratio: float
    window_lo: float
    window_hi: float
    covering_product: float
    within_bound: bool

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "sqrt_log_x": self.sqrt_log_x,
            "log_x_squared": self.log_x_squared,
            "lower_floor": self.lower_floor,
            "upper_floor": self.upper_floor,
            "lower_series": self.lower_series,
            "upper_series": self.upper_series,
            "ratio": self.ratio,
            "window_lo": self.window_lo,
            "window_hi": self.window_hi,
            "covering_product": self.covering_product,
            "within_bound": self.within_bound,
        }


def primorial_ratio_check(x: int) -> RatioWitness:
    """Evaluate the two-floor density ratio and its covering-product bound at x."""
    log_x = math.log(x)
    window = math.sqrt(log_x)
    if window < 2:
        raise ValueError(f"ratio check requires sqrt(log x) >= 2, got {window:.4f}")
    lower_floor = primorial_floor(window)
    upper_floor = primorial_floor(log_x**2)
    lower = singular_series(lower_floor).value
    upper = singular_series(upper_floor).value
    ratio = upper / lower
    loglog = math.log(log_x)
    window_lo, window_hi = loglog / 3.0, 3.0 * loglog
    product = 1.0
    # factor (p-1)/(p-2) is only defined for odd primes; 2 never separates
    # the two floors since both are even
    for p in primes_upto(int(window_hi)).tolist():
        if p >= 3 and p >= window_lo:
            product *= (p - 1) / (p - 2)
    return RatioWitness(
        x=x,
        sqrt_log_x=window,
        log_x_squared=log_x**2,
        lower_floor=lower_floor,
        upper_floor=upper_floor,
        lower_series=lower,
        upper_series=upper,
        ratio=ratio,
        window_lo=window_lo,
        window_hi=window_hi,
        covering_product=product,
        within_bound=ratio <= product * (1.0 + 1e-9),
    )


@dataclass(frozen=True)
class PeakBoundWitness:
    """Empirical peak gap count against the 1.32 * x/(log x)^2 lower bound."""

    x: int
    n_star: int
    champions: tuple[int, ...]
    threshold: float
    passes: bool

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "n_star": self.n_star,
            "champions": list(self.champions),
            "threshold": self.threshold,
            "passes": self.passes,
        }


def nstar_lower_bound_check(x: int, config: Optional[SieveConfig] = None) -> PeakBoundWitness:
    """Does the most frequent gap count exceed 1.32 * x/(log x)^2 at this x?"""
    if x < 1000:
        raise ValueError(f"peak bound check requires x >= 1000, got {x}")
    report: ChampionReport = champions(x, config)
    threshold = PEAK_LOWER_COEFFICIENT * x / math.log(x) ** 2
    return PeakBoundWitness(
        x=x,
        n_star=report.n_star,
        champions=report.champions,
        threshold=threshold,
        passes=report.n_star > threshold,
    )


@dataclass(frozen=True)
class LargeGapWitness:
    """Counting bounds on large gaps: N(x,d) <= x/d always, and <= x/(log x)^2 once d >= (log x)^2."""

    x: int
    threshold: float
    cap: float
    max_observed_gap: int
    reciprocal_ok: bool
    tail_ok: bool
    violations: tuple[int, ...]

    @property
    def passes(self) -> bool:
        return self.reciprocal_ok and self.tail_ok

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "threshold": self.threshold,
            "cap": self.cap,
            "max_observed_gap": self.max_observed_gap,
            "reciprocal_ok": self.reciprocal_ok,
            "tail_ok": self.tail_ok,
            "violations": list(self.violations),
            "passes": self.passes,
        }


def large_gap_bound_check(x: int, config: Optional[SieveConfig] = None) -> LargeGapWitness:
    """Scan every observed gap for the x/d and tail x/(log x)^2 count bounds.

    Unobserved gaps have count 0 and satisfy both bounds trivially.
    """
    if x < 1000:
        raise ValueError(f"large gap check requires x >= 1000, got {x}")
    hist = gap_histogram(x, config)
    threshold = math.log(x) ** 2
    cap = x / threshold
    bad = []
    recip_ok = True
    tail_ok = True
    for d, c in hist.counts.items():
        if c * d > x:
            recip_ok = False
            bad.append(d)
        if d >= threshold and c > cap:
            tail_ok = False
            bad.append(d)
    return LargeGapWitness(
        x=x,
        threshold=threshold,
        cap=cap,
        max_observed_gap=max(hist.counts),
        reciprocal_ok=recip_ok,
        tail_ok=tail_ok,
        violations=tuple(sorted(set(bad))),
    )
