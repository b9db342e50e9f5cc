"""Prime-pair and prime-triple density constants as truncated Euler products.

Every infinite product over primes is evaluated as a finite product up to
a truncation prime together with a rigorous bound on the omitted tail, so
comparisons between values can be done on intervals rather than bare
floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from .primes import is_prime, iter_prime_blocks, primes_upto

DEFAULT_TRUNCATION = 1_000_000

# Max of triple-series value over (log delta)^2 on the built-in corpus of
# admissible triples (all even d <= 100 with every d' < d, plus primorial
# pairs up to 510510) is 0.191, attained at (d, d') = (6, 2).
GROWTH_BOUND_CONSTANT = 0.25

# Relative slack added to every error bound to cover float rounding in the
# finite products and log-sums; orders of magnitude above the true
# accumulated rounding error, orders of magnitude below the tail bounds.
_ROUNDING_SLACK = 1e-12


@dataclass(frozen=True)
class SeriesValue:
    """A real value bracketed by `value +/- error_bound`, truncated at `truncation_prime`."""

    value: float
    error_bound: float
    truncation_prime: int

    def interval(self) -> tuple[float, float]:
        return self.value - self.error_bound, self.value + self.error_bound

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "error_bound": self.error_bound,
            "truncation_prime": self.truncation_prime,
        }


def odd_prime_factors(n: int) -> list[int]:
    """Distinct odd prime divisors of |n|, ascending."""
    n = abs(n)
    out = []
    while n % 2 == 0 and n:
        n //= 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 2
    if n > 1:
        out.append(n)
    return out


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of |n|, ascending."""
    n = abs(n)
    return ([2] if n % 2 == 0 and n > 0 else []) + odd_prime_factors(n)


@lru_cache(maxsize=32)
def twin_prime_constant(truncation_prime: int = DEFAULT_TRUNCATION) -> SeriesValue:
    """Product of 1 - 1/(p-1)^2 over odd primes p <= truncation_prime.

    The omitted factors multiply the value by exp(t) with
    |t| <= sum_{n > P} 1/((n-1)^2 - 1) <= 1/(P-2), which gives the error
    bound; the bound shrinks monotonically as the truncation grows.
    """
    if truncation_prime < 3:
        raise ValueError(f"truncation prime must be >= 3, got {truncation_prime}")
    odd = primes_upto(truncation_prime)[1:].astype(np.float64)
    log_partial = float(np.sum(np.log1p(-1.0 / ((odd - 1.0) ** 2))))
    value = math.exp(log_partial)
    tail = 1.0 / (truncation_prime - 2)
    error = value * math.expm1(tail) + _ROUNDING_SLACK * value
    return SeriesValue(value, error, truncation_prime)


def singular_series(d: int, truncation_prime: int = DEFAULT_TRUNCATION) -> SeriesValue:
    """Pair-density constant at distance d: zero for odd d, else
    2 * C * product over odd primes p | d of (p-1)/(p-2), with C the twin
    prime constant.  The finite product is exact; the error comes from C
    alone, so it depends only on the truncation."""
    if d == 0:
        raise ValueError("the pair density constant is undefined at d = 0")
    n = abs(d)
    if n % 2:
        return SeriesValue(0.0, 0.0, truncation_prime)
    c2 = twin_prime_constant(truncation_prime)
    ratio = 1.0
    for p in odd_prime_factors(n):
        ratio *= (p - 1) / (p - 2)
    value = 2.0 * c2.value * ratio
    error = 2.0 * c2.error_bound * ratio + _ROUNDING_SLACK * value
    return SeriesValue(value, error, truncation_prime)


def distinct_residues(offsets: Iterable[int], p: int) -> int:
    """Number of distinct residue classes mod p occupied by the offsets."""
    offs = list(offsets)
    if not offs:
        raise ValueError("offsets must be nonempty")
    if not is_prime(p):
        raise ValueError(f"modulus must be prime, got {p}")
    return len({o % p for o in offs})


@dataclass(frozen=True)
class TripleConfig:
    """An offset triple {0, d_prime, d} with its discriminant d_prime*d*(d-d_prime)."""

    d: int
    d_prime: int
    delta: int = field(init=False)

    def __post_init__(self) -> None:
        if self.d < 2 or self.d % 2:
            raise ValueError(f"d must be an even integer >= 2, got {self.d}")
        if not 1 <= self.d_prime < self.d:
            raise ValueError(f"need 1 <= d_prime < d, got d_prime={self.d_prime}, d={self.d}")
        object.__setattr__(self, "delta", self.d_prime * self.d * (self.d - self.d_prime))

    def offsets(self) -> tuple[int, int, int]:
        return (0, self.d_prime, self.d)


def triple_singular_series(
    cfg: TripleConfig,
    truncation_prime: Optional[int] = None,
) -> SeriesValue:
    """Triple-density constant: product over primes of (1-1/p)^-3 (1 - nu(p)/p),
    where nu(p) counts the residues of {0, d_prime, d} mod p.

    Primes dividing the discriminant contribute an exact finite product;
    for the rest nu(p) = 3 and each factor lies in (0, 1], so the truncated
    product decreases monotonically and the tail bound
    |log tail| <= 11.25 / truncation covers the omitted factors.  Exact 0
    (with zero error) whenever some prime sees every residue class.
    """
    support = sorted(set(prime_factors(cfg.d_prime)) | set(prime_factors(cfg.d)) | set(prime_factors(cfg.d - cfg.d_prime)))
    if truncation_prime is None:
        truncation_prime = max(DEFAULT_TRUNCATION, support[-1])
    if truncation_prime < 3:
        raise ValueError(f"truncation prime must be >= 3, got {truncation_prime}")
    if truncation_prime < support[-1]:
        raise ValueError(
            f"truncation prime {truncation_prime} is below the largest discriminant prime {support[-1]}"
        )
    offsets = cfg.offsets()
    finite = 1.0
    for p in support:
        nu = len({o % p for o in offsets})
        if nu == p:
            return SeriesValue(0.0, 0.0, truncation_prime)
        finite *= (1.0 - nu / p) / (1.0 - 1.0 / p) ** 3
    if 3 not in support:
        # 3 does not divide the discriminant, so the offsets are distinct
        # mod 3 and occupy every class: the p = 3 factor vanishes.
        return SeriesValue(0.0, 0.0, truncation_prime)
    primes = primes_upto(truncation_prime)
    rest = primes[~np.isin(primes, support)].astype(np.float64)
    inv = 1.0 / rest
    log_rest = float(np.sum(np.log1p(-3.0 * inv) - 3.0 * np.log1p(-inv)))
    value = finite * math.exp(log_rest)
    tail = 11.25 / truncation_prime
    error = abs(value) * math.expm1(tail) + _ROUNDING_SLACK * abs(value)
    return SeriesValue(value, error, truncation_prime)


def mertens_product(x: int) -> float:
    """Product of (1 - 1/p) over primes p <= x."""
    if x < 2:
        raise ValueError(f"mertens_product requires x >= 2, got {x}")
    partial = [float(np.sum(np.log1p(-1.0 / block.astype(np.float64)))) for block in iter_prime_blocks(x)]
    return math.exp(math.fsum(partial))


@dataclass(frozen=True)
class GrowthWitness:
    """Triple-density value against the slow-growth bound C * (log delta)^2."""

    d: int
    d_prime: int
    delta: int
    series: SeriesValue
    log_delta_squared: float
    bound: float
    ratio: float
    passes: bool
    epsilon: float
    d_power_epsilon: float

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "d_prime": self.d_prime,
            "delta": self.delta,
            "series": self.series.to_dict(),
            "log_delta_squared": self.log_delta_squared,
            "bound": self.bound,
            "ratio": self.ratio,
            "passes": self.passes,
            "epsilon": self.epsilon,
            "d_power_epsilon": self.d_power_epsilon,
        }


def triple_growth_check(
    cfg: TripleConfig,
    epsilon: float = 0.5,
    truncation_prime: Optional[int] = None,
) -> GrowthWitness:
    """Diagnostic: does the triple-density constant stay below
    GROWTH_BOUND_CONSTANT * (log delta)^2?  The d**epsilon value is
    reported alongside for reference only."""
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    series = triple_singular_series(cfg, truncation_prime)
    log_delta_sq = math.log(cfg.delta) ** 2
    bound = GROWTH_BOUND_CONSTANT * log_delta_sq
    ratio = series.value / log_delta_sq
    return GrowthWitness(
        d=cfg.d,
        d_prime=cfg.d_prime,
        delta=cfg.delta,
        series=series,
        log_delta_squared=log_delta_sq,
        bound=bound,
        ratio=ratio,
        passes=series.value <= bound,
        epsilon=epsilon,
        d_power_epsilon=float(cfg.d) ** epsilon,
    )
