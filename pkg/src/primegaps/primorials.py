"""Primorial numbers, the sequence floor, and the exhaustive dominance verifier."""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import PrecisionError
from .series import DEFAULT_TRUNCATION, SeriesValue, singular_series, twin_prime_constant
from .primes import chebyshev_theta, primes_upto

# First 15 primorials: the 16th would overflow 64 bits.
PRIMORIAL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
MAX_PRIMORIAL_INDEX = len(PRIMORIAL_PRIMES)
_PRIME_AFTER_TABLE = 53

_PRIMORIALS: list[int] = []
for _p in PRIMORIAL_PRIMES:
    _PRIMORIALS.append((_PRIMORIALS[-1] if _PRIMORIALS else 1) * _p)
PRIMORIALS = tuple(_PRIMORIALS)


@dataclass(frozen=True)
class PrimorialTable:
    """Ascending (k, p_k, primorial_k) rows with exact 64-bit products."""

    entries: tuple[tuple[int, int, int], ...]


def primorial_table(max_k: int = MAX_PRIMORIAL_INDEX) -> PrimorialTable:
    if not 1 <= max_k <= MAX_PRIMORIAL_INDEX:
        raise OverflowError(f"primorial table supports 1 <= k <= {MAX_PRIMORIAL_INDEX}, got {max_k}")
    rows = tuple((k + 1, PRIMORIAL_PRIMES[k], PRIMORIALS[k]) for k in range(max_k))
    return PrimorialTable(rows)


def primorial(k: int) -> int:
    """Product of the first k primes."""
    if k < 1:
        raise ValueError(f"primorial index must be >= 1, got {k}")
    if k > MAX_PRIMORIAL_INDEX:
        raise OverflowError(f"primorial({k}) does not fit 64 bits (max k = {MAX_PRIMORIAL_INDEX})")
    return PRIMORIALS[k - 1]


def sequence_floor(y: float, sequence: Sequence[int]) -> int:
    """Largest element of the ascending sequence that is <= y.

    The sequence is treated as exhaustive up to its last element, so the
    caller must pass a table extending past y.
    """
    seq = list(sequence)
    if not seq:
        raise ValueError("sequence must be nonempty")
    for a, b in zip(seq, seq[1:]):
        if a >= b:
            raise ValueError(f"sequence must be strictly ascending, got {a} before {b}")
    if y < seq[0]:
        raise ValueError(f"y={y} lies below the first sequence element {seq[0]}")
    return seq[bisect_right(seq, y) - 1]


def primorial_floor(y: float) -> int:
    """Largest primorial <= y."""
    if y < 2:
        raise ValueError(f"y={y} lies below the first primorial 2")
    if y >= PRIMORIALS[-1] * _PRIME_AFTER_TABLE:
        raise OverflowError(f"y={y} is beyond the 64-bit primorial table")
    return sequence_floor(y, PRIMORIALS)


@dataclass(frozen=True)
class ThetaWitness:
    """Two independent locations of y among the primorials: by value, and by log-weight.

    The floor index comes from comparing y against the primorial table;
    the theta index n is the one satisfying theta(p_n) <= log y < theta(p_{n+1}),
    where theta sums log p over primes.  The two must agree.
    """

    y: float
    log_y: float
    floor_index: int
    floor_value: int
    theta_index: int
    p_n: int
    p_next: int
    theta_p_n: float
    theta_p_next: float
    consistent: bool

    def to_dict(self) -> dict:
        return {
            "y": self.y,
            "log_y": self.log_y,
            "floor_index": self.floor_index,
            "floor_value": self.floor_value,
            "theta_index": self.theta_index,
            "p_n": self.p_n,
            "p_next": self.p_next,
            "theta_p_n": self.theta_p_n,
            "theta_p_next": self.theta_p_next,
            "consistent": self.consistent,
        }


@lru_cache(maxsize=1)
def _table_thetas() -> tuple[float, ...]:
    primes = PRIMORIAL_PRIMES + (_PRIME_AFTER_TABLE,)
    return tuple(chebyshev_theta(p) for p in primes)


def theta_characterization(y: float) -> ThetaWitness:
    """Check that the primorial floor of y is equivalently located by theta sums.

    Comparisons are float-tolerant at the boundaries, where log y equals a
    theta value exactly in real arithmetic but only to rounding in floats.
    """
    if y < 2:
        raise ValueError(f"theta characterization requires y >= 2, got {y}")
    floor_value = primorial_floor(y)
    floor_index = PRIMORIALS.index(floor_value) + 1
    log_y = math.log(y)
    tol = 1e-9 * max(1.0, abs(log_y))
    thetas = _table_thetas()
    theta_index = 0
    for j, th in enumerate(thetas[: len(PRIMORIAL_PRIMES)], start=1):
        if th <= log_y + tol:
            theta_index = j
    p_n = PRIMORIAL_PRIMES[theta_index - 1]
    p_next = PRIMORIAL_PRIMES[theta_index] if theta_index < MAX_PRIMORIAL_INDEX else _PRIME_AFTER_TABLE
    theta_p_n = thetas[theta_index - 1]
    theta_p_next = thetas[theta_index]
    consistent = theta_index == floor_index and theta_p_n <= log_y + tol and log_y < theta_p_next + tol
    return ThetaWitness(
        y=float(y),
        log_y=log_y,
        floor_index=floor_index,
        floor_value=floor_value,
        theta_index=theta_index,
        p_n=p_n,
        p_next=p_next,
        theta_p_n=theta_p_n,
        theta_p_next=theta_p_next,
        consistent=consistent,
    )


@dataclass(frozen=True)
class DominanceWitness:
    """Result of the exhaustive scan: no d below the primorial matches its density constant."""

    k: int
    primorial: int
    holds: bool
    checked: int
    maximizer: int
    maximizer_series: SeriesValue
    primorial_series: SeriesValue
    separation: float

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "primorial": self.primorial,
            "holds": self.holds,
            "checked": self.checked,
            "maximizer": self.maximizer,
            "maximizer_series": self.maximizer_series.to_dict(),
            "primorial_series": self.primorial_series.to_dict(),
            "separation": self.separation,
        }


def verify_primorial_dominance(k: int, truncation_prime: Optional[int] = None) -> DominanceWitness:
    """Exhaustively check that the pair-density constant of the k-th primorial
    strictly exceeds the constant of every even d below it.

    The comparison separates intervals (value +/- error_bound), so a pass
    certifies the strict inequality at this truncation; odd d contribute
    zero and are dominated trivially.
    """
    if not 2 <= k <= 7:
        raise ValueError(f"exhaustive dominance scan supports 2 <= k <= 7, got {k}")
    trunc = truncation_prime if truncation_prime is not None else DEFAULT_TRUNCATION
    n = primorial(k)
    # ratio[d] = product of (p-1)/(p-2) over odd primes p | d; multiplicity
    # does not matter, so one strided multiply per prime suffices.
    ratio = np.ones(n, dtype=np.float64)
    for p in primes_upto(n - 1)[1:].tolist():
        ratio[p::p] *= (p - 1) / (p - 2)
    evens = ratio[2::2]
    arg = int(np.argmax(evens))
    maximizer = 2 + 2 * arg
    champ = singular_series(n, trunc)
    best = singular_series(maximizer, trunc)
    c2 = twin_prime_constant(trunc)
    # upper interval end valid for every even d at once, via the scan max
    scan_upper = 2.0 * (c2.value + c2.error_bound) * float(evens[arg]) * (1.0 + 1e-11)
    champ_lower = champ.value - champ.error_bound
    if scan_upper < champ_lower:
        holds = True
    elif best.value < champ.value:
        raise PrecisionError(
            f"intervals at truncation {trunc} cannot separate the dominance margin at k={k}; "
            "raise the truncation prime"
        )
    else:
        holds = False
    return DominanceWitness(
        k=k,
        primorial=n,
        holds=holds,
        checked=(n - 2) // 2,
        maximizer=maximizer,
        maximizer_series=best,
        primorial_series=champ,
        separation=champ_lower - (best.value + best.error_bound),
    )
