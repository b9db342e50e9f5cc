"""Segmented, odd-only prime sieve plus summatory functions over primes.

The number line [2, limit] is tiled into fixed-width segments of
`segment_size` odd candidates each (a numeric span of 2*segment_size).
Workers sieve whole blocks of adjacent segments so the per-prime marking
overhead amortizes even for small segment sizes; results are merged
strictly in tile order, so every public result is independent of the
worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

from .histogram import GapHistogram

DEFAULT_SEGMENT_SIZE = 1 << 20  # odd candidates per segment
MIN_SEGMENT_SIZE = 64

# Internal backing is int64, so the engine stops one bit short of the
# unsigned 64-bit ceiling.
MAX_LIMIT = 2**63 - 1

# Odd candidates per worker task.  Tasks always cover whole segments.
_BLOCK_ODDS = 1 << 23


@dataclass(frozen=True)
class SieveConfig:
    """Parameters of one sieve run over [2, limit]."""

    limit: int
    segment_size: int = DEFAULT_SEGMENT_SIZE
    worker_count: int = 1

    def __post_init__(self) -> None:
        if self.limit < 2:
            raise ValueError(f"limit must be >= 2, got {self.limit}")
        if self.limit > MAX_LIMIT:
            raise ValueError(f"limit {self.limit} exceeds the 64-bit engine bound {MAX_LIMIT}")
        if self.segment_size < MIN_SEGMENT_SIZE:
            raise ValueError(f"segment_size must be >= {MIN_SEGMENT_SIZE}, got {self.segment_size}")
        if self.worker_count < 1:
            raise ValueError(f"worker_count must be >= 1, got {self.worker_count}")


@dataclass(frozen=True)
class SegmentSummary:
    """Everything the merge step needs to know about one segment.

    `interior_histogram` counts only gaps between consecutive primes that
    both lie inside the segment; the gap straddling two segments is added
    by the merger.  `first_prime`/`last_prime` are None exactly when the
    segment contains no prime.
    """

    range_start: int
    range_end: int
    first_prime: Optional[int]
    last_prime: Optional[int]
    interior_histogram: GapHistogram
    prime_count: int


def segment_count(config: SieveConfig) -> int:
    span = 2 * config.segment_size
    return (config.limit - 1 + span - 1) // span


def segment_bounds(config: SieveConfig, index: int) -> tuple[int, int]:
    """Inclusive numeric range [lo, hi] of segment `index`; tiles [2, limit] exactly."""
    if index < 0 or index >= segment_count(config):
        raise IndexError(f"segment index {index} out of range for limit {config.limit}")
    lo = 2 + 2 * config.segment_size * index
    hi = min(lo + 2 * config.segment_size - 1, config.limit)
    return lo, hi


def primes_upto(n: int) -> np.ndarray:
    """All primes <= n as an ascending int64 array (dense odd-only sieve)."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    odd_count = (n - 1) // 2  # odds in [3, n]
    flags = np.ones(odd_count, dtype=bool)
    for i in range((math.isqrt(n) - 1) // 2):
        if flags[i]:
            v = 3 + 2 * i
            flags[(v * v - 3) // 2 :: v] = False
    odd_primes = 3 + 2 * np.flatnonzero(flags)
    return np.concatenate((np.array([2], dtype=np.int64), odd_primes))


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test for 64-bit n."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@lru_cache(maxsize=8)
def _odd_base_primes(sqrt_bound: int) -> np.ndarray:
    """Odd primes <= sqrt_bound, shared read-only by all sieving calls."""
    return primes_upto(sqrt_bound)[1:]


def _sieve_odd_span(first_odd: int, odd_count: int, base: list[int]) -> np.ndarray:
    """Boolean flags over the odd numbers first_odd, first_odd+2, ... (odd_count of them)."""
    flags = np.ones(odd_count, dtype=bool)
    if odd_count == 0:
        return flags
    last = first_odd + 2 * (odd_count - 1)
    for p in base:
        pp = p * p
        if pp > last:
            break
        start = pp if pp >= first_odd else ((first_odd + p - 1) // p) * p
        if start % 2 == 0:
            start += p
        if start > last:
            continue
        # consecutive odd multiples of p are 2p apart: index stride p
        flags[(start - first_odd) >> 1 :: p] = False
    return flags


def _range_primes(limit: int, lo: int, hi: int, include_two: bool) -> np.ndarray:
    first_odd = lo + 1 if lo % 2 == 0 else lo
    odd_count = (hi - first_odd) // 2 + 1 if hi >= first_odd else 0
    base = _odd_base_primes(math.isqrt(limit)).tolist()
    flags = _sieve_odd_span(first_odd, odd_count, base)
    primes = first_odd + 2 * np.flatnonzero(flags)
    if include_two and lo <= 2 <= hi:
        primes = np.concatenate((np.array([2], dtype=np.int64), primes))
    return primes


def segment_primes(config: SieveConfig, index: int) -> np.ndarray:
    """Ascending array of the primes inside segment `index`."""
    lo, hi = segment_bounds(config, index)
    return _range_primes(config.limit, lo, hi, include_two=(index == 0))


def _summary_from_primes(lo: int, hi: int, primes: np.ndarray) -> SegmentSummary:
    n = int(primes.size)
    if n == 0:
        return SegmentSummary(lo, hi, None, None, GapHistogram({}, hi), 0)
    counts: dict[int, int] = {}
    if n > 1:
        bc = np.bincount(np.diff(primes))
        for d in np.flatnonzero(bc):
            counts[int(d)] = int(bc[d])
    return SegmentSummary(lo, hi, int(primes[0]), int(primes[-1]), GapHistogram(counts, hi), n)


def sieve_segment(config: SieveConfig, index: int) -> SegmentSummary:
    """Sieve one segment in isolation."""
    lo, hi = segment_bounds(config, index)
    return _summary_from_primes(lo, hi, segment_primes(config, index))


def _block_summaries(limit: int, segment_size: int, k0: int, k1: int) -> list[SegmentSummary]:
    """Sieve segments [k0, k1) in one pass and split the result per segment."""
    config = SieveConfig(limit, segment_size)
    lo0, _ = segment_bounds(config, k0)
    _, hi_last = segment_bounds(config, k1 - 1)
    primes = _range_primes(limit, lo0, hi_last, include_two=(k0 == 0))
    out = []
    pos = 0
    for k in range(k0, k1):
        lo, hi = segment_bounds(config, k)
        end = int(np.searchsorted(primes, hi, side="right"))
        out.append(_summary_from_primes(lo, hi, primes[pos:end]))
        pos = end
    return out


def _block_task(args: tuple[int, int, int, int]) -> list[SegmentSummary]:
    return _block_summaries(*args)


def _block_spans(config: SieveConfig, start: int, stop: int) -> list[tuple[int, int]]:
    per_block = max(1, _BLOCK_ODDS // config.segment_size)
    if config.worker_count > 1:
        # keep at least a few blocks per worker so the pool stays busy
        wanted = math.ceil((stop - start) / (4 * config.worker_count))
        per_block = max(1, min(per_block, wanted))
    return [(k, min(k + per_block, stop)) for k in range(start, stop, per_block)]


def iter_segment_summaries(config: SieveConfig, start: int = 0, stop: Optional[int] = None) -> Iterator[SegmentSummary]:
    """Yield SegmentSummary values for segments [start, stop) in tile order.

    Blocks are sieved by a process pool when worker_count > 1; the merge
    order (and therefore every downstream result) does not depend on the
    worker count.
    """
    total = segment_count(config)
    if stop is None:
        stop = total
    if not 0 <= start <= stop <= total:
        raise IndexError(f"segment window [{start}, {stop}) invalid for {total} segments")
    spans = _block_spans(config, start, stop)
    if config.worker_count == 1 or len(spans) <= 1:
        for k0, k1 in spans:
            yield from _block_summaries(config.limit, config.segment_size, k0, k1)
        return
    args = [(config.limit, config.segment_size, k0, k1) for k0, k1 in spans]
    with ProcessPoolExecutor(max_workers=config.worker_count) as pool:
        for block in pool.map(_block_task, args):
            yield from block


def iter_prime_blocks(limit: int, block_odds: int = _BLOCK_ODDS) -> Iterator[np.ndarray]:
    """Ascending arrays of primes covering [2, limit], in fixed-size spans.

    Single-process and independent of any SieveConfig, so floating-point
    reductions over the blocks are reproducible.
    """
    if limit < 2:
        return
    lo = 2
    while lo <= limit:
        hi = min(lo + 2 * block_odds - 1, limit)
        yield _range_primes(limit, lo, hi, include_two=(lo == 2))
        lo = hi + 1


def prime_count(x: int) -> int:
    """pi(x): the number of primes <= x."""
    if x < 2:
        return 0
    return sum(int(block.size) for block in iter_prime_blocks(x))


def chebyshev_theta(x: int) -> float:
    """Sum of log p over primes p <= x (natural log)."""
    if x < 2:
        raise ValueError(f"chebyshev_theta requires x >= 2, got {x}")
    partial = [float(np.sum(np.log(block.astype(np.float64)))) for block in iter_prime_blocks(x)]
    return math.fsum(partial)


def mertens_reciprocal_sum(x: int) -> float:
    """Sum of 1/p over primes p <= x."""
    if x < 2:
        raise ValueError(f"mertens_reciprocal_sum requires x >= 2, got {x}")
    partial = [float(np.sum(1.0 / block.astype(np.float64))) for block in iter_prime_blocks(x)]
    return math.fsum(partial)
