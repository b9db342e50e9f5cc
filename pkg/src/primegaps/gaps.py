"""Counting functions over the ordered prime stream.

Builds gap histograms and jumping-champion reports from segment
summaries, and provides the all-pair / triple counts whose difference
sandwiches the consecutive-gap count:

    pair_count(x,d) - sum_{d' < d} triple_count(x,d,d') <= N(x,d) <= pair_count(x,d)

where N(x,d) is the number of consecutive-prime gaps of size d up to x.
"""

from __future__ import annotations

import dataclasses
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import ResourceLimitError
from .histogram import GapHistogram
from .primes import SegmentSummary, SieveConfig, iter_segment_summaries, primes_upto, segment_primes

# Pair/triple queries build a dense membership bitset over [0, x]; the cap
# bounds that allocation (configurable per call).
DEFAULT_PAIR_CAP = 10_000_000


@dataclass(frozen=True)
class ChampionReport:
    """Jumping champions at bound x: the gap sizes whose count attains the maximum."""

    x: int
    n_star: int
    champions: tuple[int, ...]
    total_gaps: int

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "n_star": self.n_star,
            "champions": list(self.champions),
            "total_gaps": self.total_gaps,
        }


class GapAccumulator:
    """Merges segment summaries in tile order, stitching the straddling gap exactly once."""

    __slots__ = ("counts", "last_prime", "prime_total")

    def __init__(
        self,
        counts: Optional[dict[int, int]] = None,
        last_prime: Optional[int] = None,
        prime_total: int = 0,
    ) -> None:
        self.counts = counts if counts is not None else {}
        self.last_prime = last_prime
        self.prime_total = prime_total

    def add(self, summary: SegmentSummary) -> None:
        if summary.first_prime is None:
            return
        if self.last_prime is not None:
            gap = summary.first_prime - self.last_prime
            self.counts[gap] = self.counts.get(gap, 0) + 1
        for d, c in summary.interior_histogram.counts.items():
            self.counts[d] = self.counts.get(d, 0) + c
        self.last_prime = summary.last_prime
        self.prime_total += summary.prime_count

    def histogram(self, x: int) -> GapHistogram:
        return GapHistogram(dict(self.counts), x)


def _config_for(x: int, template: Optional[SieveConfig]) -> SieveConfig:
    if template is None:
        return SieveConfig(limit=x)
    if template.limit == x:
        return template
    return dataclasses.replace(template, limit=x)


def _report(x: int, counts: dict[int, int]) -> ChampionReport:
    if not counts:
        raise ValueError(f"no prime gap exists at or below x={x}")
    n_star = max(counts.values())
    champs = tuple(sorted(d for d, c in counts.items() if c == n_star))
    return ChampionReport(x=x, n_star=n_star, champions=champs, total_gaps=sum(counts.values()))


_cached_segment_primes = lru_cache(maxsize=2)(segment_primes)


def partial_report(config: SieveConfig, acc: GapAccumulator, seg_index: int, x: int) -> ChampionReport:
    """Champion report at x when x falls inside the not-yet-merged segment seg_index."""
    primes = _cached_segment_primes(config, seg_index)
    left = primes[primes <= x]
    counts = dict(acc.counts)
    total_left = int(left.size)
    if total_left:
        if acc.last_prime is not None:
            gap = int(left[0]) - acc.last_prime
            counts[gap] = counts.get(gap, 0) + 1
        if total_left > 1:
            bc = np.bincount(np.diff(left))
            for d in np.flatnonzero(bc):
                counts[int(d)] = counts.get(int(d), 0) + int(bc[d])
    return _report(x, counts)


def gap_histogram(x: int, config: Optional[SieveConfig] = None) -> GapHistogram:
    """Histogram of consecutive-prime gaps p_n - p_{n-1} over primes p_n <= x."""
    if x < 3:
        raise ValueError(f"gap histogram requires x >= 3, got {x}")
    cfg = _config_for(x, config)
    acc = GapAccumulator()
    for summary in iter_segment_summaries(cfg):
        acc.add(summary)
    return acc.histogram(x)


def champions(x: int, config: Optional[SieveConfig] = None) -> ChampionReport:
    """The set of most frequent consecutive-prime gaps up to x (ties kept)."""
    hist = gap_histogram(x, config)
    return _report(x, hist.counts)


def validate_checkpoints(checkpoints: Sequence[int], x_max: int) -> list[int]:
    pts = list(checkpoints)
    for a, b in zip(pts, pts[1:]):
        if a >= b:
            raise ValueError(f"checkpoints must be strictly ascending, got {a} before {b}")
    if pts and pts[0] < 3:
        raise ValueError(f"checkpoints must be >= 3, got {pts[0]}")
    if pts and pts[-1] > x_max:
        raise ValueError(f"checkpoint {pts[-1]} exceeds the sieve bound {x_max}")
    return pts


def champion_timeline(
    x_max: int,
    checkpoints: Sequence[int],
    config: Optional[SieveConfig] = None,
) -> list[ChampionReport]:
    """Champion reports at each checkpoint, from a single sieve pass to x_max."""
    if x_max < 3:
        raise ValueError(f"champion timeline requires x_max >= 3, got {x_max}")
    pending = deque(validate_checkpoints(checkpoints, x_max))
    cfg = _config_for(x_max, config)
    acc = GapAccumulator()
    reports: list[ChampionReport] = []
    for idx, summary in enumerate(iter_segment_summaries(cfg)):
        while pending and pending[0] <= summary.range_end:
            reports.append(partial_report(cfg, acc, idx, pending.popleft()))
        acc.add(summary)
    return reports


@lru_cache(maxsize=2)
def _prime_flags(x: int) -> np.ndarray:
    flags = np.zeros(x + 1, dtype=bool)
    flags[primes_upto(x)] = True
    return flags


def _check_pair_query(x: int, cap: int) -> None:
    if x < 2:
        raise ValueError(f"pair counts require x >= 2, got {x}")
    if x > cap:
        raise ResourceLimitError(f"x={x} exceeds the pair-count cap {cap}; raise `cap` to allow it")


def prime_pair_count(x: int, d: int, cap: int = DEFAULT_PAIR_CAP) -> int:
    """Primes p <= x with p - d also prime (p - d need not be adjacent to p)."""
    _check_pair_query(x, cap)
    if d < 1:
        raise ValueError(f"pair distance must be >= 1, got {d}")
    if d > x:
        return 0
    flags = _prime_flags(x)
    return int(np.count_nonzero(flags[d:] & flags[: x + 1 - d]))


def prime_triple_count(x: int, d: int, d_prime: int, cap: int = DEFAULT_PAIR_CAP) -> int:
    """Primes p <= x with both p - d and p - d_prime prime, for 1 <= d_prime < d."""
    _check_pair_query(x, cap)
    if not 1 <= d_prime < d:
        raise ValueError(f"need 1 <= d_prime < d, got d_prime={d_prime}, d={d}")
    if d > x:
        return 0
    flags = _prime_flags(x)
    return int(np.count_nonzero(flags[d:] & flags[: x + 1 - d] & flags[d - d_prime : x + 1 - d_prime]))


@lru_cache(maxsize=3)
def _gap_counts_for_sandwich(x: int) -> dict[int, int]:
    return gap_histogram(x).counts


@dataclass(frozen=True)
class SandwichWitness:
    """The three quantities of the sandwich inequality at (x, d), plus verdicts."""

    x: int
    d: int
    adjacent_count: int
    pair_count: int
    triple_total: int
    lower_bound: int
    holds_lower: bool
    holds_upper: bool

    @property
    def holds(self) -> bool:
        return self.holds_lower and self.holds_upper

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "d": self.d,
            "adjacent_count": self.adjacent_count,
            "pair_count": self.pair_count,
            "triple_total": self.triple_total,
            "lower_bound": self.lower_bound,
            "holds_lower": self.holds_lower,
            "holds_upper": self.holds_upper,
            "holds": self.holds,
        }


def verify_sandwich(x: int, d: int, cap: int = DEFAULT_PAIR_CAP) -> SandwichWitness:
    """Check pair_count - triple_total <= N(x,d) <= pair_count by direct computation."""
    if x < 3:
        raise ValueError(f"sandwich check requires x >= 3, got {x}")
    if d < 2 or d % 2:
        raise ValueError(f"sandwich check requires even d >= 2, got {d}")
    pairs = prime_pair_count(x, d, cap)  # also enforces the cap before any sieving
    triples = sum(prime_triple_count(x, d, dp, cap) for dp in range(1, d))
    adjacent = _gap_counts_for_sandwich(x).get(d, 0)
    lower = pairs - triples
    return SandwichWitness(
        x=x,
        d=d,
        adjacent_count=adjacent,
        pair_count=pairs,
        triple_total=triples,
        lower_bound=lower,
        holds_lower=lower <= adjacent,
        holds_upper=adjacent <= pairs,
    )
