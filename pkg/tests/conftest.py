"""Shared pure-Python oracles, independent of the numpy sieve engine."""

from __future__ import annotations

import math


def trial_primes(n: int) -> list[int]:
    """Primes <= n by trial division."""
    out = []
    for m in range(2, n + 1):
        if all(m % p for p in range(2, math.isqrt(m) + 1)):
            out.append(m)
    return out


def reference_sieve(n: int) -> list[int]:
    """Primes <= n by a plain bytearray sieve (no numpy, no segmentation)."""
    if n < 2:
        return []
    flags = bytearray([1]) * (n + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i in range(2, n + 1) if flags[i]]


def naive_gap_counts(primes: list[int]) -> dict[int, int]:
    counts: dict[int, int] = {}
    for a, b in zip(primes, primes[1:]):
        counts[b - a] = counts.get(b - a, 0) + 1
    return counts


def naive_champions(primes: list[int]) -> tuple[int, set[int]]:
    counts = naive_gap_counts(primes)
    top = max(counts.values())
    return top, {d for d, c in counts.items() if c == top}


def naive_pair_count(x: int, d: int, prime_set: set[int]) -> int:
    return sum(1 for p in prime_set if p <= x and p - d in prime_set)


def naive_triple_count(x: int, d: int, d_prime: int, prime_set: set[int]) -> int:
    return sum(1 for p in prime_set if p <= x and p - d in prime_set and p - d_prime in prime_set)
