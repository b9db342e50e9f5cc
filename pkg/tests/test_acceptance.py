"""Acceptance suite: one test per release criterion, each printing a verdict line.

The heavy shared computation (the 10^9 reference sieve) happens once in a
module fixture; its wall time is reported with criterion 3.
"""

import math
import time

import pytest

from primegaps.gaps import champion_timeline, gap_histogram, verify_sandwich
from primegaps.predict import large_gap_bound_check, nstar_lower_bound_check
from primegaps.primes import SieveConfig, segment_count
from primegaps.primorials import verify_primorial_dominance
from primegaps.runner import CHAMPION_RECORDS, champion_record_scan, run_champions
from primegaps.series import singular_series, twin_prime_constant

from conftest import trial_primes

BILLION = 10**9

# 30 decimals of the twin prime constant, from independent high-precision
# evaluations of the prime product (e.g. mpmath.mp.twinprime).
TRUE_TWIN_CONSTANT = 0.660161815846869573927812110014


def _verdict(number: int, label: str, elapsed: float, budget: float | None) -> None:
    budget_note = f", budget {budget:g}s" if budget is not None else ""
    print(f"[acceptance] criterion {number} ({label}): PASS ({elapsed:.2f}s{budget_note})")


@pytest.fixture(scope="module")
def reference_run():
    config = SieveConfig(BILLION, segment_size=1 << 20, worker_count=8)
    start = time.perf_counter()
    hist = gap_histogram(BILLION, config)
    elapsed = time.perf_counter() - start
    return hist, elapsed


def test_criterion_01_golden_champion_rows():
    start = time.perf_counter()
    firsts = sorted(first for _, first, _ in CHAMPION_RECORDS)
    reports = {r.x: r for r in champion_timeline(max(firsts), firsts)}
    for target, first, _ in CHAMPION_RECORDS:
        assert reports[first].champions == tuple(sorted(target)), (first, target)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    _verdict(1, "golden champion rows", elapsed, 1)


def test_criterion_02_record_scan_to_one_million():
    start = time.perf_counter()
    scan = champion_record_scan(10**6, [s for s, _, _ in CHAMPION_RECORDS])
    for target, first, last in CHAMPION_RECORDS:
        assert scan[target]["first"] == first, (target, scan[target])
        if last is not None:
            # the set reigns at its recorded prime and at no later prime <= 1e6
            assert scan[target]["last"] == last, (target, scan[target])
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    _verdict(2, "record scan to 1e6", elapsed, 10)


def test_criterion_03_billion_champion_and_determinism(reference_run):
    reference, sieve_elapsed = reference_run
    start = time.perf_counter()
    assert reference.champion_gaps() == (6,)
    assert sieve_elapsed < 180.0  # target: < 3 min with 8 workers
    reference_csv = reference.to_csv()
    for workers in (1, 4, 8):
        for segment_size in (1 << 16, 1 << 20):
            if workers == 8 and segment_size == 1 << 20:
                continue  # the reference configuration itself
            other = gap_histogram(BILLION, SieveConfig(BILLION, segment_size=segment_size, worker_count=workers))
            assert other.counts == reference.counts, (workers, segment_size)
            assert other.to_csv() == reference_csv
    elapsed = time.perf_counter() - start
    _verdict(3, f"champions at 1e9 with determinism grid (sieve {sieve_elapsed:.1f}s)", elapsed, None)


def test_criterion_04_twin_prime_constant():
    start = time.perf_counter()
    value = twin_prime_constant(10**6)
    assert abs(value.value - 0.66016) < 5e-6
    lo, hi = value.interval()
    assert lo <= TRUE_TWIN_CONSTANT <= hi
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    _verdict(4, "twin prime constant at 1e6", elapsed, 5)


def test_criterion_05_dominance_exhaustive():
    start = time.perf_counter()
    for k in (2, 3, 4, 5):
        witness = verify_primorial_dominance(k)
        assert witness.holds, witness
        assert witness.separation > 0
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    _verdict(5, "primorial dominance k=2..5", elapsed, 5)


def test_criterion_06_sandwich_inequality():
    start = time.perf_counter()
    for x in (10**4, 10**5, 10**6):
        for d in range(2, 51, 2):
            witness = verify_sandwich(x, d)
            assert witness.holds, witness
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    _verdict(6, "sandwich inequality", elapsed, 30)


def test_criterion_07_peak_lower_bound():
    start = time.perf_counter()
    for x in (10**6, 10**7, 10**8):
        witness = nstar_lower_bound_check(x, SieveConfig(x, worker_count=2))
        assert witness.passes, witness
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    _verdict(7, "peak count lower bound", elapsed, 30)


def test_criterion_08_large_gap_bound():
    start = time.perf_counter()
    for x in (10**4, 10**6):
        witness = large_gap_bound_check(x, SieveConfig(x, worker_count=1))
        assert witness.passes, witness
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    _verdict(8, "large gap count bounds", elapsed, 10)


def test_criterion_09_ratio_convergence(reference_run):
    reference, _ = reference_run
    start = time.perf_counter()
    density = singular_series(2).value
    ratios = []
    for x in (10**5, 10**6, 10**7, 10**8):
        observed = gap_histogram(x, SieveConfig(x, worker_count=2)).count(2)
        ratios.append(observed / (density * x / math.log(x) ** 2))
    ratios.append(reference.count(2) / (density * BILLION / math.log(BILLION) ** 2))
    assert all(1.0 < r < 1.3 for r in ratios), ratios
    assert all(a > b for a, b in zip(ratios, ratios[1:])), ratios
    elapsed = time.perf_counter() - start
    _verdict(9, f"ratio convergence {['%.4f' % r for r in ratios]}", elapsed, None)


def test_criterion_10_oracle_equivalence_below_ten_thousand():
    start = time.perf_counter()
    primes = trial_primes(10**4)
    reports = champion_timeline(10**4, primes[1:])  # every prime x >= 3
    counts: dict[int, int] = {}
    top = 0
    champs: set[int] = set()
    for i in range(1, len(primes)):
        gap = primes[i] - primes[i - 1]
        c = counts.get(gap, 0) + 1
        counts[gap] = c
        if c > top:
            top, champs = c, {gap}
        elif c == top:
            champs.add(gap)
        report = reports[i - 1]
        assert report.x == primes[i]
        assert report.n_star == top
        assert report.champions == tuple(sorted(champs))
        assert report.total_gaps == i
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    _verdict(10, "oracle equivalence for all prime x <= 1e4", elapsed, 5)


def test_criterion_11_checkpoint_resume(tmp_path):
    start = time.perf_counter()
    limit = 10**7
    for segment_size, cuts in ((1 << 18, "all"), (1 << 20, "all")):
        config = SieveConfig(limit, segment_size=segment_size)
        boundaries = range(1, segment_count(config))
        full = run_champions(limit, workers=1, segment_size=segment_size)
        reference_csv = full.histogram.to_csv()
        for cut in boundaries:
            path = str(tmp_path / f"resume-{segment_size}-{cut}.json")
            partial = run_champions(
                limit, workers=1, segment_size=segment_size, resume_path=path, max_segments=cut
            )
            assert not partial.completed
            resumed = run_champions(limit, workers=1, segment_size=segment_size, resume_path=path)
            assert resumed.completed
            assert resumed.histogram.to_csv() == reference_csv, (segment_size, cut)
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    _verdict(11, "checkpoint resume byte-identical", elapsed, 10)
