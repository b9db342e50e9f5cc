"""Run orchestration: resumable champion runs and the verification suites."""

from __future__ import annotations

import json
import os
import tempfile
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import CheckpointError
from .gaps import (
    ChampionReport,
    GapAccumulator,
    champion_timeline,
    partial_report,
    validate_checkpoints,
    verify_sandwich,
)
from .histogram import GapHistogram
from .predict import large_gap_bound_check, nstar_lower_bound_check
from .primes import DEFAULT_SEGMENT_SIZE, SieveConfig, iter_prime_blocks, iter_segment_summaries, segment_bounds, segment_count
from .primorials import verify_primorial_dominance

CHECKPOINT_FORMAT_VERSION = 1
WORKERS_ENV_VAR = "PRIMEGAPS_WORKERS"

VERIFY_SUITES = ("table1", "lemma1", "sandwich", "bounds")

# Champion sets with their first prime of reign and the last prime (below
# the scan bound) at which they are known to reign; None marks a reign
# whose end, if any, lies far beyond this engine's scale.
CHAMPION_RECORDS: tuple[tuple[frozenset[int], int, Optional[int]], ...] = (
    (frozenset({1}), 3, 3),
    (frozenset({1, 2}), 5, 5),
    (frozenset({2}), 7, 433),
    (frozenset({2, 4}), 101, 173),
    (frozenset({4}), 131, 541),
    (frozenset({2, 4, 6}), 179, 487),
    (frozenset({2, 6}), 379, 463),
    (frozenset({6}), 389, None),
    (frozenset({4, 6}), 547, 941),
)
RECORD_SCAN_BOUND = 10**6


def default_worker_count() -> int:
    env = os.environ.get(WORKERS_ENV_VAR)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass
class Checkpoint:
    """Resumable state of a champion run, persisted as versioned JSON."""

    limit: int
    segment_size: int
    next_index: int
    processed_up_to: int
    last_prime: Optional[int]
    prime_count: int
    histogram: GapHistogram
    reports: list[ChampionReport] = field(default_factory=list)
    format_version: int = CHECKPOINT_FORMAT_VERSION

    def to_json(self) -> str:
        payload = {
            "format_version": self.format_version,
            "limit": self.limit,
            "segment_size": self.segment_size,
            "next_index": self.next_index,
            "processed_up_to": self.processed_up_to,
            "last_prime": self.last_prime,
            "prime_count": self.prime_count,
            "histogram": [[d, self.histogram.counts[d]] for d in sorted(self.histogram.counts)],
            "reports": [r.to_dict() for r in self.reports],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Checkpoint":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CheckpointError(f"checkpoint is not valid JSON: {exc}") from exc
        try:
            version = payload["format_version"]
            if version != CHECKPOINT_FORMAT_VERSION:
                raise CheckpointError(f"unsupported checkpoint format version {version}")
            counts = {int(d): int(c) for d, c in payload["histogram"]}
            reports = [
                ChampionReport(
                    x=r["x"],
                    n_star=r["n_star"],
                    champions=tuple(r["champions"]),
                    total_gaps=r["total_gaps"],
                )
                for r in payload["reports"]
            ]
            ck = cls(
                limit=payload["limit"],
                segment_size=payload["segment_size"],
                next_index=payload["next_index"],
                processed_up_to=payload["processed_up_to"],
                last_prime=payload["last_prime"],
                prime_count=payload["prime_count"],
                histogram=GapHistogram(counts, payload["processed_up_to"]),
                reports=reports,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CheckpointError(f"checkpoint is missing or corrupts a field: {exc}") from exc
        total = ck.histogram.total_gaps()
        if ck.prime_count > 0 and total != ck.prime_count - 1:
            raise CheckpointError(
                f"checkpoint histogram holds {total} gaps but {ck.prime_count} primes were recorded; "
                "the file is corrupt"
            )
        return ck


def write_checkpoint(path: str, checkpoint: Checkpoint) -> None:
    """Write-temp-then-rename so readers never observe a partial file."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".checkpoint-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(checkpoint.to_json())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_checkpoint(path: str) -> Checkpoint:
    try:
        with open(path) as handle:
            text = handle.read()
    except OSError as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    return Checkpoint.from_json(text)


def geometric_checkpoints(limit: int) -> list[int]:
    """Default report schedule: powers of ten from 1000 up, then the limit itself."""
    points = []
    value = 1000
    while value < limit:
        points.append(value)
        value *= 10
    if limit >= 3:
        points.append(limit)
    return points


@dataclass
class RunResult:
    reports: list[ChampionReport]
    histogram: GapHistogram
    limit: int
    completed: bool
    resumed_from: Optional[int] = None
    checkpoint_path: Optional[str] = None


def run_champions(
    limit: int,
    checkpoints: Optional[Sequence[int]] = None,
    workers: Optional[int] = None,
    segment_size: Optional[int] = None,
    resume_path: Optional[str] = None,
    max_segments: Optional[int] = None,
    on_report: Optional[Callable[[ChampionReport], None]] = None,
) -> RunResult:
    """Sieve to `limit`, reporting champions at each checkpoint.

    When `resume_path` is given, progress is persisted there atomically
    after each segment batch, and an existing file is picked up and
    continued; the finished histogram is identical to an uninterrupted
    run's.  `max_segments` stops early after that many segments (state is
    flushed first), which callers use to slice very long runs.
    """
    if limit < 3:
        raise ValueError(f"champion run requires limit >= 3, got {limit}")
    points = geometric_checkpoints(limit) if checkpoints is None else validate_checkpoints(checkpoints, limit)
    config = SieveConfig(
        limit=limit,
        segment_size=segment_size or DEFAULT_SEGMENT_SIZE,
        worker_count=workers or default_worker_count(),
    )
    acc = GapAccumulator()
    reports: list[ChampionReport] = []
    start = 0
    resumed_from: Optional[int] = None
    if resume_path and os.path.exists(resume_path):
        ck = load_checkpoint(resume_path)
        if ck.limit != limit:
            raise CheckpointError(f"checkpoint was taken for limit {ck.limit}, not {limit}")
        if ck.segment_size != config.segment_size:
            raise CheckpointError(
                f"checkpoint was taken with segment_size {ck.segment_size}, not {config.segment_size}"
            )
        acc = GapAccumulator(dict(ck.histogram.counts), ck.last_prime, ck.prime_count)
        reports = list(ck.reports)
        start = ck.next_index
        resumed_from = ck.processed_up_to
    processed = resumed_from if resumed_from is not None else 0
    pending = deque(c for c in points if c > processed)

    total_segments = segment_count(config)
    flush_every = max(1, (1 << 23) // config.segment_size)

    def flush(next_index: int) -> None:
        if not resume_path:
            return
        up_to = segment_bounds(config, next_index - 1)[1] if next_index > 0 else 1
        write_checkpoint(
            resume_path,
            Checkpoint(
                limit=limit,
                segment_size=config.segment_size,
                next_index=next_index,
                processed_up_to=up_to,
                last_prime=acc.last_prime,
                prime_count=acc.prime_total,
                histogram=acc.histogram(up_to),
                reports=reports,
            ),
        )

    done = 0
    index = start
    for summary in iter_segment_summaries(config, start=start):
        while pending and pending[0] <= summary.range_end:
            report = partial_report(config, acc, index, pending.popleft())
            reports.append(report)
            if on_report:
                on_report(report)
        acc.add(summary)
        index += 1
        done += 1
        if index == total_segments or index % flush_every == 0:
            flush(index)
        if max_segments is not None and done >= max_segments and index < total_segments:
            if index % flush_every != 0:
                flush(index)
            return RunResult(
                reports=reports,
                histogram=acc.histogram(segment_bounds(config, index - 1)[1]),
                limit=limit,
                completed=False,
                resumed_from=resumed_from,
                checkpoint_path=resume_path,
            )
    return RunResult(
        reports=reports,
        histogram=acc.histogram(limit),
        limit=limit,
        completed=True,
        resumed_from=resumed_from,
        checkpoint_path=resume_path,
    )


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    details: dict

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "details": self.details}


@dataclass(frozen=True)
class VerifyReport:
    suite: str
    passed: bool
    checks: tuple[CheckResult, ...]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def champion_record_scan(
    bound: int,
    target_sets: Sequence[frozenset[int]],
) -> dict[frozenset[int], dict[str, Optional[int]]]:
    """First and last prime q <= bound at which each target set is exactly the champion set.

    One incremental pass over the primes; the champion set is maintained
    gap by gap, so every prime's champion set is inspected.
    """
    info: dict[frozenset[int], dict[str, Optional[int]]] = {
        s: {"first": None, "last": None} for s in target_sets
    }
    counts: dict[int, int] = {}
    n_star = 0
    champs: set[int] = set()
    prev: Optional[int] = None
    for block in iter_prime_blocks(bound):
        for p in block.tolist():
            if prev is not None:
                gap = p - prev
                c = counts.get(gap, 0) + 1
                counts[gap] = c
                if c > n_star:
                    n_star = c
                    champs = {gap}
                elif c == n_star:
                    champs.add(gap)
                for s in target_sets:
                    if champs == s:
                        rec = info[s]
                        if rec["first"] is None:
                            rec["first"] = p
                        rec["last"] = p
            prev = p
    return info


def _suite_table1() -> list[CheckResult]:
    checks = []
    first_points = sorted(first for _, first, _ in CHAMPION_RECORDS)
    timeline = {r.x: r for r in champion_timeline(max(first_points), first_points)}
    for target, first, _ in CHAMPION_RECORDS:
        got = timeline[first].champions
        expected = tuple(sorted(target))
        checks.append(
            CheckResult(
                name=f"first_occurrence_x{first}",
                passed=got == expected,
                details={"x": first, "expected": list(expected), "observed": list(got)},
            )
        )
    scan = champion_record_scan(RECORD_SCAN_BOUND, [s for s, _, _ in CHAMPION_RECORDS])
    for target, first, last in CHAMPION_RECORDS:
        rec = scan[target]
        label = "".join(f"_{d}" for d in sorted(target))
        checks.append(
            CheckResult(
                name=f"scan_first{label}",
                passed=rec["first"] == first,
                details={"expected_first": first, "observed_first": rec["first"]},
            )
        )
        if last is not None:
            checks.append(
                CheckResult(
                    name=f"record_last{label}",
                    passed=rec["last"] == last,
                    details={
                        "expected_last": last,
                        "observed_last": rec["last"],
                        "scan_bound": RECORD_SCAN_BOUND,
                    },
                )
            )
    return checks


def _suite_lemma1(k: Optional[int]) -> list[CheckResult]:
    ks = [k] if k is not None else [2, 3, 4, 5]
    checks = []
    for kk in ks:
        witness = verify_primorial_dominance(kk)
        checks.append(
            CheckResult(name=f"dominance_k{kk}", passed=witness.holds, details=witness.to_dict())
        )
    return checks


def _suite_sandwich(x: Optional[int]) -> list[CheckResult]:
    xs = [x] if x is not None else [10**4, 10**5, 10**6]
    checks = []
    for xv in xs:
        for d in range(2, 51, 2):
            witness = verify_sandwich(xv, d)
            checks.append(
                CheckResult(
                    name=f"sandwich_x{xv}_d{d}",
                    passed=witness.holds,
                    details=witness.to_dict(),
                )
            )
    return checks


def _suite_bounds(x: Optional[int], workers: Optional[int]) -> list[CheckResult]:
    peak_xs = [x] if x is not None else [10**6, 10**7, 10**8]
    gap_xs = [x] if x is not None else [10**4, 10**6]
    checks = []
    for xv in peak_xs:
        config = SieveConfig(xv, worker_count=workers or default_worker_count())
        witness = nstar_lower_bound_check(xv, config)
        checks.append(
            CheckResult(name=f"peak_lower_bound_x{xv}", passed=witness.passes, details=witness.to_dict())
        )
    for xv in gap_xs:
        config = SieveConfig(xv, worker_count=workers or default_worker_count())
        witness = large_gap_bound_check(xv, config)
        checks.append(
            CheckResult(name=f"large_gap_bound_x{xv}", passed=witness.passes, details=witness.to_dict())
        )
    return checks


def run_verify(
    suite: str,
    k: Optional[int] = None,
    x: Optional[int] = None,
    workers: Optional[int] = None,
) -> VerifyReport:
    """Run one named verification suite; failures are data, not exceptions."""
    if suite == "table1":
        checks = _suite_table1()
    elif suite == "lemma1":
        checks = _suite_lemma1(k)
    elif suite == "sandwich":
        checks = _suite_sandwich(x)
    elif suite == "bounds":
        checks = _suite_bounds(x, workers)
    else:
        raise ValueError(f"unknown suite {suite!r}; expected one of {VERIFY_SUITES}")
    return VerifyReport(suite=suite, passed=all(c.passed for c in checks), checks=tuple(checks))
