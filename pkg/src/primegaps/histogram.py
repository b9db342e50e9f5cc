"""Sparse histogram of gaps between consecutive primes."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class GapHistogram:
    """Map from gap size d to the number of consecutive-prime pairs at that gap.

    `counts[d]` is the number of primes p <= upper_bound_x whose predecessor
    prime sits exactly d below p.  The gap 1 (between 2 and 3) is the only odd
    gap that can occur; every other recorded gap is even.
    """

    counts: dict[int, int] = field(default_factory=dict)
    upper_bound_x: int = 0

    def total_gaps(self) -> int:
        return sum(self.counts.values())

    def weighted_gap_sum(self) -> int:
        return sum(d * c for d, c in self.counts.items())

    def max_count(self) -> int:
        if not self.counts:
            raise ValueError("empty histogram has no maximum")
        return max(self.counts.values())

    def champion_gaps(self) -> tuple[int, ...]:
        """Gaps attaining the maximum count, ascending."""
        top = self.max_count()
        return tuple(sorted(d for d, c in self.counts.items() if c == top))

    def count(self, d: int) -> int:
        return self.counts.get(d, 0)

    def copy(self) -> "GapHistogram":
        return GapHistogram(dict(self.counts), self.upper_bound_x)

    def add_gap(self, d: int, times: int = 1) -> None:
        self.counts[d] = self.counts.get(d, 0) + times

    def merge_counts(self, other: "GapHistogram") -> None:
        """Accumulate another fragment's counts (boundary stitching is the caller's job)."""
        for d, c in other.counts.items():
            self.counts[d] = self.counts.get(d, 0) + c

    def to_csv(self) -> str:
        """Exact-integer CSV, header `d,count`, rows ascending in d."""
        lines = ["d,count"]
        lines.extend(f"{d},{self.counts[d]}" for d in sorted(self.counts))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str, upper_bound_x: int = 0) -> "GapHistogram":
        lines = text.strip().splitlines()
        if not lines or lines[0] != "d,count":
            raise ValueError("histogram CSV must start with header 'd,count'")
        counts: dict[int, int] = {}
        for line in lines[1:]:
            d_str, c_str = line.split(",")
            counts[int(d_str)] = int(c_str)
        return cls(counts, upper_bound_x)
