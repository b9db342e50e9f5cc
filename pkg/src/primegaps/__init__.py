"""Prime gap statistics: jumping champions, pair-density constants, and verifiers."""

__version__ = "0.1.0"

from .errors import CheckpointError, PrecisionError, ResourceLimitError
from .gaps import (
    ChampionReport,
    SandwichWitness,
    champion_timeline,
    champions,
    gap_histogram,
    prime_pair_count,
    prime_triple_count,
    verify_sandwich,
)
from .histogram import GapHistogram
from .predict import (
    LargeGapWitness,
    PeakBoundWitness,
    Prediction,
    RatioWitness,
    large_gap_bound_check,
    nstar_lower_bound_check,
    predicted_champion,
    predicted_count,
    primorial_ratio_check,
)
from .primes import (
    SegmentSummary,
    SieveConfig,
    chebyshev_theta,
    mertens_reciprocal_sum,
    prime_count,
    primes_upto,
    sieve_segment,
)
from .primorials import (
    DominanceWitness,
    PrimorialTable,
    ThetaWitness,
    primorial,
    primorial_floor,
    primorial_table,
    sequence_floor,
    theta_characterization,
    verify_primorial_dominance,
)
from .runner import (
    Checkpoint,
    RunResult,
    VerifyReport,
    run_champions,
    run_verify,
)
from .series import (
    SeriesValue,
    TripleConfig,
    distinct_residues,
    mertens_product,
    singular_series,
    triple_growth_check,
    triple_singular_series,
    twin_prime_constant,
)

__all__ = [name for name in dir() if not name.startswith("_")]
