"""Equal-probability partition statistics.

N sorted observations cut the real line into N+1 segments, each of which
carries expected probability 1/(N+1) whatever the (continuous) parent
distribution. This package builds estimators on that partition and checks
the claim by seeded Monte Carlo.
"""
from .distributions import Exponential, Normal, Uniform, parse_distribution
from .errors import PartitionStatsError
from .estimators import (
    ComparisonReport,
    Excluded,
    ExponentialMatched,
    PartitionCdf,
    PiecewiseUniformDensity,
    PlottingFormula,
    Truncated,
    build_cdf,
    build_density,
    compare_cdfs,
    density_eval,
    ecdf_eval,
    partition_cdf_eval,
    plotting_positions,
    quantile,
    sample_from,
)
from .information import Base, EntropyValue, discrete_entropy, marginal_information, partition_entropy
from .partition import (
    Partition,
    SegmentIndex,
    SortedSample,
    build_partition,
    expected_segment_mass,
    locate_segment,
    sorted_sample_new,
)
from .verify import (
    SegmentProbabilities,
    SpacingsSummary,
    VerificationReport,
    conditional_share_check,
    expected_p0_numeric,
    first_order_stat_cdf,
    first_order_stat_pdf,
    pit_transform,
    segment_probabilities,
    simulate_spacings,
    verify_beta_mean,
    verify_expected_masses,
    verify_first_order_stat,
)

__version__ = "0.1.0"
