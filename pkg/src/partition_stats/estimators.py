"""CDF, density, quantile and sampling estimators on the equal-probability partition.

Every segment, tails included, gets mass 1/(n+1). Between order statistics
the CDF is linear (the antiderivative of a piecewise-uniform density); the
semi-infinite tails are shaped by a :class:`TailPolicy`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import (
    InvalidTruncationBounds,
    NonFiniteValue,
    OutOfRangeQuantile,
    TiedBoundaries,
    TooFewPoints,
    UninvertiblePolicy,
    ZeroSample,
)
from .partition import Partition, SortedSample
from .distributions import open_uniforms


class PlottingFormula(enum.Enum):
    MEAN_BETA = "mean"  # i/(n+1)
    MEDIAN_APPROX = "median"  # (i-0.3)/(n+0.4)


def plotting_positions(n: int, formula: PlottingFormula = PlottingFormula.MEAN_BETA) -> np.ndarray:
    """Cumulative probabilities assigned to ranks 1..n."""
    if n < 1:
        raise ZeroSample("plotting positions need n >= 1")
    i = np.arange(1, n + 1, dtype=float)
    if formula is PlottingFormula.MEAN_BETA:
        return i / (n + 1)
    if formula is PlottingFormula.MEDIAN_APPROX:
        return (i - 0.3) / (n + 0.4)
    raise ValueError(f"unknown plotting formula {formula!r}")


# -- tail policies -----------------------------------------------------------

@dataclass(frozen=True)
class Truncated:
    lower: float
    upper: float


@dataclass(frozen=True)
class ExponentialMatched:
    pass


@dataclass(frozen=True)
class Excluded:
    pass


TailPolicy = Union[Truncated, ExponentialMatched, Excluded]


def matched_rate(s: SortedSample) -> float:
    """Tail rate 1/mean-interior-gap used by :class:`ExponentialMatched`."""
    if s.n < 2:
        raise TooFewPoints("exponential tails need n >= 2 to estimate a rate")
    span = float(s.values[-1] - s.values[0])
    if span <= 0.0:
        raise TiedBoundaries("all observations are equal; no data scale for the tail rate")
    return (s.n - 1) / span


def _check_policy(s: SortedSample, policy: TailPolicy) -> float | None:
    """Validate ``policy`` against ``s``; returns the exponential rate if any."""
    if isinstance(policy, Truncated):
        lo, hi = float(policy.lower), float(policy.upper)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InvalidTruncationBounds("truncation bounds must be finite")
        if not (lo < s.values[0] and hi > s.values[-1]):
            raise InvalidTruncationBounds(
                f"truncation bounds ({lo}, {hi}) must strictly contain [{s.values[0]}, {s.values[-1]}]"
            )
        return None
    if isinstance(policy, ExponentialMatched):
        return matched_rate(s)
    if isinstance(policy, Excluded):
        return None
    raise TypeError(f"not a tail policy: {policy!r}")


def _finite_scalar(x) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise NonFiniteValue(value=x)
    return x


# -- CDF ---------------------------------------------------------------------

@dataclass(frozen=True)
class PartitionCdf:
    boundaries: SortedSample
    tail_policy: TailPolicy
    rate: float | None = None

    @property
    def n(self) -> int:
        return self.boundaries.n


def build_cdf(s: SortedSample, policy: TailPolicy = Excluded()) -> PartitionCdf:
    """CDF anchored at ``(x_(i), i/(n+1))``. Ties are allowed and give jumps."""
    rate = _check_policy(s, policy)
    return PartitionCdf(boundaries=s, tail_policy=policy, rate=rate)


def partition_cdf_eval(c: PartitionCdf, x: float) -> float:
    x = _finite_scalar(x)
    v = c.boundaries.values
    n = c.n
    mass = 1.0 / (n + 1)
    k = int(np.searchsorted(v, x, side="right"))
    if 0 < k < n:
        lo, hi = float(v[k - 1]), float(v[k])
        return (k + (x - lo) / (hi - lo)) / (n + 1)
    pol = c.tail_policy
    if k == 0:
        x1 = float(v[0])
        if isinstance(pol, Truncated):
            if x <= pol.lower:
                return 0.0
            return mass * (x - pol.lower) / (x1 - pol.lower)
        if isinstance(pol, ExponentialMatched):
            return mass * math.exp(-c.rate * (x1 - x))
        return mass
    xn = float(v[-1])
    if x == xn:
        return n / (n + 1)
    if isinstance(pol, Truncated):
        if x >= pol.upper:
            return 1.0
        return (n + (x - xn) / (pol.upper - xn)) / (n + 1)
    if isinstance(pol, ExponentialMatched):
        return 1.0 - mass * math.exp(-c.rate * (x - xn))
    return n / (n + 1)


def quantile(c: PartitionCdf, q: float) -> float:
    """Inverse of :func:`partition_cdf_eval`, closed form on each segment."""
    if isinstance(c.tail_policy, Excluded):
        raise UninvertiblePolicy("the excluded tail policy has no inverse outside [1/(n+1), n/(n+1)]")
    q = float(q)
    if not 0.0 < q < 1.0:
        raise OutOfRangeQuantile(f"q must lie in (0, 1), got {q!r}")
    v = c.boundaries.values
    n = c.n
    t = q * (n + 1)
    mass = 1.0 / (n + 1)
    pol = c.tail_policy
    if t < 1.0:
        x1 = float(v[0])
        if isinstance(pol, Truncated):
            return pol.lower + t * (x1 - pol.lower)
        return x1 + math.log(t) / c.rate
    if t >= n:
        xn = float(v[-1])
        frac = t - n
        if isinstance(pol, Truncated):
            return xn + frac * (pol.upper - xn)
        return xn - math.log((1.0 - q) / mass) / c.rate
    k = int(t)
    lo, hi = float(v[k - 1]), float(v[k])
    return lo + (t - k) * (hi - lo)


def sample_from(c: PartitionCdf, seed: int, m: int) -> np.ndarray:
    """Inverse-transform draws from the partition CDF."""
    if isinstance(c.tail_policy, Excluded):
        raise UninvertiblePolicy("cannot sample with the excluded tail policy")
    if m < 1:
        raise ValueError("m must be >= 1")
    u = open_uniforms(np.random.default_rng(seed), m)
    return np.array([quantile(c, q) for q in u])


# -- ECDF and comparison ---------------------------------------------------------

def ecdf_eval(s: SortedSample, x: float) -> float:
    x = _finite_scalar(x)
    return int(np.searchsorted(s.values, x, side="right")) / s.n


@dataclass(frozen=True)
class ComparisonReport:
    n: int
    values: tuple[float, ...]
    ecdf: tuple[float, ...]
    partition: tuple[float, ...]
    sup_difference: float
    tail_mass_above_max: dict[str, float]

    @property
    def pairs(self) -> list[tuple[float, float]]:
        return list(zip(self.ecdf, self.partition))


def compare_cdfs(s: SortedSample) -> ComparisonReport:
    """ECDF ``i/n`` against partition ``i/(n+1)`` at each order statistic."""
    n = s.n
    ecdf = tuple(i / n for i in range(1, n + 1))
    part = tuple(i / (n + 1) for i in range(1, n + 1))
    return ComparisonReport(
        n=n,
        values=tuple(float(x) for x in s.values),
        ecdf=ecdf,
        partition=part,
        sup_difference=1.0 / (n + 1),
        tail_mass_above_max={"ecdf": 0.0, "partition": 1.0 / (n + 1)},
    )


# -- density ------------------------------------------------------------------

@dataclass(frozen=True)
class DensityPiece:
    lower: float
    upper: float
    mass: float
    height: float  # at the inner edge for exponential tails


@dataclass(frozen=True, eq=False)
class PiecewiseUniformDensity:
    boundaries: SortedSample
    tail_policy: TailPolicy
    heights: np.ndarray  # interior segments 1..n-1
    rate: float | None = None

    @property
    def n(self) -> int:
        return self.boundaries.n

    @property
    def segment_mass(self) -> float:
        return 1.0 / (self.n + 1)

    def tail_heights(self) -> tuple[float, float]:
        v = self.boundaries.values
        m = self.segment_mass
        pol = self.tail_policy
        if isinstance(pol, Truncated):
            return m / (float(v[0]) - pol.lower), m / (pol.upper - float(v[-1]))
        if isinstance(pol, ExponentialMatched):
            return m * self.rate, m * self.rate
        return 0.0, 0.0

    def pieces(self) -> list[DensityPiece]:
        """Segments that carry mass, in order. Excluded tails are omitted."""
        v = self.boundaries.values
        m = self.segment_mass
        out = []
        lo_h, hi_h = self.tail_heights()
        pol = self.tail_policy
        if isinstance(pol, Truncated):
            out.append(DensityPiece(pol.lower, float(v[0]), m, lo_h))
        elif isinstance(pol, ExponentialMatched):
            out.append(DensityPiece(-math.inf, float(v[0]), m, lo_h))
        for i, h in enumerate(self.heights):
            out.append(DensityPiece(float(v[i]), float(v[i + 1]), m, float(h)))
        if isinstance(pol, Truncated):
            out.append(DensityPiece(float(v[-1]), pol.upper, m, hi_h))
        elif isinstance(pol, ExponentialMatched):
            out.append(DensityPiece(float(v[-1]), math.inf, m, hi_h))
        return out

    def total_mass(self) -> float:
        return math.fsum(p.mass for p in self.pieces())


def build_density(p: Partition, policy: TailPolicy = Excluded()) -> PiecewiseUniformDensity:
    s = p.boundaries
    if s.has_ties:
        i, j = s.ties[0]
        raise TiedBoundaries(f"zero-width segment between sorted positions {i} and {j} (value {s.values[i]})")
    if isinstance(policy, Excluded) and s.n < 2:
        raise TooFewPoints("the excluded tail policy has empty support for n < 2")
    rate = _check_policy(s, policy)
    gaps = np.diff(s.values)
    heights = (1.0 / (s.n + 1)) / gaps
    heights.setflags(write=False)
    return PiecewiseUniformDensity(boundaries=s, tail_policy=policy, heights=heights, rate=rate)


def density_eval(d: PiecewiseUniformDensity, x: float) -> float:
    x = _finite_scalar(x)
    v = d.boundaries.values
    n = d.n
    k = int(np.searchsorted(v, x, side="right"))
    if 0 < k < n:
        return float(d.heights[k - 1])
    pol = d.tail_policy
    m = d.segment_mass
    if k == 0:
        x1 = float(v[0])
        if isinstance(pol, Truncated):
            return m / (x1 - pol.lower) if x >= pol.lower else 0.0
        if isinstance(pol, ExponentialMatched):
            return m * d.rate * math.exp(-d.rate * (x1 - x))
        return 0.0
    xn = float(v[-1])
    if isinstance(pol, Truncated):
        return m / (pol.upper - xn) if x < pol.upper else 0.0
    if isinstance(pol, ExponentialMatched):
        return m * d.rate * math.exp(-d.rate * (x - xn))
    # the right-closed support [x_(1), x_(n)] keeps the last bar at x_(n)
    if x == xn and n >= 2:
        return float(d.heights[-1])
    return 0.0
