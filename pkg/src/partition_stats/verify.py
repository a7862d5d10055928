"""Seeded Monte Carlo checks of the equal-mass result and its supporting identities.

Replications are grouped into fixed-size blocks. Block ``b`` draws from a
generator seeded by ``SeedSequence(seed, spawn_key=(b,))``, so results depend
only on ``(seed, reps)`` and never on how many worker threads ran the blocks.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .distributions import DistributionSpec, open_uniforms
from .errors import IndexOutOfRange, InsufficientReplications, QuadratureFailure
from .partition import SortedSample, _check_finite

MIN_REPS = 1000
DEFAULT_Z_MAX = 4.0
BLOCK_SIZE = 4096
THREADS_ENV = "PARTITION_STATS_THREADS"


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(block,)))


def run_blocks(
    reps: int,
    seed: int,
    draw: Callable[[np.random.Generator, int], np.ndarray],
    workers: int | None = None,
) -> np.ndarray:
    """Evaluate ``draw(rng, size)`` over all blocks and stack rows in block order."""
    sizes = [BLOCK_SIZE] * (reps // BLOCK_SIZE)
    if reps % BLOCK_SIZE:
        sizes.append(reps % BLOCK_SIZE)
    workers = worker_count() if workers is None else max(1, workers)
    jobs = [(b, size) for b, size in enumerate(sizes)]
    if workers == 1 or len(jobs) == 1:
        parts = [draw(_block_rng(seed, b), size) for b, size in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: draw(_block_rng(seed, job[0]), job[1]), jobs))
    return np.concatenate(parts, axis=0)


def _require_reps(reps: int) -> None:
    if reps < MIN_REPS:
        raise InsufficientReplications(f"reps must be >= {MIN_REPS}, got {reps}")


def _require_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")


def _sorted_draws(dist: DistributionSpec, rng: np.random.Generator, size: int, n: int) -> np.ndarray:
    return np.sort(dist.sample_rng(rng, (size, n)), axis=1)


def _masses_from_cdf(F: np.ndarray) -> np.ndarray:
    """Rows of segment masses from rows of ascending CDF values."""
    size = F.shape[0]
    edges = np.concatenate([np.zeros((size, 1)), F, np.ones((size, 1))], axis=1)
    return np.diff(edges, axis=1)


# -- segment probabilities ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class SegmentProbabilities:
    p: np.ndarray

    @property
    def n(self) -> int:
        return self.p.shape[0] - 1


def segment_probabilities(dist: DistributionSpec, s: SortedSample) -> SegmentProbabilities:
    """True mass of each segment: ``F(x_(1))``, successive CDF gaps, ``1 - F(x_(n))``."""
    F = np.asarray(dist.cdf(s.values), dtype=float).reshape(1, -1)
    p = _masses_from_cdf(F)[0]
    p.setflags(write=False)
    return SegmentProbabilities(p)


# -- reports -----------------------------------------------------------------

def _floats(a) -> list[float]:
    return [float(x) for x in np.asarray(a).ravel()]


@dataclass(frozen=True)
class VerificationReport:
    distribution: str
    n: int
    reps: int
    seed: int
    expected: float
    mean: list[float]
    se: list[float]
    z: list[float]
    variance: list[float]
    z_max: float
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SpacingsSummary:
    n: int
    reps: int
    seed: int
    expected: float
    mean: list[float]
    se: list[float]
    z: list[float]
    variance: list[float]
    q025: list[float]
    q500: list[float]
    q975: list[float]
    z_max: float
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class MeanEstimate:
    """A Monte Carlo mean with its standard error and a target value."""

    estimate: float
    se: float
    target: float
    z_max: float = DEFAULT_Z_MAX

    @property
    def z(self) -> float:
        if self.se == 0.0:
            return 0.0 if self.estimate == self.target else math.copysign(math.inf, self.estimate - self.target)
        return (self.estimate - self.target) / self.se

    @property
    def passed(self) -> bool:
        return abs(self.z) <= self.z_max

    def __float__(self) -> float:
        return self.estimate

    def to_dict(self) -> dict:
        d = asdict(self)
        d["z"] = self.z
        d["passed"] = self.passed
        return d


def _column_stats(rows: np.ndarray, target: float, z_max: float):
    reps = rows.shape[0]
    mean = rows.mean(axis=0)
    var = rows.var(axis=0, ddof=1)
    se = np.sqrt(var / reps)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(se > 0, (mean - target) / np.where(se > 0, se, 1.0), 0.0)
    passed = bool(np.all(np.abs(z) <= z_max))
    return mean, se, z, var, passed


def _mean_estimate(x: np.ndarray, target: float, z_max: float) -> MeanEstimate:
    se = float(x.std(ddof=1) / math.sqrt(x.shape[0]))
    return MeanEstimate(float(x.mean()), se, target, z_max)


# -- verification operations -----------------------------------------------------

def verify_expected_masses(
    dist: DistributionSpec,
    n: int,
    reps: int,
    seed: int = 0,
    z_max: float = DEFAULT_Z_MAX,
    workers: int | None = None,
) -> VerificationReport:
    """Monte Carlo mean of every segment mass against 1/(n+1)."""
    _require_n(n)
    _require_reps(reps)

    def draw(rng, size):
        return _masses_from_cdf(dist._cdf(_sorted_draws(dist, rng, size, n)))

    P = run_blocks(reps, seed, draw, workers)
    target = 1.0 / (n + 1)
    mean, se, z, var, passed = _column_stats(P, target, z_max)
    return VerificationReport(
        distribution=dist.to_text(),
        n=n,
        reps=reps,
        seed=seed,
        expected=target,
        mean=_floats(mean),
        se=_floats(se),
        z=_floats(z),
        variance=_floats(var),
        z_max=z_max,
        passed=passed,
    )


def spacings(u_sorted: np.ndarray) -> np.ndarray:
    """Spacings of rows of sorted points in (0, 1), n+1 per row."""
    return _masses_from_cdf(np.atleast_2d(u_sorted))


def simulate_spacings(
    n: int,
    reps: int,
    seed: int = 0,
    z_max: float = DEFAULT_Z_MAX,
    workers: int | None = None,
) -> SpacingsSummary:
    """Uniform spacings, i.e. draws from Dirichlet(1, ..., 1) over n+1 components."""
    _require_n(n)
    _require_reps(reps)

    def draw(rng, size):
        return spacings(np.sort(open_uniforms(rng, (size, n)), axis=1))

    D = run_blocks(reps, seed, draw, workers)
    target = 1.0 / (n + 1)
    mean, se, z, var, passed = _column_stats(D, target, z_max)
    q = np.quantile(D, [0.025, 0.5, 0.975], axis=0)
    return SpacingsSummary(
        n=n,
        reps=reps,
        seed=seed,
        expected=target,
        mean=_floats(mean),
        se=_floats(se),
        z=_floats(z),
        variance=_floats(var),
        q025=_floats(q[0]),
        q500=_floats(q[1]),
        q975=_floats(q[2]),
        z_max=z_max,
        passed=passed,
    )


def dirichlet_marginal_variance(n: int) -> float:
    """Variance of one component of Dirichlet(1, ..., 1) with n+1 components."""
    return n / ((n + 1) ** 2 * (n + 2))


def pit_transform(dist: DistributionSpec, data: Sequence[float]) -> np.ndarray:
    return np.asarray(dist.cdf(np.asarray(data, dtype=float)), dtype=float).reshape(-1)


def first_order_stat_cdf(dist: DistributionSpec, n: int, x: float) -> float:
    """P(min of n draws <= x) = 1 - (1 - F(x))^n."""
    _require_n(n)
    x = _check_finite(x)
    F = dist.cdf(x)
    if F >= 1.0:
        return 1.0
    return float(-math.expm1(n * math.log1p(-F)))


def first_order_stat_pdf(dist: DistributionSpec, n: int, x: float) -> float:
    """Density of the sample minimum, n (1 - F(x))^(n-1) f(x)."""
    _require_n(n)
    x = _check_finite(x)
    return float(n * (1.0 - dist.cdf(x)) ** (n - 1) * dist.pdf(x))


def verify_first_order_stat(
    dist: DistributionSpec,
    n: int,
    xs: Sequence[float],
    reps: int,
    seed: int = 0,
    z_max: float = DEFAULT_Z_MAX,
    workers: int | None = None,
) -> list[MeanEstimate]:
    """Frequency of ``min <= x`` for each ``x`` against the analytic CDF of the minimum.

    The standard error is the binomial one, computed from the analytic
    probability.
    """
    _require_n(n)
    _require_reps(reps)
    xs = np.array([_check_finite(x) for x in xs])

    def draw(rng, size):
        return dist.sample_rng(rng, (size, n)).min(axis=1)

    mins = run_blocks(reps, seed, draw, workers)
    out = []
    for x in xs:
        p = first_order_stat_cdf(dist, n, float(x))
        freq = float(np.count_nonzero(mins <= x)) / reps
        out.append(MeanEstimate(freq, math.sqrt(p * (1.0 - p) / reps), p, z_max))
    return out


def expected_p0_numeric(dist: DistributionSpec | None, n: int, tol: float = 1e-9) -> float:
    """E[F(x_(1))] by quadrature of n * u * (1 - u)^(n-1) over [0, 1].

    After substituting u = F(x) the integrand no longer involves the
    distribution; ``dist`` is accepted for symmetry with the other checks.
    """
    _require_n(n)

    def integrand(u):
        return n * u * math.exp((n - 1) * math.log1p(-u)) if u < 1.0 else 0.0

    # the integrand peaks at u = 1/n; split there so the adaptive rule sees it
    peak = 1.0 / n
    pieces = [(0.0, peak), (peak, 1.0)] if 0.0 < peak < 1.0 else [(0.0, 1.0)]
    total, err = 0.0, 0.0
    for a, b in pieces:
        val, e = integrate.quad(integrand, a, b, epsabs=1e-14, epsrel=1e-13, limit=200)
        total += val
        err += e
    if not math.isfinite(total) or err > tol:
        raise QuadratureFailure(f"quadrature error estimate {err:g} exceeds {tol:g} for n={n}")
    return total


def verify_beta_mean(
    dist: DistributionSpec,
    n: int,
    i: int,
    reps: int,
    seed: int = 0,
    z_max: float = DEFAULT_Z_MAX,
    workers: int | None = None,
) -> MeanEstimate:
    """Monte Carlo E[F(x_(i))], which follows Beta(i, n-i+1) with mean i/(n+1)."""
    _require_n(n)
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"order statistic index must be in [1, {n}], got {i}")
    _require_reps(reps)

    def draw(rng, size):
        return dist._cdf(_sorted_draws(dist, rng, size, n)[:, i - 1])

    vals = run_blocks(reps, seed, draw, workers)
    return _mean_estimate(vals, i / (n + 1), z_max)


def conditional_share_check(
    dist: DistributionSpec,
    n: int,
    i: int,
    reps: int,
    seed: int = 0,
    z_max: float = DEFAULT_Z_MAX,
    workers: int | None = None,
) -> MeanEstimate:
    """Monte Carlo E[P_i / (1 - sum_{k<i} P_k)] against 1/(n-i+1).

    This is the share of the mass remaining above x_(i) that falls in the
    next segment.
    """
    _require_n(n)
    if not 0 <= i <= n - 1:
        raise IndexOutOfRange(f"segment index must be in [0, {n - 1}], got {i}")
    _require_reps(reps)

    def draw(rng, size):
        F = dist._cdf(_sorted_draws(dist, rng, size, n))
        P = _masses_from_cdf(F)
        # mass above x_(i) directly as 1 - F(x_(i)) avoids cancellation in 1 - cumsum
        remaining = 1.0 - F[:, i - 1] if i > 0 else np.ones(size)
        with np.errstate(divide="ignore", invalid="ignore"):
            share = P[:, i] / remaining
        return np.where(remaining > 0, share, 0.0)

    vals = run_blocks(reps, seed, draw, workers)
    return _mean_estimate(vals, 1.0 / (n - i + 1), z_max)
