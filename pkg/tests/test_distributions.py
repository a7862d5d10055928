import math

import mpmath
import numpy as np
import pytest
from scipy import integrate, optimize, stats

from partition_stats.distributions import (
    Exponential,
    Normal,
    Uniform,
    cdf,
    parse_distribution,
    pdf,
    quantile,
    sample,
)
from partition_stats.errors import MalformedDistribution, NonFiniteValue, OutOfRangeQuantile

SPECS = [Uniform(0, 1), Uniform(-2, 3), Exponential(1), Exponential(2.5), Normal(0, 1), Normal(3, 0.5)]
GRID = np.round(np.arange(1, 100) / 100, 2)


def test_cdf_examples():
    assert cdf(Normal(0, 1), 0.0) == 0.5
    assert abs(cdf(Exponential(1), math.log(2)) - 0.5) < 1e-15
    assert cdf(Uniform(0, 2), 0.5) == 0.25


def test_quantile_examples():
    assert quantile(Uniform(0, 1), 0.3) == 0.3
    assert quantile(Normal(0, 1), 0.5) == 0.0
    # root of 1 - exp(-2x) = 0.5 found by bracketing, independent of the closed form
    root = optimize.brentq(lambda x: 1 - math.exp(-2 * x) - 0.5, 0.0, 5.0, xtol=1e-15)
    assert abs(quantile(Exponential(2), 0.5) - root) < 1e-12
    assert round(quantile(Exponential(2), 0.5), 4) == 0.3466


def test_errors():
    with pytest.raises(NonFiniteValue):
        cdf(Normal(0, 1), math.nan)
    with pytest.raises(OutOfRangeQuantile):
        quantile(Normal(0, 1), 0.0)
    with pytest.raises(OutOfRangeQuantile):
        quantile(Uniform(0, 1), 1.0)
    with pytest.raises(MalformedDistribution):
        Uniform(1, 1)
    with pytest.raises(MalformedDistribution):
        Exponential(0)
    with pytest.raises(MalformedDistribution):
        Normal(0, -1)


@pytest.mark.parametrize("text, spec", [
    ("uniform:0,1", Uniform(0, 1)),
    ("exp:1", Exponential(1)),
    ("normal:0,1", Normal(0, 1)),
    (" normal: -1.5 , 2 ", Normal(-1.5, 2)),
])
def test_parse(text, spec):
    assert parse_distribution(text) == spec
    assert parse_distribution(spec.to_text()) == spec


@pytest.mark.parametrize("text", ["gamma:1,2", "uniform:0", "exp:a", "normal", "exp:1,2", "uniform:1,0"])
def test_parse_rejects(text):
    with pytest.raises(MalformedDistribution):
        parse_distribution(text)


def test_normal_cdf_accuracy_against_high_precision():
    mpmath.mp.dps = 30
    for x in np.linspace(-8, 8, 321):
        ref = float(mpmath.ncdf(mpmath.mpf(float(x))))
        assert abs(cdf(Normal(0, 1), float(x)) - ref) <= 1e-7


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_quantile_round_trip(spec):
    for q in GRID:
        assert abs(cdf(spec, quantile(spec, q)) - q) <= 1e-9


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_pdf_is_derivative_of_cdf(spec):
    h = 1e-5
    lo, hi = quantile(spec, 0.005), quantile(spec, 0.995)
    for x in np.linspace(lo, hi, 101)[1:-1]:
        fd = (cdf(spec, x + h) - cdf(spec, x - h)) / (2 * h)
        assert abs(pdf(spec, x) - fd) <= 1e-5


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_pdf_integrates_to_one(spec):
    lo, hi = quantile(spec, 1e-12), quantile(spec, 1 - 1e-12)
    if isinstance(spec, Uniform):
        lo, hi = spec.a, spec.b
    val, _ = integrate.quad(lambda x: pdf(spec, x), lo, hi, limit=200)
    assert abs(val - 1.0) <= 1e-6


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_cdf_monotone_with_limits(spec):
    xs = np.linspace(-50, 50, 2001)
    F = cdf(spec, xs)
    assert np.all(np.diff(F) >= 0)
    assert F[0] <= 1e-12 and F[-1] >= 1 - 1e-12
    assert np.all((F >= 0) & (F <= 1))


def test_sample_means():
    m = 10**5
    u = sample(Uniform(0, 1), 11, m)
    assert abs(u.mean() - 0.5) <= 3 * (1 / math.sqrt(12)) / math.sqrt(m)
    e = sample(Exponential(1), 12, m)
    assert abs(e.mean() - 1.0) <= 3 / math.sqrt(m)


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_sample_deterministic(spec):
    a = sample(spec, 123, 1000)
    b = sample(spec, 123, 1000)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, sample(spec, 124, 1000))
    assert np.all(np.isfinite(a))


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_pit_of_own_samples_is_uniform(spec):
    m = 10**5
    u = cdf(spec, sample(spec, 5, m))
    ks = stats.kstest(u, "uniform").statistic
    assert ks <= 1.63 / math.sqrt(m)
