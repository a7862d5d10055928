"""Reference continuous distributions with closed-form CDF, PDF and quantile.

These serve as ground truth for the Monte Carlo checks. Sampling is pure
inverse transform on a seeded uniform stream, so a seed fixes the output.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import special

from .errors import MalformedDistribution, NonFiniteValue, OutOfRangeQuantile

_TWO53 = float(2**53)


def _finite(x):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        bad = np.flatnonzero(~np.isfinite(arr.ravel()))[0]
        raise NonFiniteValue(index=None if arr.ndim == 0 else int(bad), value=float(arr.ravel()[bad]))
    return arr


def _prob(q):
    arr = np.asarray(q, dtype=float)
    if not np.all((arr > 0.0) & (arr < 1.0)):
        raise OutOfRangeQuantile(f"quantile level must lie in (0, 1), got {q!r}")
    return arr


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def open_uniforms(rng: np.random.Generator, size) -> np.ndarray:
    """Uniform deviates on the open interval (0, 1) with 53-bit resolution."""
    k = rng.integers(0, 2**53, size=size, dtype=np.int64)
    return (k.astype(float) + 0.5) / _TWO53


class _Base:
    def cdf(self, x):
        return _out(self._cdf(_finite(x)))

    def pdf(self, x):
        return _out(self._pdf(_finite(x)))

    def quantile(self, q):
        return _out(self._quantile(_prob(q)))

    def sample(self, seed: int, m: int) -> np.ndarray:
        rng = np.random.default_rng(seed)
        return self.sample_rng(rng, m)

    def sample_rng(self, rng: np.random.Generator, size) -> np.ndarray:
        return self._quantile(open_uniforms(rng, size))


@dataclass(frozen=True)
class Uniform(_Base):
    a: float = 0.0
    b: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a < self.b):
            raise MalformedDistribution(f"uniform needs finite a < b, got {self.a}, {self.b}")

    def _cdf(self, x):
        return np.clip((x - self.a) / (self.b - self.a), 0.0, 1.0)

    def _pdf(self, x):
        return np.where((x >= self.a) & (x <= self.b), 1.0 / (self.b - self.a), 0.0)

    def _quantile(self, q):
        return self.a + q * (self.b - self.a)

    def to_text(self) -> str:
        return f"uniform:{self.a!r},{self.b!r}"


@dataclass(frozen=True)
class Exponential(_Base):
    rate: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.rate) and self.rate > 0):
            raise MalformedDistribution(f"exponential rate must be > 0, got {self.rate}")

    def _cdf(self, x):
        return np.where(x > 0, -np.expm1(-self.rate * np.maximum(x, 0.0)), 0.0)

    def _pdf(self, x):
        return np.where(x >= 0, self.rate * np.exp(-self.rate * np.maximum(x, 0.0)), 0.0)

    def _quantile(self, q):
        return -np.log1p(-q) / self.rate

    def to_text(self) -> str:
        return f"exp:{self.rate!r}"


@dataclass(frozen=True)
class Normal(_Base):
    mu: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.mu) and math.isfinite(self.sigma) and self.sigma > 0):
            raise MalformedDistribution(f"normal needs finite mu and sigma > 0, got {self.mu}, {self.sigma}")

    def _cdf(self, x):
        return special.ndtr((x - self.mu) / self.sigma)

    def _pdf(self, x):
        z = (x - self.mu) / self.sigma
        return np.exp(-0.5 * z * z) / (self.sigma * math.sqrt(2.0 * math.pi))

    def _quantile(self, q):
        return self.mu + self.sigma * special.ndtri(q)

    def to_text(self) -> str:
        return f"normal:{self.mu!r},{self.sigma!r}"


DistributionSpec = Union[Uniform, Exponential, Normal]

_ARITY = {"uniform": (Uniform, 2), "exp": (Exponential, 1), "normal": (Normal, 2)}


def parse_distribution(text: str) -> DistributionSpec:
    """Parse ``uniform:a,b``, ``exp:lambda`` or ``normal:mu,sigma``."""
    name, sep, rest = text.strip().partition(":")
    name = name.strip().lower()
    if not sep or name not in _ARITY:
        raise MalformedDistribution(f"unknown distribution {text!r}; expected uniform:a,b, exp:lambda or normal:mu,sigma")
    cls, arity = _ARITY[name]
    try:
        params = [float(p) for p in rest.split(",")]
    except ValueError:
        raise MalformedDistribution(f"non-numeric parameter in {text!r}") from None
    if len(params) != arity:
        raise MalformedDistribution(f"{name} takes {arity} parameter(s), got {len(params)} in {text!r}")
    return cls(*params)


def cdf(spec: DistributionSpec, x):
    return spec.cdf(x)


def pdf(spec: DistributionSpec, x):
    return spec.pdf(x)


def quantile(spec: DistributionSpec, q):
    return spec.quantile(q)


def sample(spec: DistributionSpec, seed: int, m: int) -> np.ndarray:
    return spec.sample(seed, m)
