"""Shannon entropy of the equal-probability partition."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import NegativeProbability, NotNormalized

NORMALIZATION_TOL = 1e-9


class Base(enum.Enum):
    BITS = "bits"
    NATS = "nats"

    def log(self, x: float) -> float:
        return math.log2(x) if self is Base.BITS else math.log(x)


@dataclass(frozen=True)
class EntropyValue:
    value: float
    base: Base = Base.BITS

    def __float__(self) -> float:
        return self.value


def _base(base) -> Base:
    return base if isinstance(base, Base) else Base(base)


def partition_entropy(n: int, base: Base | str = Base.BITS) -> EntropyValue:
    """Entropy of n+1 equally likely segments, ``log(n+1)``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    b = _base(base)
    return EntropyValue(b.log(n + 1), b)


def discrete_entropy(probs: Sequence[float], base: Base | str = Base.BITS) -> EntropyValue:
    b = _base(base)
    ps = [float(p) for p in probs]
    for i, p in enumerate(ps):
        if not p >= 0.0:
            raise NegativeProbability(f"probability at index {i} is {p}")
    total = math.fsum(ps)
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise NotNormalized(f"probabilities sum to {total!r}, not 1")
    h = -math.fsum(p * b.log(p) for p in ps if p > 0.0)
    return EntropyValue(max(h, 0.0), b)


def marginal_information(n: int) -> float:
    """Bits gained by going from n to n+1 observations."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return math.log1p(1.0 / (n + 1)) / math.log(2.0)
