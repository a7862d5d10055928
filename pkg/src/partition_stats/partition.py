"""Sorted samples and the N+1 segment partition they induce on the real line."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import EmptyInput, NonFiniteValue


def _check_finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise NonFiniteValue(value=x)
    return x


@dataclass(frozen=True, eq=False)
class SortedSample:
    """Ascending, finite observations. Build with :func:`sorted_sample_new`."""

    values: np.ndarray
    ties: tuple[tuple[int, int], ...] = field(default=())

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def has_ties(self) -> bool:
        return bool(self.ties)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SortedSample):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash(self.values.tobytes())


def sorted_sample_new(data: Iterable[float]) -> SortedSample:
    """Validate ``data`` and return a sorted copy.

    Exact duplicates are kept; each adjacent equal pair of sorted positions is
    recorded in ``ties``.
    """
    arr = np.array(list(data) if not isinstance(data, np.ndarray) else data, dtype=float).ravel()
    if arr.size == 0:
        raise EmptyInput("sample must contain at least one value")
    bad = np.flatnonzero(~np.isfinite(arr))
    if bad.size:
        i = int(bad[0])
        raise NonFiniteValue(index=i, value=float(arr[i]))
    values = np.sort(arr, kind="stable")
    values.setflags(write=False)
    eq = np.flatnonzero(values[1:] == values[:-1])
    ties = tuple((int(k), int(k) + 1) for k in eq)
    return SortedSample(values=values, ties=ties)


@dataclass(frozen=True)
class SegmentIndex:
    index: int

    def __int__(self) -> int:
        return self.index

    def __index__(self) -> int:
        return self.index


@dataclass(frozen=True)
class Partition:
    """Segments 0..n of the line cut at the order statistics.

    Segment 0 is ``(-inf, x_(1))``, segment i is ``[x_(i), x_(i+1))`` and
    segment n is ``[x_(n), +inf)``.
    """

    boundaries: SortedSample

    @property
    def n(self) -> int:
        return self.boundaries.n

    @property
    def segment_count(self) -> int:
        return self.n + 1

    def segment_bounds(self, i: int) -> tuple[float, float]:
        v = self.boundaries.values
        if not 0 <= i <= self.n:
            raise IndexError(i)
        lo = -math.inf if i == 0 else float(v[i - 1])
        hi = math.inf if i == self.n else float(v[i])
        return lo, hi

    def segments(self) -> list[tuple[float, float]]:
        return [self.segment_bounds(i) for i in range(self.segment_count)]


def build_partition(s: SortedSample) -> Partition:
    return Partition(boundaries=s)


def expected_segment_mass(p: Partition) -> float:
    """Expected probability of every segment, 1/(n+1)."""
    return 1.0 / (p.n + 1)


def locate_segment(p: Partition, x: float) -> SegmentIndex:
    # bisect_right puts a query equal to x_(i) into segment i (right-assignment)
    x = _check_finite(x)
    return SegmentIndex(int(np.searchsorted(p.boundaries.values, x, side="right")))
