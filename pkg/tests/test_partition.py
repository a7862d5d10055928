import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from partition_stats.errors import EmptyInput, NonFiniteValue
from partition_stats.partition import (
    build_partition,
    expected_segment_mass,
    locate_segment,
    sorted_sample_new,
)

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
samples = st.lists(finite, min_size=1, max_size=40)


def test_sorted_copy_without_ties():
    s = sorted_sample_new([3.0, 1.0, 2.0])
    assert list(s.values) == [1.0, 2.0, 3.0]
    assert s.n == 3
    assert s.ties == ()


def test_input_is_copied():
    data = np.array([3.0, 1.0, 2.0])
    s = sorted_sample_new(data)
    data[0] = 100.0
    assert list(s.values) == [1.0, 2.0, 3.0]
    with pytest.raises(ValueError):
        s.values[0] = 5.0


def test_empty_rejected():
    with pytest.raises(EmptyInput):
        sorted_sample_new([])


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_nonfinite_reports_index(bad):
    with pytest.raises(NonFiniteValue) as exc:
        sorted_sample_new([1.0, 2.0, bad, 4.0])
    assert exc.value.index == 2


def test_ties_recorded_not_rejected():
    s = sorted_sample_new([1.0, 1.0, 2.0])
    assert list(s.values) == [1.0, 1.0, 2.0]
    assert s.ties == ((0, 1),)


@pytest.mark.parametrize("n, segments, mass", [(3, 4, 0.25), (1, 2, 0.5), (9, 10, 0.1)])
def test_segment_count_and_mass(n, segments, mass):
    p = build_partition(sorted_sample_new(range(1, n + 1)))
    assert p.segment_count == segments
    assert expected_segment_mass(p) == mass


def test_single_point_partition():
    p = build_partition(sorted_sample_new([5.0]))
    assert p.segments() == [(-math.inf, 5.0), (5.0, math.inf)]


@pytest.mark.parametrize("x, idx", [(0.5, 0), (10.0, 3), (2.0, 2), (1.0, 1), (3.0, 3), (2.5, 2)])
def test_locate(x, idx):
    p = build_partition(sorted_sample_new([1.0, 2.0, 3.0]))
    assert locate_segment(p, x).index == idx


def test_locate_rejects_nan():
    p = build_partition(sorted_sample_new([1.0]))
    with pytest.raises(NonFiniteValue):
        locate_segment(p, math.nan)


@given(samples)
def test_mass_times_count_is_one(data):
    p = build_partition(sorted_sample_new(data))
    assert abs(p.segment_count * expected_segment_mass(p) - 1.0) <= 1e-12


@given(samples, finite, finite)
def test_locate_monotone(data, x, y):
    p = build_partition(sorted_sample_new(data))
    lo, hi = min(x, y), max(x, y)
    assert locate_segment(p, lo).index <= locate_segment(p, hi).index


@given(st.lists(finite, min_size=2, max_size=40, unique=True), st.data())
def test_strict_interior_points(data, draw):
    s = sorted_sample_new(data)
    p = build_partition(s)
    i = draw.draw(st.integers(1, s.n - 1))
    a, b = s.values[i - 1], s.values[i]
    x = a + (b - a) * draw.draw(st.floats(0.01, 0.99))
    if a < x < b:
        assert locate_segment(p, x).index == i


@given(samples, st.randoms(use_true_random=False))
def test_permutation_invariant(data, rnd):
    shuffled = list(data)
    rnd.shuffle(shuffled)
    assert sorted_sample_new(data) == sorted_sample_new(shuffled)
    assert sorted_sample_new(data).ties == sorted_sample_new(shuffled).ties
