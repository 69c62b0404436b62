"""Tests of the streaming statistics accumulator."""

import math

import numpy as np
import pytest

from speckle_squeeze.stats import RunningStats


def test_matches_numpy():
    rng = np.random.default_rng(0)
    data = rng.standard_normal(1000) * 3.0 + 5.0
    st = RunningStats()
    for v in data:
        st.add(float(v))
    assert st.n == 1000
    assert st.mean == pytest.approx(data.mean(), rel=1e-12)
    assert st.sample_variance == pytest.approx(data.var(ddof=1), rel=1e-12)
    assert st.standard_error == pytest.approx(data.std(ddof=1) / math.sqrt(1000), rel=1e-12)


def test_from_array_matches_add_loop():
    rng = np.random.default_rng(1)
    data = rng.standard_normal(257)
    bulk = RunningStats.from_array(data)
    assert bulk.n == 257
    assert bulk.mean == pytest.approx(data.mean(), rel=1e-13)
    assert bulk.sample_variance == pytest.approx(data.var(ddof=1), rel=1e-12)


def test_merge_equals_concatenation():
    rng = np.random.default_rng(2)
    a = rng.standard_normal(300)
    b = rng.standard_normal(77) + 2.0
    merged = RunningStats.from_array(a).merge(RunningStats.from_array(b))
    whole = RunningStats.from_array(np.concatenate([a, b]))
    assert merged.n == whole.n
    assert merged.mean == pytest.approx(whole.mean, rel=1e-12)
    assert merged.m2 == pytest.approx(whole.m2, rel=1e-10)


def test_merge_with_empty():
    a = RunningStats.from_array(np.array([1.0, 2.0, 3.0]))
    assert a.merge(RunningStats()).mean == a.mean
    assert RunningStats().merge(a).m2 == a.m2
    assert RunningStats().merge(RunningStats()).n == 0


def test_degenerate_counts():
    st = RunningStats()
    assert st.standard_error == 0.0
    st.add(4.2)
    assert st.mean == 4.2
    assert st.standard_error == 0.0  # undefined for one sample, reported as 0
    assert st.sample_variance == 0.0
