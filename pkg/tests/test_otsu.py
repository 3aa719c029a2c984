from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from oracles import otsu_scan, random_counts
from textpolarity.errors import DegenerateHistogramError, DomainError
from textpolarity.histogram import from_counts
from textpolarity.imageio import GrayImage
from textpolarity.otsu import binarize, class_stats, otsu_threshold, text_is_white, Polarity


def spikes(**bins):
    c = np.zeros(256, dtype=int)
    for level, n in bins.items():
        c[int(level[1:])] = n
    return from_counts(c)


def test_two_spike_class_stats():
    s = class_stats(spikes(b0=1, b255=1), 100)
    assert (s.w1, s.w2, s.mu1, s.mu2) == (0.5, 0.5, 0.0, 255.0)
    assert s.sigma_b2 == 16256.25


def test_single_spike_class_stats():
    s = class_stats(spikes(b7=3), 100)
    assert s.w2 == 0 and s.sigma_b2 == 0


def test_uniform_class_stats_against_direct_sums():
    s = class_stats(from_counts(np.full(256, 4)), 127)
    p = Fraction(1, 256)
    w1 = sum(p for i in range(128))
    w2 = sum(p for i in range(128, 256))
    mu1 = sum(i * p for i in range(128)) / w1
    mu2 = sum(i * p for i in range(128, 256)) / w2
    expected = w1 * w2 * (mu1 - mu2) ** 2
    assert expected == 4096
    assert s.sigma_b2 == pytest.approx(float(expected), rel=1e-12)
    assert (s.mu1, s.mu2) == (63.5, 191.5)


@pytest.mark.parametrize("t", [-1, 255, 300])
def test_class_stats_domain(t):
    with pytest.raises(DomainError):
        class_stats(spikes(b0=1, b255=1), t)


def test_two_spike_threshold_ties_to_smallest():
    r = otsu_threshold(spikes(b0=1, b255=1))
    assert r.t_star == 0 and r.mbcv == 16256.25


def test_close_spikes():
    r = otsu_threshold(spikes(b10=5, b20=5))
    assert r.t_star == 10 and r.mbcv == 25.0


def test_degenerate():
    with pytest.raises(DegenerateHistogramError):
        otsu_threshold(spikes(b42=10))


def test_matches_exhaustive_scan():
    rng = np.random.default_rng(7)
    for _ in range(200):
        counts = random_counts(rng)
        t, mbcv, _ = otsu_scan(counts)
        r = otsu_threshold(from_counts(counts))
        assert r.t_star == t
        assert r.mbcv == pytest.approx(mbcv, rel=1e-9)


@st.composite
def histograms(draw):
    counts = draw(st.lists(st.integers(0, 1000), min_size=256, max_size=256))
    assume(sum(1 for c in counts if c) >= 2)
    return from_counts(np.array(counts))


@given(histograms(), st.integers(0, 254))
def test_decomposition_identity(hist, t):
    s = class_stats(hist, t)
    assume(s.w1 > 0 and s.w2 > 0)
    mu_t = hist.mean()
    weighted = s.w1 * (s.mu1 - mu_t) ** 2 + s.w2 * (s.mu2 - mu_t) ** 2
    assert abs(weighted - s.sigma_b2) <= 1e-9 * max(1.0, s.sigma_b2)
    assert abs(s.w1 + s.w2 - 1) <= 1e-12
    assert abs(s.w1 * s.mu1 + s.w2 * s.mu2 - mu_t) <= 1e-9


@given(histograms())
def test_mbcv_is_maximum(hist):
    r = otsu_threshold(hist)
    assert r.mbcv > 0
    assert 0 <= r.t_star <= 254
    for t in range(255):
        assert class_stats(hist, t).sigma_b2 <= r.mbcv * (1 + 1e-12)


@settings(max_examples=50)
@given(st.lists(st.tuples(st.integers(0, 150), st.integers(1, 500)), min_size=2, max_size=8),
       st.integers(1, 100))
def test_shift_covariance(bins, shift):
    counts = np.zeros(256, dtype=int)
    for level, n in bins:
        counts[level] += n
    assume(np.count_nonzero(counts) >= 2)
    shifted = np.roll(counts, shift)
    a = otsu_threshold(from_counts(counts))
    b = otsu_threshold(from_counts(shifted))
    assert b.t_star == a.t_star + shift
    assert b.mbcv == pytest.approx(a.mbcv, rel=1e-9)


def test_binarize_examples():
    img = GrayImage([[0, 255]])
    assert binarize(img, 100).flat() == [0, 255]
    assert binarize(img, 100, invert=True).flat() == [255, 0]
    assert binarize(GrayImage([[99, 100, 101]]), 100).flat() == [0, 0, 255]


def test_binarize_polarity_only_labels():
    img = GrayImage([[3, 200]])
    for pol in Polarity:
        assert binarize(img, 50, pol).flat() == [0, 255]
    assert text_is_white(Polarity.BRIGHT_ON_DARK) is True
    assert text_is_white(Polarity.DARK_ON_BRIGHT) is False
    assert text_is_white(Polarity.DARK_ON_BRIGHT, invert=True) is True
    assert text_is_white(Polarity.INDETERMINATE) is None
