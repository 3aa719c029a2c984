import numpy as np
import pytest

from textpolarity.errors import DegenerateHistogramError, DomainError
from textpolarity.histogram import build_histogram, from_counts
from textpolarity.imageio import GrayImage
from textpolarity.otsu import Polarity, otsu_threshold
from textpolarity.sweep import (DEFAULT_GAMMAS, CurveSample, GammaCurve, SweepConfig,
                                Trend, classify_trend, curve_from_csv, curve_to_csv,
                                detect_polarity, sweep_mbcv)
from textpolarity.synth import case_i_spec, case_ii_spec, generate, unimodal_spec

# Case-I preset, seed 42, default grid; regression data from the pipeline.
CASE_I_SEED42 = [230.50203705134481, 917.4498683900518, 1798.5417672611884,
                 2683.587657179629, 3487.757745146144, 4180.859636503237,
                 4769.189889971731, 5300.175737637699, 5745.155131962106]


def two_spike():
    c = np.zeros(256, dtype=int)
    c[[0, 255]] = 1
    return from_counts(c)


def curve_of(values):
    return GammaCurve(tuple(CurveSample(1.0 + k, 1 / (1.0 + k), v)
                            for k, v in enumerate(values)))


def test_two_spike_constant_curve():
    curve = sweep_mbcv(two_spike(), (1, 2, 3))
    assert curve.mbcvs == (16256.25,) * 3
    assert classify_trend(curve) == (Trend.FLUCTUATING, 0.0)


def test_identity_sample():
    hist = build_histogram(generate(case_ii_spec(3)))
    curve = sweep_mbcv(hist)
    assert curve.base_mbcv == otsu_threshold(hist).mbcv
    assert curve.gammas == DEFAULT_GAMMAS
    assert all(b < a for a, b in zip(curve.powers, curve.powers[1:]))


def test_case_i_seed_42_golden():
    curve = sweep_mbcv(build_histogram(generate(case_i_spec(42))))
    assert np.all(np.diff(curve.mbcvs) > 0)
    np.testing.assert_allclose(curve.mbcvs, CASE_I_SEED42, rtol=1e-12)


@pytest.mark.parametrize("grid", [(1, 2), (2, 3, 4), (1, 3, 2), (1, 1, 2)])
def test_bad_grids(grid):
    with pytest.raises(DomainError):
        sweep_mbcv(two_spike(), grid)


def test_degenerate_input():
    with pytest.raises(DegenerateHistogramError):
        sweep_mbcv(from_counts(np.eye(256, dtype=int)[9]))


def test_collapse_to_single_bin_scores_zero():
    c = np.zeros(256, dtype=int)
    c[[254, 255]] = 1
    curve = sweep_mbcv(from_counts(c), (1.0, 2.0, 300.0))
    assert curve.mbcvs[-1] == 0.0


def test_classify_examples():
    assert classify_trend(curve_of(range(1, 10))) == (Trend.INCREASING, 1.0)
    assert classify_trend(curve_of(range(9, 0, -1))) == (Trend.DECREASING, 1.0)
    assert classify_trend(curve_of([5] * 9)) == (Trend.FLUCTUATING, 0.0)
    assert classify_trend(curve_of([1, 2] * 4 + [1])) == (Trend.FLUCTUATING, 0.5)


def test_classify_tolerates_one_flat_step():
    values = [1, 2, 3, 3, 4, 5, 6, 7, 8, 9, 10]
    assert classify_trend(curve_of(values), 0.9) == (Trend.INCREASING, 0.9)
    assert classify_trend(curve_of(values), 1.0)[0] is Trend.FLUCTUATING


@pytest.mark.parametrize("threshold", [0.5, 0.2, 1.01])
def test_classify_threshold_domain(threshold):
    with pytest.raises(DomainError):
        classify_trend(curve_of([1, 2, 3]), threshold)


def test_curve_invariants():
    with pytest.raises(ValueError):
        GammaCurve((CurveSample(2.0, 0.5, 1.0),))
    with pytest.raises(ValueError):
        curve_of([1, -1, 2])


def test_detect_polarity_presets():
    assert detect_polarity(generate(case_i_spec(5))).polarity is Polarity.BRIGHT_ON_DARK
    assert detect_polarity(generate(case_ii_spec(5))).polarity is Polarity.DARK_ON_BRIGHT
    r = detect_polarity(generate(unimodal_spec(5)))
    assert not r.conditions.case_i and not r.conditions.case_ii


def test_detect_polarity_degenerate():
    with pytest.raises(DegenerateHistogramError):
        detect_polarity(GrayImage(np.full((4, 4), 3)))


def test_report_consistency():
    for spec in (case_i_spec(2), case_ii_spec(2), unimodal_spec(2)):
        r = detect_polarity(generate(spec))
        expected = {Trend.INCREASING: Polarity.BRIGHT_ON_DARK,
                    Trend.DECREASING: Polarity.DARK_ON_BRIGHT,
                    Trend.FLUCTUATING: Polarity.INDETERMINATE}[r.trend]
        assert r.polarity is expected
        d = r.to_dict()
        assert d["polarity"] == r.polarity.value
        assert len(d["curve"]) == len(DEFAULT_GAMMAS)


def test_sweep_config_validation():
    with pytest.raises(DomainError):
        SweepConfig(gammas=(1, 2))
    with pytest.raises(DomainError):
        SweepConfig(trend_threshold=0.4)


def test_csv_round_trip():
    curve = sweep_mbcv(build_histogram(generate(case_i_spec(42))))
    text = curve_to_csv(curve)
    lines = text.splitlines()
    assert lines[0] == "gamma,power,mbcv"
    assert len(lines) == 10
    assert curve_from_csv(text) == curve
    by_power = curve_to_csv(curve, order="power").splitlines()
    assert by_power[1].startswith("5,0.2")
    assert curve_from_csv("\n".join(by_power)) == curve


def test_parallel_path_matches_sequential(monkeypatch):
    hist = build_histogram(generate(case_ii_spec(1)))
    grid = tuple(1 + 0.05 * k for k in range(80))
    parallel = sweep_mbcv(hist, grid)
    monkeypatch.setenv("POLARITY_NO_PARALLEL", "1")
    assert sweep_mbcv(hist, grid) == parallel
