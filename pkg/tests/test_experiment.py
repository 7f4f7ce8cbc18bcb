import json
import math

import numpy as np
import pytest

from isingnet import EmptySampleError, FigureStrategy, KnuthDims
from isingnet.config import make_rng
from isingnet.experiment import (
    CampaignSpec,
    emit_plot_data,
    metadata,
    run_campaign,
    runs_csv,
    silverman_bandwidth,
    smoothed_bootstrap_median_ci,
    smoothed_median,
    trend_report,
    write_campaign,
)


def plain_percentile_ci(samples, resamples, confidence, seed):
    """Unsmoothed bootstrap, written out with a loop."""
    rng = np.random.default_rng(seed)
    data = np.asarray(samples, dtype=float)
    medians = sorted(np.median(rng.choice(data, size=len(data))) for _ in range(resamples))
    tail = (1 - confidence) / 2
    return np.quantile(medians, [tail, 1 - tail])


def test_degenerate_sample_gives_point_interval():
    assert smoothed_bootstrap_median_ci([7] * 50) == (7.0, 7.0)


def test_silverman_bandwidth_formula():
    data = np.arange(1, 101, dtype=float)
    sd = np.std(data, ddof=1)
    iqr = np.percentile(data, 75) - np.percentile(data, 25)
    assert silverman_bandwidth(data) == pytest.approx(0.9 * min(sd, iqr / 1.34) * 100 ** -0.2)


def test_silverman_falls_back_to_sd_when_iqr_is_zero():
    data = np.array([1.0] * 20 + [5.0])
    assert silverman_bandwidth(data) == pytest.approx(0.9 * np.std(data, ddof=1) * 21 ** -0.2)


def test_interval_on_uniform_sample():
    data = np.arange(1, 1001)
    low, high = smoothed_bootstrap_median_ci(data, seed=3)
    assert low <= 500.5 <= high
    plow, phigh = plain_percentile_ci(data, 1000, 0.95, 3)
    assert low < phigh and plow < high


def smoothed_cdf_oracle(samples, x):
    h = silverman_bandwidth(np.asarray(samples, dtype=float))
    return sum(0.5 * (1 + math.erf((x - v) / (h * math.sqrt(2)))) for v in samples) / len(samples)


def test_smoothed_median_balances_the_smoothed_cdf():
    data = list(make_rng(5).geometric(0.3, size=400))
    m = smoothed_median(data)
    assert smoothed_cdf_oracle(data, m) == pytest.approx(0.5, abs=1e-9)


def test_smoothed_median_without_spread_is_the_sample_median():
    assert smoothed_median([4, 4, 4]) == 4.0
    assert smoothed_median(np.arange(1, 1001)) == pytest.approx(500.5, abs=1e-6)
    with pytest.raises(EmptySampleError):
        smoothed_median([])


def test_tied_integer_sample_is_bracketed():
    # a heavy atom at the raw median pulls the smoothed interval off it
    data = [0] * 25 + [1] * 40 + [2] * 20 + [3] * 10 + [4] * 5
    low, high = smoothed_bootstrap_median_ci(data * 10, seed=1)
    assert low <= smoothed_median(data * 10) <= high


def test_intervals_nest_with_confidence():
    data = make_rng(1).geometric(0.05, size=300)
    narrow = smoothed_bootstrap_median_ci(data, confidence=0.5, seed=9)
    wide = smoothed_bootstrap_median_ci(data, confidence=0.95, seed=9)
    assert wide[0] <= narrow[0] <= narrow[1] <= wide[1]


def test_bootstrap_argument_checks():
    with pytest.raises(EmptySampleError):
        smoothed_bootstrap_median_ci([])
    with pytest.raises(ValueError):
        smoothed_bootstrap_median_ci([1, 2], resamples=50)
    with pytest.raises(ValueError):
        smoothed_bootstrap_median_ci([1, 2], confidence=1.0)


def test_bootstrap_is_seeded():
    data = make_rng(2).geometric(0.1, size=100)
    assert smoothed_bootstrap_median_ci(data, seed=4) == smoothed_bootstrap_median_ci(data, seed=4)


@pytest.mark.slow
def test_coverage_on_geometric_samples():
    p = 0.05
    true_median = math.ceil(math.log(0.5) / math.log(1 - p))
    rng = make_rng(2024)
    hits = 0
    for rep in range(200):
        data = rng.geometric(p, size=200)
        low, high = smoothed_bootstrap_median_ci(data, resamples=500, seed=rep)
        hits += low <= true_median <= high
    assert abs(hits / 200 - 0.95) <= 0.10


def small_spec(**changes):
    base = dict(net_family=[(1, 1), (2, 1)], trials_per_net=100, max_updates=1000,
                master_seed=7, bootstrap_resamples=200)
    base.update(changes)
    return CampaignSpec(**base)


def test_campaign_on_smallest_net():
    (summary,) = run_campaign(small_spec(net_family=[(1, 1)]))
    assert summary.failures == 0 and summary.trials == 100
    assert summary.ci_low <= summary.median_updates <= summary.ci_high
    done = [r.updates for r in summary.runs if r.reached_ground]
    assert summary.sample_median == float(np.median(done))
    assert summary.median_updates == pytest.approx(smoothed_median(done))


def test_zero_budget_counts_every_trial_as_failure():
    summaries = run_campaign(small_spec(max_updates=0, trials_per_net=10))
    assert all(s.failures == s.trials == 10 for s in summaries)
    assert all(math.isnan(s.median_updates) for s in summaries)


def test_campaign_is_deterministic():
    first, second = run_campaign(small_spec()), run_campaign(small_spec())
    assert [(s.median_updates, s.ci_low, s.ci_high) for s in first] == \
        [(s.median_updates, s.ci_low, s.ci_high) for s in second]
    assert emit_plot_data(first) == emit_plot_data(second)
    assert runs_csv(first, "random_half") == runs_csv(second, "random_half")


def test_parallel_campaign_matches_serial():
    serial = run_campaign(small_spec(trials_per_net=30))
    parallel = run_campaign(small_spec(trials_per_net=30, n_jobs=2))
    assert runs_csv(serial, "x") == runs_csv(parallel, "x")


def test_campaign_with_product_target():
    (summary,) = run_campaign(small_spec(net_family=[(2, 2)], product_target=6, trials_per_net=20))
    assert summary.error is None and summary.failures == 0


def test_bad_net_becomes_error_entry():
    spec = small_spec(net_family=[(2, 2), (1, 1)], product_target=6, trials_per_net=5,
                      strategy=FigureStrategy("unsat_multiplier"))
    summaries = run_campaign(spec)
    assert all(s.error for s in summaries)
    data, _ = emit_plot_data(summaries)
    assert data == "net_size,label,median,ci_low,ci_high\n"


def test_spec_validation():
    with pytest.raises(ValueError):
        small_spec(trials_per_net=0)
    with pytest.raises(ValueError):
        small_spec(confidence=1.5)


def test_plot_data_is_sorted_and_labelled():
    summaries = run_campaign(small_spec(net_family=[(2, 2), (1, 1)], trials_per_net=20))
    data, script = emit_plot_data(summaries, "loglog")
    lines = data.splitlines()
    assert lines[0] == "net_size,label,median,ci_low,ci_high"
    assert lines[1].startswith("4,1 x 1,") and lines[2].startswith("12,2 x 2,")
    assert lines[2].split(",")[2].count(".") == 1 and len(lines[2].split(",")[2].split(".")[1]) == 6
    assert "set logscale xy" in script and "summary.csv" in script
    assert "set logscale y\n" in emit_plot_data(summaries, "semilog")[1]
    with pytest.raises(ValueError):
        emit_plot_data(summaries, "linear")


def test_empty_plot_data():
    data, _ = emit_plot_data([])
    assert data == "net_size,label,median,ci_low,ci_high\n"


def test_trend_report_second_differences():
    class S:
        def __init__(self, size, median):
            self.net_size, self.median_updates, self.error = size, median, None

    report = trend_report([S(4, 1.0), S(8, 4.0), S(12, 16.0), S(16, 64.0)])
    # log of an exact exponential has zero curvature in size
    assert report["semilog"] == pytest.approx([0.0, 0.0], abs=1e-12)
    assert len(report["loglog"]) == 2 and all(v > 0 for v in report["loglog"])
    assert trend_report([S(4, 1.0)])["semilog"] == []


def test_write_campaign(tmp_path):
    spec = small_spec(trials_per_net=10)
    summaries = run_campaign(spec)
    paths = write_campaign(spec, summaries, tmp_path)
    assert {p.name for p in paths.values()} == {"summary.csv", "plot.gp", "runs.csv", "metadata.json"}
    meta = json.loads(paths["metadata"].read_text())
    assert meta["prng"] == "PCG64"
    assert meta["campaign"]["master_seed"] == 7
    assert meta["bootstrap"]["resamples"] == 200
    assert len(paths["runs"].read_text().splitlines()) == 1 + 20
    assert metadata(spec, summaries)["summaries"][0]["dims"] == [1, 1]


def test_default_family_has_five_nets():
    assert [d.size for d in CampaignSpec().net_family] == [4, 7, 12, 17, 24]
    assert CampaignSpec().net_family[0] == KnuthDims(1, 1)
