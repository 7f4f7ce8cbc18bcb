"""Decomposability campaigns over families of Knuth nets.

Each trial is one seeded local-update run from a random start to a global
ground state of the net (energy ``-15*m*n``). Per net we report the median
update count with a smoothed-bootstrap confidence interval. Runs that hit the
update budget count as failures and are left out of the median.

Update counts are small integers with heavy ties, and Gaussian jitter moves
the median of a tied sample off its atom. The reported median is therefore
the median of the same kernel-smoothed distribution the bootstrap resamples
from, which is what the interval brackets. The raw sample median is kept
alongside it.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .algebra import clamp
from .config import PRNG_NAME, derive_seed, make_rng
from .exceptions import EmptySampleError, NetError
from .knuth import KnuthDims, build_knuth
from .solver import CSV_HEADER, FigureStrategy, RunOutcome, local_update_run

DEFAULT_FAMILY = (KnuthDims(1, 1), KnuthDims(2, 1), KnuthDims(2, 2), KnuthDims(3, 2), KnuthDims(3, 3))
PLOT_HEADER = ["net_size", "label", "median", "ci_low", "ci_high"]
_BOOTSTRAP_KEY = 2**32


@dataclass(frozen=True)
class CampaignSpec:
    net_family: tuple[KnuthDims, ...] = DEFAULT_FAMILY
    trials_per_net: int = 10_000
    strategy: FigureStrategy = field(default_factory=FigureStrategy)
    max_updates: int = 10_000
    master_seed: int = 0
    bootstrap_resamples: int = 1000
    confidence: float = 0.95
    product_target: int | None = None
    n_jobs: int = 1

    def __post_init__(self):
        family = tuple(d if isinstance(d, KnuthDims) else KnuthDims(*d) for d in self.net_family)
        object.__setattr__(self, "net_family", family)
        if self.trials_per_net < 1:
            raise ValueError("trials_per_net must be at least 1")
        if not 0 < self.confidence < 1:
            raise ValueError("confidence must lie in (0, 1)")
        if self.max_updates < 0:
            raise ValueError("max_updates must be non-negative")
        if self.bootstrap_resamples < 100:
            raise ValueError("bootstrap_resamples must be at least 100")

    def to_json(self) -> dict:
        out = asdict(self)
        out["net_family"] = [[d.n, d.m] for d in self.net_family]
        out["strategy"] = {"kind": self.strategy.kind, "fraction": str(self.strategy.fraction)}
        return out


@dataclass(frozen=True)
class DecompSummary:
    dims: KnuthDims
    net_size: int
    median_updates: float
    ci_low: float
    ci_high: float
    failures: int
    trials: int = 0
    error: str | None = None
    runs: tuple[RunOutcome, ...] = field(default=(), compare=False, repr=False)
    sample_median: float = float("nan")

    @property
    def label(self) -> str:
        return self.dims.label


def silverman_bandwidth(samples: np.ndarray) -> float:
    """``0.9 * min(sd, IQR/1.34) * n**(-1/5)``; falls back to sd when the IQR is zero."""
    n = len(samples)
    if n < 2:
        return 0.0
    sd = float(np.std(samples, ddof=1))
    q75, q25 = np.percentile(samples, [75, 25])
    iqr = float(q75 - q25)
    spread = min(sd, iqr / 1.34) if iqr > 0 else sd
    return 0.9 * spread * n ** (-0.2)


def smoothed_median(samples) -> float:
    """Median of the sample convolved with the Silverman-width Gaussian kernel."""
    data = np.asarray(samples, dtype=float)
    if data.size == 0:
        raise EmptySampleError("cannot take the median of an empty sample")
    h = silverman_bandwidth(data)
    if h == 0:
        return float(np.median(data))
    values, counts = np.unique(data, return_counts=True)
    weights = counts / counts.sum()
    scale = h * math.sqrt(2)

    def cdf(x: float) -> float:
        return float(weights @ (1 + np.array([math.erf((x - v) / scale) for v in values]))) / 2

    lo, hi = values[0] - 10 * h, values[-1] + 10 * h
    for _ in range(100):
        mid = (lo + hi) / 2
        if cdf(mid) < 0.5:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def smoothed_bootstrap_median_ci(samples, resamples: int = 1000, confidence: float = 0.95,
                                 seed: int = 0) -> tuple[float, float]:
    """Percentile interval of medians of Gaussian-jittered bootstrap resamples."""
    data = np.asarray(samples, dtype=float)
    if data.size == 0:
        raise EmptySampleError("cannot bootstrap an empty sample")
    if resamples < 100:
        raise ValueError("resamples must be at least 100")
    if not 0 < confidence < 1:
        raise ValueError("confidence must lie in (0, 1)")
    rng = make_rng(seed)
    h = silverman_bandwidth(data)
    draws = data[rng.integers(0, data.size, size=(resamples, data.size))]
    if h > 0:
        draws = draws + h * rng.standard_normal(draws.shape)
    medians = np.median(draws, axis=1)
    tail = (1 - confidence) / 2
    low, high = np.quantile(medians, [tail, 1 - tail])
    return float(low), float(high)


def trial_seed(master_seed: int, dims: KnuthDims, trial: int) -> int:
    return derive_seed(master_seed, dims.n, dims.m, trial)


def _campaign_net(dims: KnuthDims, product_target: int | None):
    knet = build_knuth(dims)
    if product_target is None:
        return knet
    return clamp(knet.net, knet.encode_product(product_target))


def _run_trials(dims: KnuthDims, seeds: list[int], strategy: FigureStrategy, max_updates: int,
                product_target: int | None) -> list[RunOutcome]:
    net = _campaign_net(dims, product_target)
    if product_target is not None and strategy.kind == "unsat_multiplier":
        raise NetError("the unsat_multiplier strategy needs an unclamped product")
    target = dims.ground_energy
    out = []
    for seed in seeds:
        run = local_update_run(net, target, strategy, max_updates, seed)
        out.append(RunOutcome(run.reached_ground, run.updates, run.final_energy, seed))
    return out


def _chunks(items: list, parts: int) -> list[list]:
    size = max(1, math.ceil(len(items) / parts))
    return [items[k:k + size] for k in range(0, len(items), size)]


def _summarise(spec: CampaignSpec, dims: KnuthDims, runs: list[RunOutcome]) -> DecompSummary:
    done = np.array([r.updates for r in runs if r.reached_ground], dtype=float)
    failures = sum(not r.reached_ground for r in runs)
    if done.size == 0:
        nan = float("nan")
        return DecompSummary(dims, dims.size, nan, nan, nan, failures, len(runs), None, tuple(runs))
    low, high = smoothed_bootstrap_median_ci(
        done, spec.bootstrap_resamples, spec.confidence,
        derive_seed(spec.master_seed, dims.n, dims.m, _BOOTSTRAP_KEY),
    )
    return DecompSummary(dims, dims.size, smoothed_median(done), low, high, failures, len(runs),
                         None, tuple(runs), float(np.median(done)))


def run_campaign(spec: CampaignSpec) -> list[DecompSummary]:
    """Run every trial for every net; a failing net yields an error entry and the rest continue."""
    summaries = []
    pool = ProcessPoolExecutor(spec.n_jobs) if spec.n_jobs > 1 else None
    try:
        for dims in spec.net_family:
            seeds = [trial_seed(spec.master_seed, dims, t) for t in range(spec.trials_per_net)]
            nan = float("nan")
            if spec.max_updates == 0:
                runs = [RunOutcome(False, 0, 0, s) for s in seeds]
                summaries.append(DecompSummary(dims, dims.size, nan, nan, nan, len(runs), len(runs),
                                               None, tuple(runs)))
                continue
            try:
                if pool is None:
                    runs = _run_trials(dims, seeds, spec.strategy, spec.max_updates,
                                       spec.product_target)
                else:
                    jobs = [pool.submit(_run_trials, dims, chunk, spec.strategy, spec.max_updates,
                                        spec.product_target)
                            for chunk in _chunks(seeds, spec.n_jobs)]
                    runs = [r for job in jobs for r in job.result()]
            except (NetError, ValueError) as exc:
                summaries.append(DecompSummary(dims, dims.size, nan, nan, nan, 0, 0, str(exc)))
                continue
            summaries.append(_summarise(spec, dims, runs))
    finally:
        if pool is not None:
            pool.shutdown()
    return summaries


def _fmt(x: float) -> str:
    return "nan" if math.isnan(x) else f"{x:.6f}"


def emit_plot_data(summaries, scale: str = "semilog", data_file: str = "summary.csv") -> tuple[str, str]:
    """CSV of medians with intervals, sorted by net size, plus a gnuplot script."""
    if scale not in ("semilog", "loglog"):
        raise ValueError("scale must be 'semilog' or 'loglog'")
    rows = sorted((s for s in summaries if s.error is None), key=lambda s: (s.net_size, s.label))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(PLOT_HEADER)
    for s in rows:
        writer.writerow([s.net_size, s.label, _fmt(s.median_updates), _fmt(s.ci_low), _fmt(s.ci_high)])
    logscale = "set logscale y" if scale == "semilog" else "set logscale xy"
    script = "\n".join([
        "set datafile separator ','",
        "set key off",
        "set xlabel 'net size (spins)'",
        "set ylabel 'median local updates'",
        logscale,
        f"plot '{data_file}' every ::1 using 1:3:4:5 with yerrorbars, \\",
        f"     '{data_file}' every ::1 using 1:3:2 with labels offset 0,1",
        "",
    ])
    return buf.getvalue(), script


def runs_csv(summaries, strategy: str) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for s in summaries:
        net_id = f"knuth-{s.dims.n}x{s.dims.m}"
        for run in s.runs:
            writer.writerow(run.csv_row(net_id, strategy))
    return buf.getvalue()


def _second_differences(x: np.ndarray, y: np.ndarray) -> list[float]:
    slopes = np.diff(y) / np.diff(x)
    mids = (x[1:] + x[:-1]) / 2
    return [float(v) for v in np.diff(slopes) / np.diff(mids)]


def trend_report(summaries) -> dict:
    """Second differences of log(median) against size and against log(size).

    A negative semilog curvature with positive log-log curvature is the
    pattern expected of a subexponential but superpolynomial count.
    """
    usable = sorted(
        (s for s in summaries if s.error is None and s.median_updates > 0),
        key=lambda s: s.net_size,
    )
    sizes = np.array([s.net_size for s in usable], dtype=float)
    logm = np.log([s.median_updates for s in usable]) if usable else np.array([])
    if len(usable) < 3 or len(set(sizes)) < len(sizes):
        return {"sizes": sizes.tolist(), "semilog": [], "loglog": []}
    return {
        "sizes": sizes.tolist(),
        "semilog": _second_differences(sizes, logm),
        "loglog": _second_differences(np.log(sizes), logm),
    }


def metadata(spec: CampaignSpec, summaries) -> dict:
    return {
        "software": {"package": "isingnet", "version": __version__},
        "prng": PRNG_NAME,
        "seed_rule": "SeedSequence([master_seed, n, m, trial]) -> uint64",
        "bootstrap": {
            "kernel": "gaussian",
            "bandwidth": "silverman: 0.9*min(sd, IQR/1.34)*n^(-1/5)",
            "resamples": spec.bootstrap_resamples,
            "confidence": spec.confidence,
            "point_estimate": "median of the kernel-smoothed sample",
            "seed_rule": f"SeedSequence([master_seed, n, m, {_BOOTSTRAP_KEY}])",
        },
        "campaign": spec.to_json(),
        "summaries": [
            {
                "dims": [s.dims.n, s.dims.m],
                "net_size": s.net_size,
                "median": None if math.isnan(s.median_updates) else s.median_updates,
                "sample_median": None if math.isnan(s.sample_median) else s.sample_median,
                "ci": None if math.isnan(s.ci_low) else [s.ci_low, s.ci_high],
                "failures": s.failures,
                "trials": s.trials,
                "error": s.error,
            }
            for s in summaries
        ],
        "trend": trend_report(summaries),
    }


def write_campaign(spec: CampaignSpec, summaries, out_dir, scale: str = "semilog") -> dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    data, script = emit_plot_data(summaries, scale)
    paths = {
        "summary": out / "summary.csv",
        "plot": out / "plot.gp",
        "runs": out / "runs.csv",
        "metadata": out / "metadata.json",
    }
    paths["summary"].write_text(data)
    paths["plot"].write_text(script)
    paths["runs"].write_text(runs_csv(summaries, spec.strategy.kind))
    paths["metadata"].write_text(json.dumps(metadata(spec, summaries), indent=2, sort_keys=True) + "\n")
    return paths
