"""Monte-Carlo harness and result statistics.

A model is any picklable callable ``model(run_index, rng) -> RunOutcome`` with
a ``stream`` attribute naming its random stream. The harness hands each run a
generator derived from ``(master_seed, stream, run_index)`` and merges results
in run order, so the outcome list is the same for any degree of parallelism.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError
from .sampling import run_rng

DEFAULT_BIN_WIDTH = 10.0


@dataclass
class RunOutcome:
    run_index: int
    target: tuple
    time: float  # seconds; math.inf when undetected or unreachable
    metadata: dict = field(default_factory=dict)

    @property
    def detected(self) -> bool:
        return math.isfinite(self.time)


@dataclass(frozen=True)
class HistogramBin:
    start: float
    end: float
    count: int


@dataclass(frozen=True)
class ResultSet:
    n_runs: int
    n_detected: int
    success_rate: float
    mean_detected: float | None
    median: float | None
    p5: float | None
    p25: float | None
    p75: float | None
    p95: float | None
    min: float | None
    max: float | None
    bin_width: float
    histogram: tuple[HistogramBin, ...]

    def to_dict(self) -> dict:
        return {
            "n_runs": self.n_runs,
            "n_detected": self.n_detected,
            "success_rate": self.success_rate,
            "mean_detected": self.mean_detected,
            "median": self.median,
            "p5": self.p5,
            "p25": self.p25,
            "p75": self.p75,
            "p95": self.p95,
            "min": self.min,
            "max": self.max,
            "bin_width": self.bin_width,
            "histogram": [{"bin_start": b.start, "bin_end": b.end, "count": b.count} for b in self.histogram],
        }


# --- running ----------------------------------------------------------------

_worker_model = None


def _init_worker(model) -> None:
    global _worker_model
    _worker_model = model


def _run_chunk(args) -> list[RunOutcome]:
    indices, master_seed = args
    model = _worker_model
    return [model(i, run_rng(master_seed, i, model.stream)) for i in indices]


def run_mcs(model, n_runs: int, master_seed: int, parallelism: int = 1) -> list[RunOutcome]:
    if n_runs < 1:
        raise ConfigurationError(f"n_runs must be at least 1, got {n_runs}")
    if parallelism < 1:
        raise ConfigurationError(f"parallelism must be at least 1, got {parallelism}")
    if parallelism == 1 or n_runs < 2 * parallelism:
        return [model(i, run_rng(master_seed, i, model.stream)) for i in range(n_runs)]
    n_chunks = min(n_runs, 4 * parallelism)
    bounds = np.linspace(0, n_runs, n_chunks + 1).astype(int)
    chunks = [(range(a, b), master_seed) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
    with ProcessPoolExecutor(max_workers=parallelism, initializer=_init_worker, initargs=(model,)) as pool:
        parts = list(pool.map(_run_chunk, chunks))
    return [o for part in parts for o in part]


# --- statistics -------------------------------------------------------------

def nearest_rank(sorted_values, p: float) -> float:
    """Order-statistic quantile: the ceil(p * n)-th smallest value (1-based)."""
    n = len(sorted_values)
    k = max(1, math.ceil(p * n - 1e-12))
    return float(sorted_values[min(k, n) - 1])


def histogram(times, bin_width: float = DEFAULT_BIN_WIDTH) -> tuple[HistogramBin, ...]:
    """Contiguous half-open bins ``[k*w, (k+1)*w)`` spanning all finite times."""
    if not bin_width > 0:
        raise ConfigurationError("bin_width must be positive")
    t = np.array([x.time if isinstance(x, RunOutcome) else x for x in times], dtype=float)
    t = t[np.isfinite(t)]
    if t.size == 0:
        return ()
    k = np.floor(t / bin_width).astype(np.int64)
    k0, k1 = int(k.min()), int(k.max())
    counts = np.bincount(k - k0, minlength=k1 - k0 + 1)
    return tuple(
        HistogramBin(float(j * bin_width), float((j + 1) * bin_width), int(c)) for j, c in zip(range(k0, k1 + 1), counts)
    )


def summarize(outcomes, bin_width: float = DEFAULT_BIN_WIDTH) -> ResultSet:
    """Detection statistics; undetected runs only count toward the success rate."""
    times = [o.time if isinstance(o, RunOutcome) else float(o) for o in outcomes]
    n = len(times)
    det = sorted(t for t in times if math.isfinite(t))
    nd = len(det)
    if nd:
        mean = math.fsum(det) / nd
        q = {p: nearest_rank(det, p) for p in (0.05, 0.25, 0.5, 0.75, 0.95)}
        lo, hi = float(det[0]), float(det[-1])
    else:
        mean, q, lo, hi = None, dict.fromkeys((0.05, 0.25, 0.5, 0.75, 0.95)), None, None
    return ResultSet(
        n_runs=n,
        n_detected=nd,
        success_rate=nd / n if n else 0.0,
        mean_detected=mean,
        median=q[0.5],
        p5=q[0.05],
        p25=q[0.25],
        p75=q[0.75],
        p95=q[0.95],
        min=lo,
        max=hi,
        bin_width=float(bin_width),
        histogram=histogram(det, bin_width),
    )
