"""Random inputs for Monte-Carlo runs.

Every run draws from its own generator, seeded from ``(master_seed, stream,
run_index)`` through :class:`numpy.random.SeedSequence`. Results therefore do
not depend on which worker executes a run or in what order.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .geom import Vec2, as_vec, point_in_ring, signed_area


@dataclass(frozen=True)
class Hotspot:
    id: str
    polygon: tuple
    weight: float = 1.0

    def __post_init__(self):
        ring = tuple(as_vec(p) for p in self.polygon)
        if len(ring) > 1 and ring[0] == ring[-1]:
            ring = ring[:-1]
        object.__setattr__(self, "polygon", ring)
        if not (self.weight >= 0 and math.isfinite(self.weight)):
            raise ConfigurationError(f"hotspot {self.id!r} has invalid weight {self.weight!r}")


@dataclass(frozen=True)
class TruncatedNormalParams:
    mean: float
    variance: float
    lower: float
    upper: float

    def __post_init__(self):
        if not self.variance > 0:
            raise ConfigurationError(f"variance must be positive, got {self.variance!r}")
        if not self.lower < self.upper:
            raise ConfigurationError(f"need lower < upper, got [{self.lower}, {self.upper}]")

    @classmethod
    def from_stddev(cls, mean: float, stddev: float, lower: float, upper: float) -> "TruncatedNormalParams":
        return cls(mean, stddev * stddev, lower, upper)

    @property
    def stddev(self) -> float:
        return math.sqrt(self.variance)


# volunteer fire brigade turnout time, seconds
DEFAULT_PREP_FIRE = TruncatedNormalParams(mean=120.0, variance=30.0, lower=0.0, upper=240.0)


def _stream_id(label: str) -> int:
    return int.from_bytes(hashlib.sha256(label.encode()).digest()[:8], "little")


@dataclass(frozen=True)
class RunRng:
    """Identity of one run's random stream."""

    master_seed: int
    run_index: int
    stream: str = ""

    def generator(self) -> np.random.Generator:
        if not (0 <= self.master_seed < 2**64):
            raise ConfigurationError("master seed must be a 64-bit unsigned integer")
        ss = np.random.SeedSequence(self.master_seed, spawn_key=(_stream_id(self.stream), self.run_index))
        return np.random.Generator(np.random.PCG64(ss))


def run_rng(master_seed: int, run_index: int, stream: str = "") -> np.random.Generator:
    return RunRng(master_seed, run_index, stream).generator()


def _as_generator(rng) -> np.random.Generator:
    return rng.generator() if isinstance(rng, RunRng) else rng


def _hotspot_cdf(hotspots) -> tuple[np.ndarray, np.ndarray]:
    weights = np.array([h.weight for h in hotspots], dtype=float)
    if not weights.sum() > 0:
        raise ConfigurationError("hotspot weights sum to zero")
    return weights, np.cumsum(weights)


def _pick(weights: np.ndarray, cdf: np.ndarray, u):
    k = np.searchsorted(cdf, u * cdf[-1], side="right")
    k = np.minimum(k, len(cdf) - 1)
    # u * total can round up onto a boundary that ends in zero-weight entries
    bad = weights[k] == 0
    while np.any(bad):
        k = np.where(bad, k - 1, k)
        bad = weights[k] == 0
    return k


class HotspotSampler:
    """Weighted hotspot choice with the cumulative weights computed once."""

    def __init__(self, hotspots):
        self.hotspots = list(hotspots)
        self.weights, self.cdf = _hotspot_cdf(self.hotspots)

    def index(self, rng) -> int:
        return int(_pick(self.weights, self.cdf, _as_generator(rng).random()))


def sample_hotspot(hotspots, rng) -> Hotspot:
    """Pick a hotspot with probability proportional to its weight."""
    return hotspots[HotspotSampler(hotspots).index(rng)]


def sample_hotspot_indices(hotspots, rng, size: int) -> np.ndarray:
    """Vectorized :func:`sample_hotspot`, returning indices."""
    weights, cdf = _hotspot_cdf(hotspots)
    return _pick(weights, cdf, _as_generator(rng).random(size))


def sample_point_in_polygon(polygon, rng) -> Vec2:
    """Uniform point inside ``polygon`` by rejection from its bounding box."""
    ring = [as_vec(p) for p in polygon]
    if abs(signed_area(ring)) == 0:
        raise ConfigurationError("cannot sample from a zero-area polygon")
    rng = _as_generator(rng)
    xs = [p.x for p in ring]
    ys = [p.y for p in ring]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    while True:
        u, v = rng.random(2)
        p = Vec2(x0 + u * (x1 - x0), y0 + v * (y1 - y0))
        if point_in_ring(p, ring):
            return p


def sample_truncated_normal(params: TruncatedNormalParams, rng, size: int | None = None):
    """Normal(mean, variance) conditioned on [lower, upper], by rejection."""
    rng = _as_generator(rng)
    sd = params.stddev
    if size is None:
        while True:
            x = rng.normal(params.mean, sd)
            if params.lower <= x <= params.upper:
                return float(x)
    out = np.empty(size)
    filled = 0
    while filled < size:
        x = rng.normal(params.mean, sd, size=size - filled)
        x = x[(x >= params.lower) & (x <= params.upper)]
        out[filled : filled + len(x)] = x
        filled += len(x)
    return out
