"""Standard rescue operation: ambulance and fire brigade meet at a slipway,
then the lifeboat crosses the water to the casualty.

The response time for a target is

    max(prep_fire + fire_leg, prep_rescue + rescue_leg) + water_leg

where the slipway is the one with the shortest boat time to the target and
each station is the one with the shortest road time to that slipway.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, UnreachableError
from .mcs import RunOutcome, run_mcs, summarize
from .roadnet import station_access_matrix
from .sampling import HotspotSampler, TruncatedNormalParams, sample_point_in_polygon, sample_truncated_normal
from .waterway import WaterRouter


@dataclass(frozen=True)
class StationSet:
    fire_stations: tuple  # (id, Vec2), ...
    rescue_stations: tuple
    access_points: tuple


@dataclass(frozen=True)
class SroOutcome:
    target: tuple
    chosen_access: str | None
    chosen_fire: str | None
    chosen_rescue: str | None
    fire_leg: float
    rescue_leg: float
    water_leg: float
    prep_fire: float
    prep_rescue: float
    response_time: float  # inf when any leg is unreachable
    search_delay: float = 0.0

    @property
    def reachable(self) -> bool:
        return math.isfinite(self.response_time)


def synchronized_response_time(prep_fire: float, fire_leg: float, prep_rescue: float, rescue_leg: float, water_leg: float) -> float:
    """The boat leaves once both crews are aboard."""
    return max(prep_fire + fire_leg, prep_rescue + rescue_leg) + water_leg


def _argmin_by_id(values: np.ndarray, ids: list) -> int | None:
    """Index of the smallest finite value; equal values go to the smallest id."""
    best = None
    for k in sorted(range(len(ids)), key=lambda k: ids[k]):
        if math.isfinite(values[k]) and (best is None or values[k] < values[best]):
            best = k
    return best


def draw_prep(spec, rng) -> float:
    """Preparation time: a fixed number of seconds or a truncated-normal draw."""
    if isinstance(spec, TruncatedNormalParams):
        return sample_truncated_normal(spec, rng)
    return float(spec)


class SroModel:
    """Road and water times precomputed for one scenario.

    Road times from every station to every access point are fixed; boat times
    depend on the target and are queried through a :class:`WaterRouter`.
    """

    stream = "sro"

    def __init__(self, scenario):
        st = scenario.stations
        if not (st.fire_stations and st.rescue_stations and st.access_points):
            raise ConfigurationError("SRO simulation needs fire stations, rescue stations and access points")
        p = scenario.parameters
        self.parameters = p
        self.hotspots = scenario.hotspots
        self._pick = HotspotSampler(scenario.hotspots)
        self.access_ids = [a for a, _ in st.access_points]
        self.fire_ids = [f for f, _ in st.fire_stations]
        self.rescue_ids = [r for r, _ in st.rescue_stations]
        access_pos = [pos for _, pos in st.access_points]
        g = scenario.road_graph
        self.fire_times = station_access_matrix(g, [pos for _, pos in st.fire_stations], access_pos, p.speed_factor, p.walk_speed)
        self.rescue_times = station_access_matrix(
            g, [pos for _, pos in st.rescue_stations], access_pos, p.speed_factor, p.walk_speed
        )
        self.router = WaterRouter(scenario.water, access_pos, p.boat_speed)

    def nearest_access_point(self, target) -> tuple[str, float]:
        times = self.router.travel_times(target)
        k = _argmin_by_id(times, self.access_ids)
        if k is None:
            raise UnreachableError(f"target {tuple(target)} is unreachable by boat")
        return self.access_ids[k], float(times[k])

    def response_time(self, target, prep_fire: float, prep_rescue: float, search_delay: float = 0.0) -> SroOutcome:
        inf = math.inf
        try:
            access, water_leg = self.nearest_access_point(target)
        except UnreachableError:
            return SroOutcome(tuple(target), None, None, None, inf, inf, inf, prep_fire, prep_rescue, inf, search_delay)
        w = self.access_ids.index(access)
        kf = _argmin_by_id(self.fire_times[:, w], self.fire_ids)
        kr = _argmin_by_id(self.rescue_times[:, w], self.rescue_ids)
        fire_leg = float(self.fire_times[kf, w]) if kf is not None else inf
        rescue_leg = float(self.rescue_times[kr, w]) if kr is not None else inf
        total = synchronized_response_time(prep_fire, fire_leg, prep_rescue, rescue_leg, water_leg) + search_delay
        return SroOutcome(
            tuple(target),
            access,
            self.fire_ids[kf] if kf is not None else None,
            self.rescue_ids[kr] if kr is not None else None,
            fire_leg,
            rescue_leg,
            water_leg,
            prep_fire,
            prep_rescue,
            total,
            search_delay,
        )

    def __call__(self, run_index: int, rng) -> RunOutcome:
        p = self.parameters
        k = self._pick.index(rng)
        h = self.hotspots[k]
        target = sample_point_in_polygon(h.polygon, rng)
        prep_fire = draw_prep(p.prep_fire, rng)
        prep_rescue = draw_prep(p.prep_rescue, rng)
        delay = draw_prep(p.search_delay, rng) if p.search_delay is not None else 0.0
        out = self.response_time(target, prep_fire, prep_rescue, delay)
        meta = {
            "hotspot": h.id,
            "access": out.chosen_access,
            "fire": out.chosen_fire,
            "rescue": out.chosen_rescue,
        }
        return RunOutcome(run_index, tuple(target), out.response_time, meta)


def nearest_access_point(scenario, target) -> tuple[str, float]:
    return SroModel(scenario).nearest_access_point(target)


def sro_response_time(scenario, target, prep_fire: float, prep_rescue: float) -> SroOutcome:
    model = scenario if isinstance(scenario, SroModel) else SroModel(scenario)
    return model.response_time(target, prep_fire, prep_rescue)


def run_sro(scenario, n_runs: int, master_seed: int, parallelism: int = 1) -> list[RunOutcome]:
    return run_mcs(SroModel(scenario), n_runs, master_seed, parallelism)


def simulate_sro(scenario, n_runs: int, master_seed: int, parallelism: int = 1, bin_width: float = 10.0):
    return summarize(run_sro(scenario, n_runs, master_seed, parallelism), bin_width)
