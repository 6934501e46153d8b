"""UAV-fleet detection times.

Ground positions integrate air vectors plus wind; the camera footprint is
oriented by the air-vector heading. A target counts as found at the first
grid instant where it falls inside some UAV's footprint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, DomainError
from .geom import CameraFootprint, as_vec, compute_footprint, distance
from .mcs import RunOutcome
from .sampling import HotspotSampler, sample_point_in_polygon
from .search import (
    AirTrajectory,
    TimeGrid,
    UavSpec,
    approach_leg,
    expanding_square,
    feasible_mission,
    parallel_sweep,
    search_extent,
)

SEARCH_METHODS = ("parallel_sweep", "expanding_square", "imported")
ASSIGNMENT_POLICIES = ("nearest", "all")


@dataclass(frozen=True, eq=False)
class WindField:
    """Constant wind, or one wind vector per time step (m/s)."""

    vectors: np.ndarray
    per_step: bool = False

    @classmethod
    def constant(cls, w=(0.0, 0.0)) -> "WindField":
        return cls(np.asarray(as_vec(w), dtype=float), False)

    @classmethod
    def series(cls, ws) -> "WindField":
        arr = np.asarray(ws, dtype=float).reshape(-1, 2)
        if not np.isfinite(arr).all():
            raise DomainError("wind series has non-finite entries")
        return cls(arr, True)

    def for_steps(self, steps: int) -> np.ndarray:
        if not self.per_step:
            return np.broadcast_to(self.vectors, (steps, 2))
        if len(self.vectors) < steps:
            raise DomainError(f"wind series has {len(self.vectors)} entries, trajectory needs {steps}")
        return self.vectors[:steps]


CALM = WindField.constant()


@dataclass(frozen=True, eq=False)
class GroundTrack:
    uav_id: str
    grid: TimeGrid
    positions: np.ndarray  # (steps, 2)
    headings: np.ndarray  # (steps,), clockwise from north
    footprint: CameraFootprint
    time_offset: float = 0.0  # s elapsed before the first grid instant
    _cos: np.ndarray = field(init=False, repr=False)
    _sin: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_cos", np.cos(self.headings))
        object.__setattr__(self, "_sin", np.sin(self.headings))

    def visible_steps(self, target) -> np.ndarray:
        """Boolean mask over grid instants at which ``target`` is in view."""
        dx = self.positions[:, 0] - target[0]
        dy = self.positions[:, 1] - target[1]
        u = self._cos * dx - self._sin * dy
        v = self._sin * dx + self._cos * dy
        return (np.abs(u) <= self.footprint.half_a) & (np.abs(v) <= self.footprint.half_b)


def headings_from_vectors(vectors: np.ndarray) -> np.ndarray:
    """Per-step headings; zero vectors keep the previous heading (north at start)."""
    vectors = np.asarray(vectors, dtype=float)
    xi = np.arctan2(vectors[:, 0], vectors[:, 1])
    xi[xi == -math.pi] = math.pi
    moving = (vectors[:, 0] != 0) | (vectors[:, 1] != 0)
    if moving.all():
        return xi
    idx = np.where(moving, np.arange(len(xi)), -1)
    np.maximum.accumulate(idx, out=idx)
    return np.where(idx >= 0, xi[np.maximum(idx, 0)], 0.0)


def ground_track(
    traj: AirTrajectory,
    wind: WindField = CALM,
    spec: UavSpec | None = None,
    footprint: CameraFootprint | None = None,
    heading_source: str = "air",
    time_offset: float = 0.0,
) -> GroundTrack:
    """Integrate a trajectory under wind into ground positions and headings."""
    if footprint is None:
        if spec is None:
            raise ConfigurationError("ground_track needs a UAV spec or an explicit footprint")
        footprint = compute_footprint(spec.camera, spec.altitude)
    n = traj.grid.steps
    ground = traj.air_vectors + wind.for_steps(n)
    steps = np.vstack([np.asarray(traj.start, dtype=float), ground[:-1] * traj.grid.dt])
    positions = np.cumsum(steps, axis=0)
    if heading_source == "air":
        headings = headings_from_vectors(traj.air_vectors)
    elif heading_source == "ground":
        headings = headings_from_vectors(ground)
    else:
        raise ConfigurationError(f"unknown heading source {heading_source!r}")
    return GroundTrack(traj.uav_id, traj.grid, positions, headings, footprint, time_offset)


def detection_time(track: GroundTrack, target) -> float:
    """Seconds until ``target`` is first in view, or ``inf``."""
    mask = track.visible_steps(target)
    k = int(np.argmax(mask))
    if not mask[k]:
        return math.inf
    return track.time_offset + k * track.grid.dt


@dataclass(frozen=True)
class DetectionResult:
    per_uav_time: dict
    fleet_time: float  # inf when no UAV sees the target

    @property
    def detected(self) -> bool:
        return math.isfinite(self.fleet_time)


def fleet_detection_time(tracks, target) -> DetectionResult:
    if not tracks:
        raise ConfigurationError("fleet_detection_time needs at least one track")
    per = {}
    for tr in tracks:
        t = detection_time(tr, target)
        per[tr.uav_id] = min(t, per.get(tr.uav_id, math.inf))
    return DetectionResult(per, min(per.values()))


# --- mission planning -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Mission:
    """One UAV's planned flight for one hotspot."""

    uav_id: str
    approach_time: float
    search: AirTrajectory

    @property
    def total_time(self) -> float:
        return self.approach_time + self.search.duration


def plan_mission(spec: UavSpec, area, method: str, dt: float, overlap: float = 0.0, imported=None) -> Mission:
    """Approach from the hangar plus a search flight over ``area``."""
    grid = TimeGrid(dt, 1)
    fp = compute_footprint(spec.camera, spec.altitude)
    speed = spec.max_airspeed
    if method == "imported":
        if imported is None:
            raise ConfigurationError(f"no imported trajectory for UAV {spec.id!r}")
        start = imported.start
        return Mission(spec.id, distance(spec.hangar, start) / speed, imported)
    leg = approach_leg(spec.hangar, area, speed, grid, spec.id)
    if method == "parallel_sweep":
        search = parallel_sweep(area, fp, speed, grid, leg.entry, overlap, spec.id)
    elif method == "expanding_square":
        center, radius = search_extent(area)
        search = expanding_square(center, fp, speed, grid, radius + 2 * min(fp.half_a, fp.half_b), start=leg.entry, uav_id=spec.id)
    else:
        raise ConfigurationError(f"unknown search method {method!r}; choose from {', '.join(SEARCH_METHODS)}")
    return Mission(spec.id, leg.duration, search)


@dataclass(frozen=True)
class UasConfig:
    """Which UAVs fly and how hotspots are assigned to them."""

    uav_ids: tuple
    method: str = "parallel_sweep"
    policy: str = "nearest"
    heading_source: str = "air"

    def __post_init__(self):
        if self.method not in SEARCH_METHODS:
            raise ConfigurationError(f"unknown search method {self.method!r}; choose from {', '.join(SEARCH_METHODS)}")
        if self.policy not in ASSIGNMENT_POLICIES:
            raise ConfigurationError(f"unknown assignment policy {self.policy!r}")


class UasModel:
    """Per-run UAS simulation: sample a target, return the fleet detection time.

    Missions and ground tracks are planned once per (hotspot, UAV) on
    construction; runs only sample targets and scan the tracks.
    """

    stream = "uav"

    def __init__(self, scenario, config: UasConfig):
        self.hotspots = scenario.hotspots
        self.rings = [h.polygon for h in scenario.hotspots]
        self._pick = HotspotSampler(scenario.hotspots)
        params = scenario.parameters
        uavs = {u.id: u for u in scenario.uavs}
        unknown = [u for u in config.uav_ids if u not in uavs]
        if unknown:
            raise ConfigurationError(f"UAS configuration references unknown UAV ids {unknown}")
        fleet = [uavs[u] for u in sorted(config.uav_ids)]
        imported = scenario.imported_trajectories() if config.method == "imported" else {}
        self.tracks: list[list[GroundTrack]] = []
        self.assigned: list[list[str]] = []
        for h in scenario.hotspots:
            explicit = scenario.assignments.get(h.id) if scenario.assignments else None
            candidates = [u for u in fleet if explicit is None or u.id in explicit]
            missions = []
            for u in candidates:
                traj = imported.get((h.id, u.id))
                if config.method == "imported" and traj is None:
                    continue
                m = plan_mission(u, h.polygon, config.method, params.dt, params.sweep_overlap, traj)
                if feasible_mission(u, m.approach_time, m.search.duration):
                    missions.append((u, m))
            if explicit is None and config.policy == "nearest" and missions:
                missions = [min(missions, key=lambda um: (um[1].approach_time, um[0].id))]
            tracks = [
                ground_track(m.search, scenario.wind, u, heading_source=config.heading_source, time_offset=m.approach_time)
                for u, m in missions
            ]
            self.tracks.append(tracks)
            self.assigned.append([u.id for u, _ in missions])

    def __call__(self, run_index: int, rng) -> RunOutcome:
        k = self._pick.index(rng)
        h = self.hotspots[k]
        target = sample_point_in_polygon(self.rings[k], rng)
        tracks = self.tracks[k]
        meta = {"hotspot": h.id}
        if not tracks:
            meta["uav"] = None
            return RunOutcome(run_index, tuple(target), math.inf, meta)
        res = fleet_detection_time(tracks, target)
        meta["uav"] = min(res.per_uav_time, key=lambda u: (res.per_uav_time[u], u)) if res.detected else None
        return RunOutcome(run_index, tuple(target), res.fleet_time, meta)


def simulate_uas(scenario, config: UasConfig, n_runs: int, master_seed: int, parallelism: int = 1, bin_width: float = 10.0):
    from .mcs import run_mcs, summarize

    model = UasModel(scenario, config)
    return summarize(run_mcs(model, n_runs, master_seed, parallelism), bin_width)
