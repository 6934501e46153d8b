"""UAV flight trajectories on a uniform time grid.

A trajectory is a start point plus one air vector per time step. Planned
patterns are built as polylines and walked at constant speed; each polyline
segment ends with a shortened step so corners are hit exactly and the grid
stays uniform.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError, TrajectoryFormatError
from .geom import (
    CameraFootprint,
    CameraSpec,
    Vec2,
    as_vec,
    centroid,
    closest_point_on_ring,
    distance,
    point_in_ring,
    signed_area,
)

TRAJECTORY_HEADER = ("uav_id", "step", "ix_mps", "iy_mps")


@dataclass(frozen=True)
class TimeGrid:
    dt: float
    steps: int

    def __post_init__(self):
        if not self.dt > 0:
            raise DomainError(f"time step must be positive, got {self.dt!r}")
        if self.steps < 1:
            raise DomainError(f"a time grid needs at least one step, got {self.steps!r}")


@dataclass(frozen=True, eq=False)
class AirTrajectory:
    uav_id: str
    grid: TimeGrid
    air_vectors: np.ndarray  # (steps, 2), m/s
    start: Vec2

    def __post_init__(self):
        iv = np.asarray(self.air_vectors, dtype=float).reshape(-1, 2)
        if len(iv) != self.grid.steps:
            raise DomainError(f"{len(iv)} air vectors for a grid of {self.grid.steps} steps")
        object.__setattr__(self, "air_vectors", iv)
        object.__setattr__(self, "start", as_vec(self.start))

    @property
    def duration(self) -> float:
        """Time of the last grid instant."""
        return (self.grid.steps - 1) * self.grid.dt

    def positions(self) -> np.ndarray:
        """Windless positions at each grid instant."""
        steps = np.vstack([np.asarray(self.start, dtype=float), self.air_vectors[:-1] * self.grid.dt])
        return np.cumsum(steps, axis=0)

    def max_speed(self) -> float:
        return float(np.hypot(*self.air_vectors.T).max(initial=0.0))


@dataclass(frozen=True)
class UavSpec:
    id: str
    max_airspeed: float  # m/s
    altitude: float  # m
    camera: CameraSpec
    endurance: float  # s
    hangar: Vec2

    def __post_init__(self):
        for name in ("max_airspeed", "altitude", "endurance"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ConfigurationError(f"UAV {self.id!r}: {name} must be positive, got {v!r}")
        object.__setattr__(self, "hangar", as_vec(self.hangar))


def discretize_polyline(points, speed: float, dt: float) -> np.ndarray:
    """Grid-instant positions when flying through ``points`` at ``speed``.

    Every polyline vertex appears in the output; the step that reaches it may
    be shorter than ``speed * dt``.
    """
    if not (speed > 0 and dt > 0):
        raise DomainError("speed and dt must be positive")
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    out = [pts[0]]
    step = speed * dt
    for a, b in zip(pts[:-1], pts[1:]):
        d = b - a
        L = float(np.hypot(*d))
        if L == 0:
            continue
        n = math.ceil(L / step - 1e-12)
        if n > 1:
            s = np.arange(1, n) * step
            out.extend(a + (s / L)[:, None] * d)
        out.append(b)
    return np.array(out)


def trajectory_from_positions(uav_id: str, positions: np.ndarray, dt: float) -> AirTrajectory:
    """Air vectors that carry a windless UAV through ``positions``.

    The last instant gets a zero air vector, so its heading carries over.
    """
    positions = np.asarray(positions, dtype=float).reshape(-1, 2)
    iv = np.zeros_like(positions)
    iv[:-1] = np.diff(positions, axis=0) / dt
    return AirTrajectory(uav_id, TimeGrid(dt, len(positions)), iv, Vec2(*positions[0]))


def _ring(area) -> list[Vec2]:
    ring = [as_vec(p) for p in area]
    if len(ring) > 1 and ring[0] == ring[-1]:
        ring = ring[:-1]
    if len(ring) < 3 or signed_area(ring) == 0:
        raise ConfigurationError("search area must be a polygon with positive area")
    return ring


@dataclass(frozen=True, eq=False)
class ApproachLeg:
    trajectory: AirTrajectory
    entry: Vec2
    duration: float  # s, exact flight time to the entry point


def approach_leg(hangar, area, speed: float, grid: TimeGrid, uav_id: str = "") -> ApproachLeg:
    """Straight flight from ``hangar`` to the nearest point on the area's boundary."""
    if not speed > 0:
        raise DomainError("approach speed must be positive")
    hangar = as_vec(hangar)
    ring = _ring(area)
    if point_in_ring(hangar, ring):
        entry = hangar
    else:
        entry = closest_point_on_ring(hangar, ring)
    length = distance(hangar, entry)
    pos = discretize_polyline([hangar, entry], speed, grid.dt)
    return ApproachLeg(trajectory_from_positions(uav_id, pos, grid.dt), entry, length / speed)


def _clip_halfplane(poly: list, axis_vec: np.ndarray, bound: float, keep_greater: bool) -> list:
    """Sutherland-Hodgman clip of ``poly`` against ``axis_vec . p >= bound`` (or <=)."""
    out = []
    n = len(poly)
    sign = 1.0 if keep_greater else -1.0
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        fp = sign * (axis_vec @ p - bound)
        fq = sign * (axis_vec @ q - bound)
        if fp >= 0:
            out.append(p)
        if (fp >= 0) != (fq >= 0):
            t = fp / (fp - fq)
            out.append(p + t * (q - p))
    return out


def sweep_lanes(area, footprint: CameraFootprint, overlap: float = 0.0) -> list[tuple[np.ndarray, np.ndarray]]:
    """Lane segments of a boustrophedon cover, in sweep order from the first lane.

    Lanes run parallel to the longer side of the axis-aligned bounding box and
    are spaced so adjacent swaths (cross-track width ``2 * half_a``) abut.
    Each lane spans the along-track extent of the area inside its swath.
    """
    if not 0 <= overlap < 1:
        raise ConfigurationError("sweep overlap must lie in [0, 1)")
    ring = np.array(_ring(area), dtype=float)
    lo, hi = ring.min(axis=0), ring.max(axis=0)
    ext = hi - lo
    along_axis = 0 if ext[0] >= ext[1] else 1
    cross_axis = 1 - along_axis
    e_along = np.eye(2)[along_axis]
    e_cross = np.eye(2)[cross_axis]
    half = footprint.half_a * (1.0 - overlap)
    width = ext[cross_axis]
    n = max(1, math.ceil(width / (2 * half) - 1e-12))
    if n == 1:
        centers = [lo[cross_axis] + width / 2]
    else:
        first, last = lo[cross_axis] + half, hi[cross_axis] - half
        centers = [first + k * (last - first) / (n - 1) for k in range(n)]
    poly = list(ring)
    lanes = []
    for c in centers:
        strip = _clip_halfplane(poly, e_cross, c - footprint.half_a, True)
        strip = _clip_halfplane(strip, e_cross, c + footprint.half_a, False) if strip else []
        if not strip:
            continue
        s = np.array(strip) @ e_along
        s_lo, s_hi = float(s.min()), float(s.max())
        lanes.append((s_lo * e_along + c * e_cross, s_hi * e_along + c * e_cross))
    return lanes


def parallel_sweep(
    area,
    footprint: CameraFootprint,
    speed: float,
    grid: TimeGrid,
    entry,
    overlap: float = 0.0,
    uav_id: str = "",
) -> AirTrajectory:
    """Boustrophedon search starting from ``entry``.

    The sweep starts at whichever lane end is nearest to ``entry``. Speed is
    capped at ``half_b / dt`` so consecutive frames overlap along track and
    the frame at each turn still leaves the lane end covered. An area that
    fits inside one frame is searched by hovering over its bounding-box centre.
    """
    entry = np.asarray(as_vec(entry), dtype=float)
    v = min(speed, footprint.half_b / grid.dt)
    ring = np.array(_ring(area), dtype=float)
    lo, hi = ring.min(axis=0), ring.max(axis=0)
    if math.hypot(*(hi - lo)) / 2 <= min(footprint.half_a, footprint.half_b):
        # one frame over the box centre sees the whole area whatever the heading
        pos = discretize_polyline([entry, (lo + hi) / 2], v, grid.dt)
        return trajectory_from_positions(uav_id, pos, grid.dt)
    lanes = sweep_lanes(area, footprint, overlap)
    if not lanes:
        raise ConfigurationError("search area produced no sweep lanes")
    options = []
    for order in (lanes, lanes[::-1]):
        for flip in (False, True):
            a, b = order[0]
            first = b if flip else a
            options.append((float(np.hypot(*(first - entry))), len(options), order, flip))
    _, _, order, flip = min(options, key=lambda o: (o[0], o[1]))
    path = [entry]
    for k, (a, b) in enumerate(order):
        if (k % 2 == 1) != flip:
            a, b = b, a
        path.extend([a, b])
    pos = discretize_polyline(path, v, grid.dt)
    return trajectory_from_positions(uav_id, pos, grid.dt)


def spiral_corners(center, leg: float, max_radius: float) -> list[np.ndarray]:
    """Square-spiral corners with legs leg, leg, 2*leg, 2*leg, ... (N, E, S, W, ...)."""
    c = np.asarray(center, dtype=float)
    dirs = np.array([(0.0, 1.0), (1.0, 0.0), (0.0, -1.0), (-1.0, 0.0)])
    corners = [c]
    p = c.copy()
    k = 0
    while True:
        length = leg * (k // 2 + 1)
        q = p + dirs[k % 4] * length
        if np.abs(q - c).max() > max_radius:
            break
        corners.append(q)
        p = q
        k += 1
    return corners


def expanding_square(
    center,
    footprint: CameraFootprint,
    speed: float,
    grid: TimeGrid,
    max_radius: float,
    endurance: float | None = None,
    start=None,
    uav_id: str = "",
) -> AirTrajectory:
    """Expanding-square search around ``center``.

    With ``start`` given, the trajectory first transits from there to the
    center. Flight is cut at ``endurance`` seconds when provided.
    """
    if not max_radius > 0:
        raise DomainError("max_radius must be positive")
    leg = 2 * min(footprint.half_a, footprint.half_b)
    path = spiral_corners(center, leg, max_radius)
    if start is not None:
        path = [np.asarray(as_vec(start), dtype=float)] + path
    pos = discretize_polyline(path, speed, grid.dt)
    if endurance is not None:
        keep = int(math.floor(endurance / grid.dt + 1e-9)) + 1
        pos = pos[:keep]
    return trajectory_from_positions(uav_id, pos, grid.dt)


def search_extent(area) -> tuple[Vec2, float]:
    """Centroid and the Chebyshev radius reaching every vertex from it."""
    ring = _ring(area)
    c = centroid(ring)
    r = max(max(abs(p.x - c.x), abs(p.y - c.y)) for p in ring)
    return c, r


def feasible_mission(spec: UavSpec, approach: float, search: float) -> bool:
    """Whether outbound flight plus search fit in the battery endurance."""
    return approach + search <= spec.endurance


# --- trajectory files -------------------------------------------------------

def save_trajectories(trajectories, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRAJECTORY_HEADER)
        for traj in trajectories:
            for k, (ix, iy) in enumerate(traj.air_vectors):
                w.writerow([traj.uav_id, k, repr(float(ix)), repr(float(iy))])


def load_trajectories(
    path, dt: float, start, max_airspeed: float | dict | None = None, tol: float = 1e-6
) -> dict[str, AirTrajectory]:
    """Read a trajectory CSV into one :class:`AirTrajectory` per ``uav_id``.

    ``start`` and ``max_airspeed`` may be single values or dicts keyed by
    ``uav_id``. Rows for each UAV must list steps 0, 1, 2, ... in order.
    """
    rows: dict[str, list] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != TRAJECTORY_HEADER:
            raise TrajectoryFormatError(f"{path}: expected header {','.join(TRAJECTORY_HEADER)}, got {header!r}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise TrajectoryFormatError(f"{path}:{lineno}: expected 4 fields, got {len(row)}")
            uav, step, ix, iy = row
            try:
                step_i = int(step)
                vec = (float(ix), float(iy))
            except ValueError as exc:
                raise TrajectoryFormatError(f"{path}:{lineno}: {exc}") from None
            if not all(math.isfinite(c) for c in vec):
                raise TrajectoryFormatError(f"{path}:{lineno}: non-finite air vector")
            seq = rows.setdefault(uav, [])
            if step_i != len(seq):
                raise TrajectoryFormatError(
                    f"{path}:{lineno}: step {step_i} for UAV {uav!r} breaks the uniform grid (expected {len(seq)})"
                )
            limit = max_airspeed.get(uav) if isinstance(max_airspeed, dict) else max_airspeed
            if limit is not None and math.hypot(*vec) > limit + tol:
                raise TrajectoryFormatError(
                    f"{path}:{lineno}: airspeed {math.hypot(*vec):.6g} m/s exceeds limit {limit} for UAV {uav!r}"
                )
            seq.append(vec)
    if not rows:
        raise TrajectoryFormatError(f"{path}: no trajectory rows")
    out = {}
    for uav, seq in rows.items():
        s = start.get(uav) if isinstance(start, dict) else start
        if s is None:
            raise TrajectoryFormatError(f"{path}: no start position for UAV {uav!r}")
        out[uav] = AirTrajectory(uav, TimeGrid(dt, len(seq)), np.array(seq), as_vec(s))
    return out


def load_trajectory(path, dt: float, start, max_airspeed: float | None = None) -> AirTrajectory:
    trajs = load_trajectories(path, dt, start, max_airspeed)
    if len(trajs) != 1:
        raise TrajectoryFormatError(f"{path}: expected one UAV, found {sorted(trajs)}")
    return next(iter(trajs.values()))
