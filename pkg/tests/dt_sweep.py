"""Cases for the dt-halving bound: one continuous path sampled at dt and dt/2.

Paths are built so both grids hit every vertex with full steps (segment
lengths are multiples of ``speed * dt``), and the along-track step never
exceeds the along-track half-extent, so every visibility window lasts at
least one step.

Paths with turns use square footprints. With a non-square footprint the
frame changes shape at a 90 degree turn, and a half-step frame just before
the corner can see ground that neither neighbouring full-step frame sees
(see ``turn_counterexample``).
"""

from __future__ import annotations

import math

import numpy as np

from rescuesim.geom import CameraFootprint
from rescuesim.search import discretize_polyline, trajectory_from_positions
from rescuesim.uas import WindField, detection_time, ground_track


def _track(path, speed, dt, fp, wind):
    pos = discretize_polyline(path, speed, dt)
    traj = trajectory_from_positions("u", pos, dt)
    if wind is not None:
        # fly the same ground path: air vector = ground vector - wind
        v = traj.air_vectors.copy()
        v[:-1] -= wind
        traj = type(traj)("u", traj.grid, v, traj.start)
        return ground_track(traj, WindField.constant(wind), footprint=fp, heading_source="ground")
    return ground_track(traj, footprint=fp)


def _case(rng, square_on_turns=True):
    kind = rng.integers(3)
    ha, hb = rng.uniform(5, 40, 2)
    if kind > 0 and square_on_turns:
        hb = ha
    fp = CameraFootprint(ha, hb)
    dt = float(rng.choice([0.5, 1.0, 2.0]))
    speed = float(rng.uniform(0.2, 1.0) * hb / dt)
    step = speed * dt
    heading = rng.uniform(-math.pi, math.pi)
    d = np.array([math.sin(heading), math.cos(heading)])
    r = np.array([d[1], -d[0]])
    origin = rng.uniform(-500, 500, 2)
    if kind == 0:
        path = [origin, origin + d * step * int(rng.integers(5, 60))]
    else:
        lane = step * int(rng.integers(5, 40))
        gap = step * max(1, int(2 * ha / step))
        path = [origin]
        p = origin.copy()
        for k in range(int(rng.integers(2, 6))):
            p = p + (d if k % 2 == 0 else -d) * lane
            path.append(p)
            p = p + r * gap
            path.append(p)
    wind = rng.uniform(-2, 2, 2) if kind == 2 else None
    return path, speed, dt, fp, wind


def halving_cases(n: int, seed: int = 0, targets_per_path: int = 5):
    """Yield ``(t_dt, t_half, dt)`` for ``n`` (path, target) cases."""
    rng = np.random.default_rng(seed)
    produced = 0
    while produced < n:
        path, speed, dt, fp, wind = _case(rng)
        a = _track(path, speed, dt, fp, wind)
        b = _track(path, speed, dt / 2, fp, wind)
        pts = np.array(path)
        lo, hi = pts.min(axis=0) - fp.half_a, pts.max(axis=0) + fp.half_a
        for _ in range(targets_per_path):
            if produced >= n:
                break
            # targets near the path so most of them get detected
            k = int(rng.integers(len(a.positions)))
            target = a.positions[k] + rng.uniform(-1, 1, 2) * (fp.half_a + fp.half_b)
            target = np.clip(target, lo, hi)
            t1, t2 = detection_time(a, target), detection_time(b, target)
            if math.isinf(t1) and math.isinf(t2):
                t1 = t2 = 0.0
            yield t1, t2, dt
            produced += 1


def turn_counterexample():
    """A non-square footprint and a 90 degree turn where only the dt/2 grid sees the target."""
    fp = CameraFootprint(5.0, 20.0)
    speed, dt = 20.0, 1.0
    path = [np.array([0.0, 0.0]), np.array([0.0, 100.0]), np.array([40.0, 100.0])]
    a = _track(path, speed, dt, fp, None)
    b = _track(path, speed, dt / 2, fp, None)
    # seen from (0, 90) heading north, but not from (0, 80) or from the corner
    target = (0.0, 109.0)
    return detection_time(a, target), detection_time(b, target), dt
