import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from oracles import on_segment_distance, raster_coverage
from rescuesim.errors import ConfigurationError, TrajectoryFormatError
from rescuesim.geom import CameraFootprint, CameraSpec
from rescuesim.search import (
    AirTrajectory,
    TimeGrid,
    UavSpec,
    approach_leg,
    discretize_polyline,
    expanding_square,
    feasible_mission,
    load_trajectories,
    load_trajectory,
    parallel_sweep,
    save_trajectories,
    spiral_corners,
    sweep_lanes,
)
from rescuesim.uas import headings_from_vectors

GRID = TimeGrid(1.0, 1)
UNIT = [(0, 0), (1, 0), (1, 1), (0, 1)]


def square(x0, y0, w, h):
    return [(x0, y0), (x0 + w, y0), (x0 + w, y0 + h), (x0, y0 + h)]


def random_convex(rng, scale=100.0):
    pts = rng.uniform(0, scale, (12, 2))
    hull = ConvexHull(pts)
    return [tuple(pts[k]) for k in hull.vertices]


def coverage(ring, traj, fp):
    pos = traj.positions()
    heads = headings_from_vectors(traj.air_vectors)
    return raster_coverage(ring, pos, heads, fp.half_a, fp.half_b, res=1.0)[0]


def spec(**kw):
    base = dict(id="u", max_airspeed=10.0, altitude=50.0, camera=CameraSpec(0.5, 0.5), endurance=1200.0, hangar=(0, 0))
    base.update(kw)
    return UavSpec(**base)


class TestApproach:
    def test_hangar_on_boundary(self):
        leg = approach_leg((0.5, 0), UNIT, 10, GRID)
        assert leg.duration == 0 and leg.entry == (0.5, 0)
        assert leg.trajectory.grid.steps == 1

    def test_corner_entry(self):
        leg = approach_leg((0, -100), UNIT, 10, GRID)
        assert leg.entry == (0, 0)
        assert leg.duration == pytest.approx(10.0)
        pos = leg.trajectory.positions()
        assert np.allclose(pos[-1], (0, 0), atol=1e-9)
        assert len(pos) == 11

    def test_partial_last_step(self):
        leg = approach_leg((0.5, -25), UNIT, 10, GRID)
        pos = leg.trajectory.positions()
        assert len(pos) == 4
        assert np.allclose(pos[-1], (0.5, 0), atol=1e-12)
        steps = np.hypot(*np.diff(pos, axis=0).T)
        assert np.allclose(steps, [10, 10, 5])

    def test_hangar_inside(self):
        leg = approach_leg((0.5, 0.5), UNIT, 10, GRID)
        assert leg.entry == (0.5, 0.5) and leg.duration == 0

    def test_dense_boundary_oracle(self):
        rng = np.random.default_rng(77)
        for _ in range(10):
            ring = random_convex(rng)
            hangar = rng.uniform(-200, 300, 2)
            leg = approach_leg(hangar, ring, 12, GRID)
            # 10**6 samples spread along the perimeter
            n = len(ring)
            lens = [math.dist(ring[i], ring[(i + 1) % n]) for i in range(n)]
            per = [max(2, int(1e6 * L / sum(lens))) for L in lens]
            best, best_d = None, math.inf
            for i in range(n):
                a, b = np.array(ring[i]), np.array(ring[(i + 1) % n])
                t = np.linspace(0, 1, per[i])[:, None]
                pts = a + t * (b - a)
                d = np.hypot(*(pts - hangar).T)
                k = int(np.argmin(d))
                if d[k] < best_d:
                    best, best_d = pts[k], d[k]
            assert math.dist(leg.entry, best) <= 1e-3
            assert leg.duration == pytest.approx(math.dist(hangar, leg.entry) / 12, rel=1e-12)
            assert min(
                on_segment_distance(*leg.entry, *ring[i], *ring[(i + 1) % n]) for i in range(n)
            ) <= 1e-9

    def test_non_positive_speed(self):
        with pytest.raises(Exception):
            approach_leg((0, -10), UNIT, 0, GRID)


class TestParallelSweep:
    def test_square_two_lanes_full_coverage(self):
        fp = CameraFootprint(25, 25)
        area = square(0, 0, 100, 100)
        assert len(sweep_lanes(area, fp)) == 2
        traj = parallel_sweep(area, fp, 10, GRID, (0, 0))
        assert coverage(area, traj, fp) == 1.0

    def test_rectangle_lanes_along_long_side(self):
        fp = CameraFootprint(10, 10)
        area = square(0, 0, 100, 40)
        lanes = sweep_lanes(area, fp)
        assert len(lanes) == math.ceil(40 / 20)
        for a, b in lanes:
            assert a[1] == b[1]  # lanes run east-west
        traj = parallel_sweep(area, fp, 8, GRID, (100, 40))
        assert coverage(area, traj, fp) >= 0.999
        assert np.allclose(traj.positions()[1], (100, 40), atol=1e-9) or np.allclose(traj.positions()[0], (100, 40))

    def test_cross_track_uses_half_a(self):
        # narrow swath across track, long frame along track
        fp = CameraFootprint(5, 30)
        area = square(0, 0, 200, 60)
        assert len(sweep_lanes(area, fp)) == 6
        traj = parallel_sweep(area, fp, 10, GRID, (0, 0))
        assert coverage(area, traj, fp) >= 0.999

    def test_small_area_single_hover(self):
        fp = CameraFootprint(30, 30)
        area = square(0, 0, 20, 20)
        traj = parallel_sweep(area, fp, 10, GRID, (0, 0))
        pos = traj.positions()
        assert np.allclose(pos[-1], (10, 10))
        heads = headings_from_vectors(traj.air_vectors)
        frac, *_ = raster_coverage(area, pos[-1:], heads[-1:], 30, 30)
        assert frac == 1.0

    def test_starts_at_lane_end_nearest_entry(self):
        fp = CameraFootprint(10, 10)
        area = square(0, 0, 100, 100)
        lanes = sweep_lanes(area, fp)
        ends = [p for a, b in lanes for p in (a, b)]
        for entry in [(0, 0), (100, 0), (0, 100), (100, 100), (50, 0)]:
            traj = parallel_sweep(area, fp, 10, GRID, entry)
            first = traj.positions()
            lane_start = min(ends, key=lambda p: (math.dist(p, entry)))
            # the first lane end reached is the closest one
            k = next(i for i, p in enumerate(first) if any(np.allclose(p, e) for e in ends))
            assert math.dist(first[k], entry) == pytest.approx(math.dist(lane_start, entry))

    def test_speed_limit_and_determinism(self):
        fp = CameraFootprint(12, 9)
        area = square(0, 0, 150, 90)
        a = parallel_sweep(area, fp, 15, GRID, (0, 0))
        b = parallel_sweep(area, fp, 15, GRID, (0, 0))
        assert np.array_equal(a.air_vectors, b.air_vectors)
        assert a.max_speed() <= 15 + 1e-12
        assert a.max_speed() <= fp.half_b / GRID.dt + 1e-12

    def test_zero_area(self):
        with pytest.raises(ConfigurationError):
            parallel_sweep([(0, 0), (1, 1), (2, 2)], CameraFootprint(5, 5), 5, GRID, (0, 0))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.floats(3, 30), st.floats(3, 30))
    def test_convex_coverage(self, seed, ha, hb):
        rng = np.random.default_rng(seed)
        ring = random_convex(rng, scale=float(rng.uniform(40, 160)))
        fp = CameraFootprint(ha, hb)
        entry = ring[0]
        traj = parallel_sweep(ring, fp, 12, GRID, entry)
        assert traj.max_speed() <= 12 + 1e-9
        assert coverage(ring, traj, fp) >= 0.999


class TestExpandingSquare:
    def test_leg_pattern(self):
        corners = np.array(spiral_corners((0, 0), 10, 100))
        legs = np.hypot(*np.diff(corners, axis=0).T)
        expect = [10 * (k // 2 + 1) for k in range(len(legs))]
        assert np.allclose(legs, expect)
        assert len(legs) >= 8
        dirs = np.sign(np.diff(corners, axis=0))
        assert [tuple(d) for d in dirs[:4]] == [(0, 1), (1, 0), (0, -1), (-1, 0)]

    def test_small_radius_stays_in_one_footprint(self):
        fp = CameraFootprint(10, 15)
        traj = expanding_square((5, 5), fp, 8, GRID, max_radius=15)
        pos = traj.positions()
        assert np.all(np.abs(pos - (5, 5)) <= 10)

    def test_endurance_cut(self):
        fp = CameraFootprint(10, 10)
        traj = expanding_square((0, 0), fp, 5, GRID, max_radius=500, endurance=37.5)
        assert traj.grid.steps == 38
        assert traj.duration <= 37.5

    def test_disc_coverage_monotone(self):
        fp = CameraFootprint(10, 10)
        R = 60
        traj = expanding_square((0, 0), fp, 10, GRID, max_radius=R + 20)
        pos = traj.positions()
        heads = headings_from_vectors(traj.air_vectors)
        t = np.linspace(0, 2 * math.pi, 200, endpoint=False)
        disc = list(zip(R * np.cos(t), R * np.sin(t)))
        fracs = [raster_coverage(disc, pos[:k], heads[:k], 10, 10)[0] for k in range(1, len(pos) + 1, 5)]
        assert all(b >= a for a, b in zip(fracs, fracs[1:]))
        assert fracs[-1] >= 0.99


class TestTrajectoryFiles:
    def test_three_rows(self, tmp_path):
        f = tmp_path / "t.csv"
        f.write_text("uav_id,step,ix_mps,iy_mps\nu,0,1.0,0.0\nu,1,0.0,2.0\nu,2,0,0\n", encoding="utf-8")
        t = load_trajectory(f, 1.0, (10, 20))
        assert t.grid.steps == 3
        assert np.allclose(t.positions(), [(10, 20), (11, 20), (11, 22)])

    def test_airspeed_violation(self, tmp_path):
        f = tmp_path / "t.csv"
        f.write_text("uav_id,step,ix_mps,iy_mps\nu,0,3,4\nu,1,6,8.00001\n", encoding="utf-8")
        load_trajectory(f, 1.0, (0, 0), max_airspeed=10.000001 + 1e-3)
        with pytest.raises(TrajectoryFormatError, match=":3:"):
            load_trajectory(f, 1.0, (0, 0), max_airspeed=10)

    @pytest.mark.parametrize(
        "body,where",
        [
            ("u,0,1,0\nu,2,1,0\n", ":3:"),
            ("u,0,1,0\nu,1,x,0\n", ":3:"),
            ("u,0,1,0\nu,1,1\n", ":3:"),
            ("u,0,1,0\nu,1,nan,0\n", ":3:"),
        ],
    )
    def test_malformed(self, tmp_path, body, where):
        f = tmp_path / "t.csv"
        f.write_text("uav_id,step,ix_mps,iy_mps\n" + body, encoding="utf-8")
        with pytest.raises(TrajectoryFormatError, match=where):
            load_trajectory(f, 1.0, (0, 0))

    def test_bad_header(self, tmp_path):
        f = tmp_path / "t.csv"
        f.write_text("id,step,x,y\nu,0,1,0\n", encoding="utf-8")
        with pytest.raises(TrajectoryFormatError):
            load_trajectory(f, 1.0, (0, 0))

    def test_round_trip(self, tmp_path):
        fp = CameraFootprint(12, 8)
        a = parallel_sweep(square(0, 0, 130, 70), fp, 9, TimeGrid(0.5, 1), (0, 0), uav_id="a")
        b = expanding_square((3, 4), fp, 9, TimeGrid(0.5, 1), 60, uav_id="b")
        f = tmp_path / "out.csv"
        save_trajectories([a, b], f)
        text = f.read_bytes()
        assert b"\r" not in text and text.startswith(b"uav_id,step,ix_mps,iy_mps\n")
        back = load_trajectories(f, 0.5, {"a": a.start, "b": b.start}, max_airspeed=9)
        for orig in (a, b):
            got = back[orig.uav_id]
            assert got.grid == orig.grid
            assert np.abs(got.positions() - orig.positions()).max() <= 1e-9
        with pytest.raises(TrajectoryFormatError):
            load_trajectory(f, 0.5, (0, 0))


class TestFeasibility:
    def test_examples(self):
        s = spec(endurance=1200)
        assert feasible_mission(s, 300, 800)
        assert not feasible_mission(s, 700, 600)
        assert feasible_mission(s, 400, 800)


def test_discretize_hits_every_vertex():
    pts = [(0, 0), (25, 0), (25, 7), (0, 7)]
    pos = discretize_polyline(pts, 10, 1)
    for p in pts:
        assert any(np.allclose(q, p) for q in pos)
    assert np.hypot(*np.diff(pos, axis=0).T).max() <= 10 + 1e-12


def test_trajectory_duration_and_shape():
    t = AirTrajectory("x", TimeGrid(0.5, 4), np.ones((4, 2)), (0, 0))
    assert t.duration == 1.5
    with pytest.raises(Exception):
        AirTrajectory("x", TimeGrid(0.5, 4), np.ones((3, 2)), (0, 0))
