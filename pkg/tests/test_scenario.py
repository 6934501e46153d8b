import copy
import json
import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import BENCHMARK, LONLAT_DEMO, minimal_raw, scenario_from
from rescuesim.errors import ConfigurationError, DomainError, ScenarioValidationError
from rescuesim.sampling import TruncatedNormalParams
from rescuesim.scenario import (
    EARTH_RADIUS,
    build_scenario,
    load_scenario,
    project_point,
    project_raw,
    project_to_planar,
    save_scenario,
    scenario_to_dict,
    unproject_point,
    validate_raw,
)


def errors_of(raw):
    with pytest.raises(ScenarioValidationError) as info:
        build_scenario(raw)
    return info.value.errors


def write(tmp_path, raw, name="s.json"):
    p = tmp_path / name
    p.write_text(json.dumps(raw), encoding="utf-8")
    return p


class TestLoad:
    def test_minimal_defaults(self, tmp_path):
        s = load_scenario(write(tmp_path, minimal_raw()))
        p = s.parameters
        assert p.speed_factor == 1.3
        assert p.walk_speed == 10 and p.boat_speed == 70
        assert p.prep_fire == TruncatedNormalParams(120, 30, 0, 240)
        assert p.prep_rescue == 0 and p.dt == 1 and p.sweep_overlap == 0
        assert s.crs == "planar_meters" and len(s.uavs) == 1

    def test_edge_length_filled_from_nodes(self):
        s = scenario_from(minimal_raw())
        e = next(e for e in s.road_graph.edges if e.source == "a")
        assert e.length == pytest.approx(math.hypot(500, 490), rel=1e-15)

    def test_bidirectional_edges_expanded(self):
        assert len(scenario_from(minimal_raw()).road_graph.edges) == 4

    def test_benchmark_loads(self, benchmark):
        assert set(benchmark.uas_configs) == {"p1", "p2", "p3"}
        assert benchmark.fleet("p2") == ("uav_1", "uav_2")
        with pytest.raises(ConfigurationError):
            benchmark.fleet("p9")


class TestValidation:
    def test_unknown_uav_in_assignment(self):
        errs = errors_of(minimal_raw(assignments={"h1": "ghost_uav"}))
        assert any("ghost_uav" in e and e.startswith("/assignments/h1") for e in errs)

    def test_unknown_hotspot_in_assignment(self):
        errs = errors_of(minimal_raw(assignments={"nowhere": "u1"}))
        assert any("nowhere" in e for e in errs)

    def test_schema_error_has_pointer(self):
        raw = minimal_raw()
        raw["uavs"][0]["altitude"] = "high"
        errs = errors_of(raw)
        assert any(e.startswith("/uavs/0/altitude:") for e in errs)

    def test_unknown_field_rejected(self):
        errs = errors_of(minimal_raw(colour="blue"))
        assert any("colour" in e for e in errs)
        raw = minimal_raw()
        raw["hotspots"][0]["depth"] = 3
        assert any(e.startswith("/hotspots/0") for e in errors_of(raw))

    def test_format_version_required(self):
        raw = minimal_raw()
        del raw["format_version"]
        assert errors_of(raw)
        assert errors_of(minimal_raw(format_version=2))

    def test_all_schema_errors_in_one_pass(self):
        raw = minimal_raw()
        raw["uavs"][0]["altitude"] = -1
        raw["water"][0]["outer"] = [[0, 0], [1, 1]]
        raw["parameters"] = {"dt": 0}
        errs = errors_of(raw)
        for ptr in ("/uavs/0/altitude", "/water/0/outer", "/parameters/dt"):
            assert any(e.startswith(ptr) for e in errs), ptr

    def test_all_semantic_errors_in_one_pass(self):
        raw = minimal_raw(assignments={"h1": "ghost"})
        raw["road_graph"]["edges"].append({"from": "a", "to": "zz", "speed_limit": 30})
        raw["hotspots"].append({"id": "dry", "polygon": [[5000, 5000], [5100, 5000], [5100, 5100]]})
        raw["stations"]["rescue"].append({"id": "f1", "position": [0, 0]})
        errs = errors_of(raw)
        assert len(errs) == 4
        text = "\n".join(errs)
        for needle in ("ghost", "'zz'", "'dry'", "duplicate id 'f1'"):
            assert needle in text

    def test_stddev_and_variance_exclusive(self):
        both = {"mean": 1, "variance": 1, "stddev": 1, "lower": 0, "upper": 2}
        assert errors_of(minimal_raw(parameters={"prep_fire": both}))
        s = scenario_from(minimal_raw(parameters={"prep_fire": {"mean": 1, "stddev": 3, "lower": 0, "upper": 2}}))
        assert s.parameters.prep_fire.variance == 9

    def test_tn_bounds_order(self):
        errs = errors_of(minimal_raw(parameters={"prep_fire": {"mean": 1, "variance": 1, "lower": 5, "upper": 2}}))
        assert any(e.startswith("/parameters/prep_fire") for e in errs)

    def test_hotspot_must_touch_water(self):
        raw = minimal_raw()
        raw["hotspots"][0]["polygon"] = [[2000, 0], [2100, 0], [2100, 100], [2000, 100]]
        assert any("does not intersect" in e for e in errors_of(raw))

    def test_hotspot_straddling_shore_accepted(self):
        raw = minimal_raw()
        raw["hotspots"][0]["polygon"] = [[-50, 400], [50, 400], [50, 500], [-50, 500]]
        scenario_from(raw)

    def test_camera_angle_domain(self):
        raw = minimal_raw()
        raw["uavs"][0]["camera"]["alpha"] = math.pi / 2
        assert any(e.startswith("/uavs/0/camera/alpha") for e in errors_of(raw))

    def test_validate_raw_non_object(self):
        assert validate_raw([1, 2, 3])

    def test_invalid_json_location(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text('{\n  "name": "x",\n  oops\n}\n', encoding="utf-8")
        with pytest.raises(ScenarioValidationError) as info:
            load_scenario(p)
        assert "line 3, column 3" in str(info.value)


class TestProjection:
    ORIGIN = (14.03, 51.53)

    def test_origin_maps_to_zero(self):
        assert tuple(project_point(self.ORIGIN, self.ORIGIN)) == (0.0, 0.0)

    def test_hundredth_degree_north(self):
        mpmath.mp.dps = 40
        ref = mpmath.mpf(EARTH_RADIUS) * mpmath.radians(mpmath.mpf("0.01"))
        y = project_point((14.03, 51.53 + 0.01), self.ORIGIN).y
        assert abs(y - float(ref)) <= 1e-6
        assert y == pytest.approx(1111.95, abs=0.005)

    def test_east_scaled_by_cos_lat(self):
        mpmath.mp.dps = 40
        ref = mpmath.mpf(EARTH_RADIUS) * mpmath.radians(mpmath.mpf("0.01")) * mpmath.cos(mpmath.radians(mpmath.mpf("51.53")))
        x = project_point((14.04, 51.53), self.ORIGIN).x
        assert abs(x - float(ref)) <= 1e-6

    @settings(max_examples=300)
    @given(st.floats(-1, 1), st.floats(-1, 1), st.floats(-80, 80), st.floats(-179, 179))
    def test_round_trip(self, dlon, dlat, lat0, lon0):
        origin = (lon0, lat0)
        q = (lon0 + dlon, lat0 + dlat)
        if abs(q[0] - lon0) > 1 or abs(q[1] - lat0) > 1:
            return
        back = unproject_point(project_point(q, origin), origin)
        assert abs(back[0] - q[0]) <= 1e-6 and abs(back[1] - q[1]) <= 1e-6

    def test_outside_window(self):
        with pytest.raises(DomainError):
            project_point((15.1, 51.53), self.ORIGIN)
        with pytest.raises(DomainError):
            project_point((14.03, 50.5), self.ORIGIN)

    def test_lonlat_demo(self):
        s = load_scenario(LONLAT_DEMO)
        assert s.crs == "planar_meters"
        raw = json.loads(LONLAT_DEMO.read_text(encoding="utf-8"))
        origin = (raw["origin"]["lon"], raw["origin"]["lat"])
        p = s.hotspots[0].polygon[0]
        q = project_point(raw["hotspots"][0]["polygon"][0], origin)
        assert (p.x, p.y) == (q.x, q.y)
        unprojected = load_scenario(LONLAT_DEMO, project=False)
        assert unprojected.crs == "lonlat"
        assert project_to_planar(unprojected) == s

    def test_lonlat_window_violation_reported(self):
        raw = json.loads(LONLAT_DEMO.read_text(encoding="utf-8"))
        raw["uavs"][0]["hangar"] = [16.0, 51.53]
        assert any("more than 1.0 deg" in e for e in errors_of(raw))

    def test_project_raw_planar_rejected(self):
        with pytest.raises(ConfigurationError):
            project_raw(minimal_raw())


class TestRoundTrip:
    @pytest.mark.parametrize("path", [BENCHMARK, LONLAT_DEMO])
    def test_save_load(self, tmp_path, path):
        s = load_scenario(path, project=False)
        out = tmp_path / "copy.json"
        save_scenario(s, out)
        again = load_scenario(out, project=False)
        assert again == s
        assert scenario_to_dict(again) == scenario_to_dict(s)

    def test_rich_scenario(self, tmp_path):
        raw = minimal_raw(
            parameters={
                "prep_rescue": {"mean": 60, "stddev": 10, "lower": 0, "upper": 120},
                "search_delay": 30,
                "wind": {"series": [[1, 0], [0, 2]]},
                "assignment_policy": "all",
                "heading_source": "ground",
                "sweep_overlap": 0.1,
            },
            assignments={"h1": ["u1"]},
            uas_configs={"solo": ["u1"]},
        )
        s = scenario_from(raw)
        out = tmp_path / "rich.json"
        save_scenario(s, out)
        again = load_scenario(out)
        assert again == s
        assert again.parameters.search_delay == 30.0
        assert again.assignments == {"h1": ("u1",)}

    def test_equality_detects_change(self):
        a = scenario_from(minimal_raw())
        raw = copy.deepcopy(minimal_raw())
        raw["uavs"][0]["endurance"] = 1201
        assert a != scenario_from(raw)
