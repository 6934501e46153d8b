import copy
import json
import math
from pathlib import Path

import pytest

from rescuesim.scenario import build_scenario

BENCHMARK = Path(__file__).resolve().parents[1] / "src" / "rescuesim" / "scenarios" / "two_lakes.json"
LONLAT_DEMO = BENCHMARK.with_name("lonlat_demo.json")

CAM30 = {"alpha": math.pi / 6, "beta": math.pi / 6}


def minimal_raw(**overrides) -> dict:
    """One square lake, one hotspot, one station of each kind, one UAV."""
    raw = {
        "format_version": 1,
        "name": "minimal",
        "water": [{"id": "lake", "outer": [[0, 0], [1000, 0], [1000, 1000], [0, 1000]]}],
        "hotspots": [{"id": "h1", "polygon": [[400, 400], [600, 400], [600, 600], [400, 600]], "weight": 1}],
        "stations": {
            "fire": [{"id": "f1", "position": [0, -500]}],
            "rescue": [{"id": "r1", "position": [1000, -500]}],
            "access_points": [{"id": "w1", "position": [500, 0]}],
        },
        "road_graph": {
            "nodes": [
                {"id": "a", "position": [0, -500]},
                {"id": "b", "position": [500, -10]},
                {"id": "c", "position": [1000, -500]},
            ],
            "edges": [
                {"from": "a", "to": "b", "speed_limit": 50, "bidirectional": True},
                {"from": "c", "to": "b", "speed_limit": 50, "bidirectional": True},
            ],
        },
        "uavs": [
            {
                "id": "u1",
                "max_airspeed": 10,
                "altitude": 50,
                "camera": dict(CAM30),
                "endurance": 1200,
                "hangar": [500, 300],
            }
        ],
    }
    raw.update(overrides)
    return raw


def scenario_from(raw: dict, base_dir=None):
    return build_scenario(copy.deepcopy(raw), base_dir)


@pytest.fixture(scope="session")
def benchmark_raw():
    return json.loads(BENCHMARK.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def benchmark():
    from rescuesim.scenario import load_scenario

    return load_scenario(BENCHMARK)
