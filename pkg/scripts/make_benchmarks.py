"""Regenerate the bundled synthetic scenarios under src/rescuesim/scenarios/.

Coordinates are invented; they only mimic the layout of a small lake district
(two lakes, one island, volunteer fire brigade far from the eastern lake).
"""

import json
import math
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "rescuesim" / "scenarios"


def rect(x0, y0, x1, y1):
    return [[x0, y0], [x1, y0], [x1, y1], [x0, y1]]


CAMERA = {"alpha": math.radians(30), "beta": math.radians(30)}


def uav(uid, hangar):
    return {"id": uid, "max_airspeed": 15.0, "altitude": 60.0, "camera": CAMERA, "endurance": 420.0, "hangar": hangar}


def two_lakes():
    nodes = {
        "n1": [-3000, -2000],
        "n2": [-500, -500],
        "n3": [-100, 600],
        "n4": [3000, -1500],
        "n5": [4500, -800],
        "n6": [5950, 1150],
        "n7": [1500, -600],
    }
    roads = [
        ("n1", "n2", 80),
        ("n2", "n3", 50),
        ("n2", "n7", 80),
        ("n7", "n4", 80),
        ("n4", "n5", 80),
        ("n7", "n5", 100),
        ("n5", "n6", 60),
    ]
    return {
        "format_version": 1,
        "name": "two_lakes",
        "crs": "planar_meters",
        "parameters": {
            "speed_factor": 1.3,
            "walk_speed_kmh": 10.0,
            "boat_speed_kmh": 70.0,
            "prep_fire": {"mean": 120.0, "variance": 30.0, "lower": 0.0, "upper": 240.0},
            "prep_rescue": 0.0,
            "dt": 1.0,
        },
        "water": [
            {
                "id": "lake_west",
                "outer": [[0, 0], [2400, 0], [2600, 800], [2200, 1400], [600, 1500], [0, 1000]],
                "holes": [rect(1000, 500, 1400, 800)],
            },
            {
                "id": "lake_east",
                "outer": [[6000, 200], [7600, 0], [8000, 900], [7400, 1600], [6200, 1400], [5800, 800]],
            },
        ],
        "hotspots": [
            {"id": "west_beach", "polygon": rect(200, 200, 500, 450), "weight": 3.0},
            {"id": "north_bay", "polygon": rect(1800, 1000, 2100, 1250), "weight": 2.0},
            {"id": "island_lee", "polygon": [[1500, 550], [1750, 580], [1730, 750], [1520, 720]], "weight": 2.0},
            {"id": "east_beach", "polygon": rect(6400, 500, 6700, 750), "weight": 2.0},
            {"id": "far_shore", "polygon": [[7300, 850], [7450, 780], [7600, 850], [7600, 1050], [7450, 1120], [7300, 1050]], "weight": 1.0},
        ],
        "stations": {
            "fire": [{"id": "fire_west", "position": nodes["n1"]}],
            "rescue": [{"id": "ambulance_south", "position": nodes["n4"]}],
            "access_points": [
                {"id": "slip_west", "position": [0, 600]},
                {"id": "slip_east", "position": [6000, 1100]},
            ],
        },
        "road_graph": {
            "nodes": [{"id": k, "position": v} for k, v in nodes.items()],
            "edges": [{"from": a, "to": b, "speed_limit": v, "bidirectional": True} for a, b, v in roads],
        },
        "uavs": [
            uav("uav_1", [1200, 1100]),
            uav("uav_2", [6950, 850]),
            uav("uav_3", [300, 800]),
        ],
        "uas_configs": {
            "p1": ["uav_1"],
            "p2": ["uav_1", "uav_2"],
            "p3": ["uav_1", "uav_2", "uav_3"],
        },
    }


def lonlat_demo():
    """A single lake in geographic coordinates, projected on load."""
    lon0, lat0 = 14.03, 51.53
    m_lon = 1 / (6371008.8 * math.cos(math.radians(lat0)) * math.pi / 180)
    m_lat = 1 / (6371008.8 * math.pi / 180)

    def ll(x, y):
        return [round(lon0 + x * m_lon, 7), round(lat0 + y * m_lat, 7)]

    return {
        "format_version": 1,
        "name": "lonlat_demo",
        "crs": "lonlat",
        "origin": {"lon": lon0, "lat": lat0},
        "water": [{"id": "lake", "outer": [ll(0, 0), ll(1500, 0), ll(1500, 900), ll(0, 900)]}],
        "hotspots": [{"id": "beach", "polygon": [ll(100, 100), ll(400, 100), ll(400, 300), ll(100, 300)], "weight": 1.0}],
        "stations": {
            "fire": [{"id": "fire", "position": ll(-2000, -500)}],
            "rescue": [{"id": "ambulance", "position": ll(-1500, 1500)}],
            "access_points": [{"id": "slip", "position": ll(0, 450)}],
        },
        "road_graph": {
            "nodes": [
                {"id": 1, "position": ll(-2000, -500)},
                {"id": 2, "position": ll(-1500, 1500)},
                {"id": 3, "position": ll(-50, 450)},
            ],
            "edges": [
                {"from": 1, "to": 3, "speed_limit": 70, "bidirectional": True},
                {"from": 2, "to": 3, "speed_limit": 50, "bidirectional": True},
            ],
        },
        "uavs": [uav("uav_1", ll(800, 950))],
    }


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    for name, doc in (("two_lakes", two_lakes()), ("lonlat_demo", lonlat_demo())):
        (OUT / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
        print("wrote", OUT / f"{name}.json")
