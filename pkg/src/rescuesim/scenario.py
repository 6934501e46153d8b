"""Scenario files: loading, validation, projection and serialization.

A scenario is a single UTF-8 JSON document (``format_version`` 1) that embeds
everything a simulation needs, including the road graph. See
``docs/scenario_format.md`` for the field reference.
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema

from .errors import ConfigurationError, DomainError, ScenarioValidationError
from .geom import CameraSpec, Vec2, as_vec, point_in_ring, segments_properly_cross, signed_area
from .roadnet import DEFAULT_SPEED_FACTOR, DEFAULT_WALK_SPEED_KMH, RoadEdge, RoadGraph
from .sampling import DEFAULT_PREP_FIRE, Hotspot, TruncatedNormalParams
from .search import UavSpec, load_trajectories
from .sro import StationSet
from .uas import ASSIGNMENT_POLICIES, CALM, WindField
from .waterway import DEFAULT_BOAT_SPEED_KMH, WaterPolygon

FORMAT_VERSION = 1
EARTH_RADIUS = 6371008.8  # m, mean radius
PROJECTION_WINDOW_DEG = 1.0

_point = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_ring = {"type": "array", "items": _point, "minItems": 3}
_id = {"type": ["string", "integer"]}
_tn = {
    "type": "object",
    "properties": {
        "mean": {"type": "number"},
        "variance": {"type": "number", "exclusiveMinimum": 0},
        "stddev": {"type": "number", "exclusiveMinimum": 0},
        "lower": {"type": "number"},
        "upper": {"type": "number"},
    },
    "required": ["mean", "lower", "upper"],
    "oneOf": [{"required": ["variance"]}, {"required": ["stddev"]}],
    "additionalProperties": False,
}
_prep = {"oneOf": [{"type": "number", "minimum": 0}, _tn]}
_located = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {"id": {"type": "string"}, "position": _point},
        "required": ["id", "position"],
        "additionalProperties": False,
    },
}

SCENARIO_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "format_version": {"const": FORMAT_VERSION},
        "name": {"type": "string"},
        "crs": {"enum": ["planar_meters", "lonlat"]},
        "origin": {
            "type": "object",
            "properties": {"lon": {"type": "number"}, "lat": {"type": "number"}},
            "required": ["lon", "lat"],
            "additionalProperties": False,
        },
        "parameters": {
            "type": "object",
            "properties": {
                "speed_factor": {"type": "number", "exclusiveMinimum": 0},
                "walk_speed_kmh": {"type": "number", "exclusiveMinimum": 0},
                "boat_speed_kmh": {"type": "number", "exclusiveMinimum": 0},
                "prep_fire": _prep,
                "prep_rescue": _prep,
                "search_delay": {"oneOf": [{"type": "null"}, _prep]},
                "dt": {"type": "number", "exclusiveMinimum": 0},
                "sweep_overlap": {"type": "number", "minimum": 0, "exclusiveMaximum": 1},
                "assignment_policy": {"enum": list(ASSIGNMENT_POLICIES)},
                "heading_source": {"enum": ["air", "ground"]},
                "wind": {
                    "oneOf": [
                        {
                            "type": "object",
                            "properties": {"constant": _point},
                            "required": ["constant"],
                            "additionalProperties": False,
                        },
                        {
                            "type": "object",
                            "properties": {"series": {"type": "array", "items": _point, "minItems": 1}},
                            "required": ["series"],
                            "additionalProperties": False,
                        },
                    ]
                },
            },
            "additionalProperties": False,
        },
        "water": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "properties": {"id": {"type": "string"}, "outer": _ring, "holes": {"type": "array", "items": _ring}},
                "required": ["id", "outer"],
                "additionalProperties": False,
            },
        },
        "hotspots": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "properties": {
                    "id": {"type": "string"},
                    "polygon": _ring,
                    "weight": {"type": "number", "minimum": 0},
                },
                "required": ["id", "polygon"],
                "additionalProperties": False,
            },
        },
        "stations": {
            "type": "object",
            "properties": {"fire": _located, "rescue": _located, "access_points": _located},
            "additionalProperties": False,
        },
        "road_graph": {
            "type": "object",
            "properties": {
                "nodes": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "properties": {"id": _id, "position": _point},
                        "required": ["id", "position"],
                        "additionalProperties": False,
                    },
                },
                "edges": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "properties": {
                            "from": _id,
                            "to": _id,
                            "length": {"type": "number", "exclusiveMinimum": 0},
                            "speed_limit": {"type": "number", "exclusiveMinimum": 0},
                            "bidirectional": {"type": "boolean"},
                        },
                        "required": ["from", "to", "speed_limit"],
                        "additionalProperties": False,
                    },
                },
            },
            "required": ["nodes", "edges"],
            "additionalProperties": False,
        },
        "uavs": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "id": {"type": "string"},
                    "max_airspeed": {"type": "number", "exclusiveMinimum": 0},
                    "altitude": {"type": "number", "exclusiveMinimum": 0},
                    "camera": {
                        "type": "object",
                        "properties": {
                            "alpha": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": math.pi / 2},
                            "beta": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": math.pi / 2},
                        },
                        "required": ["alpha", "beta"],
                        "additionalProperties": False,
                    },
                    "endurance": {"type": "number", "exclusiveMinimum": 0},
                    "hangar": _point,
                },
                "required": ["id", "max_airspeed", "altitude", "camera", "endurance", "hangar"],
                "additionalProperties": False,
            },
        },
        "uas_configs": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        },
        "assignments": {
            "type": "object",
            "additionalProperties": {
                "oneOf": [{"type": "string"}, {"type": "array", "items": {"type": "string"}, "minItems": 1}]
            },
        },
        "trajectories": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "hotspot": {"type": "string"},
                    "uav": {"type": "string"},
                    "file": {"type": "string"},
                    "start_x": {"type": "number"},
                    "start_y": {"type": "number"},
                },
                "required": ["hotspot", "uav", "file", "start_x", "start_y"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["format_version", "name", "water", "hotspots"],
    "additionalProperties": False,
}


@dataclass(frozen=True)
class ScenarioParameters:
    speed_factor: float = DEFAULT_SPEED_FACTOR
    walk_speed: float = DEFAULT_WALK_SPEED_KMH  # km/h
    boat_speed: float = DEFAULT_BOAT_SPEED_KMH  # km/h
    prep_fire: float | TruncatedNormalParams = DEFAULT_PREP_FIRE
    prep_rescue: float | TruncatedNormalParams = 0.0
    search_delay: float | TruncatedNormalParams | None = None
    dt: float = 1.0  # s
    sweep_overlap: float = 0.0
    assignment_policy: str = "nearest"
    heading_source: str = "air"


@dataclass(frozen=True)
class TrajectoryRef:
    hotspot: str
    uav: str
    file: str
    start: Vec2


@dataclass(frozen=True, eq=False)
class Scenario:
    name: str
    water: tuple
    hotspots: tuple
    stations: StationSet
    road_graph: RoadGraph
    uavs: tuple
    parameters: ScenarioParameters = field(default_factory=ScenarioParameters)
    assignments: dict | None = None  # hotspot id -> tuple of uav ids
    uas_configs: dict = field(default_factory=dict)  # name -> tuple of uav ids
    trajectories: tuple = ()
    wind: WindField = CALM
    crs: str = "planar_meters"
    origin: tuple | None = None  # (lon, lat)
    base_dir: Path | None = None
    # raw wind block, kept for serialization
    wind_spec: dict | None = None

    def __eq__(self, other):
        if not isinstance(other, Scenario):
            return NotImplemented
        return scenario_to_dict(self) == scenario_to_dict(other)

    def uav(self, uav_id: str) -> UavSpec:
        for u in self.uavs:
            if u.id == uav_id:
                return u
        raise KeyError(uav_id)

    def fleet(self, config: str | None = None) -> tuple:
        """UAV ids of a named configuration, or the whole fleet."""
        if config is None:
            return tuple(u.id for u in self.uavs)
        if config not in self.uas_configs:
            raise ConfigurationError(f"unknown UAS configuration {config!r}; known: {sorted(self.uas_configs)}")
        return tuple(self.uas_configs[config])

    def imported_trajectories(self) -> dict:
        """Search trajectories keyed by (hotspot id, uav id)."""
        out = {}
        for ref in self.trajectories:
            path = Path(ref.file)
            if not path.is_absolute() and self.base_dir is not None:
                path = self.base_dir / path
            spec = self.uav(ref.uav)
            trajs = load_trajectories(path, self.parameters.dt, ref.start, spec.max_airspeed)
            if ref.uav not in trajs:
                raise ConfigurationError(f"{path}: no rows for UAV {ref.uav!r}")
            out[(ref.hotspot, ref.uav)] = trajs[ref.uav]
        return out


# --- projection -------------------------------------------------------------

def project_point(lonlat, origin) -> Vec2:
    lon0, lat0 = origin
    lon, lat = lonlat
    if abs(lon - lon0) > PROJECTION_WINDOW_DEG or abs(lat - lat0) > PROJECTION_WINDOW_DEG:
        raise DomainError(f"coordinate {tuple(lonlat)} is more than {PROJECTION_WINDOW_DEG} deg from origin {tuple(origin)}")
    x = EARTH_RADIUS * math.radians(lon - lon0) * math.cos(math.radians(lat0))
    y = EARTH_RADIUS * math.radians(lat - lat0)
    return Vec2(x, y)


def unproject_point(xy, origin) -> tuple[float, float]:
    lon0, lat0 = origin
    lon = lon0 + math.degrees(xy[0] / (EARTH_RADIUS * math.cos(math.radians(lat0))))
    lat = lat0 + math.degrees(xy[1] / EARTH_RADIUS)
    return lon, lat


def _map_coordinates(raw: dict, fn) -> dict:
    """Apply ``fn`` to every coordinate pair in a raw scenario dict."""
    out = copy.deepcopy(raw)
    pt = lambda p: list(fn(p))  # noqa: E731
    ring = lambda r: [pt(p) for p in r]  # noqa: E731
    for w in out.get("water", []):
        w["outer"] = ring(w["outer"])
        if "holes" in w:
            w["holes"] = [ring(h) for h in w["holes"]]
    for h in out.get("hotspots", []):
        h["polygon"] = ring(h["polygon"])
    for group in out.get("stations", {}).values():
        for s in group:
            s["position"] = pt(s["position"])
    for n in out.get("road_graph", {}).get("nodes", []):
        n["position"] = pt(n["position"])
    for u in out.get("uavs", []):
        u["hangar"] = pt(u["hangar"])
    for t in out.get("trajectories", []):
        t["start_x"], t["start_y"] = fn((t["start_x"], t["start_y"]))
    return out


def project_raw(raw: dict, origin=None) -> dict:
    """Planar copy of a lon/lat scenario dict (coordinates in meters)."""
    if raw.get("crs", "planar_meters") != "lonlat":
        raise ConfigurationError("scenario is already planar")
    if origin is None:
        o = raw.get("origin")
        if o is None:
            raise ConfigurationError("lon/lat scenario needs an origin")
        origin = (o["lon"], o["lat"])
    out = _map_coordinates(_fill_edge_lengths(raw, origin), lambda p: project_point(p, origin))
    out["crs"] = "planar_meters"
    out.pop("origin", None)
    return out


def project_to_planar(scenario: Scenario, origin=None) -> Scenario:
    if scenario.crs != "lonlat":
        raise ConfigurationError("scenario is already planar")
    raw = scenario_to_dict(scenario)
    return build_scenario(project_raw(raw, origin or scenario.origin), scenario.base_dir)


def _fill_edge_lengths(raw: dict, origin=None) -> dict:
    """Copy of ``raw`` with missing edge lengths set to the node distance in meters."""
    graph = raw.get("road_graph")
    if not graph or all("length" in e for e in graph.get("edges", [])):
        return raw
    out = copy.deepcopy(raw)
    pos = {}
    for n in out["road_graph"]["nodes"]:
        p = n["position"]
        pos[n["id"]] = project_point(p, origin) if origin is not None else as_vec(p)
    for e in out["road_graph"]["edges"]:
        if "length" not in e and e["from"] in pos and e["to"] in pos:
            e["length"] = math.hypot(pos[e["from"]][0] - pos[e["to"]][0], pos[e["from"]][1] - pos[e["to"]][1])
    return out


# --- loading ----------------------------------------------------------------

def _pointer(path) -> str:
    return "/" + "/".join(str(p) for p in path) if path else "/"


def _tn_or_number(v):
    if v is None or isinstance(v, (int, float)):
        return None if v is None else float(v)
    if "stddev" in v:
        return TruncatedNormalParams.from_stddev(v["mean"], v["stddev"], v["lower"], v["upper"])
    return TruncatedNormalParams(v["mean"], v["variance"], v["lower"], v["upper"])


def _duplicates(items, key="id") -> list:
    seen, dup = set(), []
    for it in items:
        k = it[key]
        if k in seen and k not in dup:
            dup.append(k)
        seen.add(k)
    return dup


def _rings_overlap(a, b) -> bool:
    if any(point_in_ring(p, b) for p in a) or any(point_in_ring(p, a) for p in b):
        return True
    for i in range(len(a)):
        for j in range(len(b)):
            if segments_properly_cross(a[i], a[(i + 1) % len(a)], b[j], b[(j + 1) % len(b)]):
                return True
    return False


def _semantic_errors(raw: dict) -> list[str]:
    errors: list[str] = []
    uav_ids = {u["id"] for u in raw.get("uavs", [])}
    hotspot_ids = {h["id"] for h in raw.get("hotspots", [])}
    for section, items in (
        ("water", raw.get("water", [])),
        ("hotspots", raw.get("hotspots", [])),
        ("uavs", raw.get("uavs", [])),
        ("road_graph/nodes", raw.get("road_graph", {}).get("nodes", [])),
    ):
        for d in _duplicates(items):
            errors.append(f"/{section}: duplicate id {d!r}")
    st = raw.get("stations", {})
    all_station_items = [s for g in st.values() for s in g]
    for d in _duplicates(all_station_items):
        errors.append(f"/stations: duplicate id {d!r}")

    if raw.get("crs") == "lonlat" and "origin" not in raw:
        errors.append("/origin: required when crs is 'lonlat'")

    hotspots = raw.get("hotspots", [])
    if hotspots and not any(h.get("weight", 1.0) > 0 for h in hotspots):
        errors.append("/hotspots: at least one hotspot needs a positive weight")

    waters = []
    for i, w in enumerate(raw.get("water", [])):
        try:
            poly = WaterPolygon(tuple(map(tuple, w["outer"])), tuple(tuple(map(tuple, h)) for h in w.get("holes", [])), w["id"])
        except (ConfigurationError, DomainError) as exc:
            errors.append(f"/water/{i}: {exc}")
            continue
        errors.extend(f"/water/{i}: {m}" for m in poly.validate())
        waters.append(poly)
    for i, h in enumerate(hotspots):
        ring = [as_vec(p) for p in h["polygon"]]
        if signed_area(ring) == 0:
            errors.append(f"/hotspots/{i}: polygon {h['id']!r} has zero area")
            continue
        if waters and not any(_rings_overlap(ring, w.outer) for w in waters):
            errors.append(f"/hotspots/{i}: hotspot {h['id']!r} does not intersect any water polygon")

    nodes = raw.get("road_graph", {}).get("nodes", [])
    node_ids = {n["id"] for n in nodes}
    if len({type(n) for n in node_ids}) > 1:
        errors.append("/road_graph/nodes: node ids must be all strings or all integers")
    for i, e in enumerate(raw.get("road_graph", {}).get("edges", [])):
        for end in ("from", "to"):
            if e[end] not in node_ids:
                errors.append(f"/road_graph/edges/{i}/{end}: unknown node id {e[end]!r}")
        if "length" not in e and e["from"] == e["to"]:
            errors.append(f"/road_graph/edges/{i}: self-loop needs an explicit length")
    if any(st.get(k) for k in ("fire", "rescue", "access_points")) and not nodes:
        errors.append("/road_graph: stations require a non-empty road graph")

    for h_id, u in raw.get("assignments", {}).items():
        if h_id not in hotspot_ids:
            errors.append(f"/assignments/{h_id}: unknown hotspot id {h_id!r}")
        for uid in [u] if isinstance(u, str) else u:
            if uid not in uav_ids:
                errors.append(f"/assignments/{h_id}: unknown uav_id {uid!r}")
    for name, ids in raw.get("uas_configs", {}).items():
        for uid in ids:
            if uid not in uav_ids:
                errors.append(f"/uas_configs/{name}: unknown uav_id {uid!r}")
    for i, t in enumerate(raw.get("trajectories", [])):
        if t["hotspot"] not in hotspot_ids:
            errors.append(f"/trajectories/{i}/hotspot: unknown hotspot id {t['hotspot']!r}")
        if t["uav"] not in uav_ids:
            errors.append(f"/trajectories/{i}/uav: unknown uav_id {t['uav']!r}")

    p = raw.get("parameters", {})
    for key in ("prep_fire", "prep_rescue", "search_delay"):
        v = p.get(key)
        if isinstance(v, dict) and not v["lower"] < v["upper"]:
            errors.append(f"/parameters/{key}: lower must be below upper")
    wind = p.get("wind", {})
    if "series" in wind and not all(math.isfinite(c) for w in wind["series"] for c in w):
        errors.append("/parameters/wind/series: non-finite wind vector")

    if raw.get("crs") == "lonlat" and "origin" in raw:
        origin = (raw["origin"]["lon"], raw["origin"]["lat"])
        bad = []

        def check(q):
            try:
                project_point(q, origin)
            except DomainError as exc:
                bad.append(str(exc))
            return q

        _map_coordinates(raw, check)
        errors.extend(f"/: {m}" for m in bad[:10])
    return errors


def validate_raw(raw) -> list[str]:
    """Every schema and consistency problem in ``raw``, as JSON-pointer messages."""
    validator = jsonschema.Draft202012Validator(SCENARIO_SCHEMA)
    schema_errors = sorted(validator.iter_errors(raw), key=lambda e: list(map(str, e.absolute_path)))
    errors = [f"{_pointer(e.absolute_path)}: {e.message}" for e in schema_errors]
    if errors:
        return errors
    return _semantic_errors(raw)


def build_scenario(raw: dict, base_dir: Path | None = None) -> Scenario:
    """Validated :class:`Scenario` from a parsed JSON document."""
    errors = validate_raw(raw)
    if errors:
        raise ScenarioValidationError(errors)
    crs = raw.get("crs", "planar_meters")
    origin = (raw["origin"]["lon"], raw["origin"]["lat"]) if "origin" in raw else None
    raw = _fill_edge_lengths(raw, origin if crs == "lonlat" else None)

    p = raw.get("parameters", {})
    params = ScenarioParameters(
        speed_factor=float(p.get("speed_factor", DEFAULT_SPEED_FACTOR)),
        walk_speed=float(p.get("walk_speed_kmh", DEFAULT_WALK_SPEED_KMH)),
        boat_speed=float(p.get("boat_speed_kmh", DEFAULT_BOAT_SPEED_KMH)),
        prep_fire=_tn_or_number(p["prep_fire"]) if "prep_fire" in p else DEFAULT_PREP_FIRE,
        prep_rescue=_tn_or_number(p.get("prep_rescue", 0.0)),
        search_delay=_tn_or_number(p.get("search_delay")),
        dt=float(p.get("dt", 1.0)),
        sweep_overlap=float(p.get("sweep_overlap", 0.0)),
        assignment_policy=p.get("assignment_policy", "nearest"),
        heading_source=p.get("heading_source", "air"),
    )
    wind_spec = p.get("wind")
    if wind_spec is None:
        wind = CALM
    elif "constant" in wind_spec:
        wind = WindField.constant(wind_spec["constant"])
    else:
        wind = WindField.series(wind_spec["series"])

    water = tuple(
        WaterPolygon(tuple(map(tuple, w["outer"])), tuple(tuple(map(tuple, h)) for h in w.get("holes", [])), w["id"])
        for w in raw["water"]
    )
    hotspots = tuple(Hotspot(h["id"], tuple(map(tuple, h["polygon"])), float(h.get("weight", 1.0))) for h in raw["hotspots"])
    st = raw.get("stations", {})
    stations = StationSet(
        tuple((s["id"], as_vec(s["position"])) for s in st.get("fire", [])),
        tuple((s["id"], as_vec(s["position"])) for s in st.get("rescue", [])),
        tuple((s["id"], as_vec(s["position"])) for s in st.get("access_points", [])),
    )
    g = raw.get("road_graph", {"nodes": [], "edges": []})
    edges = []
    for e in g["edges"]:
        edges.append(RoadEdge(e["from"], e["to"], float(e["length"]), float(e["speed_limit"])))
        if e.get("bidirectional", False):
            edges.append(RoadEdge(e["to"], e["from"], float(e["length"]), float(e["speed_limit"])))
    graph = RoadGraph({n["id"]: n["position"] for n in g["nodes"]}, tuple(edges))
    uavs = tuple(
        UavSpec(
            u["id"],
            float(u["max_airspeed"]),
            float(u["altitude"]),
            CameraSpec(float(u["camera"]["alpha"]), float(u["camera"]["beta"])),
            float(u["endurance"]),
            as_vec(u["hangar"]),
        )
        for u in raw.get("uavs", [])
    )
    assignments = None
    if "assignments" in raw:
        assignments = {h: (u,) if isinstance(u, str) else tuple(u) for h, u in raw["assignments"].items()}
    trajectories = tuple(
        TrajectoryRef(t["hotspot"], t["uav"], t["file"], as_vec((t["start_x"], t["start_y"]))) for t in raw.get("trajectories", [])
    )
    return Scenario(
        name=raw["name"],
        water=water,
        hotspots=hotspots,
        stations=stations,
        road_graph=graph,
        uavs=uavs,
        parameters=params,
        assignments=assignments,
        uas_configs={k: tuple(v) for k, v in raw.get("uas_configs", {}).items()},
        trajectories=trajectories,
        wind=wind,
        crs=crs,
        origin=origin,
        base_dir=base_dir,
        wind_spec=wind_spec,
    )


def load_scenario(path, project: bool = True) -> Scenario:
    """Read and validate a scenario file.

    Lon/lat scenarios are projected to local planar meters unless
    ``project`` is false.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioValidationError([f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"]) from None
    if project and isinstance(raw, dict) and raw.get("crs") == "lonlat":
        errors = validate_raw(raw)
        if errors:
            raise ScenarioValidationError(errors)
        raw = project_raw(raw)
    return build_scenario(raw, path.parent)


# --- serialization ----------------------------------------------------------

def _tn_to_raw(v):
    if v is None or isinstance(v, float):
        return v
    return {"mean": v.mean, "variance": v.variance, "lower": v.lower, "upper": v.upper}


def scenario_to_dict(s: Scenario) -> dict:
    pt = lambda p: [float(p[0]), float(p[1])]  # noqa: E731
    p = s.parameters
    params = {
        "speed_factor": p.speed_factor,
        "walk_speed_kmh": p.walk_speed,
        "boat_speed_kmh": p.boat_speed,
        "prep_fire": _tn_to_raw(p.prep_fire),
        "prep_rescue": _tn_to_raw(p.prep_rescue),
        "search_delay": _tn_to_raw(p.search_delay),
        "dt": p.dt,
        "sweep_overlap": p.sweep_overlap,
        "assignment_policy": p.assignment_policy,
        "heading_source": p.heading_source,
    }
    if s.wind_spec is not None:
        params["wind"] = s.wind_spec
    out = {"format_version": FORMAT_VERSION, "name": s.name, "crs": s.crs}
    if s.origin is not None:
        out["origin"] = {"lon": s.origin[0], "lat": s.origin[1]}
    out["parameters"] = params
    out["water"] = [
        {"id": w.id, "outer": [pt(q) for q in w.outer], "holes": [[pt(q) for q in h] for h in w.holes]} for w in s.water
    ]
    out["hotspots"] = [{"id": h.id, "polygon": [pt(q) for q in h.polygon], "weight": h.weight} for h in s.hotspots]
    out["stations"] = {
        "fire": [{"id": i, "position": pt(q)} for i, q in s.stations.fire_stations],
        "rescue": [{"id": i, "position": pt(q)} for i, q in s.stations.rescue_stations],
        "access_points": [{"id": i, "position": pt(q)} for i, q in s.stations.access_points],
    }
    out["road_graph"] = {
        "nodes": [{"id": i, "position": pt(q)} for i, q in s.road_graph.nodes.items()],
        "edges": [
            {"from": e.source, "to": e.target, "length": e.length, "speed_limit": e.speed_limit} for e in s.road_graph.edges
        ],
    }
    out["uavs"] = [
        {
            "id": u.id,
            "max_airspeed": u.max_airspeed,
            "altitude": u.altitude,
            "camera": {"alpha": u.camera.alpha, "beta": u.camera.beta},
            "endurance": u.endurance,
            "hangar": pt(u.hangar),
        }
        for u in s.uavs
    ]
    if s.uas_configs:
        out["uas_configs"] = {k: list(v) for k, v in s.uas_configs.items()}
    if s.assignments is not None:
        out["assignments"] = {k: list(v) for k, v in s.assignments.items()}
    if s.trajectories:
        out["trajectories"] = [
            {"hotspot": t.hotspot, "uav": t.uav, "file": t.file, "start_x": t.start.x, "start_y": t.start.y}
            for t in s.trajectories
        ]
    return out


def save_scenario(s: Scenario, path) -> None:
    Path(path).write_text(json.dumps(scenario_to_dict(s), indent=2) + "\n", encoding="utf-8")
