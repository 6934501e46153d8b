"""Road network travel times for emergency vehicles.

Edges are directed and weighted by travel time at ``speed_limit * speed_factor``.
Equal-cost paths are resolved toward the lexicographically smallest node-id
sequence so repeated queries always return the same route.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable

import numpy as np

from .errors import DomainError, UnreachableError
from .geom import Vec2, as_vec, distance

NodeId = Hashable

DEFAULT_SPEED_FACTOR = 1.3
DEFAULT_WALK_SPEED_KMH = 10.0


@dataclass(frozen=True)
class RoadEdge:
    source: NodeId
    target: NodeId
    length: float  # m
    speed_limit: float  # km/h


@dataclass(frozen=True)
class TravelTimeQueryResult:
    duration: float
    path: tuple


def edge_travel_time(length: float, speed_limit: float, speed_factor: float = 1.0) -> float:
    """Seconds needed to drive ``length`` meters at ``speed_limit`` km/h scaled by ``speed_factor``."""
    if not (length > 0 and speed_limit > 0 and speed_factor > 0):
        raise DomainError(
            f"edge_travel_time needs positive inputs, got {length=}, {speed_limit=}, {speed_factor=}"
        )
    return length * 3.6 / (speed_limit * speed_factor)


@dataclass(frozen=True)
class RoadGraph:
    nodes: dict  # node_id -> Vec2
    edges: tuple  # RoadEdge, ...
    _adj: dict = field(init=False, repr=False, compare=False)
    _coords: np.ndarray = field(init=False, repr=False, compare=False)
    _ids: list = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        nodes = {nid: as_vec(p) for nid, p in self.nodes.items()}
        object.__setattr__(self, "nodes", nodes)
        adj: dict = {nid: [] for nid in nodes}
        for e in self.edges:
            if e.source not in nodes or e.target not in nodes:
                raise DomainError(f"edge {e.source!r}->{e.target!r} references an unknown node")
            if not (e.length > 0 and e.speed_limit > 0):
                raise DomainError(f"edge {e.source!r}->{e.target!r} needs positive length and speed")
            adj[e.source].append(e)
        object.__setattr__(self, "_adj", adj)
        ids = sorted(nodes)
        object.__setattr__(self, "_ids", ids)
        coords = np.array([nodes[i] for i in ids], dtype=float).reshape(-1, 2)
        object.__setattr__(self, "_coords", coords)

    @classmethod
    def build(cls, nodes: Iterable, edges: Iterable, bidirectional: bool = False) -> "RoadGraph":
        """Build from ``(id, (x, y))`` pairs and ``(u, v, length, speed_limit)`` tuples."""
        node_map = {}
        for nid, pos in nodes:
            if nid in node_map:
                raise DomainError(f"duplicate node id {nid!r}")
            node_map[nid] = pos
        out = []
        for u, v, length, speed in edges:
            out.append(RoadEdge(u, v, float(length), float(speed)))
            if bidirectional:
                out.append(RoadEdge(v, u, float(length), float(speed)))
        return cls(node_map, tuple(out))

    def neighbors(self, node: NodeId, speed_factor: float):
        for e in self._adj[node]:
            yield e.target, edge_travel_time(e.length, e.speed_limit, speed_factor)

    def nearest_node(self, point) -> NodeId:
        if not self._ids:
            raise DomainError("road graph has no nodes")
        d2 = ((self._coords - np.asarray(point, dtype=float)) ** 2).sum(axis=1)
        # argmin returns the first minimum, i.e. the smallest id on ties
        return self._ids[int(np.argmin(d2))]


def _dijkstra(graph: RoadGraph, source: NodeId, speed_factor: float, stop_at=None):
    """Label-setting search keyed on (cost, node sequence)."""
    best: dict = {}
    heap = [(0.0, (source,))]
    while heap:
        d, path = heapq.heappop(heap)
        u = path[-1]
        if u in best:
            continue
        best[u] = (d, path)
        if u == stop_at:
            break
        for v, w in graph.neighbors(u, speed_factor):
            if v not in best:
                heapq.heappush(heap, (d + w, path + (v,)))
    return best


def shortest_travel_time(
    graph: RoadGraph, source: NodeId, dest: NodeId, speed_factor: float = 1.0
) -> TravelTimeQueryResult:
    for nid in (source, dest):
        if nid not in graph.nodes:
            raise KeyError(f"unknown node id {nid!r}")
    best = _dijkstra(graph, source, speed_factor, stop_at=dest)
    if dest not in best:
        raise UnreachableError(f"node {dest!r} is unreachable from {source!r}")
    d, path = best[dest]
    return TravelTimeQueryResult(d, path)


def travel_times_from(graph: RoadGraph, source: NodeId, speed_factor: float = 1.0) -> dict:
    """Driving time from ``source`` to every reachable node."""
    return {n: dp[0] for n, dp in _dijkstra(graph, source, speed_factor).items()}


def walk_time(a, b, walk_speed: float) -> float:
    if not walk_speed > 0:
        raise DomainError("walk speed must be positive")
    return distance(a, b) * 3.6 / walk_speed


def station_to_access_time(
    graph: RoadGraph,
    station,
    access_point,
    speed_factor: float = DEFAULT_SPEED_FACTOR,
    walk_speed: float = DEFAULT_WALK_SPEED_KMH,
) -> float:
    """Door-to-slipway time: walk to the road, drive, walk from the road."""
    n_station = graph.nearest_node(station)
    n_access = graph.nearest_node(access_point)
    drive = shortest_travel_time(graph, n_station, n_access, speed_factor).duration
    return (
        drive
        + walk_time(station, graph.nodes[n_station], walk_speed)
        + walk_time(access_point, graph.nodes[n_access], walk_speed)
    )


def station_access_matrix(
    graph: RoadGraph,
    stations: list,
    access_points: list,
    speed_factor: float = DEFAULT_SPEED_FACTOR,
    walk_speed: float = DEFAULT_WALK_SPEED_KMH,
) -> np.ndarray:
    """``station_to_access_time`` for every pair; ``inf`` where unreachable.

    ``stations`` and ``access_points`` are lists of positions.
    """
    access_nodes = [graph.nearest_node(a) for a in access_points]
    access_walk = [walk_time(a, graph.nodes[n], walk_speed) for a, n in zip(access_points, access_nodes)]
    out = np.full((len(stations), len(access_points)), math.inf)
    for i, s in enumerate(stations):
        ns = graph.nearest_node(s)
        times = travel_times_from(graph, ns, speed_factor)
        w0 = walk_time(s, graph.nodes[ns], walk_speed)
        for j, na in enumerate(access_nodes):
            if na in times:
                out[i, j] = times[na] + w0 + access_walk[j]
    return out


__all__ = [
    "DEFAULT_SPEED_FACTOR",
    "DEFAULT_WALK_SPEED_KMH",
    "RoadEdge",
    "RoadGraph",
    "TravelTimeQueryResult",
    "Vec2",
    "edge_travel_time",
    "shortest_travel_time",
    "station_access_matrix",
    "station_to_access_time",
    "travel_times_from",
    "walk_time",
]
