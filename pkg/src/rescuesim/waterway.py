"""Shortest boat routes that stay on the water surface.

Lakes are polygons with islands as holes. Routing uses the classic visibility
graph over ring vertices: a shortest obstacle-avoiding path only bends at
reflex vertices, so Dijkstra over mutually visible vertices (plus the start and
goal) is exact.
"""

from __future__ import annotations

import functools
import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError, PlacementError, UnreachableError
from .geom import Vec2, as_vec, closest_point_on_ring, distance, segments_properly_cross, signed_area

SNAP_TOLERANCE = 0.5  # m
DEFAULT_BOAT_SPEED_KMH = 70.0

_EPS = 1e-9


def _normalize_ring(ring, ccw: bool) -> tuple:
    pts = [as_vec(p) for p in ring]
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts = pts[:-1]
    if len(pts) < 3:
        raise ConfigurationError("a ring needs at least 3 distinct vertices")
    a = signed_area(pts)
    if a == 0:
        raise ConfigurationError("ring has zero area")
    if (a > 0) != ccw:
        pts.reverse()
    return tuple(pts)


def ring_is_simple(ring) -> bool:
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or j == (i + 1) % n:
                continue
            c, d = ring[j], ring[(j + 1) % n]
            if segments_properly_cross(a, b, c, d):
                return False
    return len(set(ring)) == n


@dataclass(frozen=True)
class WaterPolygon:
    """A lake: counterclockwise outer ring plus clockwise island rings.

    Ring orientation is normalized on construction and a repeated closing
    vertex is dropped, so callers may pass rings either way round.
    """

    outer: tuple
    holes: tuple = ()
    id: str = ""

    def __post_init__(self):
        outer = _normalize_ring(self.outer, ccw=True)
        holes = tuple(_normalize_ring(h, ccw=False) for h in self.holes)
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "holes", holes)

    @property
    def rings(self) -> tuple:
        return (self.outer,) + self.holes

    def validate(self) -> list[str]:
        errors = []
        for k, ring in enumerate(self.rings):
            if not ring_is_simple(ring):
                errors.append(f"ring {k} of water polygon {self.id!r} self-intersects")
        outer = self.outer
        for k, hole in enumerate(self.holes):
            if not all(_in_ring_strict(p, outer) for p in hole):
                errors.append(f"hole {k} of water polygon {self.id!r} is not strictly inside the outer ring")
        return errors

    @functools.cached_property
    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        a, b = [], []
        for ring in self.rings:
            n = len(ring)
            for i in range(n):
                a.append(ring[i])
                b.append(ring[(i + 1) % n])
        return np.array(a, dtype=float), np.array(b, dtype=float)

    @functools.cached_property
    def vertices(self) -> np.ndarray:
        return np.array([p for ring in self.rings for p in ring], dtype=float)

    def boundary_distance(self, p) -> float:
        a, b = self.edges
        return float(_point_segment_distances(np.asarray(p, dtype=float), a, b).min())

    def contains(self, p, tol: float = _EPS) -> bool:
        """Closed containment: boundary points (within ``tol``) count as water."""
        if self.boundary_distance(p) <= tol:
            return True
        return _even_odd(np.asarray(p, dtype=float), *self.edges)

    def snap(self, p, tol: float = SNAP_TOLERANCE) -> Vec2:
        """Return ``p`` if it is on the water, else its boundary projection within ``tol``."""
        p = as_vec(p)
        if self.contains(p):
            return p
        q = min((closest_point_on_ring(p, r) for r in self.rings), key=lambda q: distance(p, q))
        if distance(p, q) <= tol:
            return q
        raise PlacementError(f"point {tuple(p)} lies {distance(p, q):.3f} m outside water polygon {self.id!r}")


def _in_ring_strict(p, ring) -> bool:
    a = np.array(ring, dtype=float)
    b = np.roll(a, -1, axis=0)
    p = np.asarray(p, dtype=float)
    if _point_segment_distances(p, a, b).min() <= _EPS:
        return False
    return _even_odd(p, a, b)


def _even_odd(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> bool:
    y = p[1]
    cond = (a[:, 1] > y) != (b[:, 1] > y)
    if not cond.any():
        return False
    ac, bc = a[cond], b[cond]
    xc = ac[:, 0] + (y - ac[:, 1]) * (bc[:, 0] - ac[:, 0]) / (bc[:, 1] - ac[:, 1])
    return bool(np.count_nonzero(p[0] < xc) % 2)


def _point_segment_distances(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d = b - a
    den = (d * d).sum(axis=1)
    t = np.where(den > 0, ((p - a) * d).sum(axis=1) / np.where(den > 0, den, 1.0), 0.0)
    t = np.clip(t, 0.0, 1.0)
    proj = a + t[:, None] * d
    return np.hypot(*(p - proj).T)


def _cross(o, a, b):
    """z-component of (a - o) x (b - o), broadcasting over leading axes."""
    return (a[..., 0] - o[..., 0]) * (b[..., 1] - o[..., 1]) - (a[..., 1] - o[..., 1]) * (b[..., 0] - o[..., 0])


def _proper_crossings(p: np.ndarray, q: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Boolean (K, E): segment p-q[k] strictly crosses edge a[e]-b[e]."""
    p = np.broadcast_to(p, q.shape)
    P, Q = p[:, None, :], q[:, None, :]
    A, B = a[None, :, :], b[None, :, :]
    d1 = _cross(A, B, P)
    d2 = _cross(A, B, Q)
    d3 = _cross(P, Q, A)
    d4 = _cross(P, Q, B)
    scale = np.maximum(np.abs(Q - P).sum(-1), np.abs(B - A).sum(-1))
    tol = 1e-12 * np.maximum(scale, 1.0) ** 2
    return (((d1 > tol) & (d2 < -tol)) | ((d1 < -tol) & (d2 > tol))) & (
        ((d3 > tol) & (d4 < -tol)) | ((d3 < -tol) & (d4 > tol))
    )


def segment_in_water(water: WaterPolygon, p, q) -> bool:
    """True iff the closed segment p-q stays inside the closed water region.

    Grazing a vertex or running along the shoreline is allowed.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    a, b = water.edges
    if _proper_crossings(p, q[None, :], a, b).any():
        return False
    d = q - p
    L2 = float(d @ d)
    ts = [0.0, 1.0]
    if L2 > 0:
        v = water.vertices
        t = ((v - p) @ d) / L2
        foot = p + np.clip(t, 0, 1)[:, None] * d
        on = (np.hypot(*(v - foot).T) <= 1e-9 * max(1.0, math.sqrt(L2))) & (t > 0) & (t < 1)
        ts.extend(t[on].tolist())
    ts.sort()
    for t0, t1 in zip(ts, ts[1:]):
        if t1 - t0 <= 1e-12:
            continue
        m = p + 0.5 * (t0 + t1) * d
        if not water.contains(m, tol=1e-7):
            return False
    return True


class VisibilityGraph:
    """Mutual visibility among all ring vertices of one lake."""

    def __init__(self, water: WaterPolygon):
        self.water = water
        self.points = water.vertices
        n = len(self.points)
        self.adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if segment_in_water(water, self.points[i], self.points[j]):
                    w = float(np.hypot(*(self.points[i] - self.points[j])))
                    self.adj[i].append((j, w))
                    self.adj[j].append((i, w))

    def edge_set(self) -> set[tuple[int, int]]:
        return {(i, j) for i, nb in enumerate(self.adj) for j, _ in nb if i < j}

    def visible_from(self, p, interior: bool | None = None) -> np.ndarray:
        """Boolean mask of vertices visible from point ``p`` (on the water)."""
        water = self.water
        p = np.asarray(p, dtype=float)
        if interior is None:
            interior = water.boundary_distance(p) > 1e-7
        if not interior:
            return np.array([segment_in_water(water, p, v) for v in self.points], dtype=bool)
        a, b = water.edges
        pts = self.points
        vis = ~_proper_crossings(p, pts, a, b).any(axis=1)
        # a vertex sitting on the open segment p-v forces the exact test
        d = pts - p
        L2 = (d * d).sum(axis=1)
        rel = pts[None, :, :] - p
        t = (rel * d[:, None, :]).sum(-1) / np.where(L2 > 0, L2, 1.0)[:, None]
        cr = np.abs(d[:, None, 0] * rel[..., 1] - d[:, None, 1] * rel[..., 0])
        touch = (cr <= 1e-9 * np.maximum(L2, 1.0)[:, None]) & (t > 1e-12) & (t < 1 - 1e-12)
        for k in np.nonzero(vis & touch.any(axis=1))[0]:
            vis[k] = segment_in_water(water, p, pts[k])
        return vis

    def distances_from(self, p) -> tuple[np.ndarray, np.ndarray]:
        """Shortest on-water distance and predecessor from ``p`` to each vertex.

        Predecessor ``-1`` means reached directly from ``p``.
        """
        n = len(self.points)
        dist = np.full(n, math.inf)
        pred = np.full(n, -2, dtype=int)
        vis = self.visible_from(p)
        heap = []
        for k in np.nonzero(vis)[0]:
            d0 = float(np.hypot(*(self.points[k] - p)))
            dist[k] = d0
            pred[k] = -1
            heap.append((d0, int(k)))
        heapq.heapify(heap)
        done = np.zeros(n, dtype=bool)
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            for v, w in self.adj[u]:
                nd = d + w
                if nd < dist[v]:
                    dist[v] = nd
                    pred[v] = u
                    heapq.heappush(heap, (nd, v))
        return dist, pred


@functools.lru_cache(maxsize=64)
def visibility_graph(water: WaterPolygon) -> VisibilityGraph:
    return VisibilityGraph(water)


def build_visibility_graph(water: WaterPolygon) -> VisibilityGraph:
    errors = water.validate()
    if errors:
        raise ConfigurationError("; ".join(errors))
    return visibility_graph(water)


@dataclass(frozen=True)
class WaterPath:
    waypoints: tuple
    length: float  # m
    duration: float  # s


def kmh_to_ms(v: float) -> float:
    return v / 3.6


def water_shortest_path(
    water: WaterPolygon, start, goal, boat_speed: float = DEFAULT_BOAT_SPEED_KMH
) -> WaterPath:
    if not boat_speed > 0:
        raise DomainError("boat speed must be positive")
    graph = build_visibility_graph(water)
    s = water.snap(start)
    g = water.snap(goal)
    speed = kmh_to_ms(boat_speed)
    if segment_in_water(water, s, g):
        length = distance(s, g)
        return WaterPath((s, g) if length > 0 else (s,), length, length / speed)
    dist, pred = graph.distances_from(s)
    vis_goal = graph.visible_from(g)
    cand = np.where(vis_goal, dist + np.hypot(*(graph.points - np.asarray(g)).T), math.inf)
    k = int(np.argmin(cand))
    if not math.isfinite(cand[k]):
        raise UnreachableError(f"goal {tuple(g)} is not reachable on water from {tuple(s)}")
    chain = []
    while k >= 0:
        chain.append(Vec2(*graph.points[k]))
        k = int(pred[k])
    waypoints = (s, *reversed(chain), g)
    length = float(sum(distance(p, q) for p, q in zip(waypoints, waypoints[1:])))
    return WaterPath(waypoints, length, length / speed)


class WaterRouter:
    """Repeated boat-time queries from fixed launch points to moving targets.

    Distances from each launch point to every lake vertex are computed once;
    a target query then only needs the target's own visibility mask.
    """

    def __init__(self, waters: list[WaterPolygon], launch_points: list, boat_speed: float = DEFAULT_BOAT_SPEED_KMH):
        self.waters = list(waters)
        self.speed = kmh_to_ms(boat_speed)
        self.launch = []  # per launch point: (lake index or None, snapped point)
        for p in launch_points:
            lake, snapped = None, None
            for i, w in enumerate(self.waters):
                try:
                    snapped = w.snap(p)
                except PlacementError:
                    continue
                lake = i
                break
            self.launch.append((lake, snapped))
        self._per_lake = {}
        for i, w in enumerate(self.waters):
            members = [k for k, (lake, _) in enumerate(self.launch) if lake == i]
            if not members:
                continue
            graph = visibility_graph(w)
            dists = np.array([graph.distances_from(self.launch[k][1])[0] for k in members]).reshape(
                len(members), len(graph.points)
            )
            self._per_lake[i] = (members, graph, dists)

    def lake_of(self, p) -> int | None:
        for i, w in enumerate(self.waters):
            if w.contains(p):
                return i
        return None

    def travel_times(self, target) -> np.ndarray:
        """Boat seconds from every launch point to ``target``; ``inf`` if unreachable."""
        out = np.full(len(self.launch), math.inf)
        lake = self.lake_of(target)
        if lake is None or lake not in self._per_lake:
            return out
        members, graph, dists = self._per_lake[lake]
        water = self.waters[lake]
        t = np.asarray(target, dtype=float)
        vis = graph.visible_from(t)
        via = np.where(vis, dists + np.hypot(*(graph.points - t).T), math.inf).min(axis=1)
        for row, k in enumerate(members):
            src = self.launch[k][1]
            if segment_in_water(water, src, t):
                length = distance(src, t)
            else:
                length = float(via[row])
            out[k] = length / self.speed
        return out
