"""Planar geometry in a local east/north frame (meters).

Headings are measured clockwise from true north, so a UAV flying east has
heading pi/2. With that convention the rotation ``R(heading)`` maps a
world-frame displacement onto (cross-track, along-track) camera axes, and the
footprint test reduces to an axis-aligned box check against ``(half_a, half_b)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError


class Vec2(NamedTuple):
    x: float
    y: float

    def __add__(self, other):  # type: ignore[override]
        return Vec2(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Vec2(self.x - other[0], self.y - other[1])

    def __mul__(self, k):  # type: ignore[override]
        return Vec2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __neg__(self):
        return Vec2(-self.x, -self.y)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def dot(self, other) -> float:
        return self.x * other[0] + self.y * other[1]


def as_vec(p) -> Vec2:
    """Coerce any 2-sequence to a finite Vec2."""
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise DomainError(f"non-finite coordinate {p!r}")
    return Vec2(x, y)


def distance(p, q) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


@dataclass(frozen=True)
class CameraSpec:
    """Half-aperture angles (radians) of a nadir-pointing camera.

    ``alpha`` governs the first footprint axis and ``beta`` the second.
    """

    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not (0.0 < v < math.pi / 2):
                raise DomainError(f"camera {name}={v!r} must lie in (0, pi/2)")


@dataclass(frozen=True)
class CameraFootprint:
    half_a: float
    half_b: float

    def __post_init__(self):
        if not (self.half_a > 0 and self.half_b > 0):
            raise DomainError(f"footprint half-extents must be positive, got {self}")


@dataclass(frozen=True)
class UavPose:
    position: Vec2
    heading: float

    def __post_init__(self):
        if not math.isfinite(self.heading):
            raise DomainError("heading must be finite")


def compute_footprint(camera: CameraSpec, altitude: float) -> CameraFootprint:
    if not altitude > 0:
        raise DomainError(f"altitude must be positive, got {altitude!r}")
    return CameraFootprint(altitude * math.tan(camera.alpha), altitude * math.tan(camera.beta))


def heading_angle(air_vector) -> float:
    """Signed clockwise angle from north to ``air_vector``, in (-pi, pi]."""
    x, y = float(air_vector[0]), float(air_vector[1])
    if x == 0.0 and y == 0.0:
        raise DomainError("heading undefined for a zero air vector")
    xi = math.atan2(x, y)
    return math.pi if xi == -math.pi else xi


def rotate(v, angle: float) -> Vec2:
    c, s = math.cos(angle), math.sin(angle)
    return Vec2(c * v[0] - s * v[1], s * v[0] + c * v[1])


def target_visible(pose: UavPose, footprint: CameraFootprint, target) -> bool:
    d = (pose.position[0] - target[0], pose.position[1] - target[1])
    u, v = rotate(d, pose.heading)
    return abs(u) <= footprint.half_a and abs(v) <= footprint.half_b


# --- polygon helpers shared by waterway, sampling and search ---------------

def signed_area(ring) -> float:
    """Shoelace area; positive for counterclockwise rings.

    Coordinates are taken relative to the first vertex to limit cancellation
    for small polygons far from the origin.
    """
    n = len(ring)
    ox, oy = ring[0]
    s = 0.0
    for i in range(1, n - 1):
        x0, y0 = ring[i][0] - ox, ring[i][1] - oy
        x1, y1 = ring[i + 1][0] - ox, ring[i + 1][1] - oy
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def centroid(ring) -> Vec2:
    a = signed_area(ring)
    if a == 0:
        raise DomainError("centroid of a zero-area ring")
    ox, oy = ring[0]
    cx = cy = 0.0
    for i in range(1, len(ring) - 1):
        x0, y0 = ring[i][0] - ox, ring[i][1] - oy
        x1, y1 = ring[i + 1][0] - ox, ring[i + 1][1] - oy
        cross = x0 * y1 - x1 * y0
        cx += (x0 + x1) * cross
        cy += (y0 + y1) * cross
    return Vec2(ox + cx / (6 * a), oy + cy / (6 * a))


def point_in_ring(p, ring) -> bool:
    """Even-odd ray cast. Points exactly on the boundary may go either way."""
    x, y = p[0], p[1]
    inside = False
    n = len(ring)
    j = n - 1
    for i in range(n):
        xi, yi = ring[i]
        xj, yj = ring[j]
        if (yi > y) != (yj > y):
            xc = xi + (y - yi) * (xj - xi) / (yj - yi)
            if x < xc:
                inside = not inside
        j = i
    return inside


def closest_point_on_segment(p, a, b) -> Vec2:
    ax, ay = a
    dx, dy = b[0] - ax, b[1] - ay
    den = dx * dx + dy * dy
    if den == 0:
        return Vec2(ax, ay)
    t = ((p[0] - ax) * dx + (p[1] - ay) * dy) / den
    t = min(1.0, max(0.0, t))
    return Vec2(ax + t * dx, ay + t * dy)


def closest_point_on_ring(p, ring) -> Vec2:
    best, best_d = None, math.inf
    n = len(ring)
    for i in range(n):
        q = closest_point_on_segment(p, ring[i], ring[(i + 1) % n])
        d = distance(p, q)
        if d < best_d:
            best, best_d = q, d
    return best


def segments_properly_cross(p1, p2, q1, q2, eps: float = 1e-12) -> bool:
    """True when the open segments cross at a single interior point of both."""

    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    scale = max(abs(p2[0] - p1[0]) + abs(p2[1] - p1[1]), abs(q2[0] - q1[0]) + abs(q2[1] - q1[1]), 1.0)
    tol = eps * scale * scale
    return ((d1 > tol and d2 < -tol) or (d1 < -tol and d2 > tol)) and (
        (d3 > tol and d4 < -tol) or (d3 < -tol and d4 > tol)
    )
