"""Planar helpers on complex numbers.

Points and vectors of every chart are Python complex numbers; rigid motions
are ``z -> a*z + b`` with ``|a| == 1``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

TAU = 2.0 * math.pi


def cross(u: complex, v: complex) -> float:
    return u.real * v.imag - u.imag * v.real


def dot(u: complex, v: complex) -> float:
    return u.real * v.real + u.imag * v.imag


def ccw_angle(u: complex, v: complex) -> float:
    """Counterclockwise angle in [0, 2pi) that turns direction u onto v."""
    a = cmath.phase(v / u)
    return a + TAU if a < 0 else a


def unsigned_angle(u: complex, v: complex) -> float:
    return abs(cmath.phase(v / u))


@dataclass(frozen=True)
class Motion:
    """Orientation-preserving rigid motion z -> a*z + b."""

    a: complex = 1 + 0j
    b: complex = 0j

    def __call__(self, z: complex) -> complex:
        return self.a * z + self.b

    def rotate(self, v: complex) -> complex:
        return self.a * v

    def then(self, other: "Motion") -> "Motion":
        """Apply self first, then other."""
        return Motion(other.a * self.a, other.a * self.b + other.b)

    def inverse(self) -> "Motion":
        inv = 1 / self.a
        return Motion(inv, -self.b * inv)

    @staticmethod
    def from_segments(p0: complex, p1: complex, q0: complex, q1: complex) -> "Motion":
        """Motion sending p0 -> q0 and the direction p0p1 onto q0q1."""
        a = (q1 - q0) / (p1 - p0)
        a /= abs(a)
        return Motion(a, q0 - a * p0)


def point_segment_distance(p: complex, a: complex, b: complex) -> float:
    ab = b - a
    L2 = dot(ab, ab)
    if L2 == 0.0:
        return abs(p - a)
    t = max(0.0, min(1.0, dot(p - a, ab) / L2))
    return abs(p - (a + t * ab))


def line_intersection(p: complex, q: complex, a: complex, b: complex):
    """Parameters (s, t) with p + s(q-p) == a + t(b-a); None when parallel."""
    d = q - p
    e = b - a
    den = cross(d, e)
    if abs(den) < 1e-15 * max(1.0, abs(d) * abs(e)):
        return None
    w = a - p
    return cross(w, e) / den, cross(w, d) / den


def polygon_area(poly) -> float:
    n = len(poly)
    return 0.5 * sum(cross(poly[i], poly[(i + 1) % n]) for i in range(n))


def clip_halfplane(poly, p: complex, d: complex, eps: float = 0.0):
    """Keep the part of a convex polygon left of the directed line p + t*d.

    Sutherland-Hodgman against one edge; points with signed distance >= -eps
    count as inside.
    """
    if not poly:
        return []
    d = d / abs(d)
    out = []
    n = len(poly)
    for i in range(n):
        cur, nxt = poly[i], poly[(i + 1) % n]
        sc, sn = cross(d, cur - p), cross(d, nxt - p)
        if sc >= -eps:
            out.append(cur)
        if (sc >= -eps) != (sn >= -eps):
            t = sc / (sc - sn)
            out.append(cur + t * (nxt - cur))
    return _dedupe(out)


def clip_convex(subject, clip):
    """Intersection of two convex CCW polygons."""
    out = list(subject)
    n = len(clip)
    for i in range(n):
        if not out:
            break
        out = clip_halfplane(out, clip[i], clip[(i + 1) % n] - clip[i])
    return out


def _dedupe(poly, tol: float = 1e-13):
    res = []
    for z in poly:
        if not res or abs(z - res[-1]) > tol:
            res.append(z)
    if len(res) > 1 and abs(res[0] - res[-1]) <= tol:
        res.pop()
    return res


def regular_polygon(n: int, side: float):
    """CCW regular n-gon with corner 0 at the origin and corner 1 on +x."""
    pts = [0j]
    heading = 1 + 0j
    turn = cmath.exp(1j * TAU / n)
    for _ in range(n - 1):
        pts.append(pts[-1] + side * heading)
        heading *= turn
    return pts
