"""Geodesics by face-sequence unfolding.

Shortest paths are found by exhaustive enumeration of backtrack-free face
sequences: each sequence is laid out in the plane, and the straight segment
between the unfolded endpoints is accepted when it crosses every shared edge
strictly inside that edge.  A visibility cone through the shared edges and a
distance lower bound prune the search without ever dropping a tie.
"""

from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .planar import TAU, Motion, ccw_angle, cross, line_intersection, point_segment_distance
from .surface import (
    PolyhedralSurface,
    SurfacePoint,
    coords_in_face,
    faces_containing,
    locate,
    skeleton_distance,
    total_angle,
)
from .tolerances import EPS_ANG, EPS_LEN, MAX_FACES


class GeodesicError(ValueError):
    pass


class NoPathError(GeodesicError):
    """No valid straight unfolding within the face budget."""


class ConePointHit(GeodesicError):
    def __init__(self, arc_length: float, vertex: int):
        super().__init__(f"ray hits cone point v{vertex} at arc length {arc_length:.12g}")
        self.arc_length = arc_length
        self.vertex = vertex


@dataclass(frozen=True)
class UnfoldedChart:
    faces: tuple[int, ...]
    placements: tuple[Motion, ...]  # face chart -> common plane
    windows: tuple[tuple[complex, complex], ...]  # shared edges, in plane coordinates

    def place(self, i: int, z: complex) -> complex:
        return self.placements[i](z)

    def polygon(self, s: PolyhedralSurface, i: int) -> list[complex]:
        return [self.placements[i](c) for c in s.faces[self.faces[i]].corners]


def unfold(s: PolyhedralSurface, faces) -> UnfoldedChart:
    """Lay a face sequence out in the plane, the first face in its own chart."""
    faces = tuple(faces)
    if not faces:
        raise GeodesicError("empty face sequence")
    placements = [Motion()]
    windows = []
    for i in range(1, len(faces)):
        f, g = faces[i - 1], faces[i]
        if i >= 2 and faces[i - 2] == g:
            raise GeodesicError(f"face sequence backtracks at {faces[i - 2:i + 1]}")
        k = s.face_between(f, g)
        glue = s.neighbor(f, k)
        M = glue.motion.inverse().then(placements[-1])
        placements.append(M)
        a, b = s.faces[f].edge(k)
        windows.append((placements[-2](a), placements[-2](b)))
    return UnfoldedChart(faces, tuple(placements), tuple(windows))


@dataclass(frozen=True)
class GeodesicSegment:
    surface: PolyhedralSurface
    start: SurfacePoint
    end: SurfacePoint
    chart: UnfoldedChart
    P: complex
    Q: complex
    crossings: tuple[float, ...]  # arc-length fractions where shared edges are crossed
    boundary_edge: int | None = None  # set when the segment runs along a skeleton edge

    @property
    def faces(self) -> tuple[int, ...]:
        return self.chart.faces

    @property
    def length(self) -> float:
        return abs(self.Q - self.P)

    @property
    def signature(self) -> tuple:
        if self.boundary_edge is not None:
            return ("edge", self.boundary_edge)
        return ("faces",) + self.faces

    def reversed(self) -> "GeodesicSegment":
        faces = self.faces[::-1]
        chart = unfold(self.surface, faces)
        # re-express in the chart anchored at the old last face
        M = self.chart.placements[-1].inverse()
        P, Q = M(self.Q), M(self.P)
        return GeodesicSegment(
            self.surface, self.end, self.start, chart, P, Q,
            tuple(1 - c for c in self.crossings[::-1]), self.boundary_edge,
        )

    def pieces(self):
        """Per-face sub-segments as (face, local start, local end, t0, t1)."""
        ts = (0.0,) + self.crossings + (1.0,)
        d = self.Q - self.P
        out = []
        for i, f in enumerate(self.faces):
            inv = self.chart.placements[i].inverse()
            out.append((f, inv(self.P + ts[i] * d), inv(self.P + ts[i + 1] * d), ts[i], ts[i + 1]))
        return out

    def point_at(self, frac: float, eps: float = EPS_LEN) -> SurfacePoint:
        """Surface point at the given arc-length fraction."""
        if frac <= 0:
            return self.start
        if frac >= 1:
            return self.end
        ts = (0.0,) + self.crossings + (1.0,)
        for i in range(len(self.faces)):
            if ts[i] <= frac <= ts[i + 1]:
                inv = self.chart.placements[i].inverse()
                return locate(self.surface, self.faces[i], inv(self.P + frac * (self.Q - self.P)), eps)
        raise AssertionError("unreachable")

    def polyline(self):
        out = []
        for f, a, b, _, _ in self.pieces():
            out.append([f, a.real, a.imag])
            out.append([f, b.real, b.imag])
        return out

    def to_json(self) -> dict:
        return {
            "from": self.start.to_json(),
            "to": self.end.to_json(),
            "faces": list(self.faces),
            "length": self.length,
            "polyline": self.polyline(),
        }

    def __repr__(self):
        return f"GeodesicSegment({self.start}->{self.end}, faces={self.faces}, length={self.length:.12g})"


# -- enumeration -----------------------------------------------------------------------


def _window_interval(P, ref, A, B):
    """Directions (relative to ref) from P through the open segment AB."""
    dA, dB = A - P, B - P
    if abs(dA) < 1e-12 or abs(dB) < 1e-12:
        return None
    sweep = cmath.phase(dB / dA)
    if abs(sweep) < 1e-12 or abs(sweep) > math.pi - 1e-12:
        return None  # P on the line of the window
    a = cmath.phase(dA / ref)
    b = a + sweep
    return (a, b) if a < b else (b, a)


def _intersect(cone, iv):
    best = None
    for shift in (0.0, TAU, -TAU):
        lo = max(cone[0], iv[0] + shift)
        hi = min(cone[1], iv[1] + shift)
        if hi > lo - 1e-12 and (best is None or hi - lo > best[1] - best[0]):
            best = (lo, hi)
    return best


def _validate(P, Q, windows, eps):
    """Arc fractions of the crossings if PQ crosses every window strictly inside."""
    L = abs(Q - P)
    if L <= eps:
        return None
    ss = []
    prev = 0.0
    for A, B in windows:
        st = line_intersection(P, Q, A, B)
        if st is None:
            return None
        s, t = st
        w = abs(B - A)
        if not (eps / w < t < 1 - eps / w):
            return None
        if not (eps / L < s < 1 - eps / L) or s < prev - 1e-12:
            return None
        ss.append(s)
        prev = s
    return tuple(ss)


def _boundary_edge(s, face, P, Q, eps):
    f = s.faces[face]
    for k in range(len(f)):
        a, b = f.edge(k)
        if point_segment_distance(P, a, b) <= eps and point_segment_distance(Q, a, b) <= eps:
            u, v = f.edge_vertices(k)
            return s.edge_index[(min(u, v), max(u, v))]
    return None


def candidate_strips(s: PolyhedralSurface, p: SurfacePoint, q: SurfacePoint,
                     max_faces: int = MAX_FACES, eps: float = EPS_LEN, bound: float | None = None):
    """All straight unfoldings from p to q (locally geodesic, vertex-free interiors).

    With ``bound`` set, strips whose unfolded lower bound exceeds it are pruned,
    and the bound tightens to the best length found plus ``eps``.
    """
    if max_faces < 1:
        raise GeodesicError("max_faces must be >= 1")
    found = []
    best = [math.inf if bound is None else bound]
    prune = bound is not None
    qfaces = set(faces_containing(s, q))

    for f0 in faces_containing(s, p):
        P = coords_in_face(s, p, f0)
        _dfs(s, p, q, P, qfaces, [f0], [Motion()], [], None, None, max_faces, eps, found, best, prune)
    return found


def _dfs(s, p, q, P, qfaces, seq, placements, windows, ref, cone, max_faces, eps, found, best, prune):
    f = seq[-1]
    M = placements[-1]
    if f in qfaces:
        Q = M(coords_in_face(s, q, f))
        if len(seq) == 1:
            if abs(Q - P) > eps:
                found.append(GeodesicSegment(s, p, q, UnfoldedChart(tuple(seq), tuple(placements), ()),
                                             P, Q, (), _boundary_edge(s, f, P, Q, eps)))
        else:
            ss = _validate(P, Q, windows, eps)
            if ss is not None:
                seg = GeodesicSegment(s, p, q, UnfoldedChart(tuple(seq), tuple(placements), tuple(windows)),
                                      P, Q, ss)
                found.append(seg)
                if prune and seg.length + eps < best[0]:
                    best[0] = seg.length + eps
    if len(seq) >= max_faces:
        return
    face = s.faces[f]
    for k in range(len(face)):
        glue = s.neighbor(f, k)
        if len(seq) >= 2 and glue.face == seq[-2]:
            continue
        a, b = face.edge(k)
        A, B = M(a), M(b)
        if prune and point_segment_distance(P, A, B) > best[0]:
            continue
        r = ref if ref is not None else ((A + B) / 2 - P)
        if abs(r) < 1e-15:
            continue
        if ref is None:
            r = r / abs(r)
        iv = _window_interval(P, r, A, B)
        if iv is None:
            continue
        nc = iv if cone is None else _intersect(cone, iv)
        if nc is None:
            continue
        Mg = glue.motion.inverse().then(M)
        seq.append(glue.face)
        placements.append(Mg)
        windows.append((A, B))
        _dfs(s, p, q, P, qfaces, seq, placements, windows, r, nc, max_faces, eps, found, best, prune)
        seq.pop()
        placements.pop()
        windows.pop()


def _dedupe(segs, eps):
    out = {}
    for seg in sorted(segs, key=lambda g: (g.length, g.faces)):
        key = seg.signature
        if key not in out:
            out[key] = seg
    return sorted(out.values(), key=lambda g: (g.length, g.faces))


def shortest_geodesics(s: PolyhedralSurface, p: SurfacePoint, q: SurfacePoint,
                       max_faces: int = MAX_FACES, eps: float = EPS_LEN) -> list[GeodesicSegment]:
    """All globally shortest segments from p to q (ties within eps)."""
    return list(_shortest_cached(s, p, q, max_faces, eps))


@lru_cache(maxsize=4096)
def _shortest_cached(s, p, q, max_faces, eps):
    if p == q:
        raise GeodesicError("endpoints coincide")
    segs = candidate_strips(s, p, q, max_faces, eps, bound=math.inf)
    if not segs:
        raise NoPathError(f"no straight unfolding from {p} to {q} within {max_faces} faces")
    segs = _dedupe(segs, eps)
    m = segs[0].length
    return tuple(g for g in segs if g.length < m + eps)


def distance(s, p, q, max_faces: int = MAX_FACES) -> float:
    return shortest_geodesics(s, p, q, max_faces)[0].length


def shape_word(seg: GeodesicSegment) -> str:
    """Face shapes crossed, one letter each: "tst" is triangle, square, triangle."""
    s = seg.surface
    return "".join(s.faces[f].shape[0] for f in seg.faces)


def traverses(seg: GeodesicSegment, face: int) -> bool:
    if seg.boundary_edge is not None:
        return face in seg.faces
    return face in seg.faces


def geodesic_between(s: PolyhedralSurface, p: SurfacePoint, q: SurfacePoint, witness: int | None = None,
                     max_faces: int = MAX_FACES) -> GeodesicSegment:
    """The shortest segment from p to q that traverses the witness face."""
    segs = shortest_geodesics(s, p, q, max_faces)
    if witness is None:
        if len(segs) != 1:
            raise GeodesicError(f"{len(segs)} tied geodesics from {p} to {q}; a witness face is required")
        return segs[0]
    hits = [g for g in segs if traverses(g, witness)]
    if len(hits) != 1:
        raise GeodesicError(
            f"witness face {witness} matches {len(hits)} of {len(segs)} tied geodesics from {p} to {q}"
        )
    return hits[0]


def disambiguating_face(s, p, q, seg: GeodesicSegment, prefer=None, max_faces: int = MAX_FACES) -> int:
    """A face traversed by seg and by no other tied shortest segment."""
    segs = shortest_geodesics(s, p, q, max_faces)
    others = [g for g in segs if g.signature != seg.signature]
    cands = [f for f in seg.faces if not any(traverses(g, f) for g in others)]
    if not cands:
        raise GeodesicError(f"no face singles out {seg}")
    if prefer:
        pref = [f for f in cands if f in prefer]
        if pref:
            return pref[0]
    return cands[0]


# -- directions ------------------------------------------------------------------------


@dataclass(frozen=True)
class DirectionCoordinate:
    base: SurfacePoint
    phi: float
    total: float

    def to_json(self):
        return {"base": self.base.to_json(), "phi": self.phi, "total": self.total}


def direction_in_face(s: PolyhedralSurface, p: SurfacePoint, face: int, v: complex) -> DirectionCoordinate:
    """Fan coordinate of the tangent vector v (given in the chart of ``face``) at p."""
    theta = total_angle(s, p)
    if p.kind == "vertex":
        f = s.faces[face]
        i = f.corner_of(p.index)
        c = f.corners[i]
        nxt = f.corners[(i + 1) % len(f)]
        off = ccw_angle(nxt - c, v)
        if off > f.corner_angle(i) + 1e-9:  # tiny negative offsets wrap around
            off = off - TAU if off > math.pi else off
            off = max(off, 0.0)
        phi = s.vertices[p.index].starts[s.star_entry(p.index, face)] + off
    elif p.kind == "edge":
        fc, kc = _edge_home(s, p.index)
        if face != fc:
            k = [kk for g, kk in s.faces_at_edge(p.index) if g == face][0]
            v = s.neighbor(face, k).motion.rotate(v)
        a, b = s.faces[fc].edge(kc)
        phi = ccw_angle(b - a, v)
    else:
        phi = ccw_angle(1 + 0j, v)
    phi = phi % theta
    if theta - phi < 1e-12:
        phi = 0.0
    return DirectionCoordinate(p, phi, theta)


def _edge_home(s, e):
    """Lowest-id face bordering edge e, with its edge index.

    Edge-point directions are measured from that face's directed edge, so
    coordinates in (0, pi) point into it.
    """
    return min(s.faces_at_edge(e))


def tangent_in_face(s: PolyhedralSurface, d: DirectionCoordinate):
    """Inverse of direction_in_face: (face, unit vector) realizing the direction."""
    p = d.base
    if p.kind == "vertex":
        st = s.vertices[p.index]
        i = max(j for j, start in enumerate(st.starts) if start <= d.phi + 1e-12)
        fid, c = st.corners[i]
        f = s.faces[fid]
        e = f.corners[(c + 1) % len(f)] - f.corners[c]
        return fid, (e / abs(e)) * cmath.exp(1j * (d.phi - st.starts[i]))
    if p.kind == "edge":
        fc, kc = _edge_home(s, p.index)
        a, b = s.faces[fc].edge(kc)
        v = (b - a) / abs(b - a) * cmath.exp(1j * d.phi)
        if d.phi <= math.pi:
            return fc, v
        return s.neighbor(fc, kc).face, s.neighbor(fc, kc).motion.rotate(v)
    return p.index, cmath.exp(1j * d.phi)


def direction_at(seg: GeodesicSegment, end: str = "start") -> DirectionCoordinate:
    s = seg.surface
    if end == "start":
        return direction_in_face(s, seg.start, seg.faces[0], seg.Q - seg.P)
    if end == "end":
        v = seg.chart.placements[-1].inverse().rotate(seg.P - seg.Q)
        return direction_in_face(s, seg.end, seg.faces[-1], v)
    raise ValueError("end must be 'start' or 'end'")


def angle_between(d1: DirectionCoordinate, d2: DirectionCoordinate) -> float:
    if d1.base != d2.base:
        raise GeodesicError("directions have different base points")
    x = abs(d1.phi - d2.phi)
    return min(x, d1.total - x)


def ccw_wedge(d1: DirectionCoordinate, d2: DirectionCoordinate) -> float:
    """Angle swept counterclockwise from d1 to d2 at their common base point."""
    if d1.base != d2.base:
        raise GeodesicError("directions have different base points")
    return (d2.phi - d1.phi) % d1.total


def interior_angle(s: PolyhedralSurface, seg1: GeodesicSegment, seg2: GeodesicSegment,
                   common: SurfacePoint, witness, eps: float = EPS_ANG) -> float:
    """Wedge between two segments at a shared endpoint that contains the witness.

    ``witness`` is a DirectionCoordinate at ``common`` or a SurfacePoint, in
    which case the direction of the shortest geodesic towards it is used.
    """
    d1 = _dir_from(seg1, common)
    d2 = _dir_from(seg2, common)
    if isinstance(witness, SurfacePoint):
        ws = shortest_geodesics(s, common, witness)
        dirs = {round(direction_at(g).phi, 9) for g in ws}
        if len(dirs) != 1:
            raise GeodesicError("witness is reached by several geodesics")
        witness = direction_at(ws[0])
    w = ccw_wedge(d1, d2)
    x = ccw_wedge(d1, witness)
    if x < eps or abs(x - w) < eps or abs(x - d1.total) < eps:
        raise GeodesicError("witness lies on a wedge boundary")
    return w if x < w else d1.total - w


def _dir_from(seg: GeodesicSegment, p: SurfacePoint) -> DirectionCoordinate:
    if seg.start == p:
        return direction_at(seg, "start")
    if seg.end == p:
        return direction_at(seg, "end")
    raise GeodesicError(f"{p} is not an endpoint of {seg}")


# -- vertex fans -----------------------------------------------------------------------


@dataclass(frozen=True)
class FanEntry:
    segment: GeodesicSegment
    phi: float
    gap: float  # angle to the next entry counterclockwise

    @property
    def target(self) -> int:
        return self.segment.end.index


def vertex_fan(s: PolyhedralSurface, u: int, max_faces: int = MAX_FACES) -> list[FanEntry]:
    """All vertex-to-vertex shortest segments out of u, in counterclockwise order."""
    return list(_fan_cached(s, u, max_faces))


@lru_cache(maxsize=256)
def _fan_cached(s, u, max_faces):
    src = SurfacePoint.vertex(u)
    items = []
    for v in range(len(s.vertices)):
        if v == u:
            continue
        for g in shortest_geodesics(s, src, SurfacePoint.vertex(v), max_faces):
            items.append((direction_at(g).phi, g))
    items.sort(key=lambda x: x[0])
    theta = s.cone_angle(u)
    out = []
    for i, (phi, g) in enumerate(items):
        nxt = items[(i + 1) % len(items)][0]
        out.append(FanEntry(g, phi, (nxt - phi) % theta if len(items) > 1 else theta))
    return tuple(out)


def fan_summary(s: PolyhedralSurface, u: int, max_faces: int = MAX_FACES) -> dict:
    """Counts, gaps and per-target multiplicities of the fan at u."""
    fan = vertex_fan(s, u, max_faces)
    per_target = Counter(fe.target for fe in fan)
    n = len(fan)
    even = s.cone_angle(u) / n if n else 0.0
    return {
        "vertex": u,
        "count": n,
        "cone_angle": s.cone_angle(u),
        "gaps": [fe.gap for fe in fan],
        "max_gap_error": max((abs(fe.gap - even) for fe in fan), default=0.0),
        "multiplicities": {str(v): per_target[v] for v in sorted(per_target)},
        "multiplicity_profile": sorted(Counter(per_target.values()).items()),
        "entries": [{"target": fe.target, "phi": fe.phi, "gap": fe.gap, "length": fe.segment.length,
                     "faces": list(fe.segment.faces), "distance": skeleton_distance(s, u, fe.target)}
                    for fe in fan],
    }


# -- intersections ---------------------------------------------------------------------


@dataclass(frozen=True)
class Intersection:
    kind: str  # disjoint | shared-endpoint | crossing | overlap
    points: tuple[SurfacePoint, ...] = ()

    def to_json(self):
        return {"kind": self.kind, "points": [p.to_json() for p in self.points]}


def _pieces_by_face(seg: GeodesicSegment):
    s = seg.surface
    out = {}
    pcs = seg.pieces()
    if seg.boundary_edge is not None:
        f, a, b, t0, t1 = pcs[0]
        out.setdefault(f, []).append((a, b, t0, t1))
        for g, k in s.faces_at_edge(seg.boundary_edge):
            if g != f:
                kf = [kk for gg, kk in s.faces_at_edge(seg.boundary_edge) if gg == f][0]
                M = s.neighbor(f, kf).motion
                out.setdefault(g, []).append((M(a), M(b), t0, t1))
        return out
    for f, a, b, t0, t1 in pcs:
        out.setdefault(f, []).append((a, b, t0, t1))
    return out


def segments_intersect(s: PolyhedralSurface, s1: GeodesicSegment, s2: GeodesicSegment,
                       eps: float = EPS_LEN) -> Intersection:
    """Classify how two geodesic segments meet, face by face."""
    ends1 = {s1.start, s1.end}
    ends2 = {s2.start, s2.end}
    shared = ends1 & ends2
    p1, p2 = _pieces_by_face(s1), _pieces_by_face(s2)
    hits = []
    overlap = False
    for f in sorted(set(p1) & set(p2)):
        for a, b, _, _ in p1[f]:
            for c, d, _, _ in p2[f]:
                kind, z = _planar_meet(a, b, c, d, eps)
                if kind == "overlap":
                    overlap = True
                elif kind == "point":
                    hits.append(locate(s, f, z, 1e-7))
    if overlap:
        return Intersection("overlap")
    crossings = []
    for h in hits:
        if h in shared or any(h.close_to(x, s) for x in shared):
            continue
        if not any(h.close_to(c, s) for c in crossings):
            crossings.append(h)
    if crossings:
        return Intersection("crossing", tuple(crossings))
    if shared:
        return Intersection("shared-endpoint", tuple(sorted(shared, key=str)))
    return Intersection("disjoint")


def _planar_meet(a, b, c, d, eps):
    r, q = b - a, d - c
    den = cross(r, q)
    if abs(den) <= eps * abs(r) * abs(q):
        # parallel: overlap only if collinear with positive-length common part
        if abs(cross(r, c - a)) / abs(r) > eps:
            return "none", None
        rr = abs(r) ** 2
        t0 = ((c - a).real * r.real + (c - a).imag * r.imag) / rr
        t1 = ((d - a).real * r.real + (d - a).imag * r.imag) / rr
        lo, hi = max(0.0, min(t0, t1)), min(1.0, max(t0, t1))
        if (hi - lo) * abs(r) > eps:
            return "overlap", None
        if hi - lo >= -eps / abs(r):
            return "point", a + lo * r
        return "none", None
    t = cross(c - a, q) / den
    u = cross(c - a, r) / den
    ta, ua = eps / abs(r), eps / abs(q)
    if -ta <= t <= 1 + ta and -ua <= u <= 1 + ua:
        return "point", a + t * r
    return "none", None


# -- ray tracing -----------------------------------------------------------------------


@dataclass(frozen=True)
class TracedPath:
    start: SurfacePoint
    end: SurfacePoint
    length: float
    pieces: tuple[tuple[int, complex, complex], ...]  # (face, local start, local end)

    def to_json(self):
        return {
            "from": self.start.to_json(),
            "to": self.end.to_json(),
            "length": self.length,
            "polyline": [[f, z.real, z.imag] for f, a, b in self.pieces for z in (a, b)],
        }


def trace_ray(s: PolyhedralSurface, start: SurfacePoint, d: DirectionCoordinate, length: float,
              eps: float = EPS_LEN, max_steps: int = 1000) -> TracedPath:
    """Follow a straight geodesic ray; stops with ConePointHit at a vertex."""
    if d.base != start:
        raise GeodesicError("direction is not based at the start point")
    if length < 0:
        raise GeodesicError("negative length")
    face, v = tangent_in_face(s, d)
    z = coords_in_face(s, start, face)
    if length == 0:
        return TracedPath(start, start, 0.0, ((face, z, z),))
    v = v / abs(v)
    remaining = length
    travelled = 0.0
    pieces = []
    entry_edge = None
    for _ in range(max_steps):
        F = s.faces[face]
        exit_t, exit_k, exit_u = math.inf, None, None
        for k in range(len(F)):
            if k == entry_edge:
                continue
            a, b = F.edge(k)
            st = line_intersection(z, z + v, a, b)
            if st is None:
                continue
            t, u = st
            if t > eps and -1e-12 <= u <= 1 + 1e-12 and t < exit_t:
                exit_t, exit_k, exit_u = t, k, u
        if exit_k is None:
            raise GeodesicError("ray left the face without crossing an edge")
        if exit_t >= remaining - eps:
            end_z = z + remaining * v
            pieces.append((face, z, end_z))
            return TracedPath(start, locate(s, face, end_z, 1e-7), length, tuple(pieces))
        w = abs(F.edge(exit_k)[1] - F.edge(exit_k)[0])
        if exit_u * w < eps or (1 - exit_u) * w < eps:
            vid = F.vertices[exit_k] if exit_u * w < eps else F.vertices[(exit_k + 1) % len(F)]
            raise ConePointHit(travelled + exit_t, vid)
        exit_z = z + exit_t * v
        pieces.append((face, z, exit_z))
        travelled += exit_t
        remaining -= exit_t
        glue = s.neighbor(face, exit_k)
        z, v = glue.motion(exit_z), glue.motion.rotate(v)
        face, entry_edge = glue.face, glue.edge
    raise GeodesicError("ray tracing exceeded step budget")
