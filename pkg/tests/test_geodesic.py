import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acutetri.geodesic import (
    ConePointHit,
    GeodesicError,
    direction_at,
    distance,
    fan_summary,
    geodesic_between,
    segments_intersect,
    shape_word,
    shortest_geodesics,
    trace_ray,
    vertex_fan,
)
from acutetri.planar import point_segment_distance
from acutetri.surface import SurfacePoint, build_cuboctahedron, locate, skeleton_distance

V = SurfacePoint.vertex
SQ3 = math.sqrt(3)


def _by_kind(s, u):
    """Targets of u grouped: neighbours, square diagonals, bent distance-two, antipode."""
    nbrs = [w for w in range(12) if skeleton_distance(s, u, w) == 1]
    diag = [w for w in range(12) if any(u in f.vertices and w in f.vertices for f in s.faces)
            and w != u and w not in nbrs]
    bent = [w for w in range(12) if skeleton_distance(s, u, w) == 2 and w not in diag]
    return nbrs, diag, bent, 11 - u


# planar oracles from unfolding by hand
def _bent_oracle():
    # triangle apex below a unit square, target is the far upper corner
    apex = complex(0.5, -SQ3 / 2)
    return abs(complex(1, 1) - apex)


def _antipode_oracle():
    # triangle, square, triangle strip: apex to apex
    return abs(complex(0.5, 1 + SQ3 / 2) - complex(0.5, -SQ3 / 2))


def test_planar_oracles_match_closed_forms():
    assert math.isclose(_bent_oracle(), (math.sqrt(6) + math.sqrt(2)) / 2, rel_tol=1e-14)
    assert math.isclose(_antipode_oracle(), 1 + SQ3, rel_tol=1e-14)


def test_lengths_by_class(cub):
    nbrs, diag, bent, anti = _by_kind(cub, 0)
    assert (len(nbrs), len(diag), len(bent)) == (4, 2, 4)
    for w in nbrs:
        segs = shortest_geodesics(cub, V(0), V(w))
        assert len(segs) == 1 and abs(segs[0].length - 1) < 1e-12
        assert segs[0].boundary_edge is not None
    for w in diag:
        segs = shortest_geodesics(cub, V(0), V(w))
        assert len(segs) == 1 and abs(segs[0].length - math.sqrt(2)) < 1e-12
        assert shape_word(segs[0]) == "s"
    for w in bent:
        segs = shortest_geodesics(cub, V(0), V(w))
        assert len(segs) == 2
        assert all(abs(g.length - _bent_oracle()) < 1e-12 for g in segs)
        assert sorted(shape_word(g) for g in segs) == ["st", "ts"]
    segs = shortest_geodesics(cub, V(0), V(anti))
    assert len(segs) == 6
    assert all(abs(g.length - _antipode_oracle()) < 1e-12 for g in segs)


def test_distance_symmetric(cub):
    for u, v in itertools.combinations(range(12), 2):
        assert abs(distance(cub, V(u), V(v)) - distance(cub, V(v), V(u))) < 1e-12
        assert len(shortest_geodesics(cub, V(u), V(v))) == len(shortest_geodesics(cub, V(v), V(u)))


def test_triangle_inequality(cub):
    d = {(u, v): distance(cub, V(u), V(v)) for u in range(12) for v in range(12) if u != v}
    for u, v, w in itertools.permutations(range(12), 3):
        assert d[u, w] <= d[u, v] + d[v, w] + 1e-12


def test_shortest_segments_avoid_cone_points(cub):
    for u in range(12):
        for fe in vertex_fan(cub, u):
            seg = fe.segment
            ends = {seg.start.index, seg.end.index}
            for f, a, b, _, _ in seg.pieces():
                F = cub.faces[f]
                for vid, c in zip(F.vertices, F.corners):
                    if vid in ends and min(abs(c - a), abs(c - b)) < 1e-9:
                        continue
                    assert point_segment_distance(c, a, b) > 1e-6


def test_fan_structure(cub):
    for u in range(12):
        info = fan_summary(cub, u)
        assert info["count"] == 20
        assert info["max_gap_error"] <= 1e-9
        assert all(abs(g - math.pi / 12) <= 1e-9 for g in info["gaps"])
        assert info["multiplicity_profile"] == [(1, 6), (2, 4), (6, 1)]
        assert info["multiplicities"][str(11 - u)] == 6


def test_fan_segments_do_not_cross(cub):
    fan = vertex_fan(cub, 0)
    for a, b in itertools.combinations(fan, 2):
        kind = segments_intersect(cub, a.segment, b.segment).kind
        assert kind == "shared-endpoint"


def test_reversed_segment(cub):
    g = shortest_geodesics(cub, V(0), V(11))[0]
    r = g.reversed()
    assert (r.start, r.end) == (g.end, g.start)
    assert r.faces == g.faces[::-1]
    assert abs(r.length - g.length) < 1e-12


def test_witness_selects_one_of_ties(cub):
    with pytest.raises(GeodesicError):
        geodesic_between(cub, V(0), V(11))
    for g in shortest_geodesics(cub, V(0), V(11)):
        mid = g.faces[len(g.faces) // 2]
        assert geodesic_between(cub, V(0), V(11), mid).faces == g.faces


def test_coincident_endpoints_rejected(cub):
    with pytest.raises(GeodesicError):
        shortest_geodesics(cub, V(3), V(3))


def test_trace_ray_reproduces_fan_segment(cub):
    for fe in vertex_fan(cub, 2):
        seg = fe.segment
        try:
            path = trace_ray(cub, seg.start, direction_at(seg), seg.length * 0.999)
        except ConePointHit:
            pytest.fail("ray from a shortest segment hit a cone point early")
        tail = seg.point_at(0.999)
        assert path.end.close_to(tail, cub, 1e-6)


def test_trace_ray_hits_cone_point(cub):
    seg = shortest_geodesics(cub, V(0), V(11))[0]
    with pytest.raises(ConePointHit) as info:
        trace_ray(cub, seg.start, direction_at(seg), seg.length + 0.5)
    assert info.value.vertex == 11
    assert abs(info.value.arc_length - seg.length) < 1e-9


def _interior(s, face, x, y):
    c = s.faces[face].corners
    return locate(s, face, (1 - x) * c[0] + x * ((1 - y) * c[1] + y * c[2]))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 13), st.floats(0.1, 0.9), st.floats(0.1, 0.9),
       st.integers(0, 13), st.floats(0.1, 0.9), st.floats(0.1, 0.9))
def test_face_points_metric(f1, x1, y1, f2, x2, y2):
    s = build_cuboctahedron()
    p, q = _interior(s, f1, x1, y1), _interior(s, f2, x2, y2)
    if p.close_to(q, s, 1e-6):
        return
    d = distance(s, p, q)
    assert abs(d - distance(s, q, p)) < 1e-9
    # the surface diameter is bounded by a path through vertices of the two faces
    bound = min(abs(a - pz) + (distance(s, V(u), V(w)) if u != w else 0.0) + abs(b - qz)
                for u, a, pz in [(u, c, p.z) for u, c in zip(s.faces[f1].vertices, s.faces[f1].corners)]
                for w, b, qz in [(w, c, q.z) for w, c in zip(s.faces[f2].vertices, s.faces[f2].corners)])
    assert d <= bound + 1e-9
    for g in shortest_geodesics(s, p, q):
        assert abs(g.length - d) < 1e-9
