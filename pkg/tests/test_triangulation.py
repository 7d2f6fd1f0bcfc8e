import copy
import json
import math

import pytest

from acutetri import jsonio
from acutetri.surface import build_cuboctahedron
from acutetri.triangulation import (
    construct_acute12,
    construct_nonobtuse8,
    square_diagonal_cycles,
    triangulation_from_json,
    verify,
)

# first-run value of the acute margin, frozen as a regression check
ACUTE12_MARGIN = 0.019235513703663942
PI = math.pi


@pytest.fixture(scope="module")
def octa(cub):
    return construct_nonobtuse8(cub)


@pytest.fixture(scope="module")
def acute(cub):
    return construct_acute12(cub)


def _edge_lengths(T, t):
    return sorted(T.edges[e].segment.length for e in T.triangles[t])


def test_nonobtuse8_passes_every_check(cub, octa):
    rep = verify(cub, octa)
    assert rep.valid, rep.errors
    assert len(octa.triangles) == 8
    assert rep.classification == "non-obtuse"
    assert abs(rep.margin) <= 1e-9


def test_nonobtuse8_angle_multiset(cub, octa):
    got = sorted(a.angle for a in verify(cub, octa).angles)
    want = sorted([PI / 2] * 8 + [5 * PI / 12] * 16)
    assert all(abs(x - y) <= 1e-9 for x, y in zip(got, want))


def test_nonobtuse8_triangles_congruent(octa):
    ref = _edge_lengths(octa, 0)
    for t in range(8):
        assert all(abs(x - y) <= 1e-9 for x, y in zip(_edge_lengths(octa, t), ref))


def test_nonobtuse8_edge_lengths_closed_form(octa):
    # a to its crossing point is half of the 1 + sqrt(3) strip; a to b is a square diagonal
    half = sorted(e.segment.length for e in octa.edges)
    assert len(half) == 12
    assert all(abs(x - (1 + math.sqrt(3)) / 2) <= 1e-12 for x in half[:8])
    assert all(abs(x - math.sqrt(2)) <= 1e-12 for x in half[8:])


def test_nonobtuse8_rejects_bad_corners(cub):
    with pytest.raises(ValueError):
        construct_nonobtuse8(cub, 0, 11)


def test_acute12_passes_every_check(cub, acute):
    rep = verify(cub, acute)
    assert rep.valid, rep.errors
    assert len(acute.triangles) == 12 and len(rep.angles) == 36
    assert rep.classification == "acute"
    assert all(a.angle < PI / 2 for a in rep.angles)
    assert rep.margin > 1e-3
    assert rep.margin == pytest.approx(ACUTE12_MARGIN, abs=1e-12)


def _star_chart(s, T, name):
    i = T.labels.index(name)
    p = T.vertices[i]
    return s.faces[p.index], p.z


def test_star_point_oracles(cub, acute):
    a1, b1 = acute.meta["cycle"][:2]
    F, z = _star_chart(cub, acute, "a*")
    A = F.corners[F.corner_of(acute.vertices[acute.labels.index("a")].index)]
    A1, B1 = F.corners[F.corner_of(a1)], F.corners[F.corner_of(b1)]
    assert abs(abs(z - A) - (math.sqrt(3) - 1)) <= 1e-12
    assert abs(abs(z - A1) - (math.sqrt(6) - math.sqrt(2)) / 2) <= 1e-12
    ang = abs(math.atan2(((A - z) / (B1 - z)).imag, ((A - z) / (B1 - z)).real))
    assert abs(ang - 5 * PI / 12) <= 1e-9


def test_star_edge_is_the_straight_chord(cub, acute):
    a = acute.labels.index("a")
    s_ = acute.labels.index("a*")
    e = next(e for e in acute.edges if {e.a, e.b} == {a, s_})
    assert abs(e.segment.length - (math.sqrt(3) - 1)) <= 1e-12
    assert len(e.segment.faces) == 1


def test_diagonal_cycles_are_closed(cub):
    cycles = square_diagonal_cycles(cub)
    assert cycles
    for cyc in cycles:
        assert len(cyc) == 4
        for x, y in zip(cyc, cyc[1:] + cyc[:1]):
            assert any(f.shape == "square" and {x, y} <= set(f.vertices) for f in cub.faces)


@pytest.mark.parametrize("build", [construct_nonobtuse8, construct_acute12])
def test_gauss_bonnet_and_closure(cub, build):
    rep = verify(cub, build(cub))
    gb = rep.gauss_bonnet
    assert abs(gb["excess_sum"] - 8 * PI / 3) <= 1e-8
    assert abs(gb["total"] - 4 * PI) <= 1e-8
    assert sum(gb["enclosed_cone_points"]) == 8
    assert rep.checks["closure"]


@pytest.mark.parametrize("build", [construct_nonobtuse8, construct_acute12])
def test_json_round_trip(cub, build):
    T = build(cub)
    data = json.loads(jsonio.dumps(T.to_json()))
    T2 = triangulation_from_json(cub, data)
    assert jsonio.dumps(T2.to_json()) == jsonio.dumps(T.to_json())
    assert verify(cub, T2).valid


def test_other_edge_length_scales(acute):
    s2 = build_cuboctahedron(2.0)
    rep = verify(s2, construct_acute12(s2))
    assert rep.classification == "acute"
    assert rep.margin == pytest.approx(ACUTE12_MARGIN, abs=1e-9)


def test_corrupted_triangle_is_rejected(cub, octa):
    data = copy.deepcopy(octa.to_json())
    data["triangles"][0] = [data["triangles"][0][0]] * 3
    rep = verify(cub, triangulation_from_json(cub, data))
    assert not rep.valid and rep.errors


def test_dropped_triangle_breaks_complex(cub, octa):
    data = copy.deepcopy(octa.to_json())
    data["triangles"].pop()
    rep = verify(cub, triangulation_from_json(cub, data))
    assert not rep.checks["complex"]


def test_wrong_witness_loses_acuteness(cub, acute):
    # the other tied geodesic still gives a triangulation, but an obtuse one
    from acutetri.geodesic import shortest_geodesics

    data = copy.deepcopy(acute.to_json())
    k, segs = next((k, g) for k, e in enumerate(acute.edges)
                   if len(g := shortest_geodesics(cub, acute.vertices[e.a], acute.vertices[e.b])) == 2)
    chosen = acute.edges[k].segment
    other = next(g for g in segs if g.signature != chosen.signature)
    data["edges"][k]["witness_face"] = next(f for f in other.faces if f not in chosen.faces)
    rep = verify(cub, triangulation_from_json(cub, data))
    assert rep.classification == "neither" and rep.margin < -0.5
