import xml.etree.ElementTree as ET

import pytest

from acutetri.minimality import check_apex_infeasible, check_no_acute_8, enumerate_c5
from acutetri.svg import net_placements, render_apex_side, render_case, render_fan, render_net, write_svg
from acutetri.triangulation import construct_acute12, construct_nonobtuse8

NS = "{http://www.w3.org/2000/svg}"


def _parse(text):
    root = ET.fromstring(text)
    assert root.tag == NS + "svg"
    return root


def test_net_is_one_island(cub):
    place = net_placements(cub)
    assert sorted(place) == list(range(14))
    # every face shares a laid-out edge with some other face
    for f in cub.faces:
        mine = [place[f.id](z) for z in f.corners]
        touching = False
        for k in range(len(f)):
            g = cub.neighbor(f.id, k)
            a, b = mine[k], mine[(k + 1) % len(f)]
            c, d = (place[g.face](z) for z in cub.faces[g.face].edge(g.edge))
            touching |= abs(a - d) < 1e-9 and abs(b - c) < 1e-9
        assert touching


@pytest.mark.parametrize("build", [None, construct_nonobtuse8, construct_acute12])
def test_net_figures(cub, build):
    T = build(cub) if build else None
    text = render_net(cub, T, "net")
    root = _parse(text)
    assert len(root.findall(NS + "polygon")) == 14
    if T is not None:
        pieces = sum(len(e.segment.faces) for e in T.edges)
        assert len(root.findall(NS + "line")) == pieces
    assert render_net(cub, T, "net") == text


def test_fan_figure(cub):
    root = _parse(render_fan(cub, 0))
    assert len(root.findall(NS + "text")) == 20


def test_certificate_figures(cub):
    cert = check_no_acute_8(cub)
    for rec in cert.evidence["cases"].values():
        _parse(render_case(cub, rec, "case"))
    c5 = enumerate_c5(cub).survivor_orbits[0][0]
    side = check_apex_infeasible(cub, c5).evidence["sides"]["left"]
    root = _parse(render_apex_side(side, "apex"))
    assert len(root.findall(NS + "circle")) >= len(side["cells"])


def test_write_svg(tmp_path, cub):
    path = write_svg(tmp_path / "sub" / "fan.svg", render_fan(cub, 3))
    _parse(path.read_text())
