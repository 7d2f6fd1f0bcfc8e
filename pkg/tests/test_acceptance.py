"""Acceptance criteria, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""

import itertools
import json
import math
import sys
import tempfile
from collections import Counter
from pathlib import Path

import pytest

from acutetri import jsonio
from acutetri.cli import main as cli_main
from acutetri.geodesic import distance, fan_summary, shortest_geodesics, vertex_fan
from acutetri.minimality import (
    adjacent_pair_scan,
    check_apex_infeasible,
    check_no_acute_10,
    check_no_acute_8,
    check_nonobtuse_lower_bound,
    check_size_parity,
    enumerate_c5,
    enumerate_sphere_triangulations,
    main_theorem_report,
    min_degree_bound,
)
from acutetri.planar import point_segment_distance
from acutetri.surface import SurfacePoint, build_cuboctahedron, total_angle
from acutetri.triangulation import construct_acute12, construct_nonobtuse8, verify

PI = math.pi
V = SurfacePoint.vertex
ACUTE12_MARGIN = 0.019235513703663942  # frozen after the first run

S = build_cuboctahedron()


def criterion_1():
    worst = max(abs(total_angle(S, V(v)) - 5 * PI / 3) for v in range(12))
    return worst <= 1e-12, f"max |cone angle - 5pi/3| = {worst:.3g}"


def criterion_2():
    bad = []
    worst = 0.0
    for u in range(12):
        info = fan_summary(S, u)
        gaps = info["gaps"]
        worst = max([worst] + [abs(g - PI / 12) for g in gaps])
        # 4 neighbours and 2 square diagonals once, 4 bent targets twice, the antipode six times
        prof = Counter(Counter(fe.target for fe in vertex_fan(S, u)).values())
        if info["count"] != 20 or len(gaps) != 20 or prof != Counter({1: 6, 2: 4, 6: 1}):
            bad.append(u)
    return not bad and worst <= 1e-9, f"20 geodesics per vertex, max gap error {worst:.3g}, bad vertices {bad}"


def criterion_3():
    T = construct_nonobtuse8(S)
    rep = verify(S, T)
    got = sorted(a.angle for a in rep.angles)
    want = sorted([PI / 2] * 8 + [5 * PI / 12] * 16)
    angle_err = max(abs(x - y) for x, y in zip(got, want)) if len(got) == len(want) else math.inf
    lens = [sorted(T.edges[e].segment.length for e in t) for t in T.triangles]
    cong = max(abs(x - y) for L in lens for x, y in zip(L, lens[0]))
    ok = (rep.valid and len(T.triangles) == 8 and angle_err <= 1e-9 and cong <= 1e-9
          and rep.classification == "non-obtuse" and abs(rep.margin) <= 1e-9)
    return ok, (f"valid={rep.valid} angles err {angle_err:.3g} congruence err {cong:.3g} "
                f"{rep.classification} margin {rep.margin:.3g}")


def criterion_4():
    T = construct_acute12(S)
    rep = verify(S, T)
    all_acute = len(rep.angles) == 36 and all(a.angle < PI / 2 for a in rep.angles)
    a1, b1 = T.meta["cycle"][:2]
    star = T.vertices[T.labels.index("a*")]
    F = S.faces[star.index]
    A = F.corners[F.corner_of(T.vertices[T.labels.index("a")].index)]
    B1 = F.corners[F.corner_of(b1)]
    w = (A - star.z) / (B1 - star.z)
    witness = abs(math.atan2(w.imag, w.real))
    ok = (rep.valid and all_acute and rep.margin > 1e-3 and abs(rep.margin - ACUTE12_MARGIN) <= 1e-12
          and abs(witness - 5 * PI / 12) <= 1e-9)
    return ok, (f"valid={rep.valid} acute={all_acute} margin {rep.margin:.12g} "
                f"(frozen {ACUTE12_MARGIN:.12g}) witness angle err {abs(witness - 5 * PI / 12):.3g}")


def criterion_5():
    parts = []
    ok = True
    for name, build in (("nonobtuse8", construct_nonobtuse8), ("acute12", construct_acute12)):
        rep = verify(S, build(S))
        err = abs(rep.gauss_bonnet["excess_sum"] - 8 * PI / 3)
        ok &= err <= 1e-8 and rep.checks["closure"]
        parts.append(f"{name}: excess err {err:.3g} closure={rep.checks['closure']}")
    return ok, "; ".join(parts)


def criterion_6():
    counts = {F: enumerate_sphere_triangulations(F) for F in (4, 6)}
    shapes = all(len(v) == 1 and v[0].min_degree == 3 for v in counts.values())
    bound = min_degree_bound(5 * PI / 3, PI / 2)
    cert = check_nonobtuse_lower_bound(S)
    ok = shapes and bound == 4 and cert.holds
    return ok, f"F=4,6 types {[len(v) for v in counts.values()]} with degree 3; bound {bound}; {cert.verdict}"


def criterion_7():
    octa = [T for T in enumerate_sphere_triangulations(8) if T.min_degree >= 4]
    cert = check_no_acute_8(S)
    cases = cert.evidence["cases"]
    e1 = abs(cases["edge"]["apex"] - PI / 6)
    e3 = abs(cases["tst"]["apex"] - 5 * PI / 6)
    wit = cert.evidence["search"]["all_equal_witnesses"]
    ok = (len(octa) == 1 and octa[0].degree_sequence == (4,) * 6 and not wit
          and cert.evidence["search"]["geodesics"] == 240 and e1 <= 1e-9 and e3 <= 1e-9 and cert.holds)
    return ok, f"octahedron unique; witnesses {len(wit)}; pi/6 err {e1:.3g}; 5pi/6 err {e3:.3g}; {cert.verdict}"


def criterion_8():
    bip = [T for T in enumerate_sphere_triangulations(10) if T.min_degree >= 4]
    scan = adjacent_pair_scan(S)
    E = enumerate_c5(S)
    apex = check_apex_infeasible(S, E.survivor_orbits[0][0]) if E.survivor_orbits else None
    near = apex is not None and "near" in json.dumps(apex.to_json())
    cert = check_no_acute_10(S)
    ok = (len(bip) == 1 and bip[0].degree_sequence == (5, 5, 4, 4, 4, 4, 4)
          and scan["subsets"] == 792 and scan["min_adjacent_pairs"] >= 2
          and len(E.survivor_orbits) == 1 and apex is not None and apex.verdict == "holds" and not near
          and cert.holds)
    return ok, (f"bipyramid unique; scan {scan['subsets']} subsets min {scan['min_adjacent_pairs']} pairs; "
                f"{len(E.survivor_orbits)} orbit; apex {apex.verdict if apex else None}; near={near}")


def criterion_9():
    res = {F: check_size_parity(F) for F in (9, 11)}
    ok = all(c.holds and c.evidence["conclusion"] == "impossible" for c in res.values())
    return ok, ", ".join(f"F={F}: {c.evidence['conclusion']}" for F, c in res.items())


def criterion_10():
    with tempfile.TemporaryDirectory() as d:
        out = Path(d) / "paper.json"
        code = cli_main(["paper-check", "--out", str(out)])
        summary = json.loads(out.read_text())["summary"]
    ok = code == 0 and summary["acute_minimum"] == 12 and summary["nonobtuse_minimum"] == 8
    return ok, f"exit {code}; acute minimum {summary['acute_minimum']}; non-obtuse minimum {summary['nonobtuse_minimum']}"


def _clear_caches():
    from acutetri import geodesic
    from acutetri.minimality import certificate

    geodesic._shortest_cached.cache_clear()
    geodesic._fan_cached.cache_clear()
    certificate.fan_grid.cache_clear()


def criterion_11():
    d = {(u, v): distance(S, V(u), V(v)) for u in range(12) for v in range(12) if u != v}
    sym = all(abs(d[u, v] - d[v, u]) <= 1e-12 for u, v in d)
    tri = all(d[u, w] <= d[u, v] + d[v, w] + 1e-12 for u, v, w in itertools.permutations(range(12), 3))
    closure = all(abs(math.fsum(fe.gap for fe in vertex_fan(S, u)) - S.cone_angle(u)) <= 1e-9
                  and len(vertex_fan(S, u)) == 20 for u in range(12))
    clear = True
    for u in range(12):
        for fe in vertex_fan(S, u):
            ends = {fe.segment.start.index, fe.segment.end.index}
            for f, a, b, _, _ in fe.segment.pieces():
                F = S.faces[f]
                for vid, c in zip(F.vertices, F.corners):
                    if vid in ends and min(abs(c - a), abs(c - b)) < 1e-9:
                        continue
                    clear &= point_segment_distance(c, a, b) > 1e-6
    first = jsonio.dumps(main_theorem_report(S).to_json())
    _clear_caches()
    second = jsonio.dumps(main_theorem_report(build_cuboctahedron()).to_json())
    repro = first == second
    ok = sym and tri and closure and clear and repro
    return ok, f"symmetry={sym} triangle={tri} fan closure={closure} clearance={clear} reproducible={repro}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


def _line(n, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"


@pytest.mark.parametrize("n", range(1, len(CRITERIA) + 1))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n - 1]()
    with capsys.disabled():
        print("\n" + _line(n, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for n, crit in enumerate(CRITERIA, 1):
        ok, detail = crit()
        results.append(ok)
        print(_line(n, ok, detail))
    sys.exit(0 if all(results) else 1)
