"""The 10-triangle exclusion and the aggregate minimum-size report."""

from __future__ import annotations

from ..planar import TAU
from ..surface import PolyhedralSurface
from ..tolerances import DEFAULT, MAX_FACES, Tolerances
from ..triangulation import construct_acute12, construct_nonobtuse8, verify
from .apex import check_apex_infeasible
from .c5 import adjacent_pair_scan, edge_filters, enumerate_c5
from .certificate import Certificate, combine, params_of
from .lemmas import RIGHT, check_no_acute_8, check_nonobtuse_lower_bound, check_size_parity, min_degree_bound
from .sphere import enumerate_sphere_triangulations


def check_no_acute_10(s: PolyhedralSurface, tol: Tolerances = DEFAULT, max_faces: int = MAX_FACES) -> Certificate:
    """No acute geodesic triangulation with 10 triangles."""
    ev = {}
    flags = []
    types = enumerate_sphere_triangulations(10)
    deg4 = [T for T in types if T.min_degree >= 4]
    ev["combinatorics"] = {"types": len(types), "min_degree_4": [list(T.degree_sequence) for T in deg4]}
    flags.append(len(deg4) == 1 and deg4[0].degree_sequence == (5, 5, 4, 4, 4, 4, 4))
    flat = min_degree_bound(TAU, RIGHT, strict=True)
    ev["flat_point_bound"] = flat
    flags.append(flat > 4)
    scan = adjacent_pair_scan(s)
    ev["adjacent_pair_scan"] = scan
    flags.append(scan["holds"])
    E = enumerate_c5(s, max_faces)
    ev["cycles"] = E.summary()
    ev["cycles"]["filter_violations_in_strict"] = sum(1 for c in E.strict if any(edge_filters(s, c).values()))
    flags.append(len(E.survivor_orbits) >= 1)
    outcome = ["holds" if all(flags) else "fails"]
    apex = []
    for orbit in E.survivor_orbits:
        cert = check_apex_infeasible(s, orbit[0], tol)
        apex.append(cert.to_json())
        outcome.append(cert.verdict)
    ev["apex"] = apex
    ev["unique_orbit"] = len(E.survivor_orbits) == 1
    return Certificate("acute10", combine(outcome), ev, params_of(tol, max_faces))


def _construction_certificate(s, name, T, want, tol):
    rep = verify(s, T, tol)
    ok = rep.valid and rep.classification in want
    ev = {"triangles": len(T.triangles), "classification": rep.classification, "margin": rep.margin,
          "checks": dict(rep.checks), "errors": list(rep.errors)}
    return Certificate(name, "holds" if ok else "fails", ev, params_of(tol))


def main_theorem_report(s: PolyhedralSurface, tol: Tolerances = DEFAULT, max_faces: int = MAX_FACES) -> Certificate:
    """Minimum sizes of acute and non-obtuse triangulations, with every supporting certificate."""
    subs = [
        check_size_parity(9, tol),
        check_size_parity(11, tol),
        check_no_acute_8(s, tol, max_faces),
        check_no_acute_10(s, tol, max_faces),
        _construction_certificate(s, "construction-nonobtuse8", construct_nonobtuse8(s), ("non-obtuse", "acute"), tol),
        _construction_certificate(s, "construction-acute12", construct_acute12(s), ("acute",), tol),
    ]
    lower = check_nonobtuse_lower_bound(s, tol)
    parity_ok = all(c.evidence["conclusion"] == "impossible" for c in subs[:2])
    verdict = combine([c.verdict for c in subs] + [lower.verdict] + ["holds" if parity_ok else "fails"])
    ev = {
        "sub_certificates": [c.to_json() for c in subs],
        "prerequisites": [lower.to_json()],
        "summary": {c.claim + ("" if c.claim != "parity-odd" else f"-{c.evidence['faces']}"): c.verdict for c in subs},
        "acute_minimum": 12 if verdict == "holds" else None,
        "nonobtuse_minimum": 8 if verdict == "holds" else None,
    }
    return Certificate("main", verdict, ev, params_of(tol, max_faces))
