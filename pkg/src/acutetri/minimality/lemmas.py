"""Parity, degree bounds, the non-obtuse lower bound and the 8-triangle acute exclusion."""

from __future__ import annotations

import itertools
import math
from collections import Counter

from ..geodesic import shape_word
from ..planar import TAU
from ..surface import PolyhedralSurface, skeleton_distance
from ..tolerances import DEFAULT, MAX_FACES, Tolerances
from .certificate import UNIT, Certificate, combine, fan_grid, params_of
from .sphere import enumerate_sphere_triangulations

RIGHT = math.pi / 2


def check_size_parity(F: int, tol: Tolerances = DEFAULT) -> Certificate:
    """Every closed triangulated surface has 2E = 3F, so F must be even."""
    if F < 1:
        raise ValueError("F must be at least 1")
    odd = F % 2 == 1
    ev = {
        "faces": F,
        "three_F": 3 * F,
        "three_F_even": not odd,
        "conclusion": "impossible" if odd else "no parity obstruction",
    }
    if not odd:
        ev["edges"] = 3 * F // 2
    return Certificate("parity-odd", "holds", ev, params_of(tol))


def min_degree_bound(total_angle: float, angle_cap: float = RIGHT, strict: bool = False,
                     eps: float = 1e-12) -> int:
    """Fewest corners, each at most (or, if strict, below) angle_cap, filling total_angle."""
    if total_angle <= 0 or angle_cap <= 0:
        raise ValueError("angles must be positive")
    ratio = total_angle / angle_cap
    k = math.ceil(ratio - eps)
    if strict and abs(k - ratio) <= eps:
        k += 1
    return k


def _low_degree_evidence(F):
    types = enumerate_sphere_triangulations(F)
    return [{"degree_sequence": list(T.degree_sequence), "min_degree": T.min_degree,
             "euler": T.euler(), "edges": len(T.edges)} for T in types]


def check_nonobtuse_lower_bound(s: PolyhedralSurface, tol: Tolerances = DEFAULT) -> Certificate:
    """No non-obtuse geodesic triangulation with fewer than 8 triangles."""
    cone = {v: s.cone_angle(v) for v in range(len(s.vertices))}
    bound_cone = max(min_degree_bound(a, RIGHT, strict=False) for a in cone.values())
    bound_cone_min = min(min_degree_bound(a, RIGHT, strict=False) for a in cone.values())
    bound_flat = min_degree_bound(TAU, RIGHT, strict=False)
    need = min(bound_cone_min, bound_flat)
    ok = []
    ev = {"degree_bound": {"cone_point": bound_cone, "flat_point": bound_flat, "required": need}}
    ok.append(bound_cone == bound_cone_min == 4 and bound_flat == 4)
    # a simplicial sphere has F = 2V - 4 with V >= 4
    ev["too_small"] = {str(F): f"V = {F / 2 + 2:g} < 4" for F in (1, 2, 3)}
    par = {}
    for F in (5, 7):
        c = check_size_parity(F, tol)
        par[str(F)] = c.evidence["conclusion"]
        ok.append(c.evidence["conclusion"] == "impossible")
    ev["parity"] = par
    sizes = {}
    for F in (4, 6):
        types = _low_degree_evidence(F)
        sizes[str(F)] = {"types": types, "count": len(types),
                         "all_have_vertex_below_bound": all(t["min_degree"] < need for t in types)}
        ok.append(len(types) == 1 and sizes[str(F)]["all_have_vertex_below_bound"])
    ev["enumeration"] = sizes
    ev["minimum_size"] = 8
    return Certificate("thm1-lb", "holds" if all(ok) else "fails", ev, params_of(tol))


def _compositions(total, parts, lo, hi):
    return [c for c in itertools.product(range(lo, hi + 1), repeat=parts) if sum(c) == total]


def _apex_search(s, grid, unit_angle):
    """Every ordered vertex pair, every tied geodesic, both sides: rays at unit_angle from each end.

    Returns one record per (geodesic, side).  A record carries the common third
    vertex if both rays reach the same one, and the apex wedge there.
    """
    records = []
    for u in range(len(s.vertices)):
        total = grid.size[u]
        for k in sorted(grid.slot[u]):
            sl = grid.slot[u][k]
            v = sl.target
            for side in (1, -1):
                a = grid.at(u, k + side * unit_angle)
                b = grid.at(v, sl.back - side * unit_angle)
                rec = {"from": u, "to": v, "index": k, "side": "left" if side == 1 else "right",
                       "distance": skeleton_distance(s, u, v), "shape": shape_word(sl.segment),
                       "third": None, "apex_units": None, "apex_raw": None}
                if a is not None and b is not None and a.target == b.target:
                    ra, rb = grid.reverse(a), grid.reverse(b)
                    w = a.target
                    units = ((rb.index - ra.index) * side) % grid.size[w]
                    raw = ((rb.phi - ra.phi) * side) % s.cone_angle(w)
                    rec.update(third=w, apex_units=units, apex_raw=raw)
                records.append(rec)
    return records


def check_no_acute_8(s: PolyhedralSurface, tol: Tolerances = DEFAULT, max_faces: int = MAX_FACES) -> Certificate:
    """No acute geodesic triangulation with 8 triangles."""
    ev = {}
    ok = []
    # (i) combinatorics
    types = enumerate_sphere_triangulations(8)
    deg4 = [T for T in types if T.min_degree >= 4]
    ev["combinatorics"] = {"types": len(types), "min_degree_4": [list(T.degree_sequence) for T in deg4]}
    ok.append(len(deg4) == 1 and set(deg4[0].degrees) == {4})
    # (ii) four acute corners cannot fill a flat point
    flat = min_degree_bound(TAU, RIGHT, strict=True)
    ev["flat_point_bound"] = flat
    ok.append(flat > 4)
    # (iii) four grid angles in 1..5 units summing to the cone angle
    grid = fan_grid(s, max_faces)
    cone_units = {grid.size[u] for u in grid.size}
    splits = sorted({c for n in cone_units for c in _compositions(n, 4, 1, 5)})
    ev["corner_splits"] = [list(c) for c in splits]
    ev["grid_residual"] = grid.max_residual()
    ok.append(len(cone_units) == 1 and splits == [(5, 5, 5, 5)])
    unit = 5
    # (iv) exhaustive triangle search
    records = _apex_search(s, grid, unit)
    hits = [r for r in records if r["apex_units"] == unit]
    summary = Counter((r["distance"], r["shape"], r["side"], "none" if r["third"] is None else r["apex_units"])
                      for r in records)
    ev["search"] = {
        "pairs": len({(r["from"], r["to"]) for r in records}),
        "geodesics": len({(r["from"], r["index"]) for r in records}),
        "records": len(records),
        "summary": [{"distance": d, "shape": w, "side": sd, "apex_units": a, "count": n}
                    for (d, w, sd, a), n in sorted(summary.items(), key=lambda x: tuple(map(str, x[0])))],
        "all_equal_witnesses": hits,
    }
    ok.append(not hits)
    ev["cases"] = _case_witnesses(records)
    ok.append(ev["cases"]["edge"] is not None and ev["cases"]["tst"] is not None)
    return Certificate("acute8", combine("holds" if x else "fails" for x in ok), ev, params_of(tol, max_faces))


def _case_witnesses(records):
    """First skeleton-edge and first 'tst' base whose 5pi/12 rays close up."""
    def first(pred):
        for r in records:
            if r["third"] is not None and pred(r):
                return dict(r, apex=r["apex_units"] * UNIT)
        return None
    return {
        "edge": first(lambda r: r["distance"] == 1),
        "tst": first(lambda r: r["distance"] == 3 and r["shape"] == "tst"),
    }
