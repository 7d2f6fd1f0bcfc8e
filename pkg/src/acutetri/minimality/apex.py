"""Where could the apex over an equatorial 5-cycle sit?

From each cycle vertex v_i the spoke to the apex must leave at an angle
below pi/2 from both cycle edges, so it lies in an open window of directions.
Beams of straight rays in those windows are traced face by face through the
region on one side of the cycle, stopping at the cycle and at cone points.
A point that survives all five beams is a candidate apex; it is ruled out if
one of the five apex angles is at least pi/2, which in the chart of the
point means: inside the closed disc on the (virtual) chord v_i v_{i+1}, or
beyond that chord.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

from ..geodesic import direction_at, shortest_geodesics
from ..planar import clip_convex, clip_halfplane, cross, polygon_area
from ..surface import PolyhedralSurface, SurfacePoint
from ..tolerances import DEFAULT, Tolerances
from .c5 import C5Configuration, _Crossings
from .certificate import UNIT, Certificate, combine, params_of

MAX_DEPTH = 40
RIGHT = math.pi / 2
RIGHT_UNITS = 6


@dataclass(frozen=True)
class BeamPiece:
    spoke: int  # cycle position i
    face: int
    apex: complex  # virtual position of v_i in the face chart
    polygon: tuple[complex, ...]
    depth: int

    def to_json(self):
        return {"spoke": self.spoke, "face": self.face, "apex": [self.apex.real, self.apex.imag],
                "polygon": [[z.real, z.imag] for z in self.polygon], "depth": self.depth}


class BeamOverflow(RuntimeError):
    pass


def _cycle_geometry(s, c):
    chords = {}  # face -> list of (a, b)
    blocked = set()  # (face, edge) pairs lying on the cycle
    for sl in c.slots:
        seg = sl.segment
        if seg.boundary_edge is not None:
            for f, k in s.faces_at_edge(seg.boundary_edge):
                blocked.add((f, k))
            continue
        for f, a, b, _, _ in seg.pieces():
            if abs(b - a) > 1e-12:
                chords.setdefault(f, []).append((a, b))
    return chords, blocked


def _clip_chords(poly, chords, ref):
    for a, b in chords:
        side = cross(b - a, ref - a)
        poly = clip_halfplane(poly, a, b - a) if side > 0 else clip_halfplane(poly, b, a - b)
        if not poly:
            break
    return poly


def _wedge(poly, V, d0, d1):
    """Part of poly inside the wedge swept counterclockwise from d0 to d1 (< pi)."""
    poly = clip_halfplane(poly, V, d0)
    return clip_halfplane(poly, V, -d1) if poly else poly


def _overlaps(lo, hi, a, b, total):
    """Pieces of the open interval (lo, hi) inside [a, b], modulo total."""
    out = []
    for shift in (-total, 0.0, total):
        x, y = max(lo, a + shift), min(hi, b + shift)
        if y - x > 1e-12:
            out.append((x - shift, y - shift))
    return out


def trace_beams(s: PolyhedralSurface, c: C5Configuration, eps: float = DEFAULT.eps_len):
    """Beam pieces for every spoke, with the region to the left of c."""
    chords, blocked = _cycle_geometry(s, c)
    out = []
    for i, sl in enumerate(c.slots):
        v = sl.source
        total = s.cone_angle(v)
        phi_out = sl.phi
        phi_in = c.slots[i - 1].phi_back
        W = (phi_in - phi_out) % total
        lo, hi = phi_out + W - RIGHT, phi_out + RIGHT
        star = s.vertices[v]
        queue = []
        for (fid, corner), start, ang in zip(star.corners, star.starts, star.angles):
            for x, y in _overlaps(lo, hi, start, start + ang, total):
                F = s.faces[fid]
                V = F.corners[corner]
                e = F.corners[(corner + 1) % len(F)] - V
                e /= abs(e)
                d0, d1 = e * cmath.exp(1j * (x - start)), e * cmath.exp(1j * (y - start))
                mid = d0 + d1
                ref = V + 1e-3 * mid / abs(mid)
                queue.append((fid, V, d0, d1, ref, None, 0))
        while queue:
            fid, V, d0, d1, ref, entry, depth = queue.pop()
            if depth > MAX_DEPTH:
                raise BeamOverflow(f"beam from cycle vertex {v} exceeded {MAX_DEPTH} faces")
            F = s.faces[fid]
            poly = _wedge(list(F.corners), V, d0, d1)
            poly = _clip_chords(poly, chords.get(fid, ()), ref)
            if len(poly) < 3 or polygon_area(poly) <= eps * eps:
                continue
            out.append(BeamPiece(i, fid, V, tuple(poly), depth))
            for k in range(len(F)):
                if k == entry or (fid, k) in blocked:
                    continue
                a, b = F.edge(k)
                u = (b - a) / abs(b - a)
                if abs(cross(u, V - a)) <= 1e-9:
                    continue  # rays along an edge through the source belong to the next corner
                ts = sorted(((z - a) / u).real for z in poly if abs(cross(u, z - a)) <= 1e-9)
                if len(ts) < 2 or ts[-1] - ts[0] <= eps:
                    continue
                A, B = a + ts[0] * u, a + ts[-1] * u
                glue = s.neighbor(fid, k)
                M = glue.motion
                V2, A2, B2 = M(V), M(A), M(B)
                e0, e1 = A2 - V2, B2 - V2
                if cross(e0, e1) < 0:
                    e0, e1 = e1, e0
                G = s.faces[glue.face]
                ga, gb = G.edge(glue.edge)
                inward = (gb - ga) * 1j / abs(gb - ga)
                ref2 = (A2 + B2) / 2 + 1e-7 * inward
                queue.append((glue.face, V2, e0 / abs(e0), e1 / abs(e1), ref2, glue.edge, depth + 1))
    return out


def _disc_test(cell, Vi, Vj, eps):
    """'in' if every point of cell with apex angle below pi has angle >= pi/2, else 'out'.

    'near' flags a polygon vertex within eps of the circle.
    """
    left = clip_halfplane(list(cell), Vi, Vj - Vi)
    if not left:
        return "in", 0.0
    m, r = (Vi + Vj) / 2, abs(Vj - Vi) / 2
    worst = max(abs(z - m) - r for z in left)
    if abs(worst) <= eps:
        return "near", worst
    return ("in" if worst < 0 else "out"), worst


def _cells(pieces, eps):
    by_face = {}
    for p in pieces:
        by_face.setdefault(p.face, {}).setdefault(p.spoke, []).append(p)
    cells = []
    for f in sorted(by_face):
        groups = by_face[f]
        if len(groups) < 5:
            continue
        for combo in itertools.product(*(groups[i] for i in range(5))):
            poly = list(combo[0].polygon)
            for p in combo[1:]:
                poly = clip_convex(poly, list(p.polygon))
                if len(poly) < 3:
                    break
            if len(poly) >= 3 and polygon_area(poly) > eps * eps:
                cells.append((f, tuple(poly), tuple(p.apex for p in combo)))
    return cells


def _vertex_candidates(s, c, grid):
    """Surface vertices strictly inside the region reachable by spokes in every window."""
    crossings = _Crossings(s)
    verts = set(c.vertices)
    out = []
    for w in range(len(s.vertices)):
        if w in verts:
            continue
        options = []
        for i, sl in enumerate(c.slots):
            W = c.wedge(i)
            opts = []
            for k, cand in sorted(grid.slot[sl.source].items()):
                if cand.target != w:
                    continue
                theta = (k - sl.index) % grid.size[sl.source]
                if not (W - RIGHT_UNITS < theta < RIGHT_UNITS):
                    continue
                if all(crossings.clean(grid, cand, e) for e in c.slots):
                    opts.append(cand)
            options.append(opts)
        if not all(options):
            continue
        for combo in itertools.product(*options):
            js = [cand.back for cand in combo]
            alphas = [(js[(i + 1) % 5] - js[i]) % grid.size[w] for i in range(5)]
            acute = sum(alphas) == grid.size[w] and all(0 < a < RIGHT_UNITS for a in alphas)
            out.append({"vertex": w, "spokes": [cand.index for cand in combo], "apex_units": alphas, "acute": acute})
    return out


def spokes_in_windows(s: PolyhedralSurface, c: C5Configuration, p: SurfacePoint) -> bool:
    """True if from every cycle vertex some shortest segment to p leaves inside its window."""
    for i, sl in enumerate(c.slots):
        total = s.cone_angle(sl.source)
        W = (c.slots[i - 1].phi_back - sl.phi) % total
        ok = False
        for g in shortest_geodesics(s, SurfacePoint.vertex(sl.source), p):
            theta = (direction_at(g).phi - sl.phi) % total
            ok = ok or W - RIGHT < theta < RIGHT
        if not ok:
            return False
    return True


def _samples(poly):
    m = sum(poly) / len(poly)
    return [m] + [(z + m) / 2 for z in poly]


def _face_samples(F):
    cs = list(F.corners)
    n = len(cs)
    mids = [(cs[i] + cs[(i + 1) % n]) / 2 for i in range(n)]
    return _samples(cs) + [0.1 * (sum(cs) / n) + 0.9 * z for z in mids]


def check_side(s: PolyhedralSurface, c: C5Configuration, tol: Tolerances = DEFAULT) -> dict:
    """Apex analysis for the region to the left of c."""
    grid = c.grid
    try:
        pieces = trace_beams(s, c, tol.eps_len)
    except BeamOverflow as exc:
        return {"verdict": "inconclusive", "reason": str(exc)}
    cells = _cells(pieces, tol.eps_len)
    records = []
    verdicts = []
    for f, poly, apexes in cells:
        tests = []
        chosen = None
        for i in range(5):
            res, margin = _disc_test(poly, apexes[i], apexes[(i + 1) % 5], tol.eps_len)
            tests.append({"pair": [i, (i + 1) % 5], "result": res, "margin": margin})
            if res == "in" and chosen is None:
                chosen = i
        if chosen is not None:
            v = "holds"
        elif any(t["result"] == "near" for t in tests):
            v = "inconclusive"
        else:
            v = "fails"
        verdicts.append(v)
        hits = sum(spokes_in_windows(s, c, SurfacePoint.in_face(f, z)) for z in _samples(poly))
        records.append({"shortest_spoke_samples": len(poly) + 1, "shortest_spoke_hits": hits,"face": f, "polygon": [[z.real, z.imag] for z in poly],
                        "area": polygon_area(poly), "virtual_cycle": [[z.real, z.imag] for z in apexes],
                        "excluded_by": None if chosen is None else [chosen, (chosen + 1) % 5],
                        "tests": tests, "verdict": v})
    vcands = _vertex_candidates(s, c, grid)
    verdicts.extend("fails" for x in vcands if x["acute"])
    faces = sorted({p.face for p in pieces})
    face_hits = {}
    for f in faces:
        pts = _face_samples(s.faces[f])
        face_hits[str(f)] = [sum(spokes_in_windows(s, c, SurfacePoint.in_face(f, z)) for z in pts), len(pts)]
    return {
        "verdict": combine(verdicts),
        "beam_pieces": len(pieces),
        "beam_faces": {str(i): sorted({p.face for p in pieces if p.spoke == i}) for i in range(5)},
        "faces_reached": faces,
        "face_samples": face_hits,
        "cells": records,
        "cell_faces": sorted({r["face"] for r in records}),
        "sampled_apex_faces": sorted({r["face"] for r in records if r["shortest_spoke_hits"]}),
        "vertex_candidates": vcands,
        "windows": [[c.wedge(i) * UNIT - RIGHT, RIGHT] for i in range(5)],
    }


def check_apex_infeasible(s: PolyhedralSurface, c5: C5Configuration, tol: Tolerances = DEFAULT) -> Certificate:
    sides = {"left": check_side(s, c5, tol), "right": check_side(s, c5.reversed(), tol)}
    ev = {"cycle": c5.to_json(), "sides": sides}
    return Certificate("apex-infeasible", combine(v["verdict"] for v in sides.values()), ev, params_of(tol))
