"""Geodesic triangulations: data model, the two constructions, and the verifier."""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .geodesic import (
    GeodesicError,
    GeodesicSegment,
    ccw_wedge,
    direction_at,
    disambiguating_face,
    geodesic_between,
    segments_intersect,
    shape_word,
    shortest_geodesics,
    traverses,
)
from .planar import TAU, line_intersection
from .surface import (
    PolyhedralSurface,
    SurfacePoint,
    antipode,
    curvature,
    locate,
    skeleton_distance,
    total_angle,
)
from .tolerances import DEFAULT, Tolerances

@dataclass(frozen=True)
class TriEdge:
    a: int
    b: int
    witness_face: int | None
    segment: GeodesicSegment

    def to_json(self):
        return {"a": self.a, "b": self.b, "witness_face": self.witness_face}


@dataclass
class GeodesicTriangulation:
    surface: PolyhedralSurface
    vertices: list[SurfacePoint]
    edges: list[TriEdge]
    triangles: list[tuple[int, int, int]]  # edge ids
    labels: list[str] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(self.vertices[i])

    def triangle_vertices(self, t: int) -> tuple[int, ...]:
        vs = set()
        for e in self.triangles[t]:
            vs.update((self.edges[e].a, self.edges[e].b))
        return tuple(sorted(vs))

    def edge_between(self, t: int, x: int, y: int) -> int:
        for e in self.triangles[t]:
            if {self.edges[e].a, self.edges[e].b} == {x, y}:
                return e
        raise KeyError((t, x, y))

    def to_json(self) -> dict:
        out = {
            "vertices": [p.to_json() for p in self.vertices],
            "edges": [e.to_json() for e in self.edges],
            "triangles": [list(t) for t in self.triangles],
        }
        if self.labels:
            out["labels"] = list(self.labels)
        return out


def make_edge(s, vertices, a: int, b: int, witness: int | None = None) -> TriEdge:
    seg = geodesic_between(s, vertices[a], vertices[b], witness)
    if witness is None:
        witness = seg.faces[0]
    return TriEdge(a, b, witness, seg)


def triangulation_from_json(s: PolyhedralSurface, data: dict) -> GeodesicTriangulation:
    verts = [SurfacePoint.from_json(p) for p in data["vertices"]]
    edges = []
    for e in data["edges"]:
        a, b, w = int(e["a"]), int(e["b"]), e.get("witness_face")
        for x in (a, b):
            if not 0 <= x < len(verts):
                raise ValueError(f"edge endpoint {x} out of range")
        edges.append(make_edge(s, verts, a, b, None if w is None else int(w)))
    tris = [tuple(int(x) for x in t) for t in data["triangles"]]
    return GeodesicTriangulation(s, verts, edges, tris, list(data.get("labels", [])))


def _from_triples(s, verts, labels, triples, witness_for=None):
    """Build edges and triangles from vertex-index triples."""
    witness_for = witness_for or {}
    edge_ids = {}
    edges = []
    tris = []
    for tri in triples:
        ids = []
        for x, y in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
            key = (min(x, y), max(x, y))
            if key not in edge_ids:
                edge_ids[key] = len(edges)
                edges.append(make_edge(s, verts, key[0], key[1], witness_for.get(key)))
            ids.append(edge_ids[key])
        tris.append(tuple(ids))
    return GeodesicTriangulation(s, verts, edges, tris, labels)


# -- octahedral construction: 8 non-obtuse triangles -----------------------------------


def construct_nonobtuse8(s: PolyhedralSurface, a: int | None = None, b: int | None = None) -> GeodesicTriangulation:
    """Octahedral triangulation from two diagonal corners a, b of a square face.

    The geodesics from a and b to their antipodes that run triangle-square-
    triangle cross twice, at the centres of two opposite squares.
    """
    if a is None or b is None:
        sq = next(f for f in s.faces if f.shape == "square")
        a, b = sq.vertices[0], sq.vertices[2]
    if not any(f.shape == "square" and {a, b} <= set(f.vertices) for f in s.faces) or skeleton_distance(s, a, b) != 2:
        raise ValueError(f"v{a}, v{b} are not diagonal corners of a square face")
    a2, b2 = antipode(s, a), antipode(s, b)
    A, B, A2, B2 = (SurfacePoint.vertex(x) for x in (a, b, a2, b2))
    ga = [g for g in shortest_geodesics(s, A, A2) if shape_word(g) == "tst"]
    gb = [g for g in shortest_geodesics(s, B, B2) if shape_word(g) == "tst"]
    crossings = []
    for x in ga:
        for y in gb:
            hit = segments_intersect(s, x, y)
            if hit.kind == "crossing":
                crossings.append((hit.points[0], x, y))
    if len(crossings) != 2:
        raise GeodesicError(f"expected two crossings of the chosen geodesics, found {len(crossings)}")
    (c, ga1, gb1), (c2, ga2, gb2) = crossings
    verts = [A, B, A2, B2, c, c2]
    labels = ["a", "b", "a'", "b'", "c", "c'"]
    # sub-segments of the chosen geodesics: witness = a face they traverse near the crossing
    wit = {
        (0, 4): _sub_witness(s, ga1, A, c), (2, 4): _sub_witness(s, ga1, A2, c),
        (1, 4): _sub_witness(s, gb1, B, c), (3, 4): _sub_witness(s, gb1, B2, c),
        (0, 5): _sub_witness(s, ga2, A, c2), (2, 5): _sub_witness(s, ga2, A2, c2),
        (1, 5): _sub_witness(s, gb2, B, c2), (3, 5): _sub_witness(s, gb2, B2, c2),
    }
    triples = [(0, 1, 4), (0, 3, 4), (0, 1, 5), (0, 3, 5), (2, 1, 4), (2, 3, 4), (2, 1, 5), (2, 3, 5)]
    return _from_triples(s, verts, labels, triples, wit)


def _sub_witness(s, g, p, q):
    """Witness face for the shortest p-q path that follows geodesic g."""
    segs = shortest_geodesics(s, p, q)
    if len(segs) == 1:
        return None
    faces = g.faces if g.start == p else g.faces[::-1]
    for seg in segs:
        if seg.faces == faces[: len(seg.faces)]:
            return disambiguating_face(s, p, q, seg)
    raise GeodesicError(f"no shortest {p}-{q} path follows {g}")


# -- square-diagonal construction: 12 acute triangles ----------------------------------


def square_diagonal_cycles(s: PolyhedralSurface) -> list[tuple[int, ...]]:
    """Closed 4-cycles of square diagonals, each listed from its lowest vertex."""
    diag = defaultdict(set)
    for f in s.faces:
        if f.shape == "square":
            v = f.vertices
            diag[v[0]].add(v[2]); diag[v[2]].add(v[0])
            diag[v[1]].add(v[3]); diag[v[3]].add(v[1])
    seen, cycles = set(), []
    for start in sorted(diag):
        if start in seen:
            continue
        cyc = [start]
        prev, cur = None, start
        while True:
            nxt = min(w for w in diag[cur] if w != prev) if prev is None else next(w for w in diag[cur] if w != prev)
            if nxt == start:
                break
            cyc.append(nxt)
            prev, cur = cur, nxt
        seen.update(cyc)
        if len(cyc) == 4:
            cycles.append(tuple(cyc))
    return cycles


def diagonal_square(s, u, v):
    for f in s.faces:
        if f.shape == "square" and {u, v} <= set(f.vertices) and skeleton_distance(s, u, v) == 2:
            return f
    raise ValueError(f"v{u}, v{v} are not opposite corners of a square")


def cycle_regions(s: PolyhedralSurface, cycle) -> tuple[frozenset, frozenset]:
    """Faces on either side of a square-diagonal cycle (cut squares excluded)."""
    cut = {diagonal_square(s, cycle[i], cycle[(i + 1) % len(cycle)]).id for i in range(len(cycle))}
    rest = [f.id for f in s.faces if f.id not in cut]
    comps = []
    left = set(rest)
    while left:
        root = min(left)
        comp, stack = {root}, [root]
        while stack:
            f = stack.pop()
            for k in range(len(s.faces[f])):
                g = s.neighbor(f, k).face
                if g in left and g not in comp:
                    comp.add(g)
                    stack.append(g)
        comps.append(frozenset(comp))
        left -= comp
    if len(comps) != 2:
        raise ValueError(f"cycle does not split the surface in two ({len(comps)} components)")
    return comps[0], comps[1]


def _side_vertex(s, x, y, region):
    common = set(s.adjacency[x]) & set(s.adjacency[y])
    picks = [v for v in common if any(v in s.faces[f].vertices for f in region)]
    if len(picks) != 1:
        raise ValueError(f"no unique common neighbour of v{x}, v{y} on the requested side")
    return picks[0]


def _star_point(s, apex, p, q, angle):
    """Point on diagonal pq of the square at apex, seen from apex at `angle` off apex->p."""
    f = diagonal_square(s, p, q)
    A = f.corners[f.corner_of(apex)]
    P = f.corners[f.corner_of(p)]
    Q = f.corners[f.corner_of(q)]
    d = (P - A)
    turn = complex(math.cos(angle), math.sin(angle))
    if ((Q - A) / d).imag < 0:
        turn = turn.conjugate()
    st = line_intersection(A, A + d * turn, P, Q)
    z = A + st[0] * d * turn
    return locate(s, f.id, z)


def construct_acute12(s: PolyhedralSurface, cycle=None) -> GeodesicTriangulation:
    """Acute 12-triangle triangulation built on a closed cycle of square diagonals."""
    if cycle is None:
        cycle = square_diagonal_cycles(s)[0]
    a1, b1, c1, d1 = cycle
    side1, side2 = cycle_regions(s, cycle)
    a = _side_vertex(s, a1, b1, side1)
    b = _side_vertex(s, b1, c1, side2)
    c = _side_vertex(s, c1, d1, side1)
    d = _side_vertex(s, d1, a1, side2)
    stars = [_star_point(s, a, a1, b1, math.pi / 6), _star_point(s, b, b1, c1, math.pi / 6),
             _star_point(s, c, c1, d1, math.pi / 6), _star_point(s, d, d1, a1, math.pi / 6)]
    V = SurfacePoint.vertex
    verts = [V(a), V(b), V(c), V(d)] + stars
    labels = ["a", "b", "c", "d", "a*", "b*", "c*", "d*"]
    A, B, C, D, As, Bs, Cs, Ds = range(8)
    wit = {
        (As, Bs): _region_witness(s, verts[As], verts[Bs], side2),
        (Cs, Ds): _region_witness(s, verts[Cs], verts[Ds], side2),
        (Bs, Cs): _region_witness(s, verts[Bs], verts[Cs], side1),
        (As, Ds): _region_witness(s, verts[Ds], verts[As], side1),
    }
    triples = [
        (As, A, Bs), (As, Bs, B), (As, B, D), (As, D, Ds), (As, Ds, A),
        (Bs, B, Cs), (Bs, Cs, C), (Bs, C, A), (Cs, C, Ds), (Cs, Ds, D),
        (Cs, D, B), (Ds, C, A),
    ]
    T = _from_triples(s, verts, labels, triples, wit)
    T.meta = {"cycle": list(cycle), "side1": sorted(side1), "side2": sorted(side2)}
    return T


def _region_witness(s, p, q, region):
    segs = shortest_geodesics(s, p, q)
    inside = [g for g in segs if any(f in region for f in g.faces)]
    if len(inside) != 1:
        raise GeodesicError(f"{len(inside)} tied geodesics from {p} to {q} enter the region")
    return disambiguating_face(s, p, q, inside[0], prefer=region)


# -- verification -----------------------------------------------------------------------


@dataclass(frozen=True)
class CornerAngle:
    triangle: int
    vertex: int
    angle: float

    def to_json(self):
        return {"triangle": self.triangle, "vertex": self.vertex, "angle": self.angle}


def _witness_directions(T, t, v):
    """Directions at corner v of triangle t pointing into the triangle.

    The witness point sits at a small arc-length fraction along the geodesic
    from v towards the midpoint of the opposite edge; only its direction at v
    matters.  Tied geodesics to the midpoint (a cone point inside the triangle
    can split them) each yield a witness, and they must agree on the wedge.
    """
    s = T.surface
    others = [x for x in T.triangle_vertices(t) if x != v]
    opp = T.edges[T.edge_between(t, *others)].segment
    mid = opp.point_at(0.5)
    return [direction_at(g) for g in shortest_geodesics(s, T.vertices[v], mid)]


def _corner(T, t, v, eps_ang):
    x, y = [w for w in T.triangle_vertices(t) if w != v]
    d1 = _dir(T, T.edge_between(t, v, x), v)
    d2 = _dir(T, T.edge_between(t, v, y), v)
    span = ccw_wedge(d1, d2)
    sides = set()
    for w in _witness_directions(T, t, v):
        off = ccw_wedge(d1, w)
        if off < eps_ang or abs(off - span) < eps_ang:
            raise GeodesicError(f"witness on wedge boundary at corner {T.label(v)} of triangle {t}")
        sides.add(off < span)
    if len(sides) != 1:
        raise GeodesicError(f"witnesses disagree on the wedge at corner {T.label(v)} of triangle {t}")
    if sides.pop():
        return span, (v, x, y)  # counterclockwise order v -> x -> y
    return d1.total - span, (v, y, x)


def _dir(T, e, v):
    seg = T.edges[e].segment
    if T.vertices[v] == seg.start:
        return direction_at(seg, "start")
    return direction_at(seg, "end")


def corner_angles(s: PolyhedralSurface, T: GeodesicTriangulation, eps_ang: float = DEFAULT.eps_ang) -> list[CornerAngle]:
    out = []
    for t in range(len(T.triangles)):
        for v in T.triangle_vertices(t):
            ang, _ = _corner(T, t, v, eps_ang)
            out.append(CornerAngle(t, v, ang))
    return out


@dataclass
class VerificationReport:
    checks: dict
    angles: list[CornerAngle]
    classification: str
    margin: float | None
    gauss_bonnet: dict
    errors: list[str]

    @property
    def valid(self) -> bool:
        return all(self.checks.values()) and len(self.checks) == 6

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "checks": dict(self.checks),
            "angles": [a.to_json() for a in self.angles],
            "classification": self.classification,
            "margin": self.margin,
            "gauss_bonnet": self.gauss_bonnet,
            "errors": list(self.errors),
        }


def _check_complex(T):
    errs = []
    nv = len(T.vertices)
    uses = Counter()
    for t, tri in enumerate(T.triangles):
        if len(set(tri)) != 3:
            errs.append(f"triangle {t} repeats an edge")
            continue
        for e in tri:
            if not 0 <= e < len(T.edges):
                errs.append(f"triangle {t} references missing edge {e}")
        if errs:
            continue
        ends = Counter()
        for e in tri:
            ends.update((T.edges[e].a, T.edges[e].b))
        if sorted(ends.values()) != [2, 2, 2]:
            errs.append(f"triangle {t} edges do not close into a triangle")
        uses.update(tri)
    for e in range(len(T.edges)):
        if uses[e] != 2:
            errs.append(f"edge {e} ({T.label(T.edges[e].a)}-{T.label(T.edges[e].b)}) lies in {uses[e]} triangles")
    if any(e.a == e.b for e in T.edges):
        errs.append("degenerate edge")
    used = {x for e in T.edges for x in (e.a, e.b)}
    if used != set(range(nv)):
        errs.append("isolated vertex")
    chi = nv - len(T.edges) + len(T.triangles)
    if chi != 2:
        errs.append(f"Euler characteristic {chi} != 2")
    return errs


def verify(s: PolyhedralSurface, T: GeodesicTriangulation, tol: Tolerances = DEFAULT) -> VerificationReport:
    checks = {}
    errors = _check_complex(T)
    checks["complex"] = not errors
    gb = {}
    if errors:
        return VerificationReport(checks, [], "neither", None, gb, errors)

    # pairwise edge intersections
    bad = []
    for i, j in itertools.combinations(range(len(T.edges)), 2):
        hit = segments_intersect(s, T.edges[i].segment, T.edges[j].segment, tol.eps_len)
        if hit.kind not in ("disjoint", "shared-endpoint"):
            bad.append(f"edges {i} and {j}: {hit.kind}")
    checks["intersections"] = not bad
    errors += bad

    # corner angles plus orientation consistency of the triangles
    angles, orient = [], {}
    try:
        for t in range(len(T.triangles)):
            cyc = None
            for v in T.triangle_vertices(t):
                ang, order = _corner(T, t, v, tol.eps_ang)
                angles.append(CornerAngle(t, v, ang))
                rot = _rotate_min(order)
                if cyc is None:
                    cyc = rot
                elif cyc != rot:
                    raise GeodesicError(f"triangle {t} corners disagree on orientation")
            orient[t] = cyc
        directed = Counter()
        for cyc in orient.values():
            for k in range(3):
                directed[(cyc[k], cyc[(k + 1) % 3])] += 1
        if any(n != 1 or directed[(y, x)] != 1 for (x, y), n in directed.items()):
            raise GeodesicError("triangle orientations are not coherent")
        checks["angles"] = True
    except GeodesicError as exc:
        checks["angles"] = False
        errors.append(str(exc))

    # per-vertex closure
    sums = defaultdict(float)
    for a in angles:
        sums[a.vertex] += a.angle
    closure = {}
    for v, p in enumerate(T.vertices):
        want = total_angle(s, p)
        closure[v] = sums.get(v, 0.0) - want
    checks["closure"] = checks["angles"] and all(abs(x) <= tol.eps_ang * 10 for x in closure.values())
    if not checks["closure"]:
        errors.append("angle closure fails at " + ", ".join(T.label(v) for v, x in closure.items() if abs(x) > tol.eps_ang * 10))

    # Gauss-Bonnet bookkeeping
    excess = []
    for t in range(len(T.triangles)):
        tot = math.fsum(a.angle for a in angles if a.triangle == t)
        excess.append(tot - math.pi)
    per_k = [x / (math.pi / 3) for x in excess]
    vcurv = math.fsum(curvature(s, p) for p in T.vertices)
    total = math.fsum(excess) + vcurv
    gb = {
        "triangle_excess": excess,
        "enclosed_cone_points": [round(k) for k in per_k],
        "excess_sum": math.fsum(excess),
        "vertex_curvature": vcurv,
        "total": total,
    }
    grid_ok = all(abs(k - round(k)) * math.pi / 3 <= 1e-9 and round(k) >= 0 for k in per_k)
    checks["gauss_bonnet"] = checks["angles"] and grid_ok and abs(total - 4 * math.pi) <= 1e-8
    if not checks["gauss_bonnet"]:
        errors.append("Gauss-Bonnet ledger does not balance")

    # classification
    if angles and checks["angles"]:
        margin = math.pi / 2 - max(a.angle for a in angles)
        if margin > tol.eps_ang:
            cls = "acute"
        elif margin >= -tol.eps_ang:
            cls = "non-obtuse"
        else:
            cls = "neither"
    else:
        margin, cls = None, "neither"
    checks["classification"] = margin is not None
    return VerificationReport(checks, angles, cls, margin, gb, errors)


def _rotate_min(cyc):
    i = cyc.index(min(cyc))
    return cyc[i:] + cyc[:i]
