"""Convex polyhedral surfaces as planar faces glued along edges.

Each face keeps its own planar chart (a CCW polygon, corner 0 at the origin);
the intrinsic metric is entirely determined by the charts and the gluing
isometries.  A 3D embedding is kept only for documentation output.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .planar import TAU, Motion, ccw_angle, point_segment_distance, regular_polygon
from .tolerances import EPS_LEN

SHAPES = {3: "triangle", 4: "square"}


@dataclass(frozen=True)
class Face:
    id: int
    vertices: tuple[int, ...]
    corners: tuple[complex, ...]

    @property
    def shape(self) -> str:
        return SHAPES.get(len(self.vertices), f"{len(self.vertices)}-gon")

    def __len__(self):
        return len(self.vertices)

    def corner_of(self, v: int) -> int:
        return self.vertices.index(v)

    def corner_angle(self, i: int) -> float:
        n = len(self.corners)
        c = self.corners[i]
        return ccw_angle(self.corners[(i + 1) % n] - c, self.corners[i - 1] - c)

    def edge(self, k: int) -> tuple[complex, complex]:
        return self.corners[k], self.corners[(k + 1) % len(self.corners)]

    def edge_vertices(self, k: int) -> tuple[int, int]:
        return self.vertices[k], self.vertices[(k + 1) % len(self.vertices)]

    def contains(self, z: complex, eps: float = EPS_LEN) -> bool:
        n = len(self.corners)
        for k in range(n):
            a, b = self.edge(k)
            d = b - a
            if (d.real * (z - a).imag - d.imag * (z - a).real) / abs(d) < -eps:
                return False
        return True


@dataclass(frozen=True)
class Gluing:
    face: int
    edge: int
    motion: Motion  # maps this face's chart onto the partner's chart


@dataclass(frozen=True)
class VertexStar:
    """Cyclic CCW fan of face corners around a vertex.

    ``starts[i]`` is the fan coordinate of the first ray of ``corners[i]``;
    the reference ray (coordinate 0) is the edge to the lowest-id neighbour.
    """

    vertex: int
    corners: tuple[tuple[int, int], ...]  # (face id, corner index)
    angles: tuple[float, ...]
    starts: tuple[float, ...]

    @property
    def cone_angle(self) -> float:
        return math.fsum(self.angles)


@dataclass(frozen=True, eq=False)
class PolyhedralSurface:
    faces: tuple[Face, ...]
    gluings: dict  # (face, edge) -> Gluing
    vertices: tuple[VertexStar, ...]
    edges: tuple[tuple[int, int], ...]  # sorted (u, v) with u < v
    edge_length: float = 1.0
    embedding: tuple = field(default=(), repr=False)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nb = [set() for _ in self.vertices]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(tuple(sorted(s)) for s in nb)

    @cached_property
    def edge_index(self) -> dict:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def _faces_at_vertex(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(f for f, _ in st.corners)) for st in self.vertices)

    @cached_property
    def _faces_at_edge(self) -> dict:
        out = {}
        for f in self.faces:
            for k in range(len(f)):
                u, v = f.edge_vertices(k)
                out.setdefault((min(u, v), max(u, v)), []).append((f.id, k))
        return {e: tuple(sorted(x)) for e, x in out.items()}

    @cached_property
    def _star_pos(self) -> dict:
        pos = {}
        for st in self.vertices:
            for i, fc in enumerate(st.corners):
                pos[(st.vertex, fc[0])] = i
        return pos

    @cached_property
    def distances(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(_bfs(self.adjacency, v)) for v in range(len(self.vertices)))

    # -- combinatorial queries -------------------------------------------------

    def cone_angle(self, v: int) -> float:
        return self.vertices[v].cone_angle

    def faces_at_vertex(self, v: int) -> tuple[int, ...]:
        return self._faces_at_vertex[v]

    def faces_at_edge(self, e) -> tuple[tuple[int, int], ...]:
        """(face, edge index) pairs bordering skeleton edge ``e`` (id or pair)."""
        if isinstance(e, int):
            e = self.edges[e]
        return self._faces_at_edge[(min(e), max(e))]

    def neighbor(self, face: int, k: int) -> Gluing:
        return self.gluings[(face, k)]

    def face_between(self, f: int, g: int) -> int:
        """Edge index of face f glued to face g."""
        for k in range(len(self.faces[f])):
            if self.gluings[(f, k)].face == g:
                return k
        raise ValueError(f"faces {f} and {g} are not glued")

    def star_entry(self, v: int, face: int) -> int:
        return self._star_pos[(v, face)]

    @property
    def total_area(self) -> float:
        from .planar import polygon_area

        return math.fsum(polygon_area(f.corners) for f in self.faces)

    def to_json(self) -> dict:
        return {
            "faces": [{"id": f.id, "vertices": list(f.vertices), "shape": f.shape} for f in self.faces],
            "edge_length": self.edge_length,
        }


def _bfs(adj, s):
    dist = [-1] * len(adj)
    dist[s] = 0
    q = deque([s])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def from_faces(face_cycles, edge_length: float = 1.0, embedding=()) -> PolyhedralSurface:
    """Assemble a surface from CCW vertex cycles of regular polygons."""
    if edge_length <= 0:
        raise ValueError("edge_length must be positive")
    faces = tuple(
        Face(i, tuple(cyc), tuple(regular_polygon(len(cyc), edge_length)))
        for i, cyc in enumerate(face_cycles)
    )
    directed = {}
    for f in faces:
        for k in range(len(f)):
            key = f.edge_vertices(k)
            if key in directed:
                raise ValueError(f"directed edge {key} used twice; orientation inconsistent")
            directed[key] = (f.id, k)
    gluings = {}
    for (u, v), (fid, k) in directed.items():
        if (v, u) not in directed:
            raise ValueError(f"edge {(u, v)} is not glued")
        gid, j = directed[(v, u)]
        f, g = faces[fid], faces[gid]
        p0, p1 = f.edge(k)
        q1, q0 = g.edge(j)  # g runs v -> u
        if abs(abs(p1 - p0) - abs(q1 - q0)) > EPS_LEN:
            raise ValueError(f"glued edges {(u, v)} differ in length")
        gluings[(fid, k)] = Gluing(gid, j, Motion.from_segments(p0, p1, q0, q1))
    edges = tuple(sorted({(min(u, v), max(u, v)) for u, v in directed}))
    nverts = 1 + max(max(c) for c in face_cycles)
    vertices = tuple(_star(v, faces, directed, edges) for v in range(nverts))
    return PolyhedralSurface(faces, gluings, vertices, edges, edge_length, tuple(embedding))


def _star(v, faces, directed, edges) -> VertexStar:
    nbrs = sorted({b for a, b in directed if a == v})
    ref = nbrs[0]
    fid, k = directed[(v, ref)]  # face whose corner at v starts on the ray v->ref
    corners, angles = [], []
    while True:
        f = faces[fid]
        i = f.corner_of(v)
        corners.append((fid, i))
        angles.append(f.corner_angle(i))
        prev = f.vertices[i - 1]
        fid, _ = directed[(v, prev)]
        if fid == corners[0][0]:
            break
        if len(corners) > len(faces):
            raise ValueError(f"vertex {v} star does not close")
    starts = tuple(itertools.accumulate([0.0] + angles[:-1]))
    return VertexStar(v, tuple(corners), tuple(angles), starts)


def build_cuboctahedron(edge_length: float = 1.0) -> PolyhedralSurface:
    """Unit-edge (or scaled) cuboctahedron: 6 squares then 8 triangles."""
    if not edge_length > 0:
        raise ValueError("edge_length must be positive")
    pts = sorted(
        {p for perm in set(itertools.permutations((1, 1, 0))) for p in _signs(perm)}
    )
    index = {p: i for i, p in enumerate(pts)}
    cycles = []
    for axis in range(3):
        for sign in (1, -1):
            members = [p for p in pts if p[axis] == sign]
            cycles.append(_ccw_cycle(members, index))
    for sx, sy, sz in itertools.product((1, -1), repeat=3):
        members = [(sx, sy, 0), (sx, 0, sz), (0, sy, sz)]
        cycles.append(_ccw_cycle(members, index))
    scale = edge_length / math.sqrt(2.0)
    emb = tuple(tuple(scale * c for c in p) for p in pts)
    return from_faces(cycles, edge_length, emb)


def _signs(p):
    out = set()
    for s in itertools.product((1, -1), repeat=3):
        out.add(tuple(a * b for a, b in zip(p, s)))
    return out


def _ccw_cycle(members, index):
    cx = [sum(p[i] for p in members) / len(members) for i in range(3)]
    n = cx
    # orthonormal-ish basis in the face plane; orientation taken from the outward normal
    ref = [members[0][i] - cx[i] for i in range(3)]
    other = _cross3(n, ref)

    def ang(p):
        d = [p[i] - cx[i] for i in range(3)]
        return math.atan2(sum(a * b for a, b in zip(d, other)), sum(a * b for a, b in zip(d, ref)))

    ordered = sorted(members, key=ang)
    cyc = [index[p] for p in ordered]
    r = cyc.index(min(cyc))
    return tuple(cyc[r:] + cyc[:r])


def _cross3(a, b):
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def surface_from_json(data: dict) -> PolyhedralSurface:
    faces = sorted(data["faces"], key=lambda f: f["id"])
    cycles = [tuple(f["vertices"]) for f in faces]
    for f in faces:
        want = {"triangle": 3, "square": 4}.get(f.get("shape"), len(f["vertices"]))
        if want != len(f["vertices"]):
            raise ValueError(f"face {f['id']} shape {f['shape']!r} does not match its vertices")
    return from_faces(cycles, float(data.get("edge_length", 1.0)))


# -- metric queries --------------------------------------------------------------


def skeleton_distance(s: PolyhedralSurface, v: int, w: int) -> int:
    n = len(s.vertices)
    if not (0 <= v < n and 0 <= w < n):
        raise KeyError(f"unknown vertex id {v if not 0 <= v < n else w}")
    return s.distances[v][w]


def antipode(s: PolyhedralSurface, v: int) -> int:
    """The vertex exchanged with v by the central symmetry."""
    table = _antipodes(s)
    return table[v]


def _antipodes(s):
    n = len(s.vertices)
    far = []
    for v in range(n):
        dmax = max(s.distances[v])
        cands = [w for w in range(n) if s.distances[v][w] == dmax]
        if len(cands) != 1:
            raise ValueError("surface has no central symmetry (no unique farthest vertex)")
        far.append(cands[0])
    if any(far[far[v]] != v for v in range(n)):
        raise ValueError("surface has no central symmetry (farthest map not an involution)")
    perm = tuple(far)
    if perm not in isometry_group(s):
        raise ValueError("surface has no central symmetry (antipodal map is not an isometry)")
    return perm


def isometry_group(s: PolyhedralSurface) -> list[tuple[int, ...]]:
    """Skeleton automorphisms that carry every face onto a face of the same shape."""
    cached = s.__dict__.get("_isometries")
    if cached is None:
        cached = _isometries(s)
        object.__setattr__(s, "_isometries", cached)
    return cached


def _isometries(s):
    adj = [set(a) for a in s.adjacency]
    n = len(adj)
    order = sorted(range(n), key=lambda v: (s.distances[0][v], v))
    face_sets = {frozenset(f.vertices): f.shape for f in s.faces}
    out = []

    def extend(k, perm, used):
        if k == n:
            if all(face_sets.get(frozenset(perm[v] for v in fs)) == shp for fs, shp in face_sets.items()):
                out.append(tuple(perm[v] for v in range(n)))
            return
        v = order[k]
        for img in range(n):
            if img in used:
                continue
            # adjacency and non-adjacency to every mapped vertex must be preserved
            if all((w in adj[v]) == (perm[w] in adj[img]) for w in perm):
                perm[v] = img
                used.add(img)
                extend(k + 1, perm, used)
                del perm[v]
                used.discard(img)

    extend(0, {}, set())
    out.sort()
    return out


def face_permutation(s: PolyhedralSurface, perm) -> tuple[int, ...]:
    lookup = {frozenset(f.vertices): f.id for f in s.faces}
    return tuple(lookup[frozenset(perm[v] for v in f.vertices)] for f in s.faces)


# -- surface points ----------------------------------------------------------------


@dataclass(frozen=True)
class SurfacePoint:
    """Canonical location: a vertex, an interior edge point, or a face interior point.

    Edge points are stored on the skeleton edge (u, v), u < v, with parameter t
    measured from u.  Face points carry chart coordinates of their face.
    """

    kind: str
    index: int
    t: float = 0.0
    z: complex = 0j

    @classmethod
    def vertex(cls, v: int) -> "SurfacePoint":
        return cls("vertex", v)

    @classmethod
    def on_edge(cls, e: int, t: float) -> "SurfacePoint":
        if not 0.0 < t < 1.0:
            raise ValueError(f"edge parameter must lie strictly inside (0, 1), got {t}")
        return cls("edge", e, t=t)

    @classmethod
    def in_face(cls, f: int, z: complex) -> "SurfacePoint":
        return cls("face", f, z=complex(z))

    @property
    def is_vertex(self) -> bool:
        return self.kind == "vertex"

    def close_to(self, other: "SurfacePoint", s: PolyhedralSurface, eps: float = 1e-7) -> bool:
        if self.kind != other.kind or self.index != other.index:
            return False
        if self.kind == "edge":
            return abs(self.t - other.t) * s.edge_length <= eps
        if self.kind == "face":
            return abs(self.z - other.z) <= eps
        return True

    def to_json(self) -> dict:
        if self.kind == "vertex":
            return {"kind": "vertex", "vertex": self.index}
        if self.kind == "edge":
            return {"kind": "edge", "edge": self.index, "t": self.t}
        return {"kind": "face", "face": self.index, "x": self.z.real, "y": self.z.imag}

    @classmethod
    def from_json(cls, d: dict) -> "SurfacePoint":
        kind = d["kind"]
        if kind == "vertex":
            return cls.vertex(int(d["vertex"]))
        if kind == "edge":
            return cls.on_edge(int(d["edge"]), float(d["t"]))
        if kind == "face":
            return cls.in_face(int(d["face"]), complex(float(d["x"]), float(d["y"])))
        raise ValueError(f"unknown point kind {kind!r}")

    @classmethod
    def parse(cls, text: str) -> "SurfacePoint":
        """Read the short form printed by str(): v3, e5:0.25 or f2:0.3,0.4."""
        text = text.strip()
        try:
            if text[0] == "v":
                return cls.vertex(int(text[1:]))
            head, _, tail = text.partition(":")
            if text[0] == "e":
                return cls.on_edge(int(head[1:]), float(tail))
            if text[0] == "f":
                x, y = tail.split(",")
                return cls.in_face(int(head[1:]), complex(float(x), float(y)))
        except (IndexError, ValueError) as exc:
            raise ValueError(f"bad point {text!r}: {exc}") from None
        raise ValueError(f"bad point {text!r}; expected v<id>, e<id>:t or f<id>:x,y")

    def __str__(self):
        if self.kind == "vertex":
            return f"v{self.index}"
        if self.kind == "edge":
            return f"e{self.index}:{self.t:.6g}"
        return f"f{self.index}:{self.z.real:.6g},{self.z.imag:.6g}"


def locate(s: PolyhedralSurface, face: int, z: complex, eps: float = EPS_LEN) -> SurfacePoint:
    """Canonical SurfacePoint for chart coordinates ``z`` of ``face``."""
    f = s.faces[face]
    for i, c in enumerate(f.corners):
        if abs(z - c) <= eps:
            return SurfacePoint.vertex(f.vertices[i])
    for k in range(len(f)):
        a, b = f.edge(k)
        if point_segment_distance(z, a, b) <= eps:
            u, v = f.edge_vertices(k)
            t = abs(z - a) / abs(b - a)
            if u > v:
                u, v, t = v, u, 1.0 - t
            return SurfacePoint.on_edge(s.edge_index[(u, v)], min(max(t, 1e-15), 1 - 1e-15))
    if not f.contains(z, eps):
        raise ValueError(f"point {z} lies outside face {face}")
    return SurfacePoint.in_face(face, z)


def faces_containing(s: PolyhedralSurface, p: SurfacePoint) -> tuple[int, ...]:
    if p.kind == "vertex":
        return s.faces_at_vertex(p.index)
    if p.kind == "edge":
        return tuple(f for f, _ in s.faces_at_edge(p.index))
    return (p.index,)


def coords_in_face(s: PolyhedralSurface, p: SurfacePoint, face: int) -> complex:
    """Chart coordinates of p in a face that contains it."""
    f = s.faces[face]
    if p.kind == "vertex":
        return f.corners[f.corner_of(p.index)]
    if p.kind == "edge":
        u, v = s.edges[p.index]
        return f.corners[f.corner_of(u)] + p.t * (f.corners[f.corner_of(v)] - f.corners[f.corner_of(u)])
    if p.index != face:
        raise ValueError(f"{p} is not in face {face}")
    return p.z


def total_angle(s: PolyhedralSurface, p: SurfacePoint) -> float:
    return s.cone_angle(p.index) if p.kind == "vertex" else TAU


def curvature(s: PolyhedralSurface, p: SurfacePoint) -> float:
    return TAU - total_angle(s, p)


def map_point(s: PolyhedralSurface, perm, p: SurfacePoint) -> SurfacePoint:
    """Image of p under the isometry given by a vertex permutation."""
    if p.kind == "vertex":
        return SurfacePoint.vertex(perm[p.index])
    if p.kind == "edge":
        u, v = s.edges[p.index]
        a, b, t = perm[u], perm[v], p.t
        if a > b:
            a, b, t = b, a, 1 - t
        return SurfacePoint.on_edge(s.edge_index[(a, b)], t)
    fperm = face_permutation(s, perm)
    src, dst = s.faces[p.index], s.faces[fperm[p.index]]
    # the isometry is fixed by where two corners go; reflections flip orientation
    i0, i1 = 0, 1
    q0 = dst.corners[dst.corner_of(perm[src.vertices[i0]])]
    q1 = dst.corners[dst.corner_of(perm[src.vertices[i1]])]
    p0, p1 = src.corners[i0], src.corners[i1]
    u = (p.z - p0) / (p1 - p0)
    q2 = dst.corners[dst.corner_of(perm[src.vertices[2]])]
    w = (q2 - q0) / (q1 - q0)
    w_src = (src.corners[2] - p0) / (p1 - p0)
    if abs(w - w_src) > 1e-9:  # orientation reversing
        u = u.conjugate()
    return locate(s, dst.id, q0 + u * (q1 - q0))
