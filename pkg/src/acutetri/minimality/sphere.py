"""Isomorph-free generation of small triangulated 2-spheres.

Every simplicial 2-sphere other than the tetrahedron has a contractible edge,
so all of them arise from the tetrahedron by repeated vertex splits.
Isomorphs are rejected with a BFS canonical code over the rotation system,
minimised over every starting dart and both orientations.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property

SUPPORTED_F = (4, 6, 8, 10)
TETRAHEDRON = ((0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2))


@dataclass(frozen=True)
class CombinatorialTriangulation:
    n: int
    faces: tuple[tuple[int, int, int], ...]  # coherently oriented

    @cached_property
    def edges(self) -> frozenset:
        return frozenset(frozenset(e) for f in self.faces for e in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0])))

    @property
    def degrees(self) -> tuple[int, ...]:
        c = Counter(v for e in self.edges for v in e)
        return tuple(c[v] for v in range(self.n))

    @property
    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees, reverse=True))

    @property
    def min_degree(self) -> int:
        return min(self.degrees)

    def euler(self) -> int:
        return self.n - len(self.edges) + len(self.faces)

    def check(self) -> list[str]:
        """Sphere invariants; an empty list means all hold."""
        errs = []
        darts = Counter((f[i], f[(i + 1) % 3]) for f in self.faces for i in range(3))
        if any(c != 1 for c in darts.values()) or any((b, a) not in darts for a, b in darts):
            errs.append("not an oriented closed surface (edge not in exactly two faces)")
        if 2 * len(self.edges) != 3 * len(self.faces):
            errs.append("2E != 3F")
        if self.euler() != 2:
            errs.append(f"Euler characteristic {self.euler()}")
        if not _connected(self.n, self.edges):
            errs.append("disconnected")
        return errs

    def rotation(self) -> list[list[int]]:
        """Neighbours of each vertex in cyclic (face-orientation) order."""
        nxt = [dict() for _ in range(self.n)]
        for a, b, c in self.faces:
            nxt[a][b] = c
            nxt[b][c] = a
            nxt[c][a] = b
        rot = []
        for v in range(self.n):
            first = min(nxt[v])
            cyc = [first]
            while nxt[v][cyc[-1]] != first:
                cyc.append(nxt[v][cyc[-1]])
            rot.append(cyc)
        return rot

    def canonical_code(self) -> tuple[int, ...]:
        rot = self.rotation()
        best = None
        for v in range(self.n):
            for w in rot[v]:
                for sense in (1, -1):
                    code = _bfs_code(rot, v, w, sense)
                    if best is None or code < best:
                        best = code
        return best

    def to_json(self) -> dict:
        return {"vertices": self.n, "faces": [list(f) for f in self.faces],
                "degree_sequence": list(self.degree_sequence)}


def _connected(n, edges):
    adj = [set() for _ in range(n)]
    for e in edges:
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    q = deque([0])
    while q:
        u = q.popleft()
        for w in adj[u] - seen:
            seen.add(w)
            q.append(w)
    return len(seen) == n


def _bfs_code(rot, v0, w0, sense):
    pos = [{w: i for i, w in enumerate(r)} for r in rot]
    label = {v0: 1}
    parent = {v0: w0}
    order = [v0]
    code = []
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        r = rot[v]
        k = pos[v][parent[v]]
        d = len(r)
        for j in range(d):
            w = r[(k + sense * j) % d]
            if w not in label:
                label[w] = len(label) + 1
                parent[w] = v
                order.append(w)
            code.append(label[w])
        code.append(0)
    return tuple(code)


def _split(T: CombinatorialTriangulation, v: int, i: int, j: int) -> CombinatorialTriangulation:
    """Split v along the neighbour path rot[v][i], v, rot[v][j]."""
    rot = T.rotation()[v]
    d = len(rot)
    n = T.n
    moved = set()
    k = j
    while k != i:
        moved.add((rot[k], rot[(k + 1) % d]))
        k = (k + 1) % d
    faces = []
    for f in T.faces:
        if v in f:
            r = f.index(v)
            a, b = f[(r + 1) % 3], f[(r + 2) % 3]
            if (a, b) in moved:
                faces.append((n, a, b))
                continue
        faces.append(f)
    x, y = rot[i], rot[j]
    faces.append((n, x, v))
    faces.append((v, y, n))
    return CombinatorialTriangulation(n + 1, tuple(faces))


def enumerate_sphere_triangulations(F: int) -> list[CombinatorialTriangulation]:
    """Simplicial 2-sphere triangulations with F faces, one per isomorphism class."""
    if F not in SUPPORTED_F:
        raise ValueError(f"F must be one of {SUPPORTED_F}, got {F}")
    level = {CombinatorialTriangulation(4, TETRAHEDRON).canonical_code():
             CombinatorialTriangulation(4, TETRAHEDRON)}
    for _ in range((F - 4) // 2):
        nxt = {}
        for T in level.values():
            rot = T.rotation()
            for v in range(T.n):
                d = len(rot[v])
                for i in range(d):
                    for j in range(d):
                        if i == j:
                            continue
                        U = _split(T, v, i, j)
                        code = U.canonical_code()
                        if code not in nxt:
                            nxt[code] = U
        level = nxt
    out = sorted(level.values(), key=lambda T: (T.degree_sequence, T.canonical_code()))
    for T in out:
        errs = T.check()
        if errs:
            raise AssertionError(f"generated non-sphere: {errs}")
    return out
