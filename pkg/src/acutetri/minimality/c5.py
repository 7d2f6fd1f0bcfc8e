"""Equatorial 5-cycles of a hypothetical 10-triangle acute triangulation.

Cycle vertices are surface vertices and cycle edges are vertex-to-vertex
shortest segments, so every cycle angle is an integer number of pi/12 units
and the search runs on the integer fan grid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from ..geodesic import disambiguating_face, segments_intersect, shape_word
from ..surface import PolyhedralSurface, face_permutation, isometry_group, skeleton_distance
from ..tolerances import MAX_FACES
from .certificate import UNIT, FanGrid, FanSlot, fan_grid

STRICT_WEDGES = (9, 10, 11)  # strictly between 2pi/3 and pi
CLOSED_WEDGES = (8, 9, 10, 11, 12)


@dataclass(frozen=True)
class C5Configuration:
    """Oriented 5-cycle; the region to the left of the edges is the 'left' side."""

    slots: tuple[FanSlot, ...]  # slots[i] runs from vertex i to vertex i+1
    grid: FanGrid

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sl.source for sl in self.slots)

    @property
    def segments(self):
        return tuple(sl.segment for sl in self.slots)

    def wedge(self, i: int) -> int:
        """Left-side angle at vertex i, in pi/12 units."""
        back = self.slots[i - 1].back
        return (back - self.slots[i].index) % self.grid.size[self.slots[i].source]

    @property
    def angles(self) -> tuple[int, ...]:
        return tuple(self.wedge(i) for i in range(5))

    @property
    def right_angles(self) -> tuple[int, ...]:
        return tuple(self.grid.size[v] - w for v, w in zip(self.vertices, self.angles))

    @cached_property
    def key(self) -> frozenset:
        return frozenset(_edge_key(self.grid, sl) for sl in self.slots)

    def reversed(self) -> "C5Configuration":
        return C5Configuration(tuple(self.grid.reverse(sl) for sl in reversed(self.slots)), self.grid)

    def rotated(self, r: int) -> "C5Configuration":
        return C5Configuration(self.slots[r:] + self.slots[:r], self.grid)

    def canonical(self) -> "C5Configuration":
        variants = [c.rotated(r) for c in (self, self.reversed()) for r in range(5)]
        return min(variants, key=lambda c: tuple((sl.source, sl.index) for sl in c.slots))

    def to_json(self) -> dict:
        s = self.grid.surface
        edges = []
        for sl in self.slots:
            edges.append({
                "from": sl.source, "to": sl.target, "index": sl.index, "back": sl.back,
                "distance": skeleton_distance(s, sl.source, sl.target),
                "shape": shape_word(sl.segment),
                "witness_face": disambiguating_face(s, sl.segment.start, sl.segment.end, sl.segment),
                "length": sl.segment.length,
            })
        return {
            "vertices": list(self.vertices),
            "edges": edges,
            "angles_left_units": list(self.angles),
            "angles_right_units": list(self.right_angles),
            "angles_left": [w * UNIT for w in self.angles],
            "angles_right": [w * UNIT for w in self.right_angles],
        }


def _edge_key(grid, sl):
    return min((sl.source, sl.index), (sl.target, sl.back))


class _Crossings:
    def __init__(self, s):
        self.s = s
        self.memo = {}

    def clean(self, g, a: FanSlot, b: FanSlot) -> bool:
        """True if the two segments meet at most in a common endpoint."""
        ka, kb = _edge_key(g, a), _edge_key(g, b)
        key = (ka, kb) if ka <= kb else (kb, ka)
        if key not in self.memo:
            kind = segments_intersect(self.s, a.segment, b.segment).kind
            self.memo[key] = kind in ("disjoint", "shared-endpoint")
        return self.memo[key]


def _cycles(s, grid, wedges, crossings):
    found = {}
    for v1 in range(len(s.vertices)):
        for k1 in sorted(grid.slot[v1]):
            first = grid.slot[v1][k1]
            stack = [[first]]
            while stack:
                path = stack.pop()
                last = path[-1]
                here = last.target
                if len(path) == 5:
                    if here != v1 or (first.index - last.back) % grid.size[v1] not in wedges and \
                            (last.back - first.index) % grid.size[v1] not in wedges:
                        continue
                    c = C5Configuration(tuple(path), grid)
                    if all(w in wedges for w in c.angles) and _simple(grid, path, crossings):
                        cc = c.canonical()
                        found.setdefault(cc.key, cc)
                    continue
                used = {sl.source for sl in path}
                for w in wedges:
                    nxt = grid.at(here, last.back - w)
                    if nxt is None:
                        continue
                    closing = len(path) == 4
                    if (nxt.target in used) != (closing and nxt.target == v1):
                        continue
                    if nxt.target == here:
                        continue
                    stack.append(path + [nxt])
    return sorted(found.values(), key=lambda c: tuple((sl.source, sl.index) for sl in c.slots))


def _simple(grid, path, crossings):
    for i, j in itertools.combinations(range(5), 2):
        if not crossings.clean(grid, path[i], path[j]):
            return False
    return True


def edge_filters(s: PolyhedralSurface, c: C5Configuration) -> dict:
    """Which of the three edge rules a cycle violates (empty values mean none)."""
    verts = c.vertices
    edge_pairs = {frozenset((sl.source, sl.target)): sl for sl in c.slots}
    adjacent_missing = []
    for a, b in itertools.combinations(sorted(verts), 2):
        if skeleton_distance(s, a, b) == 1:
            sl = edge_pairs.get(frozenset((a, b)))
            if sl is None or sl.segment.boundary_edge is None:
                adjacent_missing.append([a, b])
    far = [[sl.source, sl.target] for sl in c.slots if skeleton_distance(s, sl.source, sl.target) == 3]
    diag = [[sl.source, sl.target] for sl in c.slots
            if skeleton_distance(s, sl.source, sl.target) == 2 and shape_word(sl.segment) == "s"]
    return {"adjacent_not_edge": adjacent_missing, "distance3_edge": far, "square_diagonal_edge": diag}


def passes_filters(s, c) -> bool:
    return not any(edge_filters(s, c).values())


def map_configuration(c: C5Configuration, perm) -> C5Configuration:
    """Image under a surface isometry given as a vertex permutation."""
    s = c.grid.surface
    fperm = face_permutation(s, perm)
    out = []
    for sl in c.slots:
        seg = sl.segment
        if seg.boundary_edge is not None:
            a, b = s.edges[seg.boundary_edge]
            want = ("edge", s.edge_index[tuple(sorted((perm[a], perm[b])))])
        else:
            want = ("faces",) + tuple(fperm[f] for f in seg.faces)
        u = perm[sl.source]
        match = [x for x in c.grid.slot[u].values() if x.target == perm[sl.target] and x.segment.signature == want]
        if len(match) != 1:
            raise AssertionError("isometry image of a fan segment not found")
        out.append(match[0])
    return C5Configuration(tuple(out), c.grid).canonical()


def orbits(configs, group) -> list[list[C5Configuration]]:
    index = {c.key: c for c in configs}
    seen = set()
    out = []
    for c in configs:
        if c.key in seen:
            continue
        members = {}
        for perm in group:
            m = map_configuration(c, perm)
            members[m.key] = index.get(m.key, m)
        seen.update(members)
        out.append(sorted(members.values(), key=lambda x: tuple((sl.source, sl.index) for sl in x.slots)))
    return out


def adjacent_pair_scan(s: PolyhedralSurface) -> dict:
    """Adjacent-pair counts over all 5-subsets of surface vertices."""
    n = len(s.vertices)
    worst = None
    total = 0
    for sub in itertools.combinations(range(n), 5):
        k = sum(1 for a, b in itertools.combinations(sub, 2) if skeleton_distance(s, a, b) == 1)
        total += 1
        if worst is None or k < worst[0]:
            worst = (k, list(sub))
    return {"subsets": total, "min_adjacent_pairs": worst[0], "attained_by": worst[1],
            "holds": worst[0] >= 2}


@dataclass
class C5Enumeration:
    strict: list[C5Configuration]  # fact-compatible, non-crossing
    survivors: list[C5Configuration]  # strict plus the three edge rules
    grazing: list[C5Configuration]  # need a wedge of exactly 2pi/3 or pi
    survivor_orbits: list[list[C5Configuration]]
    strict_orbits: list[list[C5Configuration]]

    def summary(self) -> dict:
        return {
            "strict_cycles": len(self.strict),
            "strict_orbits": len(self.strict_orbits),
            "survivors": len(self.survivors),
            "survivor_orbits": len(self.survivor_orbits),
            "orbit_sizes": [len(o) for o in self.survivor_orbits],
            "grazing_cycles": len(self.grazing),
            "representatives": [o[0].to_json() for o in self.survivor_orbits],
        }


def enumerate_c5(s: PolyhedralSurface, max_faces: int = MAX_FACES) -> C5Enumeration:
    grid = fan_grid(s, max_faces)
    crossings = _Crossings(s)
    strict = _cycles(s, grid, STRICT_WEDGES, crossings)
    closed = _cycles(s, grid, CLOSED_WEDGES, crossings)
    strict_keys = {c.key for c in strict}
    grazing = [c for c in closed if c.key not in strict_keys]
    survivors = [c for c in strict if passes_filters(s, c)]
    group = isometry_group(s)
    return C5Enumeration(strict, survivors, grazing, orbits(survivors, group), orbits(strict, group))
