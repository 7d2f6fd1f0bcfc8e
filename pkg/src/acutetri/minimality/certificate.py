"""Certificate record shared by every lower-bound check, plus the pi/12 angle grid."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from ..geodesic import GeodesicSegment, direction_at, vertex_fan
from ..surface import PolyhedralSurface
from ..tolerances import DEFAULT, MAX_FACES, Tolerances

VERDICTS = ("holds", "fails", "inconclusive")
UNIT = math.pi / 12


@dataclass
class Certificate:
    claim: str
    verdict: str
    evidence: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    def to_json(self) -> dict:
        return {"claim": self.claim, "verdict": self.verdict, "evidence": self.evidence, "params": self.params}


def params_of(tol: Tolerances = DEFAULT, max_faces: int | None = None) -> dict:
    out = tol.as_dict()
    if max_faces is not None:
        out["max_faces"] = max_faces
    return out


def combine(flags) -> str:
    """Worst verdict wins: fails over inconclusive over holds."""
    flags = list(flags)
    if "fails" in flags:
        return "fails"
    if "inconclusive" in flags:
        return "inconclusive"
    return "holds"


def snap(angle: float, snap_tol: float = DEFAULT.snap) -> int:
    """Nearest multiple of pi/12, in units of pi/12; raises if off the grid."""
    k = round(angle / UNIT)
    if abs(angle - k * UNIT) > snap_tol:
        raise ValueError(f"angle {angle!r} is not on the pi/12 grid")
    return k


@dataclass(frozen=True)
class FanSlot:
    source: int
    index: int  # direction at the source, in units of pi/12
    target: int
    back: int  # index of the same segment at the target, pointing back
    segment: GeodesicSegment
    phi: float  # raw fan coordinate at the source
    phi_back: float  # raw fan coordinate of the reverse at the target
    residual: float  # largest distance of the raw angles from the grid


class FanGrid:
    """Vertex fans on the integer pi/12 grid: slot[u][k] is the segment leaving u at k*pi/12."""

    def __init__(self, s: PolyhedralSurface, max_faces: int = MAX_FACES, snap_tol: float = DEFAULT.snap):
        self.surface = s
        self.size = {}
        self.slot = {}
        for u in range(len(s.vertices)):
            total = snap(s.cone_angle(u), snap_tol)
            row = {}
            for fe in vertex_fan(s, u, max_faces):
                k = snap(fe.phi, snap_tol) % total
                d_end = direction_at(fe.segment, "end")
                j = snap(d_end.phi, snap_tol) % snap(d_end.total, snap_tol)
                res = max(abs(fe.phi - round(fe.phi / UNIT) * UNIT), abs(d_end.phi - round(d_end.phi / UNIT) * UNIT))
                if k in row:
                    raise ValueError(f"two fan segments at vertex {u} share grid index {k}")
                row[k] = FanSlot(u, k, fe.target, j, fe.segment, fe.phi, d_end.phi, res)
            self.size[u] = total
            self.slot[u] = row

    def at(self, u: int, k: int) -> FanSlot | None:
        return self.slot[u].get(k % self.size[u])

    def reverse(self, sl: FanSlot) -> FanSlot:
        r = self.slot[sl.target][sl.back]
        if r.target != sl.source or r.back != sl.index:
            raise AssertionError("fan slots are not mutually reverse")
        return r

    def max_residual(self) -> float:
        return max(sl.residual for row in self.slot.values() for sl in row.values())


@lru_cache(maxsize=8)
def fan_grid(s: PolyhedralSurface, max_faces: int = MAX_FACES) -> FanGrid:
    return FanGrid(s, max_faces)
