"""Numeric tolerances shared by every module.

All exact quantities in this problem sit on a coarse grid (angles are
multiples of pi/12, lengths live in Q(sqrt2, sqrt3)), so fixed absolute
tolerances separate distinct values by many orders of magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

EPS_LEN = 1e-9
EPS_ANG = 1e-9
SNAP = 1e-6
MAX_FACES = 8


@dataclass(frozen=True)
class Tolerances:
    eps_len: float = EPS_LEN
    eps_ang: float = EPS_ANG
    snap: float = SNAP

    def __post_init__(self):
        if not 0 < self.eps_len <= 1e-6:
            raise ValueError(f"eps_len must be in (0, 1e-6], got {self.eps_len}")
        if not 0 < self.eps_ang <= 1e-6:
            raise ValueError(f"eps_ang must be in (0, 1e-6], got {self.eps_ang}")
        if self.snap < self.eps_ang:
            raise ValueError("snap must be >= eps_ang")

    def with_(self, **kw) -> "Tolerances":
        return replace(self, **kw)

    def as_dict(self) -> dict:
        return {"eps_len": self.eps_len, "eps_ang": self.eps_ang, "snap": self.snap}


DEFAULT = Tolerances()
