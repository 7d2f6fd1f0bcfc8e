"""SVG figures: surface nets with triangulations, vertex fans, and certificate panels.

Output is plain text built by hand, with fixed float formatting and no
timestamps, so identical inputs give identical files.
"""

from __future__ import annotations

import cmath
import math
from collections import deque
from pathlib import Path

from .geodesic import vertex_fan
from .planar import Motion, clip_convex, polygon_area
from .surface import PolyhedralSurface

FILL = {"triangle": "#f3e3c3", "square": "#cfe0f0"}
PALETTE = ("#c0392b", "#2471a3", "#229954", "#8e44ad", "#d68910", "#17202a")


def _fmt(x: float) -> str:
    text = f"{x:.5f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _pts(zs) -> str:
    return " ".join(f"{_fmt(z.real)},{_fmt(-z.imag)}" for z in zs)


class Canvas:
    """Collects shapes in model coordinates (y up) and writes a fitted SVG."""

    def __init__(self, title: str = ""):
        self.title = title
        self.items: list[str] = []
        self.bounds: list[complex] = []

    def polygon(self, zs, fill="none", stroke="#555", width=0.01, opacity=1.0):
        zs = list(zs)
        self.bounds.extend(zs)
        self.items.append(f'<polygon points="{_pts(zs)}" fill="{fill}" fill-opacity="{_fmt(opacity)}" '
                          f'stroke="{stroke}" stroke-width="{_fmt(width)}"/>')

    def line(self, a, b, stroke="#000", width=0.02, dash=None):
        self.bounds.extend((a, b))
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(f'<line x1="{_fmt(a.real)}" y1="{_fmt(-a.imag)}" x2="{_fmt(b.real)}" '
                          f'y2="{_fmt(-b.imag)}" stroke="{stroke}" stroke-width="{_fmt(width)}"{extra}/>')

    def circle(self, c, r, stroke="#000", fill="none", width=0.01, dash=None):
        self.bounds.extend((c - r - r * 1j, c + r + r * 1j))
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(f'<circle cx="{_fmt(c.real)}" cy="{_fmt(-c.imag)}" r="{_fmt(r)}" fill="{fill}" '
                          f'stroke="{stroke}" stroke-width="{_fmt(width)}"{extra}/>')

    def dot(self, c, r=0.025, fill="#000"):
        self.circle(c, r, stroke="none", fill=fill, width=0)

    def text(self, c, label, size=0.09, fill="#000"):
        self.bounds.append(c)
        self.items.append(f'<text x="{_fmt(c.real)}" y="{_fmt(-c.imag)}" font-size="{_fmt(size)}" '
                          f'font-family="sans-serif" fill="{fill}" text-anchor="middle">{label}</text>')

    def to_svg(self, pixels: int = 640) -> str:
        if not self.bounds:
            self.bounds = [0j, 1 + 1j]
        xs = [z.real for z in self.bounds]
        ys = [-z.imag for z in self.bounds]
        pad = 0.1 * max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
        x0, y0 = min(xs) - pad, min(ys) - pad
        w, h = max(xs) - min(xs) + 2 * pad, max(ys) - min(ys) + 2 * pad
        height = int(round(pixels * h / w))
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{pixels}" height="{height}" '
                f'viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(w)} {_fmt(h)}">')
        title = f"<title>{self.title}</title>" if self.title else ""
        return "\n".join([head, title, *self.items, "</svg>"]) + "\n"


# -- nets --------------------------------------------------------------------------------


def net_placements(s: PolyhedralSurface, root: int = 0) -> dict[int, Motion]:
    """Non-overlapping BFS unfolding; faces that would overlap start new islands."""
    placed: dict[int, Motion] = {}
    offset = 0j
    for start in [root] + [f.id for f in s.faces]:
        if start in placed:
            continue
        placed[start] = Motion(1, offset)
        q = deque([start])
        while q:
            f = q.popleft()
            for k in range(len(s.faces[f])):
                g = s.neighbor(f, k)
                if g.face in placed:
                    continue
                M = g.motion.inverse().then(placed[f])
                poly = [M(z) for z in s.faces[g.face].corners]
                if any(_overlap(poly, [placed[h](z) for z in s.faces[h].corners]) for h in placed):
                    continue
                placed[g.face] = M
                q.append(g.face)
        xs = [placed[f](z).real for f in placed for z in s.faces[f].corners]
        offset = complex(max(xs) + 1.0, 0)
    return placed


def _overlap(p, q) -> bool:
    inter = clip_convex(p, q)
    return len(inter) >= 3 and polygon_area(inter) > 1e-9


def render_net(s: PolyhedralSurface, T=None, title: str = "net") -> str:
    place = net_placements(s)
    cv = Canvas(title)
    for f in s.faces:
        M = place[f.id]
        poly = [M(z) for z in f.corners]
        cv.polygon(poly, fill=FILL.get(f.shape, "#eee"), stroke="#777", width=0.01)
        cv.text(sum(poly) / len(poly), f"f{f.id}", size=0.07, fill="#999")
    for f in s.faces:
        for i, v in enumerate(f.vertices):
            z = place[f.id](f.corners[i])
            cv.text(z + 0.06 + 0.06j, str(v), size=0.06, fill="#555")
    if T is not None:
        for n, e in enumerate(T.edges):
            color = PALETTE[n % len(PALETTE)]
            for f, a, b, _, _ in e.segment.pieces():
                M = place[f]
                cv.line(M(a), M(b), stroke=color, width=0.02)
    return cv.to_svg()


# -- fans --------------------------------------------------------------------------------


def render_fan(s: PolyhedralSurface, u: int) -> str:
    """Each fan segment drawn at its true angle and length around u; the cone gap stays open."""
    cv = Canvas(f"fan at vertex {u}")
    fan = vertex_fan(s, u)
    theta = s.cone_angle(u)
    r = max(fe.segment.length for fe in fan) * 1.1
    cv.line(0j, r * cmath.exp(1j * theta), stroke="#aaa", width=0.01, dash="0.04,0.03")
    cv.line(0j, r + 0j, stroke="#aaa", width=0.01, dash="0.04,0.03")
    for n, fe in enumerate(fan):
        end = fe.segment.length * cmath.exp(1j * fe.phi)
        cv.line(0j, end, stroke=PALETTE[n % 2], width=0.015)
        cv.dot(end, 0.02)
        cv.text(end * (1 + 0.12 / abs(end)), str(fe.target), size=0.08)
    cv.dot(0j, 0.03, "#c0392b")
    return cv.to_svg()


# -- certificate panels ------------------------------------------------------------------


def render_apex_side(side: dict, title: str) -> str:
    """Candidate-apex cells with their virtual cycle and the excluding disc."""
    cv = Canvas(title)
    col = 0
    for cell in side.get("cells", []):
        shift = complex(3.2 * col, 0)
        col += 1
        V = [complex(x, y) + shift for x, y in cell["virtual_cycle"]]
        cv.polygon(V, fill="none", stroke="#2471a3", width=0.015)
        for i, z in enumerate(V):
            cv.dot(z, 0.03, "#2471a3")
            cv.text(z + 0.12j, f"v{i + 1}", size=0.1, fill="#2471a3")
        poly = [complex(x, y) + shift for x, y in cell["polygon"]]
        cv.polygon(poly, fill="#c0392b", stroke="#c0392b", width=0.005, opacity=0.6)
        if cell["excluded_by"] is not None:
            i, j = cell["excluded_by"]
            m, rad = (V[i] + V[j]) / 2, abs(V[j] - V[i]) / 2
            cv.circle(m, rad, stroke="#229954", width=0.015, dash="0.05,0.03")
            cv.line(V[i], V[j], stroke="#229954", width=0.01, dash="0.05,0.03")
    return cv.to_svg()


def render_case(s: PolyhedralSurface, rec: dict, title: str) -> str:
    """Base segment with the two 5pi/12 rays of an all-equal triangle test."""
    from .minimality.certificate import UNIT, fan_grid

    g = fan_grid(s)
    base = g.slot[rec["from"]][rec["index"]]
    side = 1 if rec["side"] == "left" else -1
    cv = Canvas(title)
    L = base.segment.length
    P, Q = 0j, complex(L, 0)
    cv.line(P, Q, stroke="#000", width=0.02)
    a = g.at(rec["from"], rec["index"] + 5 * side)
    b = g.at(rec["to"], base.back - 5 * side)
    ea = a.segment.length * cmath.exp(1j * side * 5 * UNIT)
    eb = Q + b.segment.length * cmath.exp(1j * (math.pi - side * 5 * UNIT))
    cv.line(P, ea, stroke="#c0392b", width=0.015)
    cv.line(Q, eb, stroke="#2471a3", width=0.015)
    cv.text(P - 0.12j, f"v{rec['from']}")
    cv.text(Q - 0.12j, f"v{rec['to']}")
    cv.text(ea + 0.1j, str(a.target), fill="#c0392b")
    cv.text(eb + 0.1j, str(b.target), fill="#2471a3")
    return cv.to_svg()


def write_svg(path: Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path
