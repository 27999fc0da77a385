"""Contour plots of quasitrivial monotone tables, as ASCII or SVG.

For each value v the level set of v is the horizontal run ``{(x, v): F(x, v) = v}``
plus the vertical run ``{(v, y): F(v, y) = v}``; both contain ``(v, v)``.
Drawings put x on the horizontal axis and y increasing upward, so the first
text row is y = k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import core
from .core import BinaryOpTable
from .errors import InternalContradiction, PreconditionFailed, UnrepresentableValue
from .pathform import PathDecomposition

GLYPHS = "123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ"


@dataclass(frozen=True)
class ContourSegment:
    value: int
    orientation: str  # "horizontal" (row y = value) or "vertical" (column x = value)
    lo: int
    hi: int

    @property
    def anchor(self) -> int:
        return self.value

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    def points(self) -> list[tuple[int, int]]:
        if self.orientation == "horizontal":
            return [(x, self.value) for x in range(self.lo, self.hi + 1)]
        return [(self.value, y) for y in range(self.lo, self.hi + 1)]


def _interval(members: list[int], v: int) -> tuple[int, int]:
    lo, hi = min(members), max(members)
    if members != list(range(lo, hi + 1)) or not lo <= v <= hi:
        raise InternalContradiction(f"level set of {v} is not an interval through ({v},{v}): {members}")
    return lo, hi


def contour_segments(F: BinaryOpTable) -> list[ContourSegment]:
    w = core.find_non_quasitrivial(F) or core.find_non_monotone(F)
    if w is not None:
        raise PreconditionFailed("contour plots need a quasitrivial monotone operation", w)
    out = []
    for v in range(1, F.k + 1):
        xs = [x for x in range(1, F.k + 1) if F(x, v) == v]
        ys = [y for y in range(1, F.k + 1) if F(v, y) == v]
        out.append(ContourSegment(v, "horizontal", *_interval(xs, v)))
        out.append(ContourSegment(v, "vertical", *_interval(ys, v)))
    return out


def _markers(D: Optional[PathDecomposition]) -> dict[tuple[int, int], str]:
    if D is None:
        return {}
    marks = {}
    pts = D.path.points()
    for i, (x, y) in enumerate(pts):
        diagonal = i < len(D.steps) and D.steps[i].is_diagonal
        marks.setdefault((y, x), "#" if diagonal else "Q")
        marks[(x, y)] = "#" if diagonal else "P"
    return marks


def render_ascii(F: BinaryOpTable, D: Optional[PathDecomposition] = None) -> str:
    """Grid of (2k-1) lines: value glyphs at cells, ``-``/``|`` joining
    neighbouring cells of one contour segment, ``*`` between consecutive
    diagonal cells and, with a path, ``P``/``Q`` on path and mirror points
    (``#`` where the path takes a diagonal step)."""
    k = F.k
    if k > len(GLYPHS):
        raise UnrepresentableValue(f"k={k} exceeds the {len(GLYPHS)} single-character value glyphs")
    segments = contour_segments(F)
    size = 2 * k - 1
    grid = [[" "] * size for _ in range(size)]

    def pos(x, y):  # (row, column) of cell (x, y)
        return 2 * (k - y), 2 * (x - 1)

    marks = _markers(D)
    for x in range(1, k + 1):
        for y in range(1, k + 1):
            r, c = pos(x, y)
            grid[r][c] = marks.get((x, y), GLYPHS[F(x, y) - 1])
    for seg in segments:
        for p, q in zip(seg.points(), seg.points()[1:]):
            (r1, c1), (r2, c2) = pos(*p), pos(*q)
            grid[(r1 + r2) // 2][(c1 + c2) // 2] = "-" if seg.orientation == "horizontal" else "|"
    for x in range(1, k):
        r, c = pos(x, x)
        grid[r - 1][c + 1] = "*"
    return "\n".join("".join(row).rstrip() for row in grid) + "\n"


_STYLE = (
    ".grid{stroke:#cccccc;stroke-width:1;fill:none}"
    ".diag{stroke:#888888;stroke-width:1;stroke-dasharray:4 3}"
    ".contour{stroke:#000000;stroke-width:4;fill:none;stroke-linecap:round}"
    ".contour.point{fill:#000000;stroke:none}"
    ".pathP{stroke:#cc0000;stroke-width:2;fill:none}"
    ".pathQ{stroke:#0000cc;stroke-width:2;fill:none}"
    ".choice{stroke:#000000;stroke-width:1.5;fill:none}"
    "text{font-family:monospace;font-size:12px}"
)


def render_svg(F: BinaryOpTable, D: Optional[PathDecomposition] = None, cell_size: int = 32) -> str:
    if cell_size < 1:
        raise ValueError("cell_size must be positive")
    k = F.k
    segments = contour_segments(F)
    margin = 24
    side = (k - 1) * cell_size
    width = height = side + 2 * margin

    def xy(x, y):
        return margin + (x - 1) * cell_size, margin + (k - y) * cell_size

    def points_attr(pts):
        return " ".join(f"{px},{py}" for px, py in (xy(*p) for p in pts))

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f"<style>{_STYLE}</style>",
        f'<rect class="grid" x="{margin}" y="{margin}" width="{side}" height="{side}"/>',
    ]
    for i in range(2, k):
        x0, y0 = xy(i, 1)
        out.append(f'<line class="grid" x1="{x0}" y1="{margin}" x2="{x0}" y2="{margin + side}"/>')
        x1, y1 = xy(1, i)
        out.append(f'<line class="grid" x1="{margin}" y1="{y1}" x2="{margin + side}" y2="{y1}"/>')
    (dx1, dy1), (dx2, dy2) = xy(1, 1), xy(k, k)
    out.append(f'<line class="diag" x1="{dx1}" y1="{dy1}" x2="{dx2}" y2="{dy2}"/>')
    half = max(cell_size // 8, 2)
    for seg in segments:
        data = f'data-value="{seg.value}" data-orientation="{seg.orientation}"'
        if seg.degenerate:
            px, py = xy(seg.value, seg.value)
            out.append(f'<rect class="contour point" {data} x="{px - half}" y="{py - half}" width="{2 * half}" height="{2 * half}"/>')
        else:
            ends = [seg.points()[0], seg.points()[-1]]
            out.append(f'<polyline class="contour" {data} points="{points_attr(ends)}"/>')
    if D is not None:
        pts = D.path.points()
        out.append(f'<polyline class="pathP" points="{points_attr(pts)}"/>')
        out.append(f'<polyline class="pathQ" points="{points_attr([(y, x) for x, y in pts])}"/>')
        r = max(cell_size // 4, 3)
        for i, step in enumerate(D.steps):
            if step.is_diagonal:
                for p in (pts[i], pts[i][::-1]):
                    px, py = xy(*p)
                    out.append(f'<rect class="choice" x="{px - r}" y="{py - r}" width="{2 * r}" height="{2 * r}"/>')
    for i in range(1, k + 1):
        px, _ = xy(i, 1)
        _, py = xy(1, i)
        out.append(f'<text x="{px}" y="{margin + side + 18}" text-anchor="middle">{i}</text>')
        out.append(f'<text x="{margin - 8}" y="{py + 4}" text-anchor="end">{i}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
