"""Downward-right path form of associative quasitrivial nondecreasing tables.

A path starts at ``(1, k)`` and moves Right ``(+1, 0)``, Down ``(0, -1)`` or
diagonally ``(+1, -1)`` while staying in the upper triangle ``x <= y``. Its
mirror in the diagonal is never stored. ``decompose`` reads the path off a
table square by square; ``reconstruct`` rebuilds the table from the path, and
the two are mutually inverse.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional

import numpy as np

from . import core
from .core import BinaryOpTable
from .errors import FormatError, InternalContradiction, InvalidPath, PathSyntaxError, PreconditionFailed


class Step(Enum):
    RIGHT = "R"
    DOWN = "D"
    DIAG_X = "Gx"  # F(p) = first argument at p and at its mirror
    DIAG_Y = "Gy"  # F(p) = second argument at p and at its mirror

    @property
    def is_diagonal(self) -> bool:
        return self in (Step.DIAG_X, Step.DIAG_Y)


class Proj(Enum):
    NONE = "none"
    X = "x"
    Y = "y"


_MOVES = {Step.RIGHT: (1, 0), Step.DOWN: (0, -1), Step.DIAG_X: (1, -1), Step.DIAG_Y: (1, -1)}


@dataclass(frozen=True)
class DownwardRightPath:
    k: int
    steps: tuple[Step, ...]

    def points(self) -> list[tuple[int, int]]:
        x, y = 1, self.k
        pts = [(x, y)]
        for s in self.steps:
            dx, dy = _MOVES[s]
            x, y = x + dx, y + dy
            pts.append((x, y))
        return pts

    @property
    def end(self) -> tuple[int, int]:
        a = 1 + sum(s != Step.DOWN for s in self.steps)
        b = self.k - sum(s != Step.RIGHT for s in self.steps)
        return a, b


@dataclass(frozen=True)
class PathDecomposition:
    path: DownwardRightPath
    projection: Proj = Proj.NONE

    def __post_init__(self):
        validate(self)

    @property
    def k(self) -> int:
        return self.path.k

    @property
    def steps(self) -> tuple[Step, ...]:
        return self.path.steps

    @property
    def end(self) -> tuple[int, int]:
        return self.path.end

    @property
    def diagonal_count(self) -> int:
        return sum(s.is_diagonal for s in self.steps)

    @property
    def weight(self) -> int:
        return 2 ** self.diagonal_count


def make(k: int, steps, projection=Proj.NONE) -> PathDecomposition:
    steps = tuple(s if isinstance(s, Step) else Step(s) for s in steps)
    if not isinstance(projection, Proj):
        projection = Proj(projection)
    return PathDecomposition(DownwardRightPath(k, steps), projection)


def validate(D: PathDecomposition) -> None:
    k = D.path.k
    if not isinstance(k, int) or k < 1:
        raise InvalidPath(f"k must be a positive integer, got {k!r}")
    x, y = 1, k
    for i, s in enumerate(D.path.steps):
        if not isinstance(s, Step):
            raise InvalidPath(f"step {i + 1} is not a Step: {s!r}")
        if x == y:
            raise InvalidPath(f"step {i + 1} leaves the diagonal point {(x, y)}")
        dx, dy = _MOVES[s]
        x, y = x + dx, y + dy
        if x > y:
            raise InvalidPath(f"step {i + 1} ({s.value}) leaves the upper triangle at {(x, y)}")
    if not isinstance(D.projection, Proj):
        raise InvalidPath(f"projection must be a Proj, got {D.projection!r}")
    if (x == y) != (D.projection == Proj.NONE):
        raise InvalidPath("a projection is required exactly when the path ends off the diagonal")


# --------------------------------------------------------------------------
# regions


@dataclass(frozen=True)
class Region:
    kind: str  # "above", "below", "on_p", "on_q", "terminal"
    index: Optional[int] = None  # 1-based point index for on_p / on_q


ABOVE = Region("above")
BELOW = Region("below")
TERMINAL = Region("terminal")


class _Geometry:
    def __init__(self, D: PathDecomposition):
        self.pts = D.path.points()
        self.index = {p: i + 1 for i, p in enumerate(self.pts)}
        self.a, self.b = D.end
        self.column = {}  # x -> (lowest, highest) y of the path in column x
        for px, py in self.pts:
            lo, hi = self.column.get(px, (py, py))
            self.column[px] = (min(lo, py), max(hi, py))

    def classify(self, x: int, y: int) -> Region:
        a, b = self.a, self.b
        if a < b and a <= x <= b and a <= y <= b:
            return TERMINAL
        if (x, y) in self.index:
            return Region("on_p", self.index[(x, y)])
        if (y, x) in self.index:
            return Region("on_q", self.index[(y, x)])
        # a path point (x, w) with y > w, or a mirror point (w, y) with x > w,
        # i.e. a path point (y, w) with x > w; "below" reverses both inequalities
        above = below = False
        for col, other in ((x, y), (y, x)):
            if col in self.column:
                lo, hi = self.column[col]
                above |= other > hi
                below |= other < lo
        if above and below:
            raise InternalContradiction(f"({x},{y}) is both above and below the path")
        if above:
            return ABOVE
        if below:
            return BELOW
        # Neither column x nor column y meets the path: the cell lies past the
        # path's end in both coordinates, on the max side.
        if not (min(x, y) > a and max(x, y) > b):
            raise InternalContradiction(f"({x},{y}) is not classified by the path")
        return ABOVE


@lru_cache(maxsize=4096)
def _geometry(D: PathDecomposition) -> _Geometry:
    return _Geometry(D)


def classify(D: PathDecomposition, x: int, y: int) -> Region:
    if not (1 <= x <= D.k and 1 <= y <= D.k):
        raise InvalidPath(f"({x},{y}) outside L_{D.k}^2")
    return _geometry(D).classify(x, y)


def path_points(D: PathDecomposition) -> list[tuple[int, int]]:
    return D.path.points()


def mirror_points(D: PathDecomposition) -> list[tuple[int, int]]:
    return [(y, x) for x, y in D.path.points()]


# --------------------------------------------------------------------------
# reconstruction and decomposition


def _point_value(step: Step, x: int, y: int) -> int:
    if step == Step.RIGHT:
        return min(x, y)
    if step == Step.DOWN:
        return max(x, y)
    return x if step == Step.DIAG_X else y


def reconstruct(D: PathDecomposition) -> BinaryOpTable:
    k = D.k
    geo = _geometry(D)
    out = np.zeros((k, k), dtype=np.int64)
    for x in range(1, k + 1):
        for y in range(1, k + 1):
            r = geo.classify(x, y)
            if r.kind == "above":
                v = max(x, y)
            elif r.kind == "below":
                v = min(x, y)
            elif r.kind == "terminal":
                v = x if D.projection == Proj.X else y
            elif r.index == len(geo.pts):
                v = x  # diagonal end point (a, a)
            else:
                v = _point_value(D.steps[r.index - 1], x, y)
            out[x - 1, y - 1] = v
    return core._trusted(out)


def decompose(F: BinaryOpTable) -> PathDecomposition:
    w = core.find_non_quasitrivial(F) or core.find_non_nondecreasing(F) or core.find_non_associative(F)
    if w is not None:
        raise PreconditionFailed("operation is not associative quasitrivial nondecreasing", w)
    a, b = 1, F.k
    steps = []
    projection = Proj.NONE
    while a < b:
        fab, fba = F(a, b), F(b, a)
        if fab == fba == a:
            steps.append(Step.RIGHT)
            a += 1
        elif fab == fba == b:
            steps.append(Step.DOWN)
            b -= 1
        elif fab == a and fba == b and F(a + 1, a) == a + 1:
            projection = Proj.X
            break
        elif fab == b and fba == a and F(a, a + 1) == a + 1:
            projection = Proj.Y
            break
        elif fab == a and fba == b and F(a + 1, a) == a:
            steps.append(Step.DIAG_X)
            a, b = a + 1, b - 1
        elif fab == b and fba == a and F(a, a + 1) == a:
            steps.append(Step.DIAG_Y)
            a, b = a + 1, b - 1
        else:
            raise InternalContradiction(f"no case applies on the square [{a},{b}]^2")
    D = make(F.k, steps, projection)
    _check_half_neutrals(F, D)
    return D


def _check_half_neutrals(F: BinaryOpTable, D: PathDecomposition) -> None:
    e, f = core.half_neutral_elements(F)
    end = D.end
    expected = {Proj.NONE: (e, e), Proj.X: (f, e), Proj.Y: (e, f)}[D.projection]
    if D.projection == Proj.NONE and e != f:
        raise InternalContradiction(f"path reaches the diagonal but e={e} != f={f}")
    if end != expected:
        raise InternalContradiction(f"path ends at {end}, half-neutral elements give {expected}")


def is_bisymmetric_form(D: PathDecomposition) -> bool:
    return D.diagonal_count == 0


def is_symmetric_form(D: PathDecomposition) -> bool:
    return D.diagonal_count == 0 and D.projection == Proj.NONE


# --------------------------------------------------------------------------
# path-spec text and JSON

_STEP_TOKEN = re.compile(r"\S+")


def format_path_spec(D: PathDecomposition) -> str:
    steps = " ".join(s.value for s in D.steps)
    if D.projection != Proj.NONE:
        return f"k={D.k}; {steps}; proj={D.projection.value}"
    return f"k={D.k}; {steps}".rstrip()


def parse_path_spec(text: str) -> PathDecomposition:
    """Parse ``k=<int>; <steps>; [proj=x|proj=y]``."""
    parts, starts, pos = [], [], 0
    for chunk in text.split(";"):
        parts.append(chunk)
        starts.append(pos)
        pos += len(chunk) + 1

    def column(i):  # 1-based column of the first non-blank character of clause i
        return starts[i] + len(parts[i]) - len(parts[i].lstrip()) + 1

    if len(parts) > 3:
        raise PathSyntaxError("too many ';'-separated clauses", starts[3])
    m = re.fullmatch(r"\s*k\s*=\s*(\d+)\s*", parts[0])
    if not m:
        raise PathSyntaxError("expected 'k=<int>'", column(0))
    k = int(m.group(1))
    steps = []
    if len(parts) > 1:
        for tok in _STEP_TOKEN.finditer(parts[1]):
            try:
                steps.append(Step(tok.group()))
            except ValueError:
                raise PathSyntaxError(f"unknown step {tok.group()!r}", starts[1] + tok.start() + 1) from None
    projection = Proj.NONE
    if len(parts) > 2 and parts[2].strip():
        m = re.fullmatch(r"\s*proj\s*=\s*([xy])\s*", parts[2])
        if not m:
            raise PathSyntaxError("expected 'proj=x' or 'proj=y'", column(2))
        projection = Proj(m.group(1))
    return make(k, steps, projection)


def to_json(D: PathDecomposition) -> str:
    return json.dumps({"k": D.k, "steps": [s.value for s in D.steps], "proj": D.projection.value})


def from_json(text: str) -> PathDecomposition:
    try:
        data = json.loads(text)
        return make(data["k"], data["steps"], data.get("proj", "none"))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad path JSON: {exc}") from None
