"""Binary operation tables on the chain L_k = {1, ..., k} and their predicates.

Tables are indexed literally: ``F.values[x-1, y-1] == F(x, y)`` with ``x`` the
first argument. Every ``find_*`` function returns the lexicographically
smallest counterexample (1-based coordinates) or ``None``; the matching
``is_*`` predicate is ``find_*(F) is None``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from typing import Optional, Sequence, Union

import numpy as np

from . import kernels
from .errors import FormatError, InternalContradiction, OutOfRange, PreconditionFailed, ShapeMismatch

K_MAX = 64


@dataclass(frozen=True, eq=False)
class BinaryOpTable:
    k: int
    values: np.ndarray

    def __call__(self, x: int, y: int) -> int:
        return evaluate(self, x, y)

    def __eq__(self, other):
        if not isinstance(other, BinaryOpTable):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.k, self.values.tobytes()))

    def __repr__(self):
        return f"BinaryOpTable(k={self.k}, values={self.values.tolist()})"

    @property
    def zero_based(self) -> np.ndarray:
        return self.values - 1

    def to_list(self) -> list[list[int]]:
        return self.values.tolist()

    def transpose(self) -> "BinaryOpTable":
        return _trusted(self.values.T)


def new_table(k: int, values) -> BinaryOpTable:
    """Validate ``values`` (k x k, entries in [1, k]) and freeze it."""
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ShapeMismatch(f"k must be a positive integer, got {k!r}")
    if k > K_MAX:
        raise ShapeMismatch(f"k={k} exceeds the table bound {K_MAX}")
    try:
        arr = np.array(values, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise ShapeMismatch(f"values are not a rectangular integer array: {exc}") from None
    if arr.shape != (k, k):
        raise ShapeMismatch(f"expected a {k}x{k} array, got shape {arr.shape}")
    bad = np.argwhere((arr < 1) | (arr > k))
    if len(bad):
        x, y = (int(c) for c in bad[0])
        raise OutOfRange(x + 1, y + 1, int(arr[x, y]), k)
    arr.setflags(write=False)
    return BinaryOpTable(int(k), arr)


def _trusted(arr) -> BinaryOpTable:
    # internal fast path for arrays built from already-valid tables
    arr = np.array(arr, dtype=np.int64)
    arr.setflags(write=False)
    return BinaryOpTable(arr.shape[0], arr)


def from_zero_based(arr) -> BinaryOpTable:
    return _trusted(np.asarray(arr) + 1)


def evaluate(F: BinaryOpTable, x: int, y: int) -> int:
    for v in (x, y):
        if not 1 <= v <= F.k:
            raise OutOfRange(x, y, v, F.k)
    return int(F.values[x - 1, y - 1])


def min_op(k: int) -> BinaryOpTable:
    r = np.arange(1, k + 1)
    return _trusted(np.minimum.outer(r, r))


def max_op(k: int) -> BinaryOpTable:
    r = np.arange(1, k + 1)
    return _trusted(np.maximum.outer(r, r))


def proj_x(k: int) -> BinaryOpTable:
    return _trusted(np.repeat(np.arange(1, k + 1)[:, None], k, axis=1))


def proj_y(k: int) -> BinaryOpTable:
    return _trusted(np.repeat(np.arange(1, k + 1)[None, :], k, axis=0))


# --------------------------------------------------------------------------
# Witnesses


@dataclass(frozen=True)
class NotIdempotent:
    x: int


@dataclass(frozen=True)
class NotQuasitrivial:
    x: int
    y: int


@dataclass(frozen=True)
class NotNondecreasing:
    """``(x, y) <= (x2, y2)`` coordinatewise but ``F(x, y) > F(x2, y2)``."""

    x: int
    y: int
    x2: int
    y2: int


@dataclass(frozen=True)
class NotMonotone:
    """Section in argument ``variable`` (1 or 2) with the other argument fixed,
    going up then down (or down then up) at the arguments ``a < b < c``."""

    variable: int
    fixed: int
    a: int
    b: int
    c: int


@dataclass(frozen=True)
class NotSymmetric:
    x: int
    y: int


@dataclass(frozen=True)
class NotAssociative:
    x: int
    y: int
    z: int


@dataclass(frozen=True)
class NotBisymmetric:
    u: int
    v: int
    w: int
    z: int


@dataclass(frozen=True)
class PictureCase:
    """Pairwise distinct x, y, z realizing one of the four non-associativity
    pictures; tags a/b satisfy ``F(x,y)=x, F(x,z)=z, F(y,z)=y`` and tags c/d
    satisfy ``F(x,y)=y, F(y,z)=z, F(x,z)=x``."""

    x: int
    y: int
    z: int
    tag: str


Witness = Union[
    NotIdempotent,
    NotQuasitrivial,
    NotNondecreasing,
    NotMonotone,
    NotSymmetric,
    NotAssociative,
    NotBisymmetric,
    PictureCase,
]


def witness_to_dict(w: Witness) -> dict:
    return {"kind": type(w).__name__, **asdict(w)}


# --------------------------------------------------------------------------
# Predicates


def find_non_idempotent(F: BinaryOpTable) -> Optional[NotIdempotent]:
    diag = np.diagonal(F.values)
    bad = np.flatnonzero(diag != np.arange(1, F.k + 1))
    return NotIdempotent(int(bad[0]) + 1) if len(bad) else None


def is_idempotent(F: BinaryOpTable) -> bool:
    return find_non_idempotent(F) is None


def find_non_quasitrivial(F: BinaryOpTable) -> Optional[NotQuasitrivial]:
    r = np.arange(1, F.k + 1)
    ok = (F.values == r[:, None]) | (F.values == r[None, :])
    bad = np.argwhere(~ok)
    if len(bad) == 0:
        return None
    return NotQuasitrivial(int(bad[0][0]) + 1, int(bad[0][1]) + 1)


def is_quasitrivial(F: BinaryOpTable) -> bool:
    return find_non_quasitrivial(F) is None


def find_non_nondecreasing(F: BinaryOpTable) -> Optional[NotNondecreasing]:
    x, y, x2, y2 = kernels.nondecreasing_violation(F.zero_based)
    if x < 0:
        return None
    return NotNondecreasing(x + 1, y + 1, x2 + 1, y2 + 1)


def is_nondecreasing(F: BinaryOpTable) -> bool:
    return find_non_nondecreasing(F) is None


def zigzag(seq: Sequence[int]) -> Optional[tuple[int, int, int]]:
    """Indices ``i < j < l`` where ``seq`` strictly changes direction, or None
    if ``seq`` is nondecreasing or nonincreasing."""
    first = None  # (index, sign) of the first strict step
    for j in range(len(seq) - 1):
        d = (seq[j + 1] > seq[j]) - (seq[j + 1] < seq[j])
        if d == 0:
            continue
        if first is None:
            first = (j, d)
        elif d != first[1]:
            return first[0], j, j + 1
    return None


def find_non_monotone(F: BinaryOpTable) -> Optional[NotMonotone]:
    # each section is judged on its own: directions may differ between sections
    v = F.values
    for fixed in range(F.k):
        for variable, section in ((1, v[:, fixed]), (2, v[fixed, :])):
            zz = zigzag(section.tolist())
            if zz is not None:
                a, b, c = zz
                return NotMonotone(variable, fixed + 1, a + 1, b + 1, c + 1)
    return None


def is_monotone(F: BinaryOpTable) -> bool:
    return find_non_monotone(F) is None


def find_non_symmetric(F: BinaryOpTable) -> Optional[NotSymmetric]:
    bad = np.argwhere(np.triu(F.values != F.values.T, 1))
    return NotSymmetric(int(bad[0][0]) + 1, int(bad[0][1]) + 1) if len(bad) else None


def is_symmetric(F: BinaryOpTable) -> bool:
    return find_non_symmetric(F) is None


def find_non_associative(F: BinaryOpTable) -> Optional[NotAssociative]:
    x, y, z = kernels.assoc_violation(F.zero_based)
    return None if x < 0 else NotAssociative(x + 1, y + 1, z + 1)


def is_associative(F: BinaryOpTable) -> bool:
    return find_non_associative(F) is None


def find_non_bisymmetric(F: BinaryOpTable) -> Optional[NotBisymmetric]:
    u, v, w, z = kernels.bisym_violation(F.zero_based)
    return None if u < 0 else NotBisymmetric(u + 1, v + 1, w + 1, z + 1)


def is_bisymmetric(F: BinaryOpTable) -> bool:
    return find_non_bisymmetric(F) is None


def neutral_element(F: BinaryOpTable) -> Optional[int]:
    r = np.arange(1, F.k + 1)
    cands = [e for e in range(F.k) if np.array_equal(F.values[e, :], r) and np.array_equal(F.values[:, e], r)]
    if len(cands) > 1:
        raise InternalContradiction(f"several neutral elements {[e + 1 for e in cands]}")
    return cands[0] + 1 if cands else None


def upper_symmetrization(F: BinaryOpTable) -> BinaryOpTable:
    """F1(x, y) = F(min(x, y), max(x, y))."""
    v = F.values
    return _trusted(np.where(np.triu(np.ones((F.k, F.k), dtype=bool)), v, v.T))


def lower_symmetrization(F: BinaryOpTable) -> BinaryOpTable:
    """F2(x, y) = F(max(x, y), min(x, y))."""
    v = F.values
    return _trusted(np.where(np.tril(np.ones((F.k, F.k), dtype=bool)), v, v.T))


def _require_qn(F: BinaryOpTable) -> None:
    w = find_non_quasitrivial(F) or find_non_nondecreasing(F)
    if w is not None:
        raise PreconditionFailed("operation is not quasitrivial and nondecreasing", w)


def half_neutral_elements(F: BinaryOpTable) -> tuple[int, int]:
    """Return ``(e, f)``: the neutral elements of the upper and the lower
    symmetrization of a quasitrivial nondecreasing ``F``."""
    _require_qn(F)
    e = neutral_element(upper_symmetrization(F))
    f = neutral_element(lower_symmetrization(F))
    if e is None or f is None:
        raise InternalContradiction("a symmetrization of a quasitrivial nondecreasing table has no neutral element")
    return e, f


def _picture_tag(pattern: int, x: int, y: int, z: int) -> Optional[str]:
    if pattern == 1:
        if z < x < y:
            return "a"
        if y < x < z:
            return "b"
    else:
        if x < z < y:
            return "c"
        if y < z < x:
            return "d"
    return None


def matches_picture(F: BinaryOpTable, w: PictureCase) -> bool:
    """Re-check ``w`` against its value template and ordering."""
    x, y, z = w.x, w.y, w.z
    if w.tag in "ab":
        values_ok = F(x, y) == x and F(x, z) == z and F(y, z) == y
        pattern = 1
    else:
        values_ok = F(x, y) == y and F(y, z) == z and F(x, z) == x
        pattern = 2
    return values_ok and _picture_tag(pattern, x, y, z) == w.tag


def non_associativity_pattern(F: BinaryOpTable) -> Optional[PictureCase]:
    """Smallest ordered triple (x, y, z) realizing one of the four pictures,
    or None when ``F`` is associative."""
    _require_qn(F)
    if is_associative(F):
        return None
    r = range(1, F.k + 1)
    for x in r:
        for y in r:
            if y == x:
                continue
            fxy = F(x, y)
            for z in r:
                if z == x or z == y:
                    continue
                if fxy == x and F(x, z) == z and F(y, z) == y:
                    pattern = 1
                elif fxy == y and F(y, z) == z and F(x, z) == x:
                    pattern = 2
                else:
                    continue
                tag = _picture_tag(pattern, x, y, z)
                if tag is None:
                    raise InternalContradiction(f"crossing configuration at {(x, y, z)} in a nondecreasing table")
                return PictureCase(x, y, z, tag)
    raise InternalContradiction("non-associative quasitrivial nondecreasing table realizes no picture")


def piecewise_mismatch(F: BinaryOpTable) -> Optional[tuple[int, int]]:
    """First cell contradicting the min / projection / max description in
    terms of the half-neutral elements, or None.

    For ``e <= f``: min where ``max(x,y) <= e``, ``y`` on the band
    ``e <= x <= f``, max where ``min(x,y) >= f``. For ``f <= e`` the transposed
    statement: ``x`` on the band ``f <= y <= e``. Cells outside all three
    regions are not constrained.
    """
    if find_non_associative(F) is not None:
        raise PreconditionFailed("operation is not associative", find_non_associative(F))
    e, f = half_neutral_elements(F)
    lo, hi = min(e, f), max(e, f)
    for x in range(1, F.k + 1):
        for y in range(1, F.k + 1):
            v = F(x, y)
            expected = []
            if max(x, y) <= lo:
                expected.append(min(x, y))
            if min(x, y) >= hi:
                expected.append(max(x, y))
            if e <= f and e <= x <= f:
                expected.append(y)
            if f <= e and f <= y <= e:
                expected.append(x)
            if any(v != want for want in expected):
                return x, y
    return None


def check_piecewise_structure(F: BinaryOpTable) -> bool:
    return piecewise_mismatch(F) is None


# --------------------------------------------------------------------------
# Report


@dataclass
class PropertyReport:
    k: int
    idempotent: bool
    quasitrivial: bool
    nondecreasing: bool
    monotone: bool
    symmetric: bool
    associative: bool
    bisymmetric: bool
    neutral: Optional[int] = None
    upper_half_neutral: Optional[int] = None
    lower_half_neutral: Optional[int] = None
    witnesses: list = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        out["witnesses"] = [witness_to_dict(w) for w in self.witnesses]
        return out

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def to_text(self) -> str:
        rows = [(f.name, getattr(self, f.name)) for f in fields(self) if f.name != "witnesses"]
        lines = [f"{name:<20}{_fmt(value)}" for name, value in rows]
        for w in self.witnesses:
            lines.append(f"{'witness':<20}{type(w).__name__}{astuple_repr(w)}")
        return "\n".join(lines) + "\n"


def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def astuple_repr(w) -> str:
    return "(" + ", ".join(str(getattr(w, f.name)) for f in fields(w)) + ")"


def analyze(F: BinaryOpTable) -> PropertyReport:
    found = {
        "idempotent": find_non_idempotent(F),
        "quasitrivial": find_non_quasitrivial(F),
        "nondecreasing": find_non_nondecreasing(F),
        "monotone": find_non_monotone(F),
        "symmetric": find_non_symmetric(F),
        "associative": find_non_associative(F),
        "bisymmetric": find_non_bisymmetric(F),
    }
    report = PropertyReport(k=F.k, **{name: w is None for name, w in found.items()})
    report.witnesses = [w for w in found.values() if w is not None]
    report.neutral = neutral_element(F)
    if report.quasitrivial and report.nondecreasing:
        report.upper_half_neutral, report.lower_half_neutral = half_neutral_elements(F)
        if not report.associative:
            report.witnesses.append(non_associativity_pattern(F))
    return report


# --------------------------------------------------------------------------
# Text / JSON IO


def format_table_text(F: BinaryOpTable) -> str:
    lines = [str(F.k)] + [" ".join(str(int(v)) for v in row) for row in F.values]
    return "\n".join(lines) + "\n"


def parse_table_text(text: str) -> BinaryOpTable:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise FormatError("empty table")
    try:
        if len(rows[0]) != 1:
            raise FormatError("first line must hold k alone")
        k = int(rows[0][0])
        values = [[int(t) for t in row] for row in rows[1:]]
    except ValueError as exc:
        raise FormatError(f"non-integer token: {exc}") from None
    if len(values) != k or any(len(r) != k for r in values):
        raise ShapeMismatch(f"expected {k} rows of {k} integers")
    return new_table(k, values)


def table_to_json(F: BinaryOpTable) -> str:
    return json.dumps({"k": F.k, "values": F.to_list()})


def table_from_json(text: str) -> BinaryOpTable:
    try:
        data = json.loads(text)
        return new_table(data["k"], data["values"])
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise FormatError(f"bad table JSON: {exc}") from None


def load_table(text: str) -> BinaryOpTable:
    """Parse either the text format or the JSON mirror."""
    if text.lstrip().startswith("{"):
        return table_from_json(text)
    return parse_table_text(text)
