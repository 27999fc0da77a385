"""Exhaustive enumeration and exact counts.

Counts, all for quasitrivial nondecreasing operations on L_k:

* ``A_k`` associative, ``B_k`` associative with a neutral element,
* ``C_k`` bisymmetric, ``D_k`` bisymmetric with a neutral element.

Exact values come from integer recurrences; the irrational closed forms are
only evaluated to be checked against them.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import core, kernels, pathform
from .core import BinaryOpTable
from .errors import BijectionFailure, BoundExceeded, FormatError, Mismatch
from .pathform import PathDecomposition, Proj, Step

ENUM_K_MAX = 6
QUASITRIVIAL_K_MAX = 4
PATH_K_MAX = 32
CLOSED_FORM_K_MAX = 30


@dataclass(frozen=True)
class EnumFilter:
    require_associative: bool = False
    require_bisymmetric: bool = False
    require_symmetric: bool = False
    require_neutral: bool = False

    _NAMES = {"assoc": "require_associative", "bisym": "require_bisymmetric", "sym": "require_symmetric", "neutral": "require_neutral"}

    @classmethod
    def parse(cls, text: str) -> "EnumFilter":
        """``"assoc,neutral"`` -> EnumFilter(require_associative=True, require_neutral=True)."""
        flags = {}
        for name in filter(None, (t.strip() for t in text.split(","))):
            if name not in cls._NAMES:
                raise FormatError(f"unknown filter {name!r}; expected one of {', '.join(cls._NAMES)}")
            flags[cls._NAMES[name]] = True
        return cls(**flags)

    def accepts(self, F: BinaryOpTable) -> bool:
        if self.require_symmetric and not core.is_symmetric(F):
            return False
        if self.require_neutral and core.neutral_element(F) is None:
            return False
        if self.require_associative and not core.is_associative(F):
            return False
        if self.require_bisymmetric and not core.is_bisymmetric(F):
            return False
        return True


def _check_bound(k: int, bound: int, what: str) -> None:
    if k < 1:
        raise BoundExceeded(f"{what} needs k >= 1, got {k}")
    if k > bound:
        raise BoundExceeded(f"{what} is limited to k <= {bound}, got {k}")


def enumerate_qn(k: int) -> list[BinaryOpTable]:
    """All quasitrivial nondecreasing tables on L_k in lexicographic order of
    the flattened value array."""
    _check_bound(k, ENUM_K_MAX, "enumerate_qn")
    return [core.from_zero_based(t) for t in kernels.enumerate_qn_tables(k)]


def enumerate_filtered(k: int, filt: EnumFilter = EnumFilter()) -> list[BinaryOpTable]:
    return [F for F in enumerate_qn(k) if filt.accepts(F)]


def enumerate_quasitrivial(k: int) -> Iterator[BinaryOpTable]:
    """Every quasitrivial table on L_k (2^(k^2-k) of them), lexicographic."""
    _check_bound(k, QUASITRIVIAL_K_MAX, "enumerate_quasitrivial")
    cells = [(x, y) for x in range(k) for y in range(k) if x != y]
    base = np.diag(np.arange(1, k + 1))
    rows, cols = (np.array(c, dtype=np.intp) for c in zip(*cells)) if cells else (np.array([], np.intp),) * 2
    options = [(min(x, y) + 1, max(x, y) + 1) for x, y in cells]
    for choice in itertools.product(*options):
        t = base.copy()
        t[rows, cols] = choice
        yield core._trusted(t)


def enumerate_paths(k: int) -> Iterator[PathDecomposition]:
    """Every valid path decomposition on L_k: each diagonal choice and, off the
    diagonal, each terminal projection is a separate decomposition."""
    _check_bound(k, PATH_K_MAX, "enumerate_paths")
    moves = ((Step.RIGHT, 1, 0), (Step.DOWN, 0, -1), (Step.DIAG_X, 1, -1), (Step.DIAG_Y, 1, -1))

    def walk(a, b, steps):
        if a == b:
            yield pathform.make(k, steps)
            return
        yield pathform.make(k, steps, Proj.X)
        yield pathform.make(k, steps, Proj.Y)
        for step, da, db in moves:
            if a + da <= b + db:
                yield from walk(a + da, b + db, steps + (step,))

    yield from walk(1, k, ())


# --------------------------------------------------------------------------
# exact counts


def _b_sequence(k: int) -> list[int]:
    seq = [1, 2]
    while len(seq) < k:
        seq.append(2 * seq[-1] + 2 * seq[-2])
    return seq[:k]


def count_B(k: int) -> int:
    if k < 1:
        raise ValueError("k must be >= 1")
    return _b_sequence(k)[-1]


def count_A(k: int) -> int:
    if k < 1:
        raise ValueError("k must be >= 1")
    bs = _b_sequence(k)
    return 2 * sum(bs) - bs[-1]


def count_D(k: int) -> int:
    if k < 1:
        raise ValueError("k must be >= 1")
    return 2 ** (k - 1)


def count_C(k: int) -> int:
    if k < 1:
        raise ValueError("k must be >= 1")
    return 3 * 2 ** (k - 1) - 2


@dataclass
class CountTable:
    k_max: int
    A: list = field(default_factory=list)
    B: list = field(default_factory=list)
    C: list = field(default_factory=list)
    D: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)  # letter -> list of provenance, per k

    def row(self, letter: str) -> list[int]:
        return getattr(self, letter)

    def to_dict(self) -> dict:
        return {
            "k_max": self.k_max,
            "A": self.A,
            "B": self.B,
            "C": self.C,
            "D": self.D,
            "provenance": self.provenance,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "A", "B", "C", "D", "provenance"])
        for i in range(self.k_max):
            prov = "/".join(self.provenance[letter][i] for letter in "ABCD")
            w.writerow([i + 1, self.A[i], self.B[i], self.C[i], self.D[i], prov])
        return buf.getvalue()

    def to_text(self) -> str:
        out = [f"k {' '.join(str(k) for k in range(1, self.k_max + 1))}"]
        out += [f"{letter} {' '.join(str(v) for v in self.row(letter))}" for letter in "ABCD"]
        return "\n".join(out) + "\n"


def count_table(k_max: int, brute_force_upto: int = 0) -> CountTable:
    """Counts for k = 1..k_max. Entries with k <= brute_force_upto are
    recomputed by enumeration and must agree with the formulas."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    bs = _b_sequence(k_max)
    table = CountTable(k_max)
    table.B = bs
    table.A = [2 * sum(bs[: i + 1]) - bs[i] for i in range(k_max)]
    table.D = [count_D(k) for k in range(1, k_max + 1)]
    table.C = [count_C(k) for k in range(1, k_max + 1)]
    table.provenance = {
        "A": ["recurrence"] * k_max,
        "B": ["recurrence"] * k_max,
        "C": ["closed_form"] * k_max,
        "D": ["closed_form"] * k_max,
    }
    for k in range(1, min(brute_force_upto, k_max) + 1):
        counted = brute_force_counts(k)
        for letter, value in counted.items():
            if table.row(letter)[k - 1] != value:
                raise Mismatch(k, f"{letter}: formula {table.row(letter)[k - 1]} != enumeration {value}")
            table.provenance[letter][k - 1] = "brute_force"
    return table


def brute_force_counts(k: int) -> dict[str, int]:
    counts = dict.fromkeys("ABCD", 0)
    for F in enumerate_qn(k):
        neutral = core.neutral_element(F) is not None
        if core.is_associative(F):
            counts["A"] += 1
            counts["B"] += neutral
        if core.is_bisymmetric(F):
            counts["C"] += 1
            counts["D"] += neutral
    return counts


# --------------------------------------------------------------------------
# checks


@dataclass
class ClosedFormReport:
    k_max: int
    rel_tol: float
    max_rel_deviation: float
    rows: list  # (k, A_float, A_exact, B_float, B_exact)

    @property
    def ok(self) -> bool:
        return self.max_rel_deviation <= self.rel_tol


def closed_form_A(k: int) -> float:
    s = math.sqrt(3.0)
    return ((2 + s) * (1 + s) ** k + (2 - s) * (1 - s) ** k - 4) / 6


def closed_form_B(k: int) -> float:
    s = math.sqrt(3.0)
    return ((1 + s) ** k - (1 - s) ** k) / (2 * s)


def closed_form_check(k_max: int = 10, rel_tol: float = 1e-9) -> ClosedFormReport:
    if not 1 <= k_max <= CLOSED_FORM_K_MAX:
        raise BoundExceeded(f"closed_form_check needs 1 <= k_max <= {CLOSED_FORM_K_MAX}")
    rows, worst = [], 0.0
    for k in range(1, k_max + 1):
        a_f, b_f = closed_form_A(k), closed_form_B(k)
        a, b = count_A(k), count_B(k)
        if round(a_f) != a:
            raise Mismatch(k, f"closed form A rounds to {round(a_f)}, recurrence gives {a}")
        if round(b_f) != b:
            raise Mismatch(k, f"closed form B rounds to {round(b_f)}, recurrence gives {b}")
        worst = max(worst, abs(a_f - a) / a, abs(b_f - b) / b)
        rows.append((k, a_f, a, b_f, b))
    report = ClosedFormReport(k_max, rel_tol, worst, rows)
    if not report.ok:
        raise Mismatch(k_max, f"relative deviation {worst:.3e} exceeds {rel_tol:.1e}")
    return report


@dataclass
class BijectionReport:
    k: int
    operations: int
    decompositions: int
    diagonal_weight: int  # sum of 2^m over paths ending on the diagonal
    total_weight: int  # sum of 2^m over all paths


def verify_bijection(k: int) -> BijectionReport:
    """Check that path decompositions and associative QN tables correspond
    one to one, plus the weighted-path identities for A_k and B_k."""
    _check_bound(k, ENUM_K_MAX, "verify_bijection")
    decomps = list(enumerate_paths(k))
    seen = {}
    for D in decomps:
        F = pathform.reconstruct(D)
        if F in seen:
            raise BijectionFailure(f"{pathform.format_path_spec(seen[F])!r} and {pathform.format_path_spec(D)!r} give the same table")
        seen[F] = D
    ops = enumerate_filtered(k, EnumFilter(require_associative=True))
    if set(ops) != set(seen):
        extra = next(iter(set(seen) ^ set(ops)))
        raise BijectionFailure(f"path-generated and enumerated sets differ, e.g. at {extra}")
    # geometric paths: the Gx / Gy choice is what the weight 2^m counts
    paths = {}
    for D in decomps:
        shape = tuple("G" if s.is_diagonal else s.value for s in D.steps)
        paths[shape] = (D.diagonal_count, D.end)
    diag = sum(2**m for m, (a_, b_) in paths.values() if a_ == b_)
    total = sum(2**m for m, _ in paths.values())
    a, b = count_A(k), count_B(k)
    if diag != b:
        raise BijectionFailure(f"diagonal path weight {diag} != B_{k} = {b}")
    if a + b != 2 * total:
        raise BijectionFailure(f"A_{k} + B_{k} = {a + b} != twice the path weight {2 * total}")
    return BijectionReport(k, len(ops), len(decomps), diag, total)
