"""Exhaustive checks of the structure theorems, one labelled check per result.

Each check takes ``k_max`` and clips it to what exhaustive search can afford;
``run_checks`` yields ``CheckResult`` in a fixed order.
"""

from __future__ import annotations

import time
from collections.abc import Callable, Iterator
from dataclasses import dataclass

from . import census, core, nary, pathform, render
from .errors import QtChainError


@dataclass
class CheckResult:
    tag: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.tag:<11} {self.detail}"


class CheckFailed(Exception):
    pass


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise CheckFailed(message)


def _upto(k_max: int, bound: int) -> range:
    return range(1, min(k_max, bound) + 1)


def check_tnumb(k_max: int) -> str:
    ks = _upto(k_max, 5)
    for k in ks:
        ops = census.enumerate_filtered(k, census.EnumFilter(require_associative=True))
        with_e = [F for F in ops if core.neutral_element(F) is not None]
        _expect(len(ops) == census.count_A(k), f"k={k}: {len(ops)} associative, A_k={census.count_A(k)}")
        _expect(len(with_e) == census.count_B(k), f"k={k}: {len(with_e)} with neutral, B_k={census.count_B(k)}")
    return f"A_k, B_k by enumeration for k<={ks[-1]}"


def check_binumb(k_max: int) -> str:
    ks = _upto(k_max, 5)
    for k in ks:
        ops = census.enumerate_filtered(k, census.EnumFilter(require_bisymmetric=True))
        with_e = [F for F in ops if core.neutral_element(F) is not None]
        _expect(len(ops) == census.count_C(k), f"k={k}: {len(ops)} bisymmetric, C_k={census.count_C(k)}")
        _expect(len(with_e) == census.count_D(k), f"k={k}: {len(with_e)} with neutral, D_k={census.count_D(k)}")
    return f"C_k, D_k by enumeration for k<={ks[-1]}"


def check_ccard(k_max: int) -> str:
    ks = _upto(k_max, 6)
    for k in ks:
        n = len(census.enumerate_filtered(k, census.EnumFilter(require_symmetric=True)))
        _expect(n == 2 ** (k - 1), f"k={k}: {n} symmetric, expected {2 ** (k - 1)}")
    return f"2^(k-1) symmetric tables for k<={ks[-1]}"


def check_ane(k_max: int) -> str:
    ks = _upto(k_max, 6)
    for k in ks:
        for F in census.enumerate_filtered(k, census.EnumFilter(require_symmetric=True)):
            _expect(core.is_associative(F), f"symmetric table not associative: {F.to_list()}")
            _expect(core.neutral_element(F) is not None, f"symmetric table without neutral element: {F.to_list()}")
    return f"symmetric => associative with neutral, k<={ks[-1]}"


def check_cor2(k_max: int) -> str:
    ops = census.enumerate_qn(2)
    _expect(len(ops) == 4 and all(core.is_associative(F) for F in ops), "L_2 has a non-associative table")
    return "all 4 tables on L_2 associative"


def check_bijection(k_max: int) -> str:
    ks = _upto(k_max, 5)
    for k in ks:
        census.verify_bijection(k)
    return f"paths <-> associative tables, weight identities, k<={ks[-1]}"


def check_roundtrip(k_max: int) -> str:
    ks = _upto(k_max, 5)
    for k in ks:
        for F in census.enumerate_filtered(k, census.EnumFilter(require_associative=True)):
            _expect(pathform.reconstruct(pathform.decompose(F)) == F, f"reconstruct(decompose(F)) != F for {F.to_list()}")
        for D in census.enumerate_paths(k):
            _expect(pathform.decompose(pathform.reconstruct(D)) == D, f"decompose(reconstruct(D)) != D for {pathform.format_path_spec(D)}")
    return f"both round trips, k<={ks[-1]}"


def _quasitrivial_corpus(k_max: int) -> Iterator[core.BinaryOpTable]:
    for k in _upto(k_max, 4):
        yield from census.enumerate_quasitrivial(k)


def check_cnem(k_max: int) -> str:
    n = 0
    for F in _quasitrivial_corpus(k_max):
        n += 1
        _expect(core.is_monotone(F) == core.is_nondecreasing(F), f"monotone != nondecreasing for {F.to_list()}")
    return f"monotone <=> nondecreasing on {n} quasitrivial tables"


def check_lpic(k_max: int) -> str:
    n = 0
    for F in _quasitrivial_corpus(k_max):
        if not core.is_nondecreasing(F):
            continue
        n += 1
        w = core.non_associativity_pattern(F)
        _expect((w is not None) == (not core.is_associative(F)), f"pattern / associativity disagree on {F.to_list()}")
        if w is not None:
            _expect(core.matches_picture(F, w), f"pattern {w} does not re-validate on {F.to_list()}")
    return f"picture patterns on {n} quasitrivial nondecreasing tables"


def symmetric_outside_band(F: core.BinaryOpTable) -> bool:
    e, f = core.half_neutral_elements(F)
    lo, hi = min(e, f), max(e, f)
    for x in range(1, F.k + 1):
        for y in range(x + 1, F.k + 1):
            inside = lo <= x <= hi and lo <= y <= hi
            if not inside and F(x, y) != F(y, x):
                return False
    return True


def check_thmbi(k_max: int) -> str:
    ks = _upto(k_max, 5)
    for k in ks:
        for F in census.enumerate_filtered(k, census.EnumFilter(require_bisymmetric=True)):
            _expect(symmetric_outside_band(F), f"bisymmetric table not symmetric off the band: {F.to_list()}")
    return f"bisymmetric => symmetric outside [e^f, evf]^2, k<={ks[-1]}"


def check_cor(k_max: int) -> str:
    ks = _upto(k_max, 5)
    for k in ks:
        for F in census.enumerate_filtered(k, census.EnumFilter(require_associative=True)):
            _expect(core.check_piecewise_structure(F), f"piecewise structure fails at {core.piecewise_mismatch(F)} for {F.to_list()}")
    return f"piecewise min/max/projection structure, k<={ks[-1]}"


def check_t2(k_max: int) -> str:
    ks = _upto(k_max, 4)
    for k in ks:
        for G in census.enumerate_filtered(k, census.EnumFilter(require_associative=True)):
            F = nary.derive(G, 3)
            _expect(nary.nary_is_quasitrivial(F) and nary.nary_is_nondecreasing(F), f"derived table of {G.to_list()} not QN")
            _expect(nary.nary_is_associative(F), f"derived table of {G.to_list()} not associative")
            _expect(nary.reduce(F) == nary.Reduced(G), f"reduce(derive(G, 3)) != G for {G.to_list()}")
    return f"reduce(derive(G, 3)) = G, k<={ks[-1]}"


def check_lasp(k_max: int) -> str:
    ks = _upto(k_max, 4)
    for k in ks:
        for G in census.enumerate_filtered(k, census.EnumFilter(require_associative=True)):
            _expect(nary.first_last_nondecreasing(nary.derive(G, 3)), f"first/last variable not nondecreasing for {G.to_list()}")
    return f"first/last-variable nondecreasing on derived tables, k<={ks[-1]}"


def check_thmakk(k_max: int) -> str:
    P = nary.parity_counterexample(3)
    _expect(nary.nary_is_associative(P) and nary.nary_is_quasitrivial(P), "parity operation not associative quasitrivial")
    _expect(isinstance(nary.reduce(P), nary.NotReducible), "parity operation reduced")
    _expect(not nary.nary_is_monotone(P), "parity operation is monotone")
    M = nary.projection(3, 2, 2)
    _expect(nary.nary_is_bisymmetric(M) and not nary.nary_is_associative(M), "middle projection on L_2")
    return "parity counterexample and middle projection"


def check_closedform(k_max: int) -> str:
    report = census.closed_form_check(25, 1e-9)
    return f"closed forms to k=25, max rel. deviation {report.max_rel_deviation:.1e}"


def contour_noncrossing(F: core.BinaryOpTable) -> bool:
    owner = {}
    for seg in render.contour_segments(F):
        for p in seg.points():
            if p[0] != p[1] and owner.setdefault(p, seg.value) != seg.value:
                return False
    return True


def check_contour(k_max: int) -> str:
    ks = _upto(k_max, 5)
    for k in ks:
        for F in census.enumerate_filtered(k, census.EnumFilter(require_associative=True)):
            _expect(len(render.contour_segments(F)) == 2 * k, f"segment count for {F.to_list()}")
            _expect(contour_noncrossing(F), f"contour segments cross for {F.to_list()}")
    return f"2k non-crossing contour segments, k<={ks[-1]}"


CHECKS: list[tuple[str, Callable[[int], str]]] = [
    ("tnumb", check_tnumb),
    ("binumb", check_binumb),
    ("ccard", check_ccard),
    ("ane", check_ane),
    ("cor2", check_cor2),
    ("thmchar", check_bijection),
    ("roundtrip", check_roundtrip),
    ("cnem", check_cnem),
    ("lpic", check_lpic),
    ("thmbi", check_thmbi),
    ("cor", check_cor),
    ("t2", check_t2),
    ("lASP", check_lasp),
    ("thmAkk", check_thmakk),
    ("closedform", check_closedform),
    ("contour", check_contour),
]


def run_checks(k_max: int = 5, only: tuple[str, ...] = ()) -> Iterator[CheckResult]:
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    for tag, fn in CHECKS:
        if only and tag not in only:
            continue
        t0 = time.perf_counter()
        try:
            detail, ok = fn(k_max), True
        except (CheckFailed, QtChainError) as exc:
            detail, ok = f"{type(exc).__name__}: {exc}", False
        yield CheckResult(tag, ok, detail, time.perf_counter() - t0)
