"""The fourteen acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line (shown even under captured
output). Run as a script for the same lines without pytest's own report.
"""

import contextlib
import functools
import io
import time
from pathlib import Path

import pytest

from qtchain import census, core, nary, pathform, render
from qtchain.census import EnumFilter
from qtchain.verify import contour_noncrossing, symmetric_outside_band

GOLDEN = Path(__file__).parent / "golden"
A_LIST = [1, 4, 12, 34, 94, 258, 706, 1930, 5274, 14410]
_CAPTURE = {}


def _report(line):
    capman = _CAPTURE.get("capman")
    ctx = capman.global_and_fixture_disabled() if capman is not None else contextlib.nullcontext()
    with ctx:
        print(line, flush=True)


@pytest.fixture(autouse=True)
def _capture_manager(request):
    _CAPTURE["capman"] = request.config.pluginmanager.getplugin("capturemanager")
    yield
    _CAPTURE.pop("capman", None)


def criterion(number, title, limit=None):
    """Run the check, time it, print one line, then fail on error or overrun."""

    def wrap(fn):
        @functools.wraps(fn)
        def run():
            t0 = time.perf_counter()
            try:
                detail = fn()
            except AssertionError as exc:
                _report(f"FAIL {number:>2} {title}: {exc}")
                raise
            elapsed = time.perf_counter() - t0
            if limit is not None and elapsed > limit:
                _report(f"FAIL {number:>2} {title}: took {elapsed:.3f}s (limit {limit}s)")
                raise AssertionError(f"criterion {number} over time: {elapsed:.3f}s > {limit}s")
            _report(f"PASS {number:>2} {title} ({elapsed:.3f}s){': ' + detail if detail else ''}")

        return run

    return wrap


def _best_of(fn, repeat=20):
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


@criterion(1, "count --kmax 10 A-row equals the published list")
def test_01_count_list():
    from qtchain import cli

    assert census.count_table(10).A == A_LIST
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        assert cli.main(["count", "--kmax", "10"]) == 0
    assert out.getvalue().splitlines()[1] == "A " + " ".join(map(str, A_LIST))
    t = _best_of(lambda: census.count_table(10).to_text())
    assert t < 1e-3, f"count_table(10) took {t * 1e3:.3f} ms"
    return f"{t * 1e6:.0f} us"


@criterion(2, "enumeration counts A_k and B_k, k=1..5", limit=10)
def test_02_tnumb():
    for k, b in zip(range(1, 6), [1, 2, 6, 16, 44]):
        ops = census.enumerate_filtered(k, EnumFilter(require_associative=True))
        assert len(ops) == A_LIST[k - 1], f"k={k}: {len(ops)} associative"
        with_e = census.enumerate_filtered(k, EnumFilter(require_associative=True, require_neutral=True))
        assert len(with_e) == b == census.count_B(k), f"k={k}: {len(with_e)} with neutral"


@criterion(3, "bisymmetric counts C_k and D_k, k=1..5", limit=10)
def test_03_binumb():
    for k, c, d in zip(range(1, 6), [1, 4, 10, 22, 46], [1, 2, 4, 8, 16]):
        assert len(census.enumerate_filtered(k, EnumFilter(require_bisymmetric=True))) == c == census.count_C(k)
        assert len(census.enumerate_filtered(k, EnumFilter(require_bisymmetric=True, require_neutral=True))) == d == census.count_D(k)


@criterion(4, "2^(k-1) symmetric tables, all associative with neutral, k=1..6", limit=60)
def test_04_ccard():
    for k in range(1, 7):
        sym = census.enumerate_filtered(k, EnumFilter(require_symmetric=True))
        assert len(sym) == 2 ** (k - 1), f"k={k}: {len(sym)}"
        assert all(core.is_associative(F) and core.neutral_element(F) is not None for F in sym)


@criterion(5, "all 4 quasitrivial nondecreasing tables on L_2 associative")
def test_05_cor2():
    ops = census.enumerate_qn(2)
    assert len(ops) == 4 and all(core.is_associative(F) for F in ops)


@criterion(6, "path/table bijection and weighted-path identities, k=1..5", limit=30)
def test_06_bijection():
    for k in range(1, 6):
        r = census.verify_bijection(k)
        assert r.operations == r.decompositions == census.count_A(k)


@criterion(7, "reconstruct/decompose round trips, k<=5")
def test_07_round_trips():
    ops = census.enumerate_filtered(5, EnumFilter(require_associative=True))
    assert len(ops) == 94
    assert all(pathform.reconstruct(pathform.decompose(F)) == F for F in ops)
    n = 0
    for k in range(1, 6):
        for D in census.enumerate_paths(k):
            assert pathform.decompose(pathform.reconstruct(D)) == D, pathform.format_path_spec(D)
            n += 1
    return f"94 tables, {n} decompositions"


def _quasitrivial_corpus():
    for k in range(1, 5):
        yield from census.enumerate_quasitrivial(k)


@criterion(8, "monotone <=> nondecreasing on quasitrivial tables, k<=4", limit=5)
def test_08_cnem():
    n = 0
    for F in _quasitrivial_corpus():
        assert core.is_monotone(F) == core.is_nondecreasing(F), F.to_list()
        n += 1
    assert n == 1 + 4 + 64 + 4096
    return f"{n} tables"


@criterion(9, "non-associativity pictures, k<=4")
def test_09_lpic():
    n = 0
    for F in _quasitrivial_corpus():
        if not core.is_nondecreasing(F):
            continue
        w = core.non_associativity_pattern(F)
        assert (w is not None) == (not core.is_associative(F)), F.to_list()
        if w is not None:
            n += 1
            assert core.matches_picture(F, w), (F.to_list(), w)
    return f"{n} patterns re-validated"


@criterion(10, "bisymmetric symmetric off the band; associative piecewise, k<=5")
def test_10_thmbi_cor():
    for k in range(1, 6):
        for F in census.enumerate_filtered(k, EnumFilter(require_bisymmetric=True)):
            assert symmetric_outside_band(F), F.to_list()
        for F in census.enumerate_filtered(k, EnumFilter(require_associative=True)):
            assert core.check_piecewise_structure(F), (F.to_list(), core.piecewise_mismatch(F))


@criterion(11, "reduce(derive(G, 3)) = G, k<=4", limit=30)
def test_11_reduction():
    n = 0
    for k in range(1, 5):
        for G in census.enumerate_filtered(k, EnumFilter(require_associative=True)):
            F = nary.derive(G, 3)
            assert nary.nary_is_quasitrivial(F) and nary.nary_is_nondecreasing(F) and nary.nary_is_associative(F)
            r = nary.reduce(F)
            assert isinstance(r, nary.Reduced) and r.G == G, G.to_list()
            n += 1
    return f"{n} operations"


@criterion(12, "parity counterexample, first/last nondecreasing, middle projection")
def test_12_appendix():
    P = nary.parity_counterexample(3)
    assert nary.nary_is_associative(P) and nary.nary_is_quasitrivial(P)
    assert isinstance(nary.reduce(P), nary.NotReducible)
    assert not nary.nary_is_monotone(P)
    for k in range(1, 5):
        for G in census.enumerate_filtered(k, EnumFilter(require_associative=True)):
            assert nary.first_last_nondecreasing(nary.derive(G, 3))
    M = nary.projection(3, 2, 2)
    assert nary.nary_is_bisymmetric(M) and not nary.nary_is_associative(M)


@criterion(13, "closed forms match recurrences to k=25 at 1e-9")
def test_13_closed_form():
    report = census.closed_form_check(k_max=25, rel_tol=1e-9)
    assert report.ok
    t = _best_of(lambda: census.closed_form_check(k_max=25, rel_tol=1e-9))
    assert t < 1e-3, f"closed_form_check took {t * 1e3:.3f} ms"
    return f"max deviation {report.max_rel_deviation:.1e}, {t * 1e6:.0f} us"


@criterion(14, "golden renders; 2k non-crossing contour segments, k<=5")
def test_14_rendering():
    D = pathform.parse_path_spec("k=6; R D Gx R")
    cases = {
        "min4": (core.min_op(4), None),
        "max4": (core.max_op(4), None),
        "projx4": (core.proj_x(4), None),
        "figure6": (pathform.reconstruct(D), D),
    }
    for name, (F, path) in cases.items():
        assert render.render_ascii(F, path) == (GOLDEN / f"{name}.txt").read_text(), f"{name}.txt"
        assert render.render_svg(F, path) == (GOLDEN / f"{name}.svg").read_text(), f"{name}.svg"
    for k in range(1, 6):
        for F in census.enumerate_filtered(k, EnumFilter(require_associative=True)):
            assert len(render.contour_segments(F)) == 2 * k
            assert contour_noncrossing(F), F.to_list()


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
