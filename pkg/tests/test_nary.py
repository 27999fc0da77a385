import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qtchain import census, core, nary
from qtchain.errors import BoundExceeded, FormatError, PreconditionFailed, ShapeMismatch

ASSOC = {k: census.enumerate_filtered(k, census.EnumFilter(require_associative=True)) for k in range(1, 5)}


def brute_associative(F):
    n, k = F.n, F.k
    for xs in itertools.product(range(1, k + 1), repeat=2 * n - 1):
        vals = {F(*xs[:i], F(*xs[i : i + n]), *xs[i + n :]) for i in range(n)}
        if len(vals) > 1:
            return False
    return True


def test_derive_examples():
    T = nary.derive(core.min_op(3), 3)
    assert T(2, 1, 3) == 1
    assert all(T(*xs) == min(xs) for xs in itertools.product(range(1, 4), repeat=3))
    P = nary.derive(core.proj_x(3), 3)
    assert P == nary.projection(3, 3, 1) and P(2, 1, 3) == 2
    with pytest.raises(PreconditionFailed):
        nary.derive(core.new_table(3, [[1, 1, 1], [1, 2, 2], [3, 3, 3]]), 3)


def test_derive_figure_operation(figure):
    F, _ = figure
    assert nary.nary_is_associative(nary.derive(F, 3))


def test_parity_values():
    P = nary.parity_counterexample(3)
    assert (P(1, 1, 1), P(2, 1, 1), P(2, 1, 2)) == (1, 2, 1)
    assert P(2, 2, 2) == 2
    with pytest.raises(PreconditionFailed):
        nary.parity_counterexample(4)


def test_parity_properties():
    P = nary.parity_counterexample(3)
    assert nary.nary_is_associative(P) and brute_associative(P)
    assert nary.nary_is_quasitrivial(P) and nary.nary_is_idempotent(P)
    assert not nary.nary_is_monotone(P)
    # with a direction chosen per section every 2-point section is monotone
    assert nary.nary_is_monotone(P, sectionwise=True)
    assert not nary.nary_is_nondecreasing(P)
    assert not nary.first_last_nondecreasing(P)
    r = nary.reduce(P)
    assert isinstance(r, nary.NotReducible)


def test_monotone_witness():
    w = nary.find_nary_non_monotone(nary.parity_counterexample(3))
    assert w.property == "monotone"
    P = nary.parity_counterexample(3)
    up, up2, down, down2 = w.args
    assert P(*up) < P(*up2) and P(*down) > P(*down2)


def test_neutral():
    assert nary.nary_neutral_element(nary.derive(core.min_op(3), 3)) == 3
    assert nary.nary_neutral_element(nary.projection(3, 3, 1)) is None
    with_e = [G for G in ASSOC[4] if core.neutral_element(G) is not None]
    for G in with_e:
        assert nary.nary_neutral_element(nary.derive(G, 3)) == core.neutral_element(G)


def test_middle_projection():
    M = nary.projection(3, 2, 2)
    assert nary.nary_is_bisymmetric(M)
    assert nary.nary_is_quasitrivial(M) and nary.nary_is_nondecreasing(M)
    assert not nary.nary_is_associative(M) and not brute_associative(M)


def test_bisymmetric_binary_case():
    assert nary.nary_is_bisymmetric(nary.derive(core.min_op(3), 2))
    assert nary.nary_is_bisymmetric(nary.derive(core.min_op(2), 3))
    assert nary.nary_is_bisymmetric(nary.derive(core.proj_x(3), 3))


def test_nondecreasing_projection_y():
    assert nary.nary_is_nondecreasing(nary.derive(core.proj_y(3), 4))


@pytest.mark.parametrize("k", range(1, 5))
def test_reduce_derive(k):
    for G in ASSOC[k]:
        F = nary.derive(G, 3)
        assert nary.nary_is_quasitrivial(F) and nary.nary_is_nondecreasing(F)
        assert nary.first_last_nondecreasing(F)
        assert nary.reduce(F) == nary.Reduced(G)


def test_reduce_precondition():
    with pytest.raises(PreconditionFailed):
        nary.reduce(nary.projection(3, 2, 2))


def test_reduce_min():
    assert nary.reduce(nary.derive(core.min_op(3), 3)) == nary.Reduced(core.min_op(3))


def test_construction_errors():
    with pytest.raises(ShapeMismatch):
        nary.new_nary(3, 2, [1, 2, 1])
    with pytest.raises(ShapeMismatch):
        nary.new_nary(1, 2, [1, 2])
    with pytest.raises(BoundExceeded):
        nary.new_nary(21, 2, [1] * 2**21)
    with pytest.raises(BoundExceeded):
        nary.nary_is_associative(nary.projection(9, 3, 1))


def test_io():
    P = nary.parity_counterexample(3)
    assert nary.format_nary_text(P) == "3 2\n1 2 2 1 2 1 1 2\n"
    assert nary.parse_nary_text(nary.format_nary_text(P)) == P
    assert nary.load_nary(nary.nary_to_json(P)) == P
    with pytest.raises(FormatError):
        nary.parse_nary_text("3\n1 2")
    with pytest.raises(FormatError):
        nary.nary_from_json("[]")


small_nary = st.tuples(st.integers(2, 3), st.integers(1, 3)).flatmap(
    lambda nk: st.lists(st.integers(1, nk[1]), min_size=nk[1] ** nk[0], max_size=nk[1] ** nk[0]).map(
        lambda vals: nary.new_nary(nk[0], nk[1], vals)
    )
)


@given(small_nary)
def test_associative_matches_brute_force(F):
    assert nary.nary_is_associative(F) == brute_associative(F)


@given(small_nary)
def test_quasitrivial_implies_idempotent(F):
    if nary.nary_is_quasitrivial(F):
        assert nary.nary_is_idempotent(F)


@given(small_nary)
def test_nondecreasing_matches_brute_force(F):
    k, n = F.k, F.n
    brute = all(
        F(*xs) <= F(*ys)
        for xs in itertools.product(range(1, k + 1), repeat=n)
        for ys in itertools.product(range(1, k + 1), repeat=n)
        if all(a <= b for a, b in zip(xs, ys))
    )
    assert nary.nary_is_nondecreasing(F) == brute


@given(small_nary)
def test_text_round_trip(F):
    assert nary.parse_nary_text(nary.format_nary_text(F)) == F


@given(st.sampled_from(ASSOC[3] + ASSOC[4]), st.integers(2, 5))
def test_fold_agrees_with_pointwise(G, n):
    F = nary.derive(G, n)
    for xs in itertools.islice(itertools.product(range(1, G.k + 1), repeat=n), 50):
        acc = xs[0]
        for x in xs[1:]:
            acc = G(acc, x)
        assert F(*xs) == acc
