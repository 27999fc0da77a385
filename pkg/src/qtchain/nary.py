"""n-ary operations on L_k: derivation from binary tables, reduction back to a
binary table, and the n-ary versions of the predicates.

Values are stored as an n-dimensional array, so the flat (C-order) layout is
mixed radix with the first argument most significant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import core
from .core import BinaryOpTable, zigzag
from .errors import BoundExceeded, FormatError, OutOfRange, PreconditionFailed, ShapeMismatch

TABLE_BOUND = 2**20
SWEEP_BOUND = 2**24


@dataclass(frozen=True, eq=False)
class NAryOpTable:
    n: int
    k: int
    values: np.ndarray  # shape (k,) * n, entries in [1, k]

    def __call__(self, *args: int) -> int:
        return nary_eval(self, args)

    def __eq__(self, other):
        if not isinstance(other, NAryOpTable):
            return NotImplemented
        return self.n == other.n and self.k == other.k and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.n, self.k, self.values.tobytes()))

    def __repr__(self):
        return f"NAryOpTable(n={self.n}, k={self.k})"

    @property
    def flat(self) -> list[int]:
        return self.values.reshape(-1).tolist()


@dataclass(frozen=True)
class NAryWitness:
    """``property`` names the failed check; ``args`` holds the argument tuples
    (1-based) that show it; ``position`` is the variable or associativity
    offset involved, when there is one."""

    property: str
    args: tuple
    position: Optional[int] = None


@dataclass(frozen=True)
class Reduced:
    G: BinaryOpTable


@dataclass(frozen=True)
class NotReducible:
    reason: str
    witness: tuple


ReductionResult = Union[Reduced, NotReducible]


def _check_size(n: int, k: int) -> None:
    if n < 2:
        raise ShapeMismatch(f"arity must be >= 2, got {n}")
    if k < 1:
        raise ShapeMismatch(f"k must be >= 1, got {k}")
    if k**n > TABLE_BOUND:
        raise BoundExceeded(f"k^n = {k}^{n} exceeds {TABLE_BOUND}")


def _freeze(n: int, k: int, arr) -> NAryOpTable:
    arr = np.array(arr, dtype=np.int64).reshape((k,) * n)
    arr.setflags(write=False)
    return NAryOpTable(n, k, arr)


def new_nary(n: int, k: int, values) -> NAryOpTable:
    """Build from a flat mixed-radix list or an n-dimensional array."""
    _check_size(n, k)
    arr = np.array(values, dtype=np.int64)
    if arr.size != k**n:
        raise ShapeMismatch(f"expected {k**n} values for n={n}, k={k}, got {arr.size}")
    arr = arr.reshape((k,) * n)
    bad = np.argwhere((arr < 1) | (arr > k))
    if len(bad):
        idx = tuple(int(c) + 1 for c in bad[0])
        raise OutOfRange(idx[0], idx[1], int(arr[tuple(bad[0])]), k)
    return _freeze(n, k, arr)


def _axes(m: int, k: int) -> list[np.ndarray]:
    """Zero-based coordinate arrays for an m-dimensional broadcast grid."""
    out = []
    for j in range(m):
        shape = [1] * m
        shape[j] = k
        out.append(np.arange(k).reshape(shape))
    return out


def _first(mask: np.ndarray) -> Optional[tuple[int, ...]]:
    bad = np.argwhere(mask)
    return tuple(int(c) for c in bad[0]) if len(bad) else None


def _one_based(idx) -> tuple[int, ...]:
    return tuple(int(c) + 1 for c in idx)


def nary_eval(F: NAryOpTable, args) -> int:
    args = tuple(args)
    if len(args) != F.n:
        raise ShapeMismatch(f"expected {F.n} arguments, got {len(args)}")
    for a in args:
        if not 1 <= a <= F.k:
            raise OutOfRange(args[0], args[1], a, F.k)
    return int(F.values[tuple(a - 1 for a in args)])


def _fold(G: BinaryOpTable, n: int) -> np.ndarray:
    z = G.zero_based
    k = G.k
    acc = np.arange(k)
    for j in range(1, n):
        acc = z[acc[..., None], np.arange(k).reshape((1,) * j + (k,))]
    return acc + 1


def derive(G: BinaryOpTable, n: int) -> NAryOpTable:
    """F(x1, ..., xn) = x1 o x2 o ... o xn with x o y = G(x, y)."""
    w = core.find_non_associative(G)
    if w is not None:
        raise PreconditionFailed("derive needs an associative binary operation", w)
    _check_size(n, G.k)
    return _freeze(n, G.k, _fold(G, n))


def projection(n: int, k: int, i: int) -> NAryOpTable:
    """F(x1, ..., xn) = xi."""
    _check_size(n, k)
    if not 1 <= i <= n:
        raise ValueError(f"coordinate {i} not in 1..{n}")
    return _freeze(n, k, np.broadcast_to(_axes(n, k)[i - 1], (k,) * n) + 1)


def parity_counterexample(n: int) -> NAryOpTable:
    """On L_2 = {1, 2}: the argument value occurring an odd number of times."""
    if n < 3 or n % 2 == 0:
        raise PreconditionFailed(f"the parity operation needs an odd arity n >= 3, got {n}")
    twos = sum(a for a in _axes(n, 2))  # number of arguments equal to 2
    return _freeze(n, 2, 1 + twos % 2)


# --------------------------------------------------------------------------
# predicates


def find_nary_non_idempotent(F: NAryOpTable) -> Optional[NAryWitness]:
    for x in range(F.k):
        if F.values[(x,) * F.n] != x + 1:
            return NAryWitness("idempotent", ((x + 1,) * F.n,))
    return None


def nary_is_idempotent(F: NAryOpTable) -> bool:
    return find_nary_non_idempotent(F) is None


def find_nary_non_quasitrivial(F: NAryOpTable) -> Optional[NAryWitness]:
    z = F.values - 1
    ok = np.zeros(z.shape, dtype=bool)
    for ax in _axes(F.n, F.k):
        ok |= z == ax
    idx = _first(~ok)
    return None if idx is None else NAryWitness("quasitrivial", (_one_based(idx),))


def nary_is_quasitrivial(F: NAryOpTable) -> bool:
    return find_nary_non_quasitrivial(F) is None


def find_nary_non_nondecreasing(F: NAryOpTable) -> Optional[NAryWitness]:
    best = None
    for axis in range(F.n):
        idx = _first(np.diff(F.values, axis=axis) < 0)
        if idx is not None and (best is None or idx < best[0]):
            best = (idx, axis)
    if best is None:
        return None
    idx, axis = best
    nxt = list(idx)
    nxt[axis] += 1
    return NAryWitness("nondecreasing", (_one_based(idx), _one_based(nxt)), axis + 1)


def nary_is_nondecreasing(F: NAryOpTable) -> bool:
    return find_nary_non_nondecreasing(F) is None


def find_nary_non_monotone(F: NAryOpTable, sectionwise: bool = False) -> Optional[NAryWitness]:
    """By default a variable counts as monotone when all its sections share
    one direction (all nondecreasing, or all nonincreasing). With
    ``sectionwise=True`` each section may pick its own direction."""
    for axis in range(F.n):
        d = np.diff(F.values, axis=axis)
        if sectionwise:
            sections = np.moveaxis(F.values, axis, -1).reshape(-1, F.k)
            for s, row in enumerate(sections):
                zz = zigzag(row.tolist())
                if zz is None:
                    continue
                fixed = np.unravel_index(s, (F.k,) * (F.n - 1))
                pts = []
                for t in zz:
                    full = list(int(c) for c in fixed)
                    full.insert(axis, t)
                    pts.append(_one_based(full))
                return NAryWitness("monotone", tuple(pts), axis + 1)
            continue
        up, down = _first(d > 0), _first(d < 0)
        if up is not None and down is not None:
            pairs = []
            for idx in (up, down):
                nxt = list(idx)
                nxt[axis] += 1
                pairs += [_one_based(idx), _one_based(nxt)]
            return NAryWitness("monotone", tuple(pairs), axis + 1)
    return None


def nary_is_monotone(F: NAryOpTable, sectionwise: bool = False) -> bool:
    return find_nary_non_monotone(F, sectionwise) is None


def first_last_nondecreasing(F: NAryOpTable) -> bool:
    """True when F is nondecreasing in its first and in its last variable."""
    return bool(np.all(np.diff(F.values, axis=0) >= 0) and np.all(np.diff(F.values, axis=F.n - 1) >= 0))


def nary_neutral_element(F: NAryOpTable) -> Optional[int]:
    r = np.arange(F.k)
    for e in range(F.k):
        good = True
        for i in range(F.n):
            idx = [e] * F.n
            idx[i] = r
            if not np.array_equal(F.values[tuple(idx)], r + 1):
                good = False
                break
        if good:
            return e + 1
    return None


def find_nary_non_associative(F: NAryOpTable) -> Optional[NAryWitness]:
    n, k = F.n, F.k
    m = 2 * n - 1
    if k**m * (n - 1) > SWEEP_BOUND:
        raise BoundExceeded(f"associativity sweep needs {k**m * (n - 1)} evaluations (> {SWEEP_BOUND})")
    z = F.values - 1
    c = _axes(m, k)

    def bracket(i):  # inner F applied to arguments i .. i+n-1 (0-based)
        inner = z[tuple(c[i : i + n])]
        return z[tuple(c[:i]) + (inner,) + tuple(c[i + n :])]

    prev = bracket(0)
    for i in range(1, n):
        cur = bracket(i)
        idx = _first(np.broadcast_to(prev != cur, (k,) * m))
        if idx is not None:
            return NAryWitness("associative", (_one_based(idx),), i)
        prev = cur
    return None


def nary_is_associative(F: NAryOpTable) -> bool:
    return find_nary_non_associative(F) is None


def find_nary_non_bisymmetric(F: NAryOpTable) -> Optional[NAryWitness]:
    n, k = F.n, F.k
    if n == 2:
        w = core.find_non_bisymmetric(core._trusted(F.values))
        return None if w is None else NAryWitness("bisymmetric", ((w.u, w.v), (w.w, w.z)))
    if k ** (n * n) > SWEEP_BOUND:
        raise BoundExceeded(f"bisymmetry sweep over {k}^{n * n} matrices exceeds {SWEEP_BOUND}")
    z = F.values - 1
    c = _axes(n * n, k)  # axis r*n + s holds matrix entry (r, s)
    rows = [z[tuple(c[r * n : r * n + n])] for r in range(n)]
    cols = [z[tuple(c[s::n])] for s in range(n)]
    lhs = z[tuple(rows)]
    rhs = z[tuple(cols)]
    idx = _first(np.broadcast_to(lhs != rhs, (k,) * (n * n)))
    if idx is None:
        return None
    flat = _one_based(idx)
    return NAryWitness("bisymmetric", tuple(flat[r * n : r * n + n] for r in range(n)))


def nary_is_bisymmetric(F: NAryOpTable) -> bool:
    return find_nary_non_bisymmetric(F) is None


# --------------------------------------------------------------------------
# reduction


def reduce(F: NAryOpTable) -> ReductionResult:
    """Recover the binary G with F = derive(G, n), via G(a, b) = F(a, b, ..., b),
    after checking that it agrees with F(a, ..., a, b)."""
    w = find_nary_non_associative(F) or find_nary_non_idempotent(F)
    if w is not None:
        raise PreconditionFailed("reduce needs an associative idempotent operation", w)
    n, k = F.n, F.k
    r = np.arange(k)
    a, b = r[:, None], r[None, :]
    right = F.values[(a,) + (b,) * (n - 1)]
    left = F.values[(a,) * (n - 1) + (b,)]
    idx = _first(right != left)
    if idx is not None:
        x, y = idx[0] + 1, idx[1] + 1
        return NotReducible("F(a, (n-1)b) != F((n-1)a, b)", ((x,) + (y,) * (n - 1), (x,) * (n - 1) + (y,)))
    G = core._trusted(right)
    wa = core.find_non_associative(G)
    if wa is not None:
        return NotReducible("candidate binary operation is not associative", (wa.x, wa.y, wa.z))
    idx = _first(_fold(G, n) != F.values)
    if idx is not None:
        return NotReducible("fold of the candidate differs from F", (_one_based(idx),))
    return Reduced(G)


# --------------------------------------------------------------------------
# IO


def format_nary_text(F: NAryOpTable) -> str:
    flat = [str(v) for v in F.flat]
    lines = [f"{F.n} {F.k}"] + [" ".join(flat[i : i + 16]) for i in range(0, len(flat), 16)]
    return "\n".join(lines) + "\n"


def parse_nary_text(text: str) -> NAryOpTable:
    tokens = []
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise FormatError("empty n-ary table")
    try:
        head = [int(t) for t in lines[0].split()]
        for ln in lines[1:]:
            tokens += [int(t) for t in ln.split()]
    except ValueError as exc:
        raise FormatError(f"non-integer token: {exc}") from None
    if len(head) != 2:
        raise FormatError("first line must be 'n k'")
    return new_nary(head[0], head[1], tokens)


def nary_to_json(F: NAryOpTable) -> str:
    return json.dumps({"n": F.n, "k": F.k, "values": F.flat})


def nary_from_json(text: str) -> NAryOpTable:
    try:
        data = json.loads(text)
        return new_nary(data["n"], data["k"], data["values"])
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise FormatError(f"bad n-ary table JSON: {exc}") from None


def load_nary(text: str) -> NAryOpTable:
    if text.lstrip().startswith("{"):
        return nary_from_json(text)
    return parse_nary_text(text)
