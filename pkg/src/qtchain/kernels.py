"""Hot loops over operation tables.

Every kernel takes *zero-based* int64 arrays (a table ``t`` with
``t[x, y] = F(x+1, y+1) - 1``) and returns zero-based coordinates, with ``-1``
entries meaning "no violation". Each kernel exists twice: a loop version that
numba compiles (``*_jit``) and a vectorized numpy version (``*_numpy``). Both
return the lexicographically smallest violation, so they are interchangeable.
The module-level names without suffix dispatch on :data:`qtchain._accel.USE_NUMBA`.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

NONE3 = (-1, -1, -1)
NONE4 = (-1, -1, -1, -1)


# --- associativity ---------------------------------------------------------


def _assoc_loop(t):
    k = t.shape[0]
    for x in range(k):
        for y in range(k):
            xy = t[x, y]
            for z in range(k):
                if t[xy, z] != t[x, t[y, z]]:
                    return x, y, z
    return -1, -1, -1


def assoc_violation_numpy(t):
    k = t.shape[0]
    left = t[t]  # left[x, y, z] = t[t[x, y], z]
    right = t[np.arange(k)[:, None, None], t[None, :, :]]
    bad = np.argwhere(left != right)
    if len(bad) == 0:
        return NONE3
    x, y, z = bad[0]
    return int(x), int(y), int(z)


# --- bisymmetry ------------------------------------------------------------


def _bisym_loop(t):
    k = t.shape[0]
    for u in range(k):
        for v in range(k):
            uv = t[u, v]
            for w in range(k):
                uw = t[u, w]
                for z in range(k):
                    if t[uv, t[w, z]] != t[uw, t[v, z]]:
                        return u, v, w, z
    return -1, -1, -1, -1


def bisym_violation_numpy(t):
    # one (k, k, k) slab per u keeps memory at O(k^3)
    for u in range(t.shape[0]):
        lhs = t[t[u][:, None, None], t[None, :, :]]  # [v, w, z]
        rhs = lhs.transpose(1, 0, 2)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            v, w, z = bad[0]
            return u, int(v), int(w), int(z)
    return NONE4


# --- nondecreasing ---------------------------------------------------------


def _nondecreasing_loop(t):
    # returns (x, y, x', y') with t[x, y] > t[x', y'] for an adjacent pair
    k = t.shape[0]
    for x in range(k):
        for y in range(k):
            if x + 1 < k and t[x, y] > t[x + 1, y]:
                return x, y, x + 1, y
            if y + 1 < k and t[x, y] > t[x, y + 1]:
                return x, y, x, y + 1
    return -1, -1, -1, -1


def nondecreasing_violation_numpy(t):
    k = t.shape[0]
    down = np.zeros((k, k), dtype=bool)
    right = np.zeros((k, k), dtype=bool)
    down[:-1, :] = t[:-1, :] > t[1:, :]
    right[:, :-1] = t[:, :-1] > t[:, 1:]
    bad = np.argwhere(down | right)
    if len(bad) == 0:
        return NONE4
    x, y = (int(c) for c in bad[0])
    if down[x, y]:
        return x, y, x + 1, y
    return x, y, x, y + 1


# --- enumeration of quasitrivial nondecreasing tables ----------------------


def _qn_loop(k, out):
    # Depth-first over cells in row-major order, smaller choice first, so the
    # tables come out in lexicographic order. Writes up to len(out) tables and
    # returns the total count.
    n = k * k
    t = np.zeros((k, k), np.int64)
    choice = np.full(n, -1, np.int64)
    count = 0
    i = 0
    while i >= 0:
        if i == n:
            if count < out.shape[0]:
                out[count] = t
            count += 1
            i -= 1
            continue
        x = i // k
        y = i % k
        lo = min(x, y)
        hi = max(x, y)
        c = choice[i] + 1
        placed = False
        while c < 2:
            if c == 1 and lo == hi:
                break
            v = lo if c == 0 else hi
            if (y == 0 or t[x, y - 1] <= v) and (x == 0 or t[x - 1, y] <= v):
                t[x, y] = v
                choice[i] = c
                placed = True
                break
            c += 1
        if placed:
            i += 1
        else:
            choice[i] = -1
            i -= 1
    return count


def enumerate_qn_numpy(k):
    frontier = np.zeros((1, k, k), np.int64)
    for x in range(k):
        for y in range(k):
            lo, hi = min(x, y), max(x, y)
            tables, masks = [], []
            for v in (lo,) if lo == hi else (lo, hi):
                f = frontier.copy()
                f[:, x, y] = v
                ok = np.ones(len(f), dtype=bool)
                if y > 0:
                    ok &= f[:, x, y - 1] <= v
                if x > 0:
                    ok &= f[:, x - 1, y] <= v
                tables.append(f)
                masks.append(ok)
            # children of one parent stay adjacent, in value order
            frontier = np.stack(tables, axis=1).reshape(-1, k, k)[np.stack(masks, axis=1).reshape(-1)]
    return frontier


assoc_violation_jit = njit(_assoc_loop)
bisym_violation_jit = njit(_bisym_loop)
nondecreasing_violation_jit = njit(_nondecreasing_loop)
_qn_jit = njit(_qn_loop)


def enumerate_qn_jit(k):
    n = _qn_jit(k, np.zeros((0, k, k), np.int64))
    out = np.zeros((n, k, k), np.int64)
    _qn_jit(k, out)
    return out


def _as_tuple(r):
    return tuple(int(c) for c in r)


if USE_NUMBA:

    def assoc_violation(t):
        return _as_tuple(assoc_violation_jit(t))

    def bisym_violation(t):
        return _as_tuple(bisym_violation_jit(t))

    def nondecreasing_violation(t):
        return _as_tuple(nondecreasing_violation_jit(t))

    enumerate_qn_tables = enumerate_qn_jit
else:
    assoc_violation = assoc_violation_numpy
    bisym_violation = bisym_violation_numpy
    nondecreasing_violation = nondecreasing_violation_numpy
    enumerate_qn_tables = enumerate_qn_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"
