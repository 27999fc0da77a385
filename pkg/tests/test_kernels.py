import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given

from qtchain import _accel, kernels

from conftest import raw_tables

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")


@needs_numba
@given(raw_tables(k_max=6))
def test_assoc_backends_agree(F):
    t = F.zero_based
    assert kernels._as_tuple(kernels.assoc_violation_jit(t)) == kernels.assoc_violation_numpy(t)


@needs_numba
@given(raw_tables(k_max=5))
def test_bisym_backends_agree(F):
    t = F.zero_based
    assert kernels._as_tuple(kernels.bisym_violation_jit(t)) == kernels.bisym_violation_numpy(t)


@needs_numba
@given(raw_tables(k_max=6))
def test_nondecreasing_backends_agree(F):
    t = F.zero_based
    assert kernels._as_tuple(kernels.nondecreasing_violation_jit(t)) == kernels.nondecreasing_violation_numpy(t)


@needs_numba
@pytest.mark.parametrize("k", range(1, 7))
def test_enumeration_backends_agree(k):
    assert np.array_equal(kernels.enumerate_qn_jit(k), kernels.enumerate_qn_numpy(k))


def test_no_violation_sentinel():
    t = np.tril(np.arange(3)[None, :].repeat(3, 0)) + np.triu(np.arange(3)[:, None].repeat(3, 1), 1)
    # t is min on L_3, zero-based
    assert kernels.assoc_violation_numpy(t) == (-1, -1, -1)
    assert kernels.bisym_violation_numpy(t) == (-1, -1, -1, -1)
    assert kernels.nondecreasing_violation_numpy(t) == (-1, -1, -1, -1)


def test_numpy_fallback_selected_by_env():
    env = dict(os.environ, QTCHAIN_NUMBA="0")
    code = "from qtchain import kernels, census; print(kernels.BACKEND, census.count_table(5, brute_force_upto=5).A)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split(None, 1) == ["numpy", "[1, 4, 12, 34, 94]\n"]
