import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from simpcx import _accel
from simpcx.constructions import build
from simpcx.homology import boundary_matrix, smith_normal_form
from simpcx.kernels import rank_mod_p, rank_mod_p_numba, rank_mod_p_numpy

PRIMES = [2, 3, 5, 7, 101]


def rank_from_snf(M, p):
    return sum(1 for d in smith_normal_form(M).invariant_factors if d % p)


small_matrices = st.tuples(st.integers(1, 7), st.integers(1, 7)).flatmap(
    lambda shape: arrays(np.int64, shape, elements=st.integers(-6, 6)))


@settings(max_examples=150, deadline=None)
@given(small_matrices, st.sampled_from(PRIMES))
def test_backends_match_snf(M, p):
    expect = rank_from_snf(M.tolist(), p)
    assert rank_mod_p_numpy(M, p) == rank_mod_p_numba(M, p) == expect


@pytest.mark.parametrize("name", ["rp2", "torus", "cyclic:6", "finite_abelian:2,4"])
@pytest.mark.parametrize("p", [2, 3])
def test_boundary_ranks(name, p):
    D = np.array(boundary_matrix(build(name).complex, 2).entries, dtype=np.int64)
    assert rank_mod_p_numpy(D, p) == rank_mod_p_numba(D, p) == rank_from_snf(D.tolist(), p)


def test_rp2_rank_depends_on_prime():
    D = np.array(boundary_matrix(build("rp2").complex, 2).entries, dtype=np.int64)
    assert rank_mod_p(D, 3) == 10 and rank_mod_p(D, 2) == 9


def test_empty():
    assert rank_mod_p(np.zeros((0, 4), dtype=np.int64), 2) == 0


def test_does_not_mutate_input():
    M = np.array([[2, 4], [1, 3]], dtype=np.int64)
    rank_mod_p_numba(M, 3)
    rank_mod_p_numpy(M, 3)
    assert M.tolist() == [[2, 4], [1, 3]]


def test_env_flag_selects_numpy():
    code = "from simpcx import _accel; print(_accel.backend())"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True,
                         env={"SIMPCX_NUMBA": "0", "PATH": ""}).stdout
    assert out.strip() == "numpy"


def test_default_backend():
    assert _accel.backend() in ("numba", "numpy")
    assert _accel.backend() == ("numba" if _accel.USE_NUMBA else "numpy")
