from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cosetlab.errors import NotHermitianError
from cosetlab.linalg import (
    Echelon, conj_transpose, hermitian_ldl, identity, is_hermitian, is_zero_matrix, matmul, nullspace, rank,
)
from cosetlab.scalars import GaussRat, I

rat = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


def small_matrix(m, n):
    return st.lists(st.lists(rat, min_size=n, max_size=n), min_size=m, max_size=m)


@settings(max_examples=100)
@given(small_matrix(4, 5))
def test_rank_matches_numpy(A):
    assert rank(A) == np.linalg.matrix_rank(np.array(A, dtype=float))


@settings(max_examples=100)
@given(small_matrix(3, 5))
def test_nullspace_is_kernel(A):
    N = nullspace(A)
    assert len(N) == 5 - rank(A)
    for x in N:
        assert all(sum(a * b for a, b in zip(row, x)) == 0 for row in A)


def test_echelon_over_gaussian_rationals():
    ech = Echelon(2)
    assert ech.add([I, Fraction(1)])
    assert not ech.add([Fraction(-1), I])   # i * (i, 1) = (-1, i)
    assert ech.add([Fraction(0), Fraction(1)])
    assert ech.rank == 2 and ech.pivots() == [0, 1]


def test_ldl_examples():
    res = hermitian_ldl([[1, 2], [2, 1]])
    assert not res.psd and res.witness == "negative pivot -3 at step 1"
    res = hermitian_ldl([[0, 1], [1, 0]])
    assert not res.psd and "zero pivot" in res.witness
    res = hermitian_ldl([[1, 1], [1, 1]])
    assert res.psd and res.rank == 1
    with pytest.raises(NotHermitianError):
        hermitian_ldl([[1, 2], [3, 1]])


def random_gram(rng, n, r, complex_entries):
    V = [[Fraction(rng.randint(-3, 3)) + (I * rng.randint(-2, 2) if complex_entries else 0) for _ in range(r)]
         for _ in range(n)]
    return matmul(V, conj_transpose(V))


@pytest.mark.parametrize("complex_entries", [False, True])
def test_ldl_reconstructs_gram(complex_entries):
    rng = random.Random(7)
    for _ in range(30):
        n, r = rng.randint(1, 6), rng.randint(1, 4)
        M = random_gram(rng, n, r, complex_entries)
        res = hermitian_ldl(M)
        assert res.psd
        assert res.rank == rank(M)
        P = [[M[i][j] for j in res.order] for i in res.order]
        Dm = [[res.D[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        LDL = matmul(matmul(res.L, Dm), conj_transpose(res.L))
        assert is_zero_matrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(LDL, P)])


def test_ldl_detects_indefinite_perturbation():
    rng = random.Random(8)
    for _ in range(20):
        M = random_gram(rng, 4, 2, False)
        M[3][3] = M[3][3] - 100
        assert not hermitian_ldl(M).psd
        assert np.linalg.eigvalsh(np.array(M, dtype=float))[0] < 0


def test_helpers():
    assert matmul(identity(3), [[1], [2], [3]]) == [[1], [2], [3]]
    assert is_hermitian([[1, I], [GaussRat(0, -1), 2]])
    assert not is_hermitian([[1, I], [I, 2]])
    assert is_hermitian([[1.0, 1j], [-1j, 2.0]], tol=1e-12)
