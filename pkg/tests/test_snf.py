import random

import numpy as np
import scipy.sparse as sp
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import invariant_factors as sympy_factors

from disthom import snf


def test_diag_2_3():
    D, U, V = snf.smith_normal_form([[2, 0], [0, 3]])
    assert snf.diagonal(D) == [1, 6]


def test_zero_matrix():
    D, U, V = snf.smith_normal_form([[0, 0], [0, 0]])
    assert D == [[0, 0], [0, 0]]
    assert U == [[1, 0], [0, 1]] and V == [[1, 0], [0, 1]]
    assert snf.invariant_factors(np.zeros((2, 3), dtype=int)) == []


def test_against_sympy_random():
    rng = random.Random(1)
    for _ in range(300):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        M = [[rng.choice([0, 0, 1, -1, 2, 3, -4, 6]) for _ in range(n)] for _ in range(m)]
        D, U, V = snf.smith_normal_form(M)
        assert snf.matmul(snf.matmul(U, M), V) == D
        assert snf.is_unimodular(U) and snf.is_unimodular(V)
        d = [x for x in snf.diagonal(D) if x]
        assert d == snf.divisor_chain(d)
        assert snf.invariant_factors(np.array(M)) == d
        sm = sympy.Matrix(M)
        if sm.rank():
            ref = [abs(int(x)) for x in sympy_factors(sm, domain=sympy.ZZ) if x]
            assert ref == d
        Ui = snf.inverse_unimodular(U)
        assert snf.matmul(U, Ui) == [[int(i == j) for j in range(m)] for i in range(m)]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=1, max_size=5))
def test_sparse_matches_dense(rows):
    M = np.array(rows)
    D, _, _ = snf.smith_normal_form(rows)
    assert snf.invariant_factors(sp.csr_matrix(M)) == [x for x in snf.diagonal(D) if x]
    assert snf.rank(sp.csr_matrix(M)) == np.linalg.matrix_rank(M)


def test_in_image_and_solve():
    A = np.array([[2, 0], [0, 3], [0, 0]])
    assert snf.in_image(sp.csr_matrix(A), np.array([4, 3, 0]))
    assert not snf.in_image(sp.csr_matrix(A), np.array([1, 0, 0]))
    x = snf.solve_integer(A.tolist(), [4, 3, 0])
    assert (A @ np.array(x) == [4, 3, 0]).all()


def test_rank_mod_p():
    M = sp.csr_matrix(np.array([[2, 4], [1, 3]]))
    assert snf.rank_mod_p(M, 2) == 1
    assert snf.rank_mod_p(M, 3) == 2
