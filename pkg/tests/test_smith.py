"""Smith normal form against sympy, plus solve/kernel properties."""

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from tangentoids import QQ, ZZ, Matrix, Modular, product, smith_normal_form
from tangentoids.errors import UnsupportedRing
from tangentoids.smith import INT, kernel_basis, solve

small = st.integers(min_value=-12, max_value=12)


def matrices(max_dim=4):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


def _sympy_diagonal(rows):
    D = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    return sorted(abs(int(D[i, i])) for i in range(min(D.shape)))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_integer_diagonal_matches_sympy(rows):
    A = Matrix(ZZ, rows)
    sf = smith_normal_form(A)
    assert sorted(abs(d) for d in sf.diagonal) == _sympy_diagonal(rows)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_integer_certificate(rows):
    A = Matrix(ZZ, rows)
    sf = smith_normal_form(A)
    assert sf.U @ A @ sf.V == sf.D
    assert abs(sympy.Matrix(sf.U.tolist()).det()) == 1
    assert abs(sympy.Matrix(sf.V.tolist()).det()) == 1
    diag = [abs(d) for d in sf.diagonal]
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    m, n = A.shape
    assert all(sf.D[i, j] == 0 for i in range(m) for j in range(n) if i != j)


@settings(max_examples=60, deadline=None)
@given(matrices(3))
def test_rational_rank_matches_sympy(rows):
    A = Matrix(QQ, rows)
    sf = smith_normal_form(A)
    assert sum(1 for d in sf.diagonal if d != 0) == sympy.Matrix(rows).rank()
    assert sf.U @ A @ sf.V == sf.D


@settings(max_examples=100, deadline=None)
@given(matrices(), st.lists(small, min_size=4, max_size=4))
def test_solve_and_kernel(rows, x):
    m, n = len(rows), len(rows[0])
    x = x[:n]
    b = [[sum(r[j] * x[j] for j in range(n))] for r in rows]
    X = solve(rows, m, n, b, INT)
    assert X is not None
    assert [[sum(r[j] * X[j][0] for j in range(n))] for r in rows] == b
    K = kernel_basis(rows, m, n, INT)
    k = len(K[0]) if K else 0
    for c in range(k):
        assert all(sum(r[j] * K[j][c] for j in range(n)) == 0 for r in rows)
    assert k == n - sympy.Matrix(rows).rank()


def test_unsolvable_system():
    assert solve([[2]], 1, 1, [[1]], INT) is None


def test_modular_reduction():
    A = Matrix(Modular(6), [[2, 4], [3, 3]])
    sf = smith_normal_form(A)
    assert sf.U @ A @ sf.V == sf.D


def test_product_ring_refused():
    with pytest.raises(UnsupportedRing):
        smith_normal_form(Matrix(product(Modular(2), Modular(3)), [[1]]))


def test_empty_matrix():
    sf = smith_normal_form(Matrix.zeros(ZZ, 0, 3))
    assert sf.diagonal == []
