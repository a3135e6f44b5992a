from fractions import Fraction
from random import Random

from algebroid.scalars import QQ, PrimeField, FieldError
from algebroid.linalg import (
    Matrix, Subspace, Quotient, solve, kernel, quotient_by, tensor,
    vec_of_matrix, matrix_of_vec,
)

import pytest


def rand_matrix(rng, field, nrows, ncols, lo=-4, hi=4):
    return Matrix(field, [[field.of(rng.randint(lo, hi)) for _ in range(ncols)]
                          for _ in range(nrows)], ncols)


def test_scalars():
    f7 = PrimeField(7)
    a, b = f7.of(3), f7.of(5)
    assert (a * b).value == 1
    assert (a / b).value == (3 * pow(5, 5, 7)) % 7
    assert not f7.zero and f7.one
    assert QQ.parse("2/3") == Fraction(2, 3)
    assert QQ.to_str(Fraction(-5, 7)) == "-5/7"
    assert f7.parse("9") == f7.of(2)
    with pytest.raises(FieldError):
        PrimeField(6)


def test_solve_identity():
    A = Matrix.identity(QQ, 2)
    assert solve(A, [QQ.of(3), QQ.of(5)]) == [QQ.of(3), QQ.of(5)]


def test_solve_zero_map():
    A = Matrix.zeros(QQ, 2, 3)
    x = solve(A, [QQ.zero, QQ.zero])
    assert x is not None and A.apply(x) == [QQ.zero, QQ.zero]


def test_solve_underdetermined_by_substitution():
    A = Matrix(QQ, [[QQ.one, QQ.one]])
    x = solve(A, [QQ.of(2)])
    assert x is not None
    assert A.apply(x) == [QQ.of(2)]


def test_solve_inconsistent():
    A = Matrix(QQ, [[QQ.one], [QQ.one]])
    assert solve(A, [QQ.one, QQ.of(2)]) is None


def test_kernel_trivial_cases():
    assert kernel(Matrix.identity(QQ, 3)).dim == 0
    assert kernel(Matrix.zeros(QQ, 3, 3)).dim == 3


def test_kernel_of_sum_map():
    A = Matrix(QQ, [[QQ.one, QQ.one]])
    K = kernel(A)
    assert K.dim == 1
    assert K.contains([QQ.one, -QQ.one])
    # rank-nullity
    assert K.dim + A.rank() == A.ncols


def test_kernel_rank_nullity_random():
    rng = Random(7)
    for field in (QQ, PrimeField(5)):
        for _ in range(12):
            A = rand_matrix(rng, field, rng.randint(1, 5), rng.randint(1, 5))
            K = kernel(A)
            assert K.dim + A.rank() == A.ncols
            for v in K.basis:
                assert all(not x for x in A.apply(v))


def test_quotient_trivial():
    S = Subspace(QQ, 2, [])
    dim, proj, sect = quotient_by(2, S)
    assert dim == 2 and proj == Matrix.identity(QQ, 2)
    S = Subspace(QQ, 2, [[QQ.one, QQ.zero], [QQ.zero, QQ.one]])
    dim, proj, sect = quotient_by(2, S)
    assert dim == 0


def test_quotient_line():
    S = Subspace(QQ, 2, [[QQ.one, -QQ.one]])
    dim, proj, sect = quotient_by(2, S)
    assert dim == 1
    assert all(not x for x in proj.apply([QQ.one, -QQ.one]))
    assert (proj @ sect) == Matrix.identity(QQ, 1)


def test_quotient_invariants_random():
    rng = Random(11)
    for _ in range(10):
        n = rng.randint(1, 6)
        k = rng.randint(0, n)
        vecs = []
        for _ in range(k):
            vecs.append([QQ.of(rng.randint(-3, 3)) for _ in range(n)])
        q = Quotient(QQ, n, vecs)
        assert (q.projection @ q.section) == Matrix.identity(QQ, q.dim)
        # section(proj(v)) - v lands in the relation span
        defect = (q.section @ q.projection) - Matrix.identity(QQ, n)
        for j in range(n):
            assert q.is_zero_class(defect.col(j))
        assert q.projection.rank() == q.dim


def test_tensor_identity_and_zero():
    assert tensor(Matrix.identity(QQ, 2), Matrix.identity(QQ, 3)) == Matrix.identity(QQ, 6)
    assert tensor(Matrix.zeros(QQ, 2, 2), Matrix.identity(QQ, 3)).is_zero()


def test_tensor_functorial_random():
    rng = Random(3)
    for _ in range(10):
        A = rand_matrix(rng, QQ, 2, 2)
        A2 = rand_matrix(rng, QQ, 2, 2)
        B = rand_matrix(rng, QQ, 2, 2)
        B2 = rand_matrix(rng, QQ, 2, 2)
        assert tensor(A @ A2, B @ B2) == tensor(A, B) @ tensor(A2, B2)


def test_tensor_index_convention():
    # index of v_i (x) w_j must be i*dim_w + j
    A = Matrix(QQ, [[QQ.of(2)]])
    B = Matrix.identity(QQ, 3)
    T = tensor(B, A)
    assert T.nrows == 3 and T.rows[0][0] == QQ.of(2)
    ei = [QQ.one, QQ.zero]
    ej = [QQ.zero, QQ.one, QQ.zero]
    v = [QQ.zero] * 6
    v[0 * 3 + 1] = QQ.one
    I = Matrix.identity(QQ, 6)
    assert I.apply(v) == [a * b for a in ei for b in ej]


def test_inverse():
    rng = Random(5)
    for _ in range(8):
        while True:
            A = rand_matrix(rng, QQ, 3, 3)
            if A.rank() == 3:
                break
        assert A @ A.inverse() == Matrix.identity(QQ, 3)
        assert A.inverse() @ A == Matrix.identity(QQ, 3)


def test_vec_matrix_roundtrip():
    rng = Random(13)
    A = rand_matrix(rng, QQ, 3, 4)
    assert matrix_of_vec(QQ, vec_of_matrix(A), 3, 4) == A
