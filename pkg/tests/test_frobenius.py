from fractions import Fraction

from algebroid.scalars import QQ
from algebroid.linalg import Matrix
from algebroid.cells import H, gen
from algebroid.bimodules import hom_basis
from algebroid.frobenius import (
    verify_rigidity, verify_d2, find_d2_quasibasis, D2QuasiBasis, phi_L, endo_basis,
)
from algebroid.catalog import (
    extension_trivial, extension_qc2, extension_qc2_in_qc4, extension_mat2, Extension,
)

import pytest


def w_identification(ext, ctx):
    """Isomorphism realize(i x ibar) -> M sending a class to its product."""
    W = ctx.realize(H(gen("i"), gen("ibar"))).tens
    to_m = ext.m_mul @ W.incl_free
    dm = to_m.nrows
    cols = []
    for u in range(dm):
        v = [QQ.zero] * (dm * dm)
        for b, vb in enumerate(ext.m_unit):
            if vb:
                v[u * dm + b] = vb
        cols.append(v)
    from_m = W.proj_free @ Matrix.from_cols(QQ, cols, dm)
    assert to_m @ from_m == Matrix.identity(QQ, dm)
    return to_m, from_m


def test_rigidity_trivial():
    ctx, fd = extension_trivial().context()
    assert verify_rigidity(fd).passed


def test_rigidity_qc2():
    ctx, fd = extension_qc2().context()
    rep = verify_rigidity(fd)
    assert rep.passed, rep.failures()


def test_rigidity_qc2_in_qc4():
    ctx, fd = extension_qc2_in_qc4().context()
    assert verify_rigidity(fd).passed


def test_rigidity_mat2():
    ctx, fd = extension_mat2().context()
    assert verify_rigidity(fd).passed


def test_rigidity_swapped():
    ctx, fd = extension_qc2_in_qc4().context()
    assert verify_rigidity(fd.swapped()).passed


def test_rigidity_fails_on_truncated_quasibasis():
    ext = extension_qc2()
    bad = Extension("bad", ext.field, ext.n_mul, ext.n_unit, ext.m_mul, ext.m_unit,
                    ext.embed, ext.phi, ext.qb_pairs[:1])
    ctx, fd = bad.context()
    rep = verify_rigidity(fd)
    entries = {e.name: e for e in rep.entries}
    assert not entries["zigzag-3"].passed
    assert entries["zigzag-3"].residual_rank > 0
    assert entries["zigzag-1"].passed  # left-dual relations never saw the quasi-basis


def test_d2_identity_extension():
    ctx, fd = extension_trivial().context()
    qb = D2QuasiBasis([(Matrix.identity(QQ, 1), Matrix.identity(QQ, 1))])
    assert verify_d2(fd, qb).passed
    found = find_d2_quasibasis(fd)
    assert found is not None and len(found) == 1


def test_d2_empty_fails():
    ctx, fd = extension_qc2().context()
    assert not verify_d2(fd, D2QuasiBasis([])).passed


def test_find_d2_qc2():
    ctx, fd = extension_qc2().context()
    qb = find_d2_quasibasis(fd, max_terms=2)
    assert qb is not None and len(qb) <= 2
    assert verify_d2(fd, qb).passed


def test_find_d2_qc2_in_qc4():
    ctx, fd = extension_qc2_in_qc4().context()
    qb = find_d2_quasibasis(fd)
    assert qb is not None
    assert verify_d2(fd, qb).passed


def test_find_d2_mat2():
    ctx, fd = extension_mat2().context()
    qb = find_d2_quasibasis(fd, max_terms=4)
    assert qb is not None and len(qb) <= 4
    assert verify_d2(fd, qb).passed


def test_find_d2_deterministic():
    ctx1, fd1 = extension_qc2().context()
    ctx2, fd2 = extension_qc2().context()
    qb1 = find_d2_quasibasis(fd1)
    qb2 = find_d2_quasibasis(fd2)
    assert [(y, x) for y, x in qb1.pairs] == [(y, x) for y, x in qb2.pairs]


def test_phi_l_identity_extension():
    ctx, fd = extension_trivial().context()
    a = Matrix(QQ, [[QQ.of(5)]], 1)
    assert phi_L(fd, a) == a


def test_phi_l_against_ring_oracle():
    # phi_L(a)(m) = sum_j a(m y_j) x_j once the composite is identified with M
    ext = extension_qc2()
    ctx, fd = ext.context()
    to_m, from_m = w_identification(ext, ctx)
    M = ctx.monoids["M"]
    dm = M.dim

    def rightmult(v):
        cols = [M.product([QQ.one if k == m else QQ.zero for k in range(dm)], v)
                for m in range(dm)]
        return Matrix.from_cols(QQ, cols, dm)

    for a_w in endo_basis(fd):
        a_m = to_m @ a_w @ from_m
        got = phi_L(fd, a_w)   # endomorphism of the 1-cell, already on M coords
        expect = Matrix.zeros(QQ, dm, dm)
        for y, x in ext.qb_pairs:
            expect = expect + rightmult(x) @ a_m @ rightmult(y)
        assert got == expect
