from fractions import Fraction

from algebroid.scalars import QQ
from algebroid.linalg import Matrix
from algebroid.monoidal import VecCategory, check_pentagon, check_triangle, \
    check_coequalizer_preserved
from algebroid.bimodules import Monoid, InternalBimodule, regular_bimodule, \
    hom_basis, tensor_over, induced_map, und_rho, und_lambda
from algebroid.cells import CellContext, H, gen, id0, ident_cell, hcomp, vcomp, \
    coherence_iso, acell, word_of
from algebroid.catalog import (
    extension_trivial, extension_qc2, extension_qc2_in_qc4, extension_mat2,
    group_mul_table, cyclic_elements, cyclic_compose, group_algebra_unit,
    matrix_units_mul_table, matrix_algebra_unit,
)

import pytest


def qc2_monoid(cat):
    mul = group_mul_table(QQ, cyclic_elements(2), cyclic_compose(2))
    return Monoid.from_mul_table(cat, mul, group_algebra_unit(QQ, [0, 1], 0), "QC2")


def test_monoid_axioms():
    cat = VecCategory(QQ)
    m = qc2_monoid(cat)
    assert m.is_valid()
    m2 = Monoid.from_mul_table(cat, matrix_units_mul_table(QQ, 2),
                               matrix_algebra_unit(QQ, 2), "M2")
    assert m2.is_valid()
    # corrupt one structure constant: associativity must fail
    bad = Matrix(QQ, [list(r) for r in m.mul.rows], m.mul.ncols)
    bad.rows[0][1] = bad.rows[0][1] + QQ.one
    mbad = Monoid.from_mul_table(cat, bad, [QQ.one, QQ.zero], "bad")
    assert not dict(mbad.check())["associativity"]


def test_regular_bimodule_and_hom():
    cat = VecCategory(QQ)
    m2 = Monoid.from_mul_table(cat, matrix_units_mul_table(QQ, 2),
                               matrix_algebra_unit(QQ, 2), "M2")
    reg = regular_bimodule(m2)
    assert reg.is_valid()
    # endomorphisms of the regular bimodule = the center, dim 1 for M2
    assert len(hom_basis(reg, reg)) == 1
    c2 = qc2_monoid(cat)
    regc = regular_bimodule(c2)
    assert len(hom_basis(regc, regc)) == 2


def test_hom_trivial_actions():
    # QC2 as a bimodule over the ground field on both sides: hom = all of End
    cat = VecCategory(QQ)
    one = Monoid.from_mul_table(cat, Matrix(QQ, [[QQ.one]], 1), [QQ.one], "Q")
    mats = [Matrix.identity(QQ, 2)]
    bim = InternalBimodule.from_action_mats(cat, one, one, cat.obj(2), mats, mats)
    assert len(hom_basis(bim, bim)) == 4


def test_hom_schur_zero():
    # two different idempotent components of Q x Q: no bimodule maps between them
    cat = VecCategory(QQ)
    mul = Matrix.from_cols(QQ, [[QQ.one, QQ.zero], [QQ.zero, QQ.zero],
                                [QQ.zero, QQ.zero], [QQ.zero, QQ.one]], 2)
    qq = Monoid.from_mul_table(cat, mul, [QQ.one, QQ.one], "QxQ")
    assert qq.is_valid()
    e1 = [Matrix(QQ, [[QQ.one]], 1), Matrix(QQ, [[QQ.zero]], 1)]
    e2 = [Matrix(QQ, [[QQ.zero]], 1), Matrix(QQ, [[QQ.one]], 1)]
    m1 = InternalBimodule.from_action_mats(cat, qq, qq, cat.obj(1), e1, e1)
    m2 = InternalBimodule.from_action_mats(cat, qq, qq, cat.obj(1), e2, e2)
    assert m1.is_valid() and m2.is_valid()
    assert len(hom_basis(m1, m2)) == 0


def test_tensor_over_unit_law_dims():
    ext = extension_qc2()
    ctx, fd = ext.context()
    M = ctx.monoids["M"]
    iota = ctx.gens["i"]
    t = tensor_over(iota, ctx.regular(M))
    # iota (x)_M M has the dimension of iota
    assert t.bim.dim == iota.dim
    t0 = tensor_over(ctx.regular(ctx.monoids["N"]), iota)
    assert t0.bim.dim == iota.dim
    # over the ground field the tensor is free: dim 4
    t2 = tensor_over(iota, ctx.gens["ibar"])
    assert t2.bim.dim == 2  # iota (x)_M ibar collapses to M
    t3 = tensor_over(ctx.gens["ibar"], iota)
    assert t3.bim.dim == 4  # ibar (x)_N iota is free over N = Q


def test_tensor_over_subalgebra_dimension():
    ext = extension_qc2_in_qc4()
    ctx, fd = ext.context()
    t = tensor_over(ctx.gens["ibar"], ctx.gens["i"])
    # QC4 (x)_{QC2} QC4 has dimension 16 - 8 = 8
    assert t.bim.dim == 8
    assert t.bim.is_valid()


def test_tensor_over_balanced_and_surjective():
    ext = extension_qc2_in_qc4()
    ctx, _ = ext.context()
    t = tensor_over(ctx.gens["ibar"], ctx.gens["i"])
    assert t.tau.rank() == t.bim.dim
    # tau kills exactly the balancing relations
    assert t.coq.quot.ech.rank == t.th.dim - t.bim.dim


def test_induced_map_functorial():
    ext = extension_qc2()
    ctx, _ = ext.context()
    iota, ibar = ctx.gens["i"], ctx.gens["ibar"]
    t = tensor_over(ibar, iota)
    idm = ctx.cat.ident(iota.dim)
    from algebroid.bimodules import BimoduleMap
    p = BimoduleMap(ibar, ibar, Matrix.identity(QQ, 2))
    q = BimoduleMap(iota, iota, Matrix.identity(QQ, 2))
    assert induced_map(t, t, p, q).mat == Matrix.identity(QQ, t.bim.dim)
    # functoriality on scaled maps
    p2 = BimoduleMap(ibar, ibar, Matrix.identity(QQ, 2).scale(QQ.of(2)))
    q2 = BimoduleMap(iota, iota, Matrix.identity(QQ, 2).scale(QQ.of(3)))
    lhs = induced_map(t, t, p2, q2).mat
    assert lhs == induced_map(t, t, p2, q).mat @ induced_map(t, t, p, q2).mat


def test_underline_units():
    ext = extension_qc2_in_qc4()
    ctx, _ = ext.context()
    iota = ctx.gens["i"]
    M = ctx.monoids["M"]
    t = tensor_over(iota, ctx.regular(M))
    rho, rho_inv = und_rho(t)
    assert rho @ rho_inv == Matrix.identity(QQ, iota.dim)
    t2 = tensor_over(ctx.regular(ctx.monoids["N"]), iota)
    lam, lam_inv = und_lambda(t2)
    assert lam @ lam_inv == Matrix.identity(QQ, iota.dim)


def test_vec_monoidal_coherence():
    cat = VecCategory(QQ)
    objs = [cat.obj(1), cat.obj(2), cat.obj(3), cat.obj(2)]
    assert check_pentagon(cat, *objs)
    assert check_triangle(cat, objs[1], objs[2])


def test_vec_coequalizer_preserved():
    cat = VecCategory(QQ)
    X, Y = cat.obj(3), cat.obj(3)
    f = Matrix.identity(QQ, 3)
    g = Matrix.zeros(QQ, 3, 3)
    g.rows[0][0] = QQ.one
    coq = cat.coequalizer(X, Y, f, Matrix(QQ, [list(r) for r in g.rows], 3))
    assert check_coequalizer_preserved(cat, coq, cat.obj(2), "right")
    assert check_coequalizer_preserved(cat, coq, cat.obj(2), "left")


def alternating_word_exprs(length, start="i"):
    letters = []
    cur = start
    for _ in range(length):
        letters.append(gen(cur))
        cur = "ibar" if cur == "i" else "i"
    return letters


def all_brackets(letters):
    if len(letters) == 1:
        return [letters[0]]
    out = []
    for k in range(1, len(letters)):
        for l in all_brackets(letters[:k]):
            for r in all_brackets(letters[k:]):
                out.append(H(l, r))
    return out


def test_pentagon_underline_qc2():
    ext = extension_qc2()
    ctx, _ = ext.context()
    i, ib = gen("i"), gen("ibar")
    # both reassociation paths ((i ib) i) ib -> i (ib (i ib)) agree
    e = [i, ib, i, ib]
    lhs = vcomp(acell(ctx, e[0], H(e[1], e[2]), e[3]),
                hcomp(acell(ctx, e[0], e[1], e[2]), ident_cell(ctx, e[3])))
    rhs = vcomp(hcomp(ident_cell(ctx, e[0]), acell(ctx, e[1], e[2], e[3])),
                acell(ctx, e[0], H(e[1], e[2]), e[3]))
    # pentagon: compare the two composites around the five bracketings
    left = vcomp(hcomp(ident_cell(ctx, e[0]), acell(ctx, e[1], e[2], e[3])),
                 acell(ctx, e[0], H(e[1], e[2]), e[3]),
                 hcomp(acell(ctx, e[0], e[1], e[2]), ident_cell(ctx, e[3])))
    right = vcomp(acell(ctx, e[0], e[1], H(e[2], e[3])),
                  acell(ctx, H(e[0], e[1]), e[2], e[3]))
    assert left.src == right.src and left.tgt == right.tgt
    assert left.mat == right.mat


@pytest.mark.parametrize("length", [2, 3, 4, 5])
def test_coherence_iso_path_independent(length):
    ext = extension_qc2()
    ctx, _ = ext.context()
    brackets = all_brackets(alternating_word_exprs(length))
    base = brackets[0]
    for e in brackets[1:]:
        fwd = coherence_iso(ctx, base, e)
        back = coherence_iso(ctx, e, base)
        assert (back.mat @ fwd.mat) == Matrix.identity(QQ, ctx.dim(base))
    # composition property on a chain
    if len(brackets) >= 3:
        a, b, c = brackets[0], brackets[1], brackets[2]
        assert coherence_iso(ctx, a, c).mat == \
            (coherence_iso(ctx, b, c).mat @ coherence_iso(ctx, a, b).mat)


def test_coherence_iso_same_word_is_identity():
    ext = extension_qc2()
    ctx, _ = ext.context()
    e = H(gen("i"), gen("ibar"))
    assert coherence_iso(ctx, e, e).mat == Matrix.identity(QQ, ctx.dim(e))


def test_coherence_iso_rejects_different_words():
    ext = extension_qc2()
    ctx, _ = ext.context()
    with pytest.raises(Exception):
        coherence_iso(ctx, gen("i"), gen("ibar"))


def test_realize_deterministic():
    ext = extension_qc2()
    ctx1, _ = ext.context()
    ctx2, _ = ext.context()
    e = H(H(gen("i"), gen("ibar")), gen("i"))
    r1 = ctx1.realize(e)
    r2 = ctx2.realize(e)
    assert r1.tens.tau == r2.tens.tau
    assert r1.tens.sigma == r2.tens.sigma


def test_word_of():
    e = H(H(gen("i"), gen("ibar")), gen("i"))
    assert word_of(e) == (gen("i"), gen("ibar"), gen("i"))
