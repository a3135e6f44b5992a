from fractions import Fraction

from algebroid.scalars import QQ, PrimeField
from algebroid.linalg import Matrix
from algebroid.hopf import (
    RingData, BialgebroidSide, HopfAlgebroid, verify, find_integrals,
    is_left_integral, is_right_integral, lemma_equivalences, nondegeneracy,
    DualSpace, dual_spaces, dualize, second_dual_strict_iso, check_morphism,
    integral_pairing_matrix,
)
from algebroid.catalog import hopf_qc2, hopf_qc4, hopf_fnc2, group_hopf_algebroid, \
    cyclic_elements, cyclic_compose

import pytest


def trivial_hopf(field=QQ):
    base = RingData(field, [[[field.one]]], [field.one], "k")
    s = Matrix.identity(field, 1)
    gamma = Matrix(field, [[field.one]], 1)
    pi = Matrix.identity(field, 1)
    left = BialgebroidSide("left", base, base, s, s, gamma, pi)
    right = BialgebroidSide("right", base, base, s, s, gamma, pi)
    return HopfAlgebroid(left, right, Matrix.identity(field, 1),
                         base_anti_iso=Matrix.identity(field, 1), name="trivial")


def test_trivial_hopf_verifies():
    rep = verify(trivial_hopf())
    assert rep.passed, rep.failures()


def test_qc2_hopf_verifies():
    h, i = hopf_qc2()
    rep = verify(h)
    assert rep.passed, rep.failures()


def test_fnc2_hopf_verifies():
    h, i = hopf_fnc2()
    rep = verify(h)
    assert rep.passed, rep.failures()


def test_qc4_hopf_verifies():
    h, i = hopf_qc4()
    assert verify(h).passed


def test_corrupt_antipode_fails_axiom_iv():
    # the group inverse on order two is the identity, so the honest
    # negative control swaps the two basis vectors instead
    h, _ = hopf_qc2()
    swap = Matrix(QQ, [[QQ.zero, QQ.one], [QQ.one, QQ.zero]], 2)
    bad = HopfAlgebroid(h.left, h.right, swap, base_anti_iso=h.base_anti_iso)
    rep = verify(bad)
    entries = {e.name: e for e in rep.entries}
    assert not entries["hopf.antipode-left-contraction"].passed
    assert entries["hopf.antipode-left-contraction"].residual_rank > 0


def test_identity_antipode_fails_on_qc4():
    h, _ = hopf_qc4()
    bad = HopfAlgebroid(h.left, h.right, Matrix.identity(QQ, 4),
                        base_anti_iso=h.base_anti_iso)
    rep = verify(bad)
    entries = {e.name: e for e in rep.entries}
    assert not entries["hopf.antipode-left-contraction"].passed


def test_find_integrals_trivial():
    left, right = find_integrals(trivial_hopf())
    assert left.dim == 1 and right.dim == 1


def test_find_integrals_qc2():
    h, i = hopf_qc2()
    left, right = find_integrals(h)
    assert left.dim == 1 and right.dim == 1
    assert left.contains(i) and right.contains(i)
    assert is_left_integral(h, i) and is_right_integral(h, i)


def test_lemma_equivalences_qc2():
    h, i = hopf_qc2()
    assert lemma_equivalences(h, i, "left").passed
    assert lemma_equivalences(h, i, "right").passed


def test_nondegeneracy_qc2():
    h, i = hopf_qc2()
    w = nondegeneracy(h, i, "left")
    assert w is not None
    assert w.maps["A*"].rank() == 2
    w2 = nondegeneracy(h, i, "right")
    assert w2 is not None


def test_nondegeneracy_trivial():
    h = trivial_hopf()
    w = nondegeneracy(h, [QQ.one], "left")
    assert w is not None
    # lambda* is the counit here
    assert w.duals["A*"].evaluate(w.dual_element, [QQ.one]) == [QQ.one]


def test_prime_field_integral():
    # over GF(2) the counit kills 1 + g (no Maschke splitting), yet the
    # pairing maps stay bijective, so the integral is still non-degenerate
    f2 = PrimeField(2)
    h = group_hopf_algebroid(f2, cyclic_elements(2), cyclic_compose(2), 0, "f2c2")
    assert verify(h).passed
    i = [f2.one, f2.one]
    assert is_left_integral(h, i)
    assert h.left.pi.apply(i) == [f2.zero]
    dual = DualSpace(h, "A*")
    assert integral_pairing_matrix(h, dual, i).rank() == 2
    assert nondegeneracy(h, i, "left") is not None


def test_zero_integral_is_degenerate():
    h, _ = hopf_qc2()
    zero = [QQ.zero, QQ.zero]
    assert is_left_integral(h, zero)
    assert nondegeneracy(h, zero, "left") is None


def test_dual_ring_of_group_algebra_is_functions():
    h, i = hopf_qc2()
    duals = dual_spaces(h)
    astar = duals["A*"]
    assert astar.dim == 2
    ring = astar.ring_data()
    # pointwise product in the delta basis: commutative, idempotent basis
    for p in range(2):
        for q in range(2):
            assert ring.table[p][q] == ring.table[q][p]
    assert ring.is_associative() and ring.is_unital()
    # the unit is the counit functional
    u = astar.functional(ring.unit)
    assert u.apply([QQ.one, QQ.zero]) == [QQ.one]
    assert u.apply([QQ.zero, QQ.one]) == [QQ.one]


def test_dualize_qc2_gives_functions():
    h, i = hopf_qc2()
    res = dualize(h, i)
    rep = verify(res.hopf)
    assert rep.passed, rep.failures()
    hf, _ = hopf_fnc2()
    # same product table up to the delta-basis identification
    assert res.hopf.total.dim == 2
    astar = res.dual_space
    for p in range(2):
        for q in range(2):
            fn = astar._product_functional(astar.basis[p], astar.basis[q])
            want = Matrix.zeros(QQ, 1, 2)
            if p == q:
                want = astar.basis[p]
            assert fn == want


def test_second_dual_strictly_isomorphic():
    h, i = hopf_qc2()
    first = dualize(h, i)
    second = dualize(first.hopf, first.lambda_star)
    assert verify(second.hopf).passed
    Phi, phi = second_dual_strict_iso(h, first, second)
    rep = check_morphism(h, second.hopf, Phi, phi, mode="hopf", strict=True)
    assert rep.passed, rep.failures()


def test_second_dual_fnc2():
    h, i = hopf_fnc2()
    first = dualize(h, i)
    assert verify(first.hopf).passed
    second = dualize(first.hopf, first.lambda_star)
    Phi, phi = second_dual_strict_iso(h, first, second)
    assert check_morphism(h, second.hopf, Phi, phi, mode="hopf", strict=True).passed


def test_identity_morphism():
    h, _ = hopf_qc2()
    rep = check_morphism(h, h, Matrix.identity(QQ, 2), Matrix.identity(QQ, 1),
                         mode="hopf", strict=True)
    assert rep.passed


def test_antipode_is_op_cop_morphism():
    # (S, pi_R o s_L) is a left bialgebroid isomorphism onto the
    # op-cop of the right structure
    for mk in (hopf_qc2, hopf_qc4, hopf_fnc2):
        h, _ = mk()
        target = h.right.op().cop()
        phi = h.right.pi @ h.left.s
        rep = check_morphism(h.left, target, h.antipode, phi, mode="bialgebroid")
        assert rep.passed, (h.name, rep.failures())


def test_morphism_detects_failure():
    h, _ = hopf_qc2()
    bad = Matrix(QQ, [[QQ.one, QQ.one], [QQ.zero, QQ.one]], 2)
    rep = check_morphism(h, h, bad, Matrix.identity(QQ, 1), mode="hopf")
    assert not rep.passed
