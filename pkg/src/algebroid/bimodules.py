"""Monoids and bimodules internal to a monoidal category.

The horizontal composition of bimodules is the coequalizer tensor
product; its induced actions and the associativity/unit coherence maps
are produced through the universal property and asserted to descend.
Everything here is written against the monoidal-category surface, so the
same code serves plain algebras over a field and module categories of
bialgebroids.
"""

from .linalg import Matrix, Echelon
from .monoidal import CoherenceError


class Monoid:
    """A monoid object: multiplication and unit at the realized tensor level."""

    def __init__(self, cat, obj, mul, unit, name=""):
        self.cat = cat
        self.obj = obj
        self.mul = mul      # T(obj,obj).dim -> dim
        self.unit = unit    # dim x dim(U)
        self.name = name

    @property
    def dim(self):
        return self.cat.dim(self.obj)

    @staticmethod
    def from_mul_table(cat, mul_free, unit_vec, name=""):
        """VEC construction from a free-level multiplication table."""
        dim = mul_free.nrows
        obj = cat.obj(dim)
        return Monoid(cat, obj, mul_free, Matrix.column(cat.field, unit_vec), name)

    def structure_constants(self):
        """c[i][j][k]: e_i e_j = sum_k c[i][j][k] e_k (free level)."""
        th = self.cat.tensor(self.obj, self.obj)
        free = self.mul @ th.proj
        d = self.dim
        return [[[free.rows[k][i * d + j] for k in range(d)] for j in range(d)]
                for i in range(d)]

    def unit_vector(self):
        u = self.cat.unit()
        if self.cat.dim(u) != 1:
            raise CoherenceError("unit vector only defined over a one dimensional unit")
        return self.unit.col(0)

    def product(self, u, v):
        th = self.cat.tensor(self.obj, self.obj)
        free = self.mul @ th.proj
        return free.apply([a * b for a in u for b in v])

    def check(self):
        cat, Q = self.cat, self.obj
        th_qq = cat.tensor(Q, Q)
        th_uq = cat.tensor(cat.unit(), Q)
        th_qu = cat.tensor(Q, cat.unit())
        iq = cat.ident(self.dim)
        out = []
        lhs = self.mul @ cat.tmap(th_uq, th_qq, self.unit, iq)
        out.append(("unit-left", lhs == cat.lunit(Q)))
        lhs = self.mul @ cat.tmap(th_qu, th_qq, iq, self.unit)
        out.append(("unit-right", lhs == cat.runit(Q)))
        th_l = cat.tensor(th_qq.obj, Q)
        th_r = cat.tensor(Q, th_qq.obj)
        lhs = self.mul @ cat.tmap(th_l, th_qq, self.mul, iq)
        rhs = self.mul @ cat.tmap(th_r, th_qq, iq, self.mul) @ cat.alpha(Q, Q, Q)
        out.append(("associativity", lhs == rhs))
        return out

    def is_valid(self):
        return all(ok for _, ok in self.check())

    def __repr__(self):
        return "Monoid(%s, dim %d)" % (self.name or "?", self.dim)


class InternalBimodule:
    """A left R- right T-bimodule object with actions at the tensor level."""

    def __init__(self, cat, left_monoid, right_monoid, obj, lact, ract, name=""):
        self.cat = cat
        self.left_monoid = left_monoid
        self.right_monoid = right_monoid
        self.obj = obj
        self.lact = lact    # T(R.obj, obj).dim -> dim
        self.ract = ract    # T(obj, T.obj).dim -> dim
        self.name = name

    @property
    def dim(self):
        return self.cat.dim(self.obj)

    @staticmethod
    def from_action_mats(cat, left_monoid, right_monoid, obj, left_mats, right_mats, name=""):
        """Build from per-basis action matrices (free level)."""
        f = cat.field
        dim = cat.dim(obj)
        dl, dr = left_monoid.dim, right_monoid.dim
        lcols = []
        for r in range(dl):
            for m in range(dim):
                lcols.append(left_mats[r].col(m))
        lfree = Matrix.from_cols(f, lcols, dim)
        rcols = []
        for m in range(dim):
            for t in range(dr):
                rcols.append(right_mats[t].col(m))
        rfree = Matrix.from_cols(f, rcols, dim)
        th_l = cat.tensor(left_monoid.obj, obj)
        th_r = cat.tensor(obj, right_monoid.obj)
        return InternalBimodule(cat, left_monoid, right_monoid, obj,
                                lfree @ th_l.incl, rfree @ th_r.incl, name)

    def lact_free(self):
        th = self.cat.tensor(self.left_monoid.obj, self.obj)
        return self.lact @ th.proj

    def ract_free(self):
        th = self.cat.tensor(self.obj, self.right_monoid.obj)
        return self.ract @ th.proj

    def left_action_mats(self):
        free = self.lact_free()
        d, dl = self.dim, self.left_monoid.dim
        return [Matrix.from_cols(self.cat.field,
                                 [free.col(r * d + m) for m in range(d)], d)
                for r in range(dl)]

    def right_action_mats(self):
        free = self.ract_free()
        d, dr = self.dim, self.right_monoid.dim
        return [Matrix.from_cols(self.cat.field,
                                 [free.col(m * dr + t) for m in range(d)], d)
                for t in range(dr)]

    def check(self):
        cat, M = self.cat, self.obj
        R, T = self.left_monoid, self.right_monoid
        im = cat.ident(self.dim)
        out = []
        th_rm = cat.tensor(R.obj, M)
        th_um = cat.tensor(cat.unit(), M)
        out.append(("left-unital",
                    self.lact @ cat.tmap(th_um, th_rm, R.unit, im) == cat.lunit(M)))
        th_rr = cat.tensor(R.obj, R.obj)
        th_rrm = cat.tensor(th_rr.obj, M)
        th_r_rm = cat.tensor(R.obj, th_rm.obj)
        lhs = self.lact @ cat.tmap(th_rrm, th_rm, R.mul, im)
        rhs = self.lact @ cat.tmap(th_r_rm, th_rm, cat.ident(R.dim), self.lact) \
            @ cat.alpha(R.obj, R.obj, M)
        out.append(("left-associative", lhs == rhs))
        th_mt = cat.tensor(M, T.obj)
        th_mu = cat.tensor(M, cat.unit())
        out.append(("right-unital",
                    self.ract @ cat.tmap(th_mu, th_mt, im, T.unit) == cat.runit(M)))
        th_tt = cat.tensor(T.obj, T.obj)
        th_mtt = cat.tensor(th_mt.obj, T.obj)
        th_m_tt = cat.tensor(M, th_tt.obj)
        lhs = self.ract @ cat.tmap(th_mtt, th_mt, self.ract, cat.ident(T.dim))
        rhs = self.ract @ cat.tmap(th_m_tt, th_mt, im, T.mul) @ cat.alpha(M, T.obj, T.obj)
        out.append(("right-associative", lhs == rhs))
        th_rmt = cat.tensor(th_rm.obj, T.obj)
        th_r_mt = cat.tensor(R.obj, th_mt.obj)
        lhs = self.ract @ cat.tmap(th_rmt, th_mt, self.lact, cat.ident(T.dim))
        rhs = self.lact @ cat.tmap(th_r_mt, th_rm, cat.ident(R.dim), self.ract) \
            @ cat.alpha(R.obj, M, T.obj)
        out.append(("actions-commute", lhs == rhs))
        return out

    def is_valid(self):
        return all(ok for _, ok in self.check())

    def __repr__(self):
        return "Bimodule(%s: %s-%s, dim %d)" % (
            self.name or "?", self.left_monoid.name, self.right_monoid.name, self.dim)


def regular_bimodule(monoid):
    """The monoid as a bimodule over itself; both actions are the product."""
    return InternalBimodule(monoid.cat, monoid, monoid, monoid.obj,
                            monoid.mul, monoid.mul, name=monoid.name)


class BimoduleMap:
    def __init__(self, src, tgt, mat):
        if mat.ncols != src.dim or mat.nrows != tgt.dim:
            raise CoherenceError("bimodule map has wrong shape")
        self.src = src
        self.tgt = tgt
        self.mat = mat

    def is_intertwiner(self):
        M, N = self.src, self.tgt
        if not M.cat.is_morphism(M.obj, N.obj, self.mat):
            return False
        for a, b in zip(M.left_action_mats(), N.left_action_mats()):
            if self.mat @ a != b @ self.mat:
                return False
        for a, b in zip(M.right_action_mats(), N.right_action_mats()):
            if self.mat @ a != b @ self.mat:
                return False
        return True


def _kernel_from_rows(field, rows, n_unknowns):
    """Kernel of a linear system given as sparse row dicts."""
    ech = Echelon(field)
    for r in rows:
        ech.insert(r)
    pivots = ech.pivots
    basis = []
    for j in range(n_unknowns):
        if j in pivots:
            continue
        v = [field.zero] * n_unknowns
        v[j] = field.one
        for p, ri in pivots.items():
            x = ech.rows[ri].get(j)
            if x:
                v[p] = -x
        basis.append(v)
    return basis


def hom_basis(M, N):
    """Basis of the space of bimodule maps M -> N, as matrices.

    Solves the intertwining conditions against both monoid actions and
    any extra morphism constraints of the ambient category, with
    deterministic ordering.
    """
    if M.left_monoid is not N.left_monoid or M.right_monoid is not N.right_monoid:
        raise CoherenceError("hom requires identical boundary monoids")
    cat = M.cat
    f = cat.field
    dm, dn = M.dim, N.dim
    rows = []

    def add_condition(A, B):
        # F @ A == B @ F, unknowns F[r][c] at index r*dm + c
        for r in range(dn):
            brow = B.rows[r]
            for c in range(dm):
                eq = {}
                for j in range(dm):
                    x = A.rows[j][c]
                    if x:
                        eq[r * dm + j] = eq.get(r * dm + j, f.zero) + x
                for i in range(dn):
                    y = brow[i]
                    if y:
                        k = i * dm + c
                        nv = eq.get(k, f.zero) - y
                        if nv:
                            eq[k] = nv
                        else:
                            eq.pop(k, None)
                if eq:
                    rows.append(eq)

    for A, B in zip(cat.action_mats(M.obj), cat.action_mats(N.obj)):
        add_condition(A, B)
    for A, B in zip(M.left_action_mats(), N.left_action_mats()):
        add_condition(A, B)
    for A, B in zip(M.right_action_mats(), N.right_action_mats()):
        add_condition(A, B)
    sols = _kernel_from_rows(f, rows, dn * dm)
    out = []
    for v in sols:
        mat = Matrix(f, [v[r * dm:(r + 1) * dm] for r in range(dn)], dm)
        out.append(BimoduleMap(M, N, mat))
    return out


class TensorOverResult:
    """M (x)_S N: the coequalizer quotient with its projection and section."""

    __slots__ = ("bim", "tau", "sigma", "th", "coq", "left", "right")

    def __init__(self, bim, tau, sigma, th, coq, left, right):
        self.bim = bim
        self.tau = tau      # T(M.obj,N.obj).dim -> bim.dim
        self.sigma = sigma
        self.th = th        # the monoidal tensor handle underneath
        self.coq = coq
        self.left = left
        self.right = right

    @property
    def proj_free(self):
        """Projection from the free Kronecker space of the child realizations."""
        return self.tau @ self.th.proj

    @property
    def incl_free(self):
        return self.th.incl @ self.sigma


def tensor_over(M, N, check_preservation=False):
    """Coequalizer tensor product of a right-S module M with a left-S module N."""
    if M.right_monoid is not N.left_monoid:
        raise CoherenceError("tensor_over requires matching middle monoid")
    cat = M.cat
    S = M.right_monoid
    R, T = M.left_monoid, N.right_monoid
    im, in_, ir, it = (cat.ident(M.dim), cat.ident(N.dim),
                       cat.ident(R.dim), cat.ident(T.dim))
    th_sn = cat.tensor(S.obj, N.obj)
    th_d = cat.tensor(M.obj, th_sn.obj)
    th_ms = cat.tensor(M.obj, S.obj)
    th_ms_n = cat.tensor(th_ms.obj, N.obj)
    th_c = cat.tensor(M.obj, N.obj)
    phi1 = cat.tmap(th_ms_n, th_c, M.ract, in_) @ cat.alpha_inv(M.obj, S.obj, N.obj)
    phi2 = cat.tmap(th_d, th_c, im, N.lact)
    coq = cat.coequalizer(th_d.obj, th_c.obj, phi1, phi2)
    # induced left action through the universal property
    th_r_p = cat.tensor(R.obj, coq.obj)
    th_r_c = cat.tensor(R.obj, th_c.obj)
    th_rm = cat.tensor(R.obj, M.obj)
    th_rm_n = cat.tensor(th_rm.obj, N.obj)
    lact_c = cat.tmap(th_rm_n, th_c, M.lact, in_) @ cat.alpha_inv(R.obj, M.obj, N.obj)
    lact = coq.proj @ lact_c @ cat.tmap(th_r_p, th_r_c, ir, coq.incl)
    if lact @ cat.tmap(th_r_c, th_r_p, ir, coq.proj) != coq.proj @ lact_c:
        raise CoherenceError("left action does not descend to the tensor over %s" % S.name)
    th_p_t = cat.tensor(coq.obj, T.obj)
    th_c_t = cat.tensor(th_c.obj, T.obj)
    th_nt = cat.tensor(N.obj, T.obj)
    th_m_nt = cat.tensor(M.obj, th_nt.obj)
    ract_c = cat.tmap(th_m_nt, th_c, im, N.ract) @ cat.alpha(M.obj, N.obj, T.obj)
    ract = coq.proj @ ract_c @ cat.tmap(th_p_t, th_c_t, coq.incl, it)
    if ract @ cat.tmap(th_c_t, th_p_t, coq.proj, it) != coq.proj @ ract_c:
        raise CoherenceError("right action does not descend to the tensor over %s" % S.name)
    if check_preservation:
        from .monoidal import check_coequalizer_preserved
        if not check_coequalizer_preserved(cat, coq, R.obj, "left"):
            raise CoherenceError("tensoring by the left monoid breaks the coequalizer")
        if not check_coequalizer_preserved(cat, coq, T.obj, "right"):
            raise CoherenceError("tensoring by the right monoid breaks the coequalizer")
    bim = InternalBimodule(cat, R, T, coq.obj, lact, ract,
                           name="(%s.%s)" % (M.name, N.name))
    return TensorOverResult(bim, coq.proj, coq.incl, th_c, coq, M, N)


def induced_map(tens_src, tens_tgt, p, q, check=True):
    """The map p (x)_S q between coequalizer tensor products."""
    cat = tens_src.bim.cat
    down = tens_tgt.tau @ cat.tmap(tens_src.th, tens_tgt.th, p.mat, q.mat)
    if check:
        f = cat.field
        for rel in tens_src.coq.quot.ech.rows:
            v = [f.zero] * tens_src.th.dim
            for k, val in rel.items():
                v[k] = val
            if any(x for x in down.apply(v)):
                raise CoherenceError("induced map does not kill the balancing relations")
    mat = down @ tens_src.sigma
    return BimoduleMap(tens_src.bim, tens_tgt.bim, mat)


def und_rho(tens_ms):
    """M (x)_S S -> M induced by the right action; returns (map, inverse)."""
    M = tens_ms.left
    S = tens_ms.right.left_monoid
    cat = M.cat
    rho = M.ract @ tens_ms.sigma
    if rho @ tens_ms.tau != M.ract:
        raise CoherenceError("right unit coherence does not descend")
    th_mu = cat.tensor(M.obj, cat.unit())
    inv = tens_ms.tau @ cat.tmap(th_mu, tens_ms.th, cat.ident(M.dim), S.unit) \
        @ cat.runit_inv(M.obj)
    if rho @ inv != cat.ident(M.dim) or inv @ rho != cat.ident(tens_ms.bim.dim):
        raise CoherenceError("right unit coherence is not invertible")
    return rho, inv


def und_lambda(tens_sn):
    """S (x)_S N -> N induced by the left action; returns (map, inverse)."""
    N = tens_sn.right
    S = tens_sn.left.right_monoid
    cat = N.cat
    lam = N.lact @ tens_sn.sigma
    if lam @ tens_sn.tau != N.lact:
        raise CoherenceError("left unit coherence does not descend")
    th_un = cat.tensor(cat.unit(), N.obj)
    inv = tens_sn.tau @ cat.tmap(th_un, tens_sn.th, S.unit, cat.ident(N.dim)) \
        @ cat.lunit_inv(N.obj)
    if lam @ inv != cat.ident(N.dim) or inv @ lam != cat.ident(tens_sn.bim.dim):
        raise CoherenceError("left unit coherence is not invertible")
    return lam, inv


def und_alpha(mn, mn_q, nq, m_nq):
    """((M N) Q) -> (M (N Q)) between the iterated coequalizer products."""
    M, N = mn.left, mn.right
    Q = nq.right
    cat = M.cat
    iq = cat.ident(Q.dim)
    im = cat.ident(M.dim)
    th_cmn_q = cat.tensor(mn.th.obj, Q.obj)
    kappa_l = mn_q.tau @ cat.tmap(th_cmn_q, mn_q.th, mn.tau, iq)
    sect_l = cat.tmap(mn_q.th, th_cmn_q, mn.sigma, iq) @ mn_q.sigma
    th_m_cnq = cat.tensor(M.obj, nq.th.obj)
    kappa_r = m_nq.tau @ cat.tmap(th_m_cnq, m_nq.th, im, nq.tau)
    sect_r = cat.tmap(m_nq.th, th_m_cnq, im, nq.sigma) @ m_nq.sigma
    a_cat = cat.alpha(M.obj, N.obj, Q.obj)
    a_cat_inv = cat.alpha_inv(M.obj, N.obj, Q.obj)
    fwd = kappa_r @ a_cat @ sect_l
    if fwd @ kappa_l != kappa_r @ a_cat:
        raise CoherenceError("associativity coherence does not descend")
    bwd = kappa_l @ a_cat_inv @ sect_r
    if bwd @ kappa_r != kappa_l @ a_cat_inv:
        raise CoherenceError("associativity coherence inverse does not descend")
    if fwd @ bwd != cat.ident(m_nq.bim.dim) or bwd @ fwd != cat.ident(mn_q.bim.dim):
        raise CoherenceError("associativity coherence is not invertible")
    return fwd, bwd
