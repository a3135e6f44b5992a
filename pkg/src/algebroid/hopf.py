"""Hopf algebroids over noncommutative bases: data type, axiom verifier,
dual rings, integrals, non-degeneracy witnesses and the dual Hopf
algebroid of a two-sided non-degenerate integral.

Coproducts are stored as lifts into the plain tensor square; every
identity that lives in a balanced tensor quotient is checked after
reducing against the exact relation span of that quotient.  The two
base rings are kept as separate carriers related by a stored
anti-isomorphism.
"""

from .linalg import Matrix, Echelon, Subspace, kernel, vec_of_matrix
from .report import Report


class RingData:
    """A finite dimensional unital ring by its multiplication table."""

    def __init__(self, field, table, unit, name=""):
        self.field = field
        self.table = table          # table[i][j] = coords of e_i * e_j
        self.unit = list(unit)
        self.name = name
        self.dim = len(unit)

    def product(self, u, v):
        out = [self.field.zero] * self.dim
        for i, a in enumerate(u):
            if a:
                row = self.table[i]
                for j, b in enumerate(v):
                    if b:
                        ab = a * b
                        for k, c in enumerate(row[j]):
                            if c:
                                out[k] = out[k] + ab * c
        return out

    def left_mult(self, v):
        cols = [self.product(v, _unit(self.field, self.dim, j)) for j in range(self.dim)]
        return Matrix.from_cols(self.field, cols, self.dim)

    def right_mult(self, v):
        cols = [self.product(_unit(self.field, self.dim, j), v) for j in range(self.dim)]
        return Matrix.from_cols(self.field, cols, self.dim)

    def opposite(self):
        tab = [[self.table[j][i] for j in range(self.dim)] for i in range(self.dim)]
        return RingData(self.field, tab, self.unit, self.name + "^op")

    def is_associative(self):
        for i in range(self.dim):
            ei = _unit(self.field, self.dim, i)
            for j in range(self.dim):
                ej = _unit(self.field, self.dim, j)
                pij = self.table[i][j]
                for k in range(self.dim):
                    ek = _unit(self.field, self.dim, k)
                    if self.product(pij, ek) != self.product(ei, self.product(ej, ek)):
                        return False
        return True

    def is_unital(self):
        for i in range(self.dim):
            ei = _unit(self.field, self.dim, i)
            if self.product(self.unit, ei) != ei or self.product(ei, self.unit) != ei:
                return False
        return True

    def __repr__(self):
        return "RingData(%s, dim %d)" % (self.name, self.dim)


def _unit(field, n, k):
    v = [field.zero] * n
    v[k] = field.one
    return v


def ring_from_mul_matrix(field, mul_free, unit, name=""):
    """RingData from a free-level multiplication matrix dim x dim^2."""
    dim = mul_free.nrows
    table = [[mul_free.col(i * dim + j) for j in range(dim)] for i in range(dim)]
    return RingData(field, table, unit, name)


class BialgebroidSide:
    """One bialgebroid structure (left or right) on a total ring."""

    def __init__(self, kind, total, base, s, t, gamma, pi):
        if kind not in ("left", "right"):
            raise ValueError("kind must be left or right")
        self.kind = kind
        self.total = total
        self.base = base
        self.s = s          # Matrix total.dim x base.dim
        self.t = t
        self.gamma = gamma  # lift Matrix total.dim^2 x total.dim (row-major legs)
        self.pi = pi        # Matrix base.dim x total.dim

    def gamma_terms(self, vec):
        """The coproduct lift of an element as a list of (left, right) legs."""
        d = self.total.dim
        g = self.gamma.apply(vec)
        f = self.total.field
        terms = []
        for idx, c in enumerate(g):
            if c:
                i, j = divmod(idx, d)
                u = _unit(f, d, i)
                v = [c * x for x in _unit(f, d, j)]
                terms.append((u, v))
        return terms

    def cop(self):
        """Reverse the coproduct legs and swap source with target."""
        d = self.total.dim
        f = self.total.field
        flip = Matrix.zeros(f, d * d, d * d)
        for i in range(d):
            for j in range(d):
                flip.rows[j * d + i][i * d + j] = f.one
        return BialgebroidSide(self.kind, self.total, self.base.opposite(),
                               self.t, self.s, flip @ self.gamma, self.pi)

    def op(self):
        """Opposite total ring; a left structure becomes a right one."""
        other = "right" if self.kind == "left" else "left"
        return BialgebroidSide(other, self.total.opposite(), self.base,
                               self.t, self.s, self.gamma, self.pi)

    def pair_echelon(self):
        """Relation span of the balanced tensor square of the total ring.

        Left structure: t(l) x (x) y ~ x (x) s(l) y.
        Right structure: x s(r) (x) y ~ x (x) y t(r).
        """
        ech = getattr(self, "_pair_ech", None)
        if ech is not None:
            return ech
        A = self.total
        f = A.field
        d = A.dim
        ech = Echelon(f)
        for b in range(self.base.dim):
            bb = _unit(f, self.base.dim, b)
            if self.kind == "left":
                first = A.left_mult(self.t.apply(bb))
                second = A.left_mult(self.s.apply(bb))
            else:
                first = A.right_mult(self.s.apply(bb))
                second = A.right_mult(self.t.apply(bb))
            for p in range(d):
                fx = first.col(p)
                for q2 in range(d):
                    col = {}
                    for i, v in enumerate(fx):
                        if v:
                            col[i * d + q2] = v
                    sy = second.col(q2)
                    for j, v in enumerate(sy):
                        if v:
                            k = p * d + j
                            nv = col.get(k, f.zero) - v
                            if nv:
                                col[k] = nv
                            else:
                                col.pop(k, None)
                    if col:
                        ech.insert(col)
        self._pair_ech = ech
        return ech


class HopfAlgebroid:
    def __init__(self, left, right, antipode, antipode_inv=None, base_anti_iso=None,
                 name=""):
        if left.total.dim != right.total.dim:
            raise ValueError("left and right structures must share the total ring")
        self.left = left
        self.right = right
        self.total = left.total
        self.field = left.total.field
        self.antipode = antipode
        self.antipode_inv = antipode_inv if antipode_inv is not None else antipode.inverse()
        self.base_anti_iso = base_anti_iso   # Matrix: left base -> right base
        self.name = name
        self._cache = {}

    # -- module actions of the bases on the total ring ----------------

    def s_l(self, lvec):
        return self.left.s.apply(lvec)

    def t_l(self, lvec):
        return self.left.t.apply(lvec)

    def s_r(self, rvec):
        return self.right.s.apply(rvec)

    def t_r(self, rvec):
        return self.right.t.apply(rvec)

    # -- balanced tensor quotients ------------------------------------

    def pair_quotient_left(self):
        return self.left.pair_echelon()

    def pair_quotient_right(self):
        return self.right.pair_echelon()

    def _triple_quotient(self, key, first_ech, second_ech):
        """Relations of A (x) A (x) A built from two pair echelons placed
        on legs (1,2) and (2,3)."""
        q = self._cache.get(key)
        if q is not None:
            return q
        f = self.field
        d = self.total.dim
        ech = Echelon(f)
        for row in first_ech.rows:
            for r in range(d):
                ech.insert({k * d + r: v for k, v in row.items()})
        for p in range(d):
            base = p * d * d
            for row in second_ech.rows:
                ech.insert({base + k: v for k, v in row.items()})
        self._cache[key] = ech
        return ech

    def triple_LL(self):
        e = self.pair_quotient_left()
        return self._triple_quotient("LL", e, e)

    def triple_RR(self):
        e = self.pair_quotient_right()
        return self._triple_quotient("RR", e, e)

    def triple_LR(self):
        return self._triple_quotient("LR", self.pair_quotient_left(),
                                     self.pair_quotient_right())

    def triple_RL(self):
        return self._triple_quotient("RL", self.pair_quotient_right(),
                                     self.pair_quotient_left())

    def pair_zero(self, side, vec):
        ech = self.pair_quotient_left() if side == "L" else self.pair_quotient_right()
        res, _ = ech.reduce({i: x for i, x in enumerate(vec) if x})
        return not res

    def pair_residual(self, side, vec):
        ech = self.pair_quotient_left() if side == "L" else self.pair_quotient_right()
        res, _ = ech.reduce({i: x for i, x in enumerate(vec) if x})
        return res


def _tensor2(f, d, u, v):
    out = [f.zero] * (d * d)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                if b:
                    out[i * d + j] = a * b
    return out


def _t2add(acc, f, d, u, v, sign=1):
    """Sparse accumulation of +-(u (x) v) into a dict."""
    for i, a in enumerate(u):
        if a:
            base = i * d
            if sign < 0:
                a = -a
            for j, b in enumerate(v):
                if b:
                    k = base + j
                    nv = acc.get(k, f.zero) + a * b
                    if nv:
                        acc[k] = nv
                    else:
                        acc.pop(k, None)


def _t3add(acc, f, d, u, v, w, sign=1):
    for i, a in enumerate(u):
        if a:
            if sign < 0:
                a = -a
            for j, b in enumerate(v):
                if b:
                    ab = a * b
                    base = (i * d + j) * d
                    for k, c in enumerate(w):
                        if c:
                            kk = base + k
                            nv = acc.get(kk, f.zero) + ab * c
                            if nv:
                                acc[kk] = nv
                            else:
                                acc.pop(kk, None)


def _list_sub_dict(f, lst, acc):
    """lst - acc as a sparse dict, lst a list and acc a dict."""
    out = {}
    for i, x in enumerate(lst):
        if x:
            out[i] = x
    for k, v in acc.items():
        nv = out.get(k, f.zero) - v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def verify(h, seed=0, n_random=2):
    """Full axiom battery; every entry is an exact check."""
    rep = Report("hopf-algebroid")
    _verify_side(rep, h, h.left)
    _verify_side(rep, h, h.right)
    _verify_hopf_axioms(rep, h)
    return rep


def _sample_vectors(h, seed, n_random):
    import random
    rng = random.Random(seed)
    f = h.field
    d = h.total.dim
    vs = [_unit(f, d, k) for k in range(d)]
    for _ in range(n_random):
        vs.append([f.of(rng.randint(-3, 3)) for _ in range(d)])
    return vs


def _verify_side(rep, h, side):
    f = h.field
    A = side.total
    base = side.base
    d = A.dim
    tag = side.kind
    rep.add("%s.total-ring" % tag, "bialgebroid.%s.total-ring" % tag,
            A.is_associative() and A.is_unital())
    rep.add("%s.base-ring" % tag, "bialgebroid.%s.base-ring" % tag,
            base.is_associative() and base.is_unital())
    sm, tm = side.s, side.t
    ok_s = sm.apply(base.unit) == A.unit
    ok_t = tm.apply(base.unit) == A.unit
    for i in range(base.dim):
        ei = _unit(f, base.dim, i)
        for j in range(base.dim):
            ej = _unit(f, base.dim, j)
            prod = base.product(ei, ej)
            if A.product(sm.apply(ei), sm.apply(ej)) != sm.apply(prod):
                ok_s = False
            if A.product(tm.apply(ej), tm.apply(ei)) != tm.apply(prod):
                ok_t = False
    rep.add("%s.source-map" % tag, "bialgebroid.%s.source-ring-map" % tag, ok_s)
    rep.add("%s.target-map" % tag, "bialgebroid.%s.target-antiring-map" % tag, ok_t)
    ok = True
    for i in range(base.dim):
        si = sm.apply(_unit(f, base.dim, i))
        for j in range(base.dim):
            tj = tm.apply(_unit(f, base.dim, j))
            if A.product(si, tj) != A.product(tj, si):
                ok = False
    rep.add("%s.images-commute" % tag, "bialgebroid.%s.source-target-commute" % tag, ok)

    quot = h.pair_quotient_left() if side.kind == "left" else h.pair_quotient_right()
    residuals = []

    def reduce2(vec):
        res, _ = quot.reduce({i: x for i, x in enumerate(vec) if x})
        return res

    # coproduct is a bimodule map
    ok = True
    for b1 in range(base.dim):
        e1 = _unit(f, base.dim, b1)
        for b2 in range(base.dim):
            e2 = _unit(f, base.dim, b2)
            for p in range(d):
                a = _unit(f, d, p)
                if side.kind == "left":
                    lal = A.product(sm.apply(e1), A.product(tm.apply(e2), a))
                else:
                    lal = A.product(A.product(a, sm.apply(e2)), tm.apply(e1))
                lhs = side.gamma.apply(lal)
                rhs = {}
                for u, v in side.gamma_terms(a):
                    if side.kind == "left":
                        uu = A.product(sm.apply(e1), u)
                        vv = A.product(tm.apply(e2), v)
                    else:
                        uu = A.product(u, tm.apply(e1))
                        vv = A.product(v, sm.apply(e2))
                    _t2add(rhs, f, d, uu, vv)
                res, _ = quot.reduce(_list_sub_dict(f, lhs, rhs))
                if res:
                    ok = False
                    residuals.append(res)
    rep.add("%s.coproduct-bimodule-map" % tag,
            "bialgebroid.%s.coproduct-bilinear" % tag, ok,
            _rank_of_residuals(f, residuals))

    res = reduce2([x - y for x, y in zip(side.gamma.apply(A.unit),
                                         _tensor2(f, d, A.unit, A.unit))])
    rep.add("%s.coproduct-unit" % tag, "bialgebroid.%s.coproduct-of-unit" % tag,
            not res, 0 if not res else 1)

    # crossing condition making multiplicativity meaningful
    residuals = []
    ok = True
    for p in range(d):
        a = _unit(f, d, p)
        terms = side.gamma_terms(a)
        for b in range(base.dim):
            eb = _unit(f, base.dim, b)
            acc = {}
            for u, v in terms:
                if side.kind == "left":
                    _t2add(acc, f, d, A.product(u, tm.apply(eb)), v)
                    _t2add(acc, f, d, u, A.product(v, sm.apply(eb)), -1)
                else:
                    _t2add(acc, f, d, A.product(sm.apply(eb), u), v)
                    _t2add(acc, f, d, u, A.product(tm.apply(eb), v), -1)
            res, _ = quot.reduce(acc)
            if res:
                ok = False
                residuals.append(res)
    crossing_ok = ok
    rep.add("%s.takeuchi-crossing" % tag, "bialgebroid.%s.takeuchi-crossing" % tag,
            ok, _rank_of_residuals(f, residuals))

    # multiplicativity of the coproduct, in the quotient
    residuals = []
    ok = True
    if crossing_ok:
        for p in range(d):
            a = _unit(f, d, p)
            ta = side.gamma_terms(a)
            for q in range(d):
                b = _unit(f, d, q)
                tb = side.gamma_terms(b)
                lhs = side.gamma.apply(A.product(a, b))
                acc = {}
                for u1, v1 in ta:
                    for u2, v2 in tb:
                        _t2add(acc, f, d, A.product(u1, u2), A.product(v1, v2))
                res, _ = quot.reduce(_list_sub_dict(f, lhs, acc))
                if res:
                    ok = False
                    residuals.append(res)
    else:
        ok = False
    rep.add("%s.coproduct-multiplicative" % tag,
            "bialgebroid.%s.coproduct-multiplicative" % tag, ok,
            _rank_of_residuals(f, residuals))

    rep.add("%s.counit-unit" % tag, "bialgebroid.%s.counit-of-unit" % tag,
            side.pi.apply(A.unit) == base.unit)

    ok = True
    for p in range(d):
        a = _unit(f, d, p)
        for q in range(d):
            b = _unit(f, d, q)
            ab = side.pi.apply(A.product(a, b))
            pb = side.pi.apply(b)
            pa = side.pi.apply(a)
            if side.kind == "left":
                one = side.pi.apply(A.product(a, sm.apply(pb)))
                two = side.pi.apply(A.product(a, tm.apply(pb)))
            else:
                one = side.pi.apply(A.product(sm.apply(pa), b))
                two = side.pi.apply(A.product(tm.apply(pa), b))
            if one != ab or two != ab:
                ok = False
    rep.add("%s.counit-composition" % tag, "bialgebroid.%s.counit-products" % tag, ok)

    ok = True
    for p in range(d):
        a = _unit(f, d, p)
        acc1 = [f.zero] * d
        acc2 = [f.zero] * d
        for u, v in side.gamma_terms(a):
            if side.kind == "left":
                acc1 = [x + y for x, y in zip(acc1, A.product(sm.apply(side.pi.apply(u)), v))]
                acc2 = [x + y for x, y in zip(acc2, A.product(tm.apply(side.pi.apply(v)), u))]
            else:
                acc1 = [x + y for x, y in zip(acc1, A.product(u, sm.apply(side.pi.apply(v))))]
                acc2 = [x + y for x, y in zip(acc2, A.product(v, tm.apply(side.pi.apply(u))))]
        if acc1 != a or acc2 != a:
            ok = False
    rep.add("%s.counit-coproduct" % tag, "bialgebroid.%s.counit-splits-coproduct" % tag, ok)

    # coassociativity in the iterated quotient
    triple = h.triple_LL() if side.kind == "left" else h.triple_RR()
    ok = True
    residuals = []
    for p in range(d):
        a = _unit(f, d, p)
        acc = {}
        for u, v in side.gamma_terms(a):
            for u1, v1 in side.gamma_terms(u):
                _t3add(acc, f, d, u1, v1, v)
            for u2, v2 in side.gamma_terms(v):
                _t3add(acc, f, d, u, u2, v2, -1)
        res, _ = triple.reduce(acc)
        if res:
            ok = False
            residuals.append(res)
    rep.add("%s.coassociativity" % tag, "bialgebroid.%s.coassociativity" % tag, ok,
            _rank_of_residuals(f, residuals))


def _rank_of_residuals(f, residuals):
    if not residuals:
        return 0
    ech = Echelon(f)
    for r in residuals:
        ech.insert(dict(r))
    return ech.rank


def _verify_hopf_axioms(rep, h):
    f = h.field
    A = h.total
    d = A.dim
    L, R = h.left.base, h.right.base
    S = h.antipode

    # axiom i: subring images coincide as subspaces
    sL = Subspace(f, d, _col_basis(f, [h.left.s.col(j) for j in range(L.dim)]))
    tR = Subspace(f, d, _col_basis(f, [h.right.t.col(j) for j in range(R.dim)]))
    tL = Subspace(f, d, _col_basis(f, [h.left.t.col(j) for j in range(L.dim)]))
    sR = Subspace(f, d, _col_basis(f, [h.right.s.col(j) for j in range(R.dim)]))
    rep.add("hopf.base-images-1", "hopf.axiom-i.source-left-equals-target-right",
            sL == tR)
    rep.add("hopf.base-images-2", "hopf.axiom-i.target-left-equals-source-right",
            tL == sR)

    # axiom ii: the two mixed coassociativity laws
    tripleLR = h.triple_LR()
    tripleRL = h.triple_RL()
    ok1, res1 = True, []
    ok2, res2 = True, []
    for p in range(d):
        a = _unit(f, d, p)
        acc = {}
        for u, v in h.right.gamma_terms(a):
            for u1, v1 in h.left.gamma_terms(u):
                _t3add(acc, f, d, u1, v1, v)
        for u, v in h.left.gamma_terms(a):
            for u2, v2 in h.right.gamma_terms(v):
                _t3add(acc, f, d, u, u2, v2, -1)
        res, _ = tripleLR.reduce(acc)
        if res:
            ok1 = False
            res1.append(res)
        acc = {}
        for u, v in h.left.gamma_terms(a):
            for u1, v1 in h.right.gamma_terms(u):
                _t3add(acc, f, d, u1, v1, v)
        for u, v in h.right.gamma_terms(a):
            for u2, v2 in h.left.gamma_terms(v):
                _t3add(acc, f, d, u, u2, v2, -1)
        res, _ = tripleRL.reduce(acc)
        if res:
            ok2 = False
            res2.append(res)
    rep.add("hopf.mixed-coassociativity-1", "hopf.axiom-ii.left-after-right", ok1,
            _rank_of_residuals(f, res1))
    rep.add("hopf.mixed-coassociativity-2", "hopf.axiom-ii.right-after-left", ok2,
            _rank_of_residuals(f, res2))

    # axiom iii: twisted linearity of the antipode
    ok = True
    for b1 in range(L.dim):
        l1 = h.t_l(_unit(f, L.dim, b1))
        s1 = h.s_l(_unit(f, L.dim, b1))
        for b2 in range(L.dim):
            l2 = h.t_l(_unit(f, L.dim, b2))
            s2 = h.s_l(_unit(f, L.dim, b2))
            for p in range(d):
                a = _unit(f, d, p)
                lhs = S.apply(A.product(l1, A.product(a, l2)))
                rhs = A.product(s2, A.product(S.apply(a), s1))
                if lhs != rhs:
                    ok = False
    rep.add("hopf.antipode-twist-left", "hopf.axiom-iii.left-base", ok)
    ok = True
    for b1 in range(R.dim):
        t1 = h.t_r(_unit(f, R.dim, b1))
        s1 = h.s_r(_unit(f, R.dim, b1))
        for b2 in range(R.dim):
            t2 = h.t_r(_unit(f, R.dim, b2))
            s2 = h.s_r(_unit(f, R.dim, b2))
            for p in range(d):
                a = _unit(f, d, p)
                lhs = S.apply(A.product(t2, A.product(a, t1)))
                rhs = A.product(s1, A.product(S.apply(a), s2))
                if lhs != rhs:
                    ok = False
    rep.add("hopf.antipode-twist-right", "hopf.axiom-iii.right-base", ok)

    # axiom iv: the antipode contracts the coproducts onto the counits
    ok1 = ok2 = True
    r1 = r2 = []
    res1, res2 = [], []
    for p in range(d):
        a = _unit(f, d, p)
        acc = [f.zero] * d
        for u, v in h.left.gamma_terms(a):
            acc = [x + y for x, y in zip(acc, A.product(S.apply(u), v))]
        want = h.s_r(h.right.pi.apply(a))
        diff = [x - y for x, y in zip(acc, want)]
        if any(diff):
            ok1 = False
            res1.append({i: x for i, x in enumerate(diff) if x})
        acc = [f.zero] * d
        for u, v in h.right.gamma_terms(a):
            acc = [x + y for x, y in zip(acc, A.product(u, S.apply(v)))]
        want = h.s_l(h.left.pi.apply(a))
        diff = [x - y for x, y in zip(acc, want)]
        if any(diff):
            ok2 = False
            res2.append({i: x for i, x in enumerate(diff) if x})
    rep.add("hopf.antipode-left-contraction", "hopf.axiom-iv.antipode-vs-right-counit",
            ok1, _rank_of_residuals(f, res1))
    rep.add("hopf.antipode-right-contraction", "hopf.axiom-iv.antipode-vs-left-counit",
            ok2, _rank_of_residuals(f, res2))

    rep.add("hopf.antipode-bijective", "hopf.antipode-bijective",
            (S @ h.antipode_inv) == Matrix.identity(f, d)
            and (h.antipode_inv @ S) == Matrix.identity(f, d))

    if h.base_anti_iso is not None:
        nu = h.base_anti_iso
        ok = nu.rank() == L.dim == R.dim
        if ok:
            for i in range(L.dim):
                ei = _unit(f, L.dim, i)
                for j in range(L.dim):
                    ej = _unit(f, L.dim, j)
                    lhs = nu.apply(L.product(ei, ej))
                    rhs = R.product(nu.apply(ej), nu.apply(ei))
                    if lhs != rhs:
                        ok = False
        rep.add("hopf.base-anti-isomorphism", "hopf.bases-anti-isomorphic", ok)


def _col_basis(f, cols):
    ech = Echelon(f)
    out = []
    for c in cols:
        if ech.insert({i: x for i, x in enumerate(c) if x}) is not None:
            out.append(c)
    return out


# ---------------------------------------------------------------------------
# dual spaces, actions and integrals


def _intertwiner_basis(f, conditions, nrows, ncols):
    """Solve P @ A == B @ P for all pairs (A, B); P is nrows x ncols."""
    rows = []
    for A, B in conditions:
        for r in range(nrows):
            brow = B.rows[r]
            for c in range(ncols):
                eq = {}
                for j in range(ncols):
                    x = A.rows[j][c]
                    if x:
                        eq[r * ncols + j] = eq.get(r * ncols + j, f.zero) + x
                for i in range(nrows):
                    y = brow[i]
                    if y:
                        k = i * ncols + c
                        nv = eq.get(k, f.zero) - y
                        if nv:
                            eq[k] = nv
                        else:
                            eq.pop(k, None)
                if eq:
                    rows.append(eq)
    ech = Echelon(f)
    for r in rows:
        ech.insert(r)
    basis = []
    pivots = ech.pivots
    n = nrows * ncols
    for j in range(n):
        if j in pivots:
            continue
        v = [f.zero] * n
        v[j] = f.one
        for p, ri in pivots.items():
            x = ech.rows[ri].get(j)
            if x:
                v[p] = -x
        basis.append(Matrix(f, [v[r * ncols:(r + 1) * ncols] for r in range(nrows)], ncols))
    return basis


class DualSpace:
    """One of the four base-module duals of the total ring, as functionals
    valued in the corresponding base, with transposed ring structure."""

    KINDS = ("A*", "*A", "A_*", "_*A")

    def __init__(self, h, kind):
        if kind not in self.KINDS:
            raise ValueError("unknown dual kind %r" % (kind,))
        self.h = h
        self.kind = kind
        f = h.field
        A = h.total
        side = h.right if kind in ("A*", "*A") else h.left
        self.side = side
        base = side.base
        self.base = base
        conds = []
        for k in range(base.dim):
            ek = _unit(f, base.dim, k)
            if kind == "A*":
                conds.append((A.right_mult(h.s_r(ek)), base.right_mult(ek)))
            elif kind == "*A":
                conds.append((A.right_mult(h.t_r(ek)), base.left_mult(ek)))
            elif kind == "A_*":
                conds.append((A.left_mult(h.t_l(ek)), base.right_mult(ek)))
            else:
                conds.append((A.left_mult(h.s_l(ek)), base.left_mult(ek)))
        self.basis = _intertwiner_basis(f, conds, base.dim, A.dim)
        self.dim = len(self.basis)
        self._coordizer = Echelon(f, track=True)
        for b in self.basis:
            self._coordizer.insert({i: x for i, x in enumerate(vec_of_matrix(b)) if x})
        self._table = None

    def coords(self, functional):
        res, combo = self._coordizer.reduce(
            {i: x for i, x in enumerate(vec_of_matrix(functional)) if x})
        if res:
            raise ValueError("functional lies outside the %s space" % self.kind)
        out = [self.h.field.zero] * self.dim
        for k, v in combo.items():
            out[k] = -v
        return out

    def functional(self, coords):
        f = self.h.field
        out = Matrix.zeros(f, self.base.dim, self.h.total.dim)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.scale(c)
        return out

    def evaluate(self, coords, avec):
        return self.functional(coords).apply(avec)

    def _fixed_arg_matrix(self, F):
        """Matrix of the total-ring map the fixed functional induces.

        For the right-base duals the second factor is fixed and the map
        is a |-> a2 t_R(F(a1)) resp. a1 s_R(F(a2)); for the left-base
        duals the first factor is fixed and the map is a |-> s_L(F(a1)) a2
        resp. t_L(F(a2)) a1.  Products of functionals are compositions
        with these matrices.
        """
        h = self.h
        f = h.field
        A = h.total
        d = A.dim
        if self.kind == "A*":
            base_vecs = [h.t_r(F.apply(_unit(f, d, i))) for i in range(d)]
            mults = [A.right_mult(w) for w in base_vecs]
            pick = lambda i, j: mults[i].col(j)
        elif self.kind == "*A":
            base_vecs = [h.s_r(F.apply(_unit(f, d, i))) for i in range(d)]
            mults = [A.right_mult(w) for w in base_vecs]
            pick = lambda i, j: mults[j].col(i)
        elif self.kind == "A_*":
            base_vecs = [h.s_l(F.apply(_unit(f, d, i))) for i in range(d)]
            mults = [A.left_mult(w) for w in base_vecs]
            pick = lambda i, j: mults[i].col(j)
        else:
            base_vecs = [h.t_l(F.apply(_unit(f, d, i))) for i in range(d)]
            mults = [A.left_mult(w) for w in base_vecs]
            pick = lambda i, j: mults[j].col(i)
        side = h.right if self.kind in ("A*", "*A") else h.left
        out = Matrix.zeros(f, d, d)
        for a in range(d):
            col = side.gamma.col(a)
            for idx, cval in enumerate(col):
                if cval:
                    i, j = divmod(idx, d)
                    for r, x in enumerate(pick(i, j)):
                        if x:
                            out.rows[r][a] = out.rows[r][a] + cval * x
        return out

    def _product_functional(self, P, Q):
        """The transposed product of two functionals, as a functional."""
        if self.kind in ("A*", "*A"):
            return P @ self._fixed_arg_matrix(Q)
        return Q @ self._fixed_arg_matrix(P)

    def unit_coords(self):
        return self.coords(self.side.pi)

    def ring_data(self, name=""):
        if self._table is None:
            fixed = [self._fixed_arg_matrix(b) for b in self.basis]
            if self.kind in ("A*", "*A"):
                self._table = [[self.coords(self.basis[i] @ fixed[j])
                                for j in range(self.dim)] for i in range(self.dim)]
            else:
                self._table = [[self.coords(self.basis[j] @ fixed[i])
                                for j in range(self.dim)] for i in range(self.dim)]
        return RingData(self.h.field, self._table, self.unit_coords(),
                        name or (self.h.name + self.kind))


def dual_spaces(h):
    return {kind: DualSpace(h, kind) for kind in DualSpace.KINDS}


# actions of dual functionals on the total ring


def act_dual_on_total(h, kind, P, avec):
    """phi* -> a, *phi -| a, a <- phi_*, a |- _*phi, by transposing the
    regular actions through the coproduct lifts."""
    A = h.total
    f = h.field
    out = [f.zero] * A.dim
    if kind == "A*":
        for u, v in h.right.gamma_terms(avec):
            out = [x + y for x, y in zip(out, A.product(v, h.t_r(P.apply(u))))]
    elif kind == "*A":
        for u, v in h.right.gamma_terms(avec):
            out = [x + y for x, y in zip(out, A.product(u, h.s_r(P.apply(v))))]
    elif kind == "A_*":
        for u, v in h.left.gamma_terms(avec):
            out = [x + y for x, y in zip(out, A.product(h.s_l(P.apply(u)), v))]
    else:
        for u, v in h.left.gamma_terms(avec):
            out = [x + y for x, y in zip(out, A.product(h.t_l(P.apply(v)), u))]
    return out


def integral_pairing_matrix(h, dual, x_vec):
    """The map from the dual space to the total ring pairing functionals
    against a fixed integral element."""
    cols = [act_dual_on_total(h, dual.kind, b, x_vec) for b in dual.basis]
    return Matrix.from_cols(h.field, cols, h.total.dim)


def find_integrals(h):
    """Left and right invariant elements of the regular modules."""
    f = h.field
    A = h.total
    d = A.dim
    rows_l = []
    rows_r = []
    for p in range(d):
        a = _unit(f, d, p)
        la = A.left_mult(a)
        ls = A.left_mult(h.s_l(h.left.pi.apply(a)))
        diff = la - ls
        rows_l.append(diff)
        ra = A.right_mult(a)
        rs = A.right_mult(h.s_r(h.right.pi.apply(a)))
        rows_r.append(ra - rs)
    left = kernel(Matrix(f, [r for m in rows_l for r in m.rows], d))
    right = kernel(Matrix(f, [r for m in rows_r for r in m.rows], d))
    return left, right


def is_left_integral(h, x):
    f = h.field
    for p in range(h.total.dim):
        a = _unit(f, h.total.dim, p)
        if h.total.product(a, x) != h.total.product(h.s_l(h.left.pi.apply(a)), x):
            return False
    return True


def is_right_integral(h, x):
    f = h.field
    for p in range(h.total.dim):
        a = _unit(f, h.total.dim, p)
        if h.total.product(x, a) != h.total.product(x, h.s_r(h.right.pi.apply(a))):
            return False
    return True


def lemma_equivalences(h, x, side):
    """The equivalent characterizations of one-sided integrals."""
    rep = Report("integral-characterizations")
    f = h.field
    A = h.total
    d = A.dim
    S = h.antipode
    Sx = S.apply(x)
    Six = h.antipode_inv.apply(x)
    if side == "left":
        ok = all(A.product(_unit(f, d, p), x)
                 == A.product(h.t_l(h.left.pi.apply(_unit(f, d, p))), x)
                 for p in range(d))
        rep.add("target-invariance", "integral.left.target-variant", ok)
        rep.add("antipode-image", "integral.left.antipode-to-right",
                is_right_integral(h, Sx))
        rep.add("antipode-inverse-image", "integral.left.antipode-inv-to-right",
                is_right_integral(h, Six))
        # ell^(1) (x) a ell^(2) = S(a) ell^(1) (x) ell^(2) in the right quotient
        ok = True
        residuals = []
        for p in range(d):
            a = _unit(f, d, p)
            acc = {}
            for u, v in h.right.gamma_terms(x):
                _t2add(acc, f, d, u, A.product(a, v))
                _t2add(acc, f, d, A.product(S.apply(a), u), v, -1)
            res, _ = h.pair_quotient_right().reduce(acc)
            if res:
                ok = False
                residuals.append(res)
        rep.add("coproduct-shift", "integral.left.tensor-identity", ok,
                _rank_of_residuals(f, residuals))
    else:
        ok = all(A.product(x, _unit(f, d, p))
                 == A.product(x, h.t_r(h.right.pi.apply(_unit(f, d, p))))
                 for p in range(d))
        rep.add("target-invariance", "integral.right.target-variant", ok)
        rep.add("antipode-image", "integral.right.antipode-to-left",
                is_left_integral(h, Sx))
        rep.add("antipode-inverse-image", "integral.right.antipode-inv-to-left",
                is_left_integral(h, Six))
        ok = True
        residuals = []
        for p in range(d):
            a = _unit(f, d, p)
            acc = {}
            for u, v in h.left.gamma_terms(x):
                _t2add(acc, f, d, A.product(u, a), v)
                _t2add(acc, f, d, u, A.product(v, S.apply(a)), -1)
            res, _ = h.pair_quotient_left().reduce(acc)
            if res:
                ok = False
                residuals.append(res)
        rep.add("coproduct-shift", "integral.right.tensor-identity", ok,
                _rank_of_residuals(f, residuals))
    return rep


class NondegeneracyWitnesses:
    def __init__(self, side, maps, inverses, dual_element, duals):
        self.side = side
        self.maps = maps            # dict kind -> Matrix dual -> total
        self.inverses = inverses    # dict kind -> Matrix total -> dual coords
        self.dual_element = dual_element   # coords of lambda* or _*rho
        self.duals = duals


def nondegeneracy(h, x, side):
    """Witnesses that pairing against the integral is bijective, or None.

    On success the closed inverse formulas through the antipode are
    verified exactly as well.
    """
    f = h.field
    A = h.total
    d = A.dim
    S = h.antipode
    kinds = ("A*", "*A") if side == "left" else ("_*A", "A_*")
    duals = {k: DualSpace(h, k) for k in kinds}
    maps = {}
    inverses = {}
    for k in kinds:
        m = integral_pairing_matrix(h, duals[k], x)
        if m.nrows != m.ncols or m.rank() != m.nrows:
            return None
        maps[k] = m
        inverses[k] = m.inverse()
    main = kinds[0]
    lam = inverses[main].apply(A.unit)   # lambda* resp. _*rho, in dual coords
    lam_f = duals[main].functional(lam)
    ok = True
    if side == "left":
        # ell_R^{-1}(a) = lambda* <- S(a);  _R ell^{-1}(a) = lambda* o S -| S^{-1}(a)
        lam_s = lam_f @ S
        second = duals["*A"]
        try:
            second.coords(lam_s)
        except ValueError:
            ok = False
        for p in range(d):
            a = _unit(f, d, p)
            want = inverses["A*"].apply(a)
            got = duals["A*"].coords(lam_f @ A.left_mult(S.apply(a)))
            if want != got:
                ok = False
            want2 = inverses["*A"].apply(a)
            got2 = second.coords(lam_s @ A.left_mult(h.antipode_inv.apply(a)))
            if want2 != got2:
                ok = False
    else:
        # _L Y^{-1}(a) = S(a) |- _*rho;  Y_L^{-1}(a) = S^{-1}(a) -> (_*rho o S)
        lam_s = lam_f @ S
        second = duals["A_*"]
        try:
            second.coords(lam_s)
        except ValueError:
            ok = False
        for p in range(d):
            a = _unit(f, d, p)
            want = inverses["_*A"].apply(a)
            got = duals["_*A"].coords(lam_f @ A.right_mult(S.apply(a)))
            if want != got:
                ok = False
            want2 = inverses["A_*"].apply(a)
            got2 = second.coords(lam_s @ A.right_mult(h.antipode_inv.apply(a)))
            if want2 != got2:
                ok = False
    if not ok:
        return None
    return NondegeneracyWitnesses(side, maps, inverses, lam, duals)


# ---------------------------------------------------------------------------
# the dual Hopf algebroid of a two-sided non-degenerate integral


class DualizeResult:
    def __init__(self, hopf, dual_space, i_r, i_r_inv, lambda_star):
        self.hopf = hopf
        self.dual_space = dual_space
        self.i_r = i_r              # dual coords -> total ring
        self.i_r_inv = i_r_inv
        self.lambda_star = lambda_star   # coords of the dual's integral


def dualize(h, i_vec):
    """The Hopf algebroid carried by the right-base dual of the total
    ring, built from a two-sided non-degenerate integral."""
    f = h.field
    A = h.total
    d = A.dim
    S = h.antipode
    if not (is_left_integral(h, i_vec) and is_right_integral(h, i_vec)):
        raise ValueError("dualize requires a two-sided integral")
    dual = DualSpace(h, "A*")
    i_r = integral_pairing_matrix(h, dual, i_vec)
    if i_r.nrows != i_r.ncols or i_r.rank() != i_r.nrows:
        raise ValueError("dualize requires a non-degenerate integral")
    i_r_inv = i_r.inverse()
    lam = i_r_inv.apply(A.unit)
    lam_f = dual.functional(lam)
    D_ring = dual.ring_data(name=(h.name or "H") + "^")
    L, R = h.left.base, h.right.base

    s_l_cols = []
    t_l_cols = []
    for r in range(R.dim):
        er = _unit(f, R.dim, r)
        s_l_cols.append(dual.coords(R.left_mult(er) @ h.right.pi))
        t_l_cols.append(dual.coords(h.right.pi @ A.left_mult(h.s_r(er))))
    s_l = Matrix.from_cols(f, s_l_cols, dual.dim)
    t_l = Matrix.from_cols(f, t_l_cols, dual.dim)

    s_r_cols = []
    t_r_cols = []
    for l in range(L.dim):
        el = _unit(f, L.dim, l)
        s_r_cols.append(dual.coords(h.right.pi @ A.left_mult(h.s_l(el))))
        arg = S.apply(A.product(i_vec, h.t_l(el)))
        t_r_cols.append(dual.coords(lam_f @ A.left_mult(arg)))
    s_r = Matrix.from_cols(f, s_r_cols, dual.dim)
    t_r = Matrix.from_cols(f, t_r_cols, dual.dim)

    gamma_i = h.right.gamma_terms(i_vec)
    gl_cols = []
    gr_cols = []
    dd = dual.dim
    for p in range(dd):
        P = dual.basis[p]
        accl = [f.zero] * (dd * dd)
        accr = [f.zero] * (dd * dd)
        for u, v in gamma_i:
            left_leg = dual.coords(P @ A.left_mult(u))
            right_leg = i_r_inv.apply(v)
            for ii, x in enumerate(left_leg):
                if x:
                    for jj, y in enumerate(right_leg):
                        if y:
                            accl[ii * dd + jj] = accl[ii * dd + jj] + x * y
            s2v = S.apply(S.apply(v))
            left_leg = dual.coords(P @ A.left_mult(s2v))
            right_leg = i_r_inv.apply(u)
            for ii, x in enumerate(left_leg):
                if x:
                    for jj, y in enumerate(right_leg):
                        if y:
                            accr[ii * dd + jj] = accr[ii * dd + jj] + x * y
        gl_cols.append(accl)
        gr_cols.append(accr)
    gamma_l = Matrix.from_cols(f, gl_cols, dd)
    gamma_r = Matrix.from_cols(f, gr_cols, dd)

    pi_l = Matrix.from_cols(f, [b.apply(A.unit) for b in dual.basis], dd)
    pr_cols = []
    for p in range(dd):
        prod = dual._product_functional(lam_f, dual.basis[p])
        val = prod.apply(i_vec)
        pr_cols.append(h.left.pi.apply(h.s_r(val)))
    pi_r = Matrix.from_cols(f, pr_cols, dd)

    s_star = i_r_inv @ S @ i_r
    base_anti = h.left.pi @ h.right.s   # R -> L
    left_side = BialgebroidSide("left", D_ring, R, s_l, t_l, gamma_l, pi_l)
    right_side = BialgebroidSide("right", D_ring, L, s_r, t_r, gamma_r, pi_r)
    dualh = HopfAlgebroid(left_side, right_side, s_star,
                          base_anti_iso=base_anti, name=(h.name or "H") + "^")
    return DualizeResult(dualh, dual, i_r, i_r_inv, lam)


def second_dual_strict_iso(h, first, second):
    """The canonical strict isomorphism from the original Hopf algebroid
    onto its double dual: the antipode followed by both integral
    pairings, with the identity on the base."""
    Phi = second.i_r_inv @ first.i_r_inv @ h.antipode
    phi = Matrix.identity(h.field, h.left.base.dim)
    return Phi, phi


# ---------------------------------------------------------------------------
# morphisms


def check_left_bialgebroid_morphism(rep, prefix, src, dst, Phi, phi):
    """The four structure-map conditions plus both ring-map properties."""
    f = src.total.field
    A, A2 = src.total, dst.total
    L, L2 = src.base, dst.base
    ok = Phi.apply(A.unit) == A2.unit
    for p in range(A.dim):
        a = _unit(f, A.dim, p)
        for q in range(A.dim):
            b = _unit(f, A.dim, q)
            if Phi.apply(A.product(a, b)) != A2.product(Phi.apply(a), Phi.apply(b)):
                ok = False
    rep.add(prefix + "total-ring-map", "morphism.total-ring-map", ok)
    ok = phi.apply(L.unit) == L2.unit
    for p in range(L.dim):
        a = _unit(f, L.dim, p)
        for q in range(L.dim):
            b = _unit(f, L.dim, q)
            if phi.apply(L.product(a, b)) != L2.product(phi.apply(a), phi.apply(b)):
                ok = False
    rep.add(prefix + "base-ring-map", "morphism.base-ring-map", ok)
    rep.add_map_eq(prefix + "source-compat", "morphism.source-map",
                   dst.s @ phi, Phi @ src.s)
    rep.add_map_eq(prefix + "target-compat", "morphism.target-map",
                   dst.t @ phi, Phi @ src.t)
    rep.add_map_eq(prefix + "counit-compat", "morphism.counit",
                   dst.pi @ Phi, phi @ src.pi)
    ech = dst.pair_echelon()
    d2 = A2.dim
    ok = True
    residuals = []
    for p in range(A.dim):
        a = _unit(f, A.dim, p)
        lhs = dst.gamma.apply(Phi.apply(a))
        acc = [f.zero] * (d2 * d2)
        for u, v in src.gamma_terms(a):
            t2 = _tensor2(f, d2, Phi.apply(u), Phi.apply(v))
            acc = [x + y for x, y in zip(acc, t2)]
        res, _ = ech.reduce({i: x - y for i, (x, y) in enumerate(zip(lhs, acc)) if x != y})
        if res:
            ok = False
            residuals.append(res)
    rep.add(prefix + "coproduct-compat", "morphism.coproduct", ok,
            _rank_of_residuals(f, residuals))


def check_morphism(src, dst, Phi, phi, mode="hopf", strict=False, iso=True):
    """Verify a (strict) morphism of bialgebroids or Hopf algebroids.

    src/dst are HopfAlgebroid values for mode='hopf', or BialgebroidSide
    values for mode='bialgebroid'.
    """
    rep = Report("morphism")
    if mode == "hopf":
        check_left_bialgebroid_morphism(rep, "", src.left, dst.left, Phi, phi)
        if strict:
            rep.add_map_eq("antipode-compat", "morphism.strictness",
                           Phi @ src.antipode, dst.antipode @ Phi)
    else:
        check_left_bialgebroid_morphism(rep, "", src, dst, Phi, phi)
    if iso:
        rep.add("total-bijective", "morphism.total-bijective",
                Phi.nrows == Phi.ncols and Phi.rank() == Phi.nrows)
        rep.add("base-bijective", "morphism.base-bijective",
                phi.nrows == phi.ncols and phi.rank() == phi.nrows)
    return rep
