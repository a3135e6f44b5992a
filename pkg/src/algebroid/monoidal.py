"""Concrete monoidal categories with coequalizers.

Two instances back the whole package: VecCategory (plain vector spaces;
internal monoids there are ordinary algebras) and ModCategory (right
modules over a right bialgebroid, monoidal via the tensor over the base
ring with the diagonal action).  Both expose the same surface: objects,
tensor handles carrying projection/section onto the realized tensor,
coherence maps, coequalizers, and the extra linear constraints a
morphism must satisfy.

Every tensor handle also keeps the relation span of its quotient so
descent of maps through the tensor can be asserted exactly.
"""

from .linalg import Matrix, Quotient, DimensionError


class CoherenceError(AssertionError):
    """A canonical map failed to descend or an instance axiom broke."""


class TensorHandle:
    __slots__ = ("left", "right", "obj", "proj", "incl", "quot")

    def __init__(self, left, right, obj, proj, incl, quot):
        self.left = left
        self.right = right
        self.obj = obj
        self.proj = proj    # free (dim left * dim right) -> dim obj
        self.incl = incl    # section of proj
        self.quot = quot    # Quotient, or None when the tensor is free

    @property
    def dim(self):
        return self.proj.nrows


class Coequalizer:
    __slots__ = ("src", "tgt", "obj", "proj", "incl", "quot")

    def __init__(self, src, tgt, obj, proj, incl, quot):
        self.src = src
        self.tgt = tgt
        self.obj = obj
        self.proj = proj
        self.incl = incl
        self.quot = quot


class VecObj:
    __slots__ = ("dim", "key")

    def __init__(self, dim):
        self.dim = dim
        self.key = ("vec", dim)

    def __repr__(self):
        return "VecObj(%d)" % self.dim


class VecCategory:
    """Finite dimensional spaces over an exact field; tensors are free."""

    def __init__(self, field):
        self.field = field
        self._unit = VecObj(1)
        self._tensor_memo = {}
        self._id_cache = {}

    def ident(self, n):
        m = self._id_cache.get(n)
        if m is None:
            m = Matrix.identity(self.field, n)
            self._id_cache[n] = m
        return m

    def unit(self):
        return self._unit

    def dim(self, X):
        return X.dim

    def obj(self, dim):
        return VecObj(dim)

    def tensor(self, X, Y):
        key = (X.key, Y.key)
        th = self._tensor_memo.get(key)
        if th is None:
            n = X.dim * Y.dim
            i = self.ident(n)
            th = TensorHandle(X, Y, VecObj(n), i, i, None)
            self._tensor_memo[key] = th
        return th

    def tmap(self, th_src, th_tgt, f, g):
        """Induced map on tensors: proj o (f (x) g) o incl."""
        return f.kron(g)

    def alpha(self, X, Y, Z):
        return self.ident(X.dim * Y.dim * Z.dim)

    def alpha_inv(self, X, Y, Z):
        return self.alpha(X, Y, Z)

    def lunit(self, X):
        return self.ident(X.dim)

    def lunit_inv(self, X):
        return self.ident(X.dim)

    def runit(self, X):
        return self.ident(X.dim)

    def runit_inv(self, X):
        return self.ident(X.dim)

    def action_mats(self, X):
        return []

    def is_morphism(self, X, Y, mat):
        return mat.nrows == Y.dim and mat.ncols == X.dim

    def coequalizer(self, X, Y, f, g):
        d = f - g
        q = Quotient(self.field, Y.dim, [d.col(j) for j in range(d.ncols)])
        return Coequalizer(X, Y, VecObj(q.dim), q.projection, q.section, q)


class RightBialgebroidSkeleton:
    """The data of a right bialgebroid needed to make its module category.

    mul: free-level multiplication H (x) H -> H, unit: vector in H,
    gamma: coproduct lift H -> H (x) H as a dim^2 x dim matrix,
    s/t: base ring R -> H, pi: H -> R, r_mul/r_unit: the ring R itself.
    """

    def __init__(self, field, dim, mul, unit, gamma, pi, s, t, r_dim, r_mul, r_unit):
        self.field = field
        self.dim = dim
        self.mul = mul
        self.unit = unit
        self.gamma = gamma
        self.pi = pi
        self.s = s
        self.t = t
        self.r_dim = r_dim
        self.r_mul = r_mul
        self.r_unit = r_unit

    def product(self, u, v):
        uv = [a * b for a in u for b in v]
        return self.mul.apply(uv)


class ModObj:
    """A right module over the bialgebroid: space plus action matrices."""

    __slots__ = ("dim", "acts", "key")

    def __init__(self, dim, acts):
        self.dim = dim
        self.acts = acts    # tuple of matrices, one per H basis element
        self.key = ("mod", dim, tuple(acts))

    def act_of(self, hvec):
        """Action matrix of a general element of H."""
        out = None
        for i, c in enumerate(hvec):
            if c:
                m = self.acts[i].scale(c)
                out = m if out is None else out + m
        if out is None:
            f = self.acts[0].field if self.acts else None
            return Matrix.zeros(f, self.dim, self.dim)
        return out

    def __repr__(self):
        return "ModObj(%d)" % self.dim


class ModCategory:
    """Right modules over a right bialgebroid; tensor over the base ring R.

    The balancing identifies m.s(r) (x) n with m (x) n.t(r); the diagonal
    action goes through the coproduct lift.  Coherence maps are induced
    on the quotients, and every construction asserts that the maps it
    pushes down are actually constant on relation classes.
    """

    def __init__(self, skel):
        self.skel = skel
        self.field = skel.field
        self._tensor_memo = {}
        self._unit = None
        self._id_cache = {}

    def ident(self, n):
        m = self._id_cache.get(n)
        if m is None:
            m = Matrix.identity(self.field, n)
            self._id_cache[n] = m
        return m

    def unit(self):
        if self._unit is None:
            sk = self.skel
            acts = []
            for h in range(sk.dim):
                cols = []
                for r in range(sk.r_dim):
                    sr = sk.s.col(r)
                    eh = [sk.field.zero] * sk.dim
                    eh[h] = sk.field.one
                    cols.append(sk.pi.apply(sk.product(sr, eh)))
                acts.append(Matrix.from_cols(sk.field, cols, sk.r_dim))
            self._unit = ModObj(sk.r_dim, tuple(acts))
        return self._unit

    def dim(self, X):
        return X.dim

    def free_module(self):
        """H acting on itself by right multiplication."""
        sk = self.skel
        acts = []
        for h in range(sk.dim):
            cols = []
            for m in range(sk.dim):
                em = [sk.field.zero] * sk.dim
                em[m] = sk.field.one
                eh = [sk.field.zero] * sk.dim
                eh[h] = sk.field.one
                cols.append(sk.product(em, eh))
            acts.append(Matrix.from_cols(sk.field, cols, sk.dim))
        return ModObj(sk.dim, tuple(acts))

    def _s_acts(self, X):
        sk = self.skel
        return [X.act_of(sk.s.col(r)) for r in range(sk.r_dim)]

    def _t_acts(self, X):
        sk = self.skel
        return [X.act_of(sk.t.col(r)) for r in range(sk.r_dim)]

    def tensor(self, X, Y):
        key = (X.key, Y.key)
        th = self._tensor_memo.get(key)
        if th is not None:
            return th
        sk = self.skel
        f = self.field
        dx, dy = X.dim, Y.dim
        sx = self._s_acts(X)
        ty = self._t_acts(Y)
        rels = []
        for r in range(sk.r_dim):
            for x in range(dx):
                xcol = sx[r].col(x)
                for y in range(dy):
                    ycol = ty[r].col(y)
                    col = {}
                    for i, v in enumerate(xcol):
                        if v:
                            col[i * dy + y] = v
                    for j, v in enumerate(ycol):
                        if v:
                            k = x * dy + j
                            nv = col.get(k, f.zero) - v
                            if nv:
                                col[k] = nv
                            else:
                                col.pop(k, None)
                    if col:
                        rels.append(col)
        q = Quotient(f, dx * dy, rels)
        # diagonal action through the coproduct lift
        acts = []
        for h in range(sk.dim):
            gcol = sk.gamma.col(h)
            free = Matrix.zeros(f, dx * dy, dx * dy)
            for idx, c in enumerate(gcol):
                if c:
                    i, j = divmod(idx, sk.dim)
                    free = free + X.acts[i].kron(Y.acts[j]).scale(c)
            down = q.projection @ free
            # the diagonal action must be constant on relation classes
            for rel in rels:
                v = [f.zero] * (dx * dy)
                for k, val in rel.items():
                    v[k] = val
                if any(x for x in down.apply(v)):
                    raise CoherenceError("diagonal action does not descend to the tensor")
            acts.append(down @ q.section)
        obj = ModObj(q.dim, tuple(acts))
        th = TensorHandle(X, Y, obj, q.projection, q.section, q)
        self._tensor_memo[key] = th
        return th

    def tmap(self, th_src, th_tgt, f, g):
        kr = f.kron(g)
        down = th_tgt.proj @ kr
        if th_src.quot is not None:
            for rel in th_src.quot.ech.rows:
                v = [self.field.zero] * kr.ncols
                for k, val in rel.items():
                    v[k] = val
                if any(x for x in down.apply(v)):
                    raise CoherenceError("map does not descend through the tensor quotient")
        return down @ th_src.incl

    def _double_proj_left(self, X, Y, Z):
        t1 = self.tensor(X, Y)
        t2 = self.tensor(t1.obj, Z)
        proj = t2.proj @ t1.proj.kron(self.ident(Z.dim))
        incl = t1.incl.kron(self.ident(Z.dim)) @ t2.incl
        return t2, proj, incl

    def _double_proj_right(self, X, Y, Z):
        t1 = self.tensor(Y, Z)
        t2 = self.tensor(X, t1.obj)
        proj = t2.proj @ self.ident(X.dim).kron(t1.proj)
        incl = self.ident(X.dim).kron(t1.incl) @ t2.incl
        return t2, proj, incl

    def alpha(self, X, Y, Z):
        _, projL, inclL = self._double_proj_left(X, Y, Z)
        _, projR, _ = self._double_proj_right(X, Y, Z)
        a = projR @ inclL
        if a @ projL != projR:
            raise CoherenceError("associativity map does not descend")
        return a

    def alpha_inv(self, X, Y, Z):
        _, projL, _ = self._double_proj_left(X, Y, Z)
        _, projR, inclR = self._double_proj_right(X, Y, Z)
        a = projL @ inclR
        if a @ projR != projL:
            raise CoherenceError("associativity inverse does not descend")
        return a

    def _free_lunit(self, X):
        tx = self._t_acts(X)
        cols = []
        for r in range(self.skel.r_dim):
            for x in range(X.dim):
                cols.append(tx[r].col(x))
        return Matrix.from_cols(self.field, cols, X.dim)

    def _free_runit(self, X):
        sx = self._s_acts(X)
        cols = []
        for x in range(X.dim):
            for r in range(self.skel.r_dim):
                cols.append(sx[r].col(x))
        return Matrix.from_cols(self.field, cols, X.dim)

    def lunit(self, X):
        th = self.tensor(self.unit(), X)
        free = self._free_lunit(X)
        m = free @ th.incl
        if m @ th.proj != free:
            raise CoherenceError("left unitor does not descend")
        return m

    def lunit_inv(self, X):
        return self.lunit(X).inverse()

    def runit(self, X):
        th = self.tensor(X, self.unit())
        free = self._free_runit(X)
        m = free @ th.incl
        if m @ th.proj != free:
            raise CoherenceError("right unitor does not descend")
        return m

    def runit_inv(self, X):
        return self.runit(X).inverse()

    def action_mats(self, X):
        return list(X.acts)

    def is_morphism(self, X, Y, mat):
        if mat.nrows != Y.dim or mat.ncols != X.dim:
            return False
        return all((mat @ X.acts[h]) == (Y.acts[h] @ mat) for h in range(self.skel.dim))

    def coequalizer(self, X, Y, f, g):
        d = f - g
        q = Quotient(self.field, Y.dim, [d.col(j) for j in range(d.ncols)])
        acts = []
        for h in range(self.skel.dim):
            down = q.projection @ Y.acts[h]
            for rel in q.ech.rows:
                v = [self.field.zero] * Y.dim
                for k, val in rel.items():
                    v[k] = val
                if any(x for x in down.apply(v)):
                    raise CoherenceError("module action does not descend to the coequalizer")
            acts.append(down @ q.section)
        return Coequalizer(X, Y, ModObj(q.dim, tuple(acts)), q.projection, q.section, q)


def check_triangle(cat, X, Y):
    """(X (x) U) (x) Y -> X (x) (U (x) Y): alpha then 1 (x) lunit equals runit (x) 1."""
    U = cat.unit()
    txu = cat.tensor(X, U)
    tuy = cat.tensor(U, Y)
    lhs_src = cat.tensor(txu.obj, Y)
    tgt = cat.tensor(X, Y)
    via_alpha = cat.tmap(cat.tensor(X, tuy.obj), tgt, cat.ident(X.dim), cat.lunit(Y)) \
        @ cat.alpha(X, U, Y)
    direct = cat.tmap(lhs_src, tgt, cat.runit(X), cat.ident(Y.dim))
    return via_alpha == direct


def check_pentagon(cat, X, Y, Z, W):
    """Both ways of reassociating ((X Y) Z) W -> X (Y (Z W)) agree."""
    txy = cat.tensor(X, Y)
    tzw = cat.tensor(Z, W)
    tyz = cat.tensor(Y, Z)
    t_xy_z = cat.tensor(txy.obj, Z)
    t_yz_w = cat.tensor(tyz.obj, W)
    t_y_zw = cat.tensor(Y, tzw.obj)
    # short way: alpha(XY,Z,W) then alpha(X,Y,ZW)
    short = cat.alpha(X, Y, tzw.obj) @ cat.alpha(txy.obj, Z, W)
    # long way: alpha(X,Y,Z) (x) W ; alpha(X,YZ,W) ; X (x) alpha(Y,Z,W)
    step1 = cat.tmap(cat.tensor(t_xy_z.obj, W), cat.tensor(cat.tensor(X, tyz.obj).obj, W),
                     cat.alpha(X, Y, Z), cat.ident(W.dim))
    step2 = cat.alpha(X, tyz.obj, W)
    step3 = cat.tmap(cat.tensor(X, t_yz_w.obj), cat.tensor(X, t_y_zw.obj),
                     cat.ident(X.dim), cat.alpha(Y, Z, W))
    return (step3 @ step2 @ step1) == short


def check_coequalizer_preserved(cat, coq, Z, side):
    """Tensoring a coequalizer diagram by Z on the given side stays a coequalizer.

    Exactness is tested directly: the tensored projection must be
    surjective and its kernel must equal the tensored relation span.
    """
    Y = coq.tgt
    if side == "right":
        th_y = cat.tensor(Y, Z)
        th_q = cat.tensor(coq.obj, Z)
        tau2 = cat.tmap(th_y, th_q, coq.proj, cat.ident(Z.dim))
    else:
        th_y = cat.tensor(Z, Y)
        th_q = cat.tensor(Z, coq.obj)
        tau2 = cat.tmap(th_y, th_q, cat.ident(Z.dim), coq.proj)
    if tau2.rank() != th_q.dim:
        return False
    # tensored relation span, pushed through the monoidal quotient of th_y
    from .linalg import Echelon
    dz, dy = Z.dim, Y.dim
    zero = cat.field.zero
    ech = Echelon(cat.field)
    pushed = []
    for rel in coq.quot.ech.rows:
        for z in range(dz):
            v = [zero] * (dy * dz)
            for k, val in rel.items():
                idx = k * dz + z if side == "right" else z * dy + k
                v[idx] = val
            w = th_y.proj.apply(v)
            pushed.append(w)
            ech.insert({i: x for i, x in enumerate(w) if x})
    for w in pushed:
        if any(x for x in tau2.apply(w)):
            return False
    return ech.rank == th_y.dim - th_q.dim
