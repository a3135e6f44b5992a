"""Bracketed words of 1-cells and the 2-cells between their realizations.

A word is a binary tree whose leaves are named generator 1-cells or
identity 1-cells of the 0-cells; a node is a horizontal composite.
Realization evaluates a word to a concrete bimodule through the
coequalizer tensor product, memoized so shared subwords are computed
once.  TwoCell wraps a linear map between realizations together with
its source and target words, so vertical and horizontal composition are
type checked structurally; the coherence cells are the induced
associativity and unit isomorphisms.
"""

from .linalg import Matrix, kron_times
from .monoidal import CoherenceError
from .bimodules import regular_bimodule, tensor_over, und_alpha, und_lambda, und_rho


def gen(name):
    return ("gen", name)


def id0(monoid_name):
    return ("id0", monoid_name)


def H(left, right):
    return ("h", left, right)


def word_of(expr):
    """The sequence of leaves of a word, left to right."""
    if expr[0] == "h":
        return word_of(expr[1]) + word_of(expr[2])
    return (expr,)


class RealizedCell:
    __slots__ = ("expr", "bim", "tens")

    def __init__(self, expr, bim, tens=None):
        self.expr = expr
        self.bim = bim
        self.tens = tens

    @property
    def dim(self):
        return self.bim.dim


class CellContext:
    """Holds the 0-cells and generator 1-cells plus all realization caches."""

    def __init__(self, cat):
        self.cat = cat
        self.monoids = {}
        self.gens = {}
        self._realized = {}
        self._tensor_memo = {}
        self._regular = {}
        self._alpha_memo = {}
        self.check_preservation = False

    def add_monoid(self, name, monoid):
        monoid.name = monoid.name or name
        self.monoids[name] = monoid

    def add_gen(self, name, bim):
        bim.name = bim.name or name
        self.gens[name] = bim

    def src0(self, expr):
        kind = expr[0]
        if kind == "gen":
            return self.gens[expr[1]].right_monoid
        if kind == "id0":
            return self.monoids[expr[1]]
        return self.src0(expr[2])

    def tgt0(self, expr):
        kind = expr[0]
        if kind == "gen":
            return self.gens[expr[1]].left_monoid
        if kind == "id0":
            return self.monoids[expr[1]]
        return self.tgt0(expr[1])

    def id0_of(self, monoid):
        for name, m in self.monoids.items():
            if m is monoid:
                return id0(name)
        raise CoherenceError("monoid not registered")

    def regular(self, monoid):
        key = id(monoid)
        r = self._regular.get(key)
        if r is None:
            r = regular_bimodule(monoid)
            self._regular[key] = r
        return r

    def tensor_over(self, Mbim, Nbim):
        key = (id(Mbim), id(Nbim))
        t = self._tensor_memo.get(key)
        if t is None:
            t = tensor_over(Mbim, Nbim, check_preservation=self.check_preservation)
            self._tensor_memo[key] = t
        return t

    def realize(self, expr):
        rc = self._realized.get(expr)
        if rc is not None:
            return rc
        kind = expr[0]
        if kind == "gen":
            rc = RealizedCell(expr, self.gens[expr[1]])
        elif kind == "id0":
            rc = RealizedCell(expr, self.regular(self.monoids[expr[1]]))
        else:
            left = self.realize(expr[1])
            right = self.realize(expr[2])
            if left.bim.right_monoid is not right.bim.left_monoid:
                raise CoherenceError("ill typed horizontal composite: %r" % (expr,))
            tens = self.tensor_over(left.bim, right.bim)
            rc = RealizedCell(expr, tens.bim, tens)
        self._realized[expr] = rc
        return rc

    def dim(self, expr):
        return self.realize(expr).dim


class TwoCell:
    __slots__ = ("ctx", "src", "tgt", "mat")

    def __init__(self, ctx, src, tgt, mat):
        if mat.ncols != ctx.dim(src) or mat.nrows != ctx.dim(tgt):
            raise CoherenceError("2-cell matrix shape does not match its words")
        self.ctx = ctx
        self.src = src
        self.tgt = tgt
        self.mat = mat

    def __repr__(self):
        return "TwoCell(%r -> %r)" % (self.src, self.tgt)


def ident_cell(ctx, expr):
    n = ctx.dim(expr)
    return TwoCell(ctx, expr, expr, Matrix.identity(ctx.cat.field, n))


def vcomp(*cells):
    """Vertical composite, outermost first: vcomp(f, g) is f after g."""
    out = cells[0]
    for nxt in cells[1:]:
        if out.src != nxt.tgt:
            raise CoherenceError("vertical composite type mismatch:\n  %r\n  %r"
                                 % (out.src, nxt.tgt))
        out = TwoCell(out.ctx, nxt.src, out.tgt, out.mat @ nxt.mat)
    return out


def hcomp(x, y):
    """Horizontal composite x x y of 2-cells."""
    ctx = x.ctx
    src = H(x.src, y.src)
    tgt = H(x.tgt, y.tgt)
    ns = ctx.realize(src)
    nt = ctx.realize(tgt)
    mat = nt.tens.proj_free @ kron_times(x.mat, y.mat, ns.tens.incl_free)
    return TwoCell(ctx, src, tgt, mat)


def _alpha_pair(ctx, e1, e2, e3):
    key = (e1, e2, e3)
    pair = ctx._alpha_memo.get(key)
    if pair is None:
        mn = ctx.realize(H(e1, e2)).tens
        mn_q = ctx.realize(H(H(e1, e2), e3)).tens
        nq = ctx.realize(H(e2, e3)).tens
        m_nq = ctx.realize(H(e1, H(e2, e3))).tens
        pair = und_alpha(mn, mn_q, nq, m_nq)
        ctx._alpha_memo[key] = pair
    return pair


def acell(ctx, e1, e2, e3):
    fwd, _ = _alpha_pair(ctx, e1, e2, e3)
    return TwoCell(ctx, H(H(e1, e2), e3), H(e1, H(e2, e3)), fwd)


def acell_inv(ctx, e1, e2, e3):
    _, bwd = _alpha_pair(ctx, e1, e2, e3)
    return TwoCell(ctx, H(e1, H(e2, e3)), H(H(e1, e2), e3), bwd)


def lcell(ctx, expr):
    """1_{t0(e)} x e -> e."""
    unit_expr = ctx.id0_of(ctx.tgt0(expr))
    tens = ctx.realize(H(unit_expr, expr)).tens
    lam, _ = und_lambda(tens)
    return TwoCell(ctx, H(unit_expr, expr), expr, lam)


def lcell_inv(ctx, expr):
    unit_expr = ctx.id0_of(ctx.tgt0(expr))
    tens = ctx.realize(H(unit_expr, expr)).tens
    _, inv = und_lambda(tens)
    return TwoCell(ctx, expr, H(unit_expr, expr), inv)


def rcell(ctx, expr):
    """e x 1_{s0(e)} -> e."""
    unit_expr = ctx.id0_of(ctx.src0(expr))
    tens = ctx.realize(H(expr, unit_expr)).tens
    rho, _ = und_rho(tens)
    return TwoCell(ctx, H(expr, unit_expr), expr, rho)


def rcell_inv(ctx, expr):
    unit_expr = ctx.id0_of(ctx.src0(expr))
    tens = ctx.realize(H(expr, unit_expr)).tens
    _, inv = und_rho(tens)
    return TwoCell(ctx, expr, H(expr, unit_expr), inv)


def whisker(ctx, expr, path, mat):
    """Place an endomorphism matrix at the subword addressed by path
    ('L'/'R' letters), identities elsewhere; returns the matrix on the
    realization of expr."""
    if not path:
        return mat
    if expr[0] != "h":
        raise CoherenceError("whisker path descends below a leaf")
    node = ctx.realize(expr)
    ldim = ctx.dim(expr[1])
    rdim = ctx.dim(expr[2])
    f = ctx.cat.field
    if path[0] == "L":
        inner = whisker(ctx, expr[1], path[1:], mat)
        k = kron_times(inner, Matrix.identity(f, rdim), node.tens.incl_free)
    else:
        inner = whisker(ctx, expr[2], path[1:], mat)
        k = kron_times(Matrix.identity(f, ldim), inner, node.tens.incl_free)
    return node.tens.proj_free @ k


def coherence_iso(ctx, e1, e2):
    """The canonical isomorphism between two bracketings of one word."""
    if word_of(e1) != word_of(e2):
        raise CoherenceError("coherence iso requires the same underlying word")
    c1 = _to_right_comb(ctx, e1)
    c2 = _to_right_comb(ctx, e2)
    return vcomp(_invert(c2), c1)


def _invert(cell):
    return TwoCell(cell.ctx, cell.tgt, cell.src, cell.mat.inverse())


def _to_right_comb(ctx, expr):
    """Canonical iso from expr to the right comb bracketing of its word."""
    if expr[0] != "h":
        return ident_cell(ctx, expr)
    left, right = expr[1], expr[2]
    if left[0] != "h":
        inner = _to_right_comb(ctx, right)
        return vcomp(hcomp(ident_cell(ctx, left), inner), ident_cell(ctx, expr))
    a, b = left[1], left[2]
    step = acell(ctx, a, b, right)
    return vcomp(_to_right_comb(ctx, H(a, H(b, right))), step)
