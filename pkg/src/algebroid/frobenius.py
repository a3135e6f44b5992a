"""Two-sided dual pairs of 1-cells and the depth-2 certificate.

A FrobeniusDatum packages the four (co)evaluation 2-cells of a 1-cell
with two-sided dual and verifies the four zig-zag laws.  The depth-2
certificate is a finite family of endomorphism pairs (y_i, x_i) of the
composite word turning a fixed snake composite into the identity; it is
found by solving that condition as one exact linear system over the
endomorphism ring, then rank-factoring the solution tensor.
"""

from .linalg import Matrix, Echelon, vec_of_matrix, matrix_of_vec
from .monoidal import CoherenceError
from .cells import (H, TwoCell, ident_cell, vcomp, hcomp, acell, acell_inv,
                    lcell, lcell_inv, rcell, rcell_inv, whisker)
from .bimodules import hom_basis
from .report import Report


class FrobeniusDatum:
    """A 1-cell, its two-sided dual, and the four (co)evaluation 2-cells."""

    def __init__(self, ctx, i_expr, ib_expr, ev_R, coev_R, ev_L, coev_L):
        self.ctx = ctx
        self.i = i_expr
        self.ib = ib_expr
        self.src = ctx.src0(i_expr)     # the 0-cell the 1-cell comes from
        self.tgt = ctx.tgt0(i_expr)
        if ctx.src0(ib_expr) is not self.tgt or ctx.tgt0(ib_expr) is not self.src:
            raise CoherenceError("dual 1-cell has mismatched endpoints")
        unit_src = ctx.id0_of(self.src)
        unit_tgt = ctx.id0_of(self.tgt)
        expect = {
            "ev_R": (H(i_expr, ib_expr), unit_tgt),
            "coev_R": (unit_src, H(ib_expr, i_expr)),
            "ev_L": (H(ib_expr, i_expr), unit_src),
            "coev_L": (unit_tgt, H(i_expr, ib_expr)),
        }
        for name, cell in (("ev_R", ev_R), ("coev_R", coev_R),
                           ("ev_L", ev_L), ("coev_L", coev_L)):
            want_src, want_tgt = expect[name]
            if cell.src != want_src or cell.tgt != want_tgt:
                raise CoherenceError("%s has the wrong 2-cell type" % name)
        self.ev_R = ev_R
        self.coev_R = coev_R
        self.ev_L = ev_L
        self.coev_L = coev_L

    def swapped(self):
        """The same data viewed from the dual 1-cell's side."""
        return FrobeniusDatum(self.ctx, self.ib, self.i,
                              ev_R=self.ev_L, coev_R=self.coev_L,
                              ev_L=self.ev_R, coev_L=self.coev_R)

    def endo_word(self):
        return H(self.i, self.ib)

    def snake_word(self):
        return H(H(self.i, self.ib), self.i)


def verify_rigidity(fd):
    """The four zig-zag relations, exactly; residual rank per relation."""
    ctx = fd.ctx
    i, ib = fd.i, fd.ib
    rep = Report("rigidity")
    rel1 = vcomp(rcell(ctx, i),
                 hcomp(ident_cell(ctx, i), fd.ev_L),
                 acell(ctx, i, ib, i),
                 hcomp(fd.coev_L, ident_cell(ctx, i)),
                 lcell_inv(ctx, i))
    rep.add_map_eq("zigzag-1", "rigidity.left-dual-on-cell", rel1.mat,
                   Matrix.identity(ctx.cat.field, ctx.dim(i)))
    rel2 = vcomp(lcell(ctx, ib),
                 hcomp(fd.ev_L, ident_cell(ctx, ib)),
                 acell_inv(ctx, ib, i, ib),
                 hcomp(ident_cell(ctx, ib), fd.coev_L),
                 rcell_inv(ctx, ib))
    rep.add_map_eq("zigzag-2", "rigidity.left-dual-on-dual", rel2.mat,
                   Matrix.identity(ctx.cat.field, ctx.dim(ib)))
    rel3 = vcomp(lcell(ctx, i),
                 hcomp(fd.ev_R, ident_cell(ctx, i)),
                 acell_inv(ctx, i, ib, i),
                 hcomp(ident_cell(ctx, i), fd.coev_R),
                 rcell_inv(ctx, i))
    rep.add_map_eq("zigzag-3", "rigidity.right-dual-on-cell", rel3.mat,
                   Matrix.identity(ctx.cat.field, ctx.dim(i)))
    rel4 = vcomp(rcell(ctx, ib),
                 hcomp(ident_cell(ctx, ib), fd.ev_R),
                 acell(ctx, ib, i, ib),
                 hcomp(fd.coev_R, ident_cell(ctx, ib)),
                 lcell_inv(ctx, ib))
    rep.add_map_eq("zigzag-4", "rigidity.right-dual-on-dual", rel4.mat,
                   Matrix.identity(ctx.cat.field, ctx.dim(ib)))
    return rep


class D2QuasiBasis:
    """Pairs (y_i, x_i) of endomorphisms of the composite word."""

    def __init__(self, pairs):
        self.pairs = list(pairs)

    def __len__(self):
        return len(self.pairs)


def snake_hole_maps(fd):
    """The fixed middle composite of the depth-2 condition, plus node info."""
    ctx = fd.ctx
    i, ib = fd.i, fd.ib
    middle = vcomp(acell_inv(ctx, i, ib, i),
                   hcomp(ident_cell(ctx, i), fd.coev_R),
                   hcomp(ident_cell(ctx, i), fd.ev_L),
                   acell(ctx, i, ib, i))
    return middle.mat


def d2_composite(fd, qb):
    """Sum over pairs of (y x 1) o middle o (x x 1) on the snake word."""
    ctx = fd.ctx
    node = fd.snake_word()
    mid = snake_hole_maps(fd)
    dim = ctx.dim(node)
    total = Matrix.zeros(ctx.cat.field, dim, dim)
    for ymat, xmat in qb.pairs:
        left = whisker(ctx, node, ("L",), ymat)
        right = whisker(ctx, node, ("L",), xmat)
        total = total + left @ mid @ right
    return total


def verify_d2(fd, qb):
    ctx = fd.ctx
    rep = Report("depth-2")
    dim = ctx.dim(fd.snake_word())
    rep.add_map_eq("quasi-basis-resolution", "depth2.identity-resolution",
                   d2_composite(fd, qb), Matrix.identity(ctx.cat.field, dim),
                   detail="%d terms" % len(qb))
    return rep


def endo_basis(fd):
    """Basis of the endomorphism ring of the composite word."""
    rc = fd.ctx.realize(fd.endo_word())
    return [m.mat for m in hom_basis(rc.bim, rc.bim)]


def _free_module_generators(fd, basis):
    """A family freely generating the endomorphism space of the composite
    word as a right module over composition with whiskered 1-cell
    endomorphisms, or None if the greedy search finds no free basis.

    Any solution tensor of the depth-2 system is balanced over that
    module structure, so it has a representative whose first legs lie in
    this family; restricting the linear system accordingly caps the
    term count at dim(A)/dim(L).  Candidates are basis elements first,
    then two-element sums.
    """
    ctx = fd.ctx
    f = ctx.cat.field
    word = fd.endo_word()
    lmats = [m.mat for m in hom_basis(ctx.realize(fd.i).bim, ctx.realize(fd.i).bim)]
    smats = [whisker(ctx, word, ("L",), l) for l in lmats]
    n = len(basis)
    if n % len(smats):
        return None

    def candidates():
        for b in basis:
            yield b
        for p in range(n):
            for q in range(p + 1, n):
                yield basis[p] + basis[q]

    chosen = []
    accepted_vecs = []
    for w in candidates():
        group = [vec_of_matrix(w @ s) for s in smats]
        ech = Echelon(f)
        for v in accepted_vecs:
            ech.insert({k: x for k, x in enumerate(v) if x})
        base_rank = ech.rank
        for v in group:
            ech.insert({k: x for k, x in enumerate(v) if x})
        if ech.rank - base_rank == len(smats):
            chosen.append(w)
            accepted_vecs.extend(group)
            if len(accepted_vecs) == n:
                return chosen
    return None


def find_d2_quasibasis(fd, max_terms=None, basis=None):
    """Solve the depth-2 condition as one exact linear system over pairs
    of endomorphism basis elements and rank-factor the solution tensor;
    returns at most max_terms pairs or None.  Failure does not disprove
    depth 2 beyond the searched rank.

    When the endomorphism space is free over the base (checked), the
    system is restricted to a free-basis row support first, which keeps
    the factored term count minimal.
    """
    ctx = fd.ctx
    f = ctx.cat.field
    if basis is None:
        basis = endo_basis(fd)
    n = len(basis)
    node = fd.snake_word()
    mid = snake_hole_maps(fd)
    dim = ctx.dim(node)
    rhs = {}
    for k in range(dim):
        rhs[k * dim + k] = f.one
    pre = [whisker(ctx, node, ("L",), b) for b in basis]

    def try_generators(gens):
        ech = Echelon(f, track=True)
        order = []
        for k, w in enumerate(gens):
            post_w = whisker(ctx, node, ("L",), w) @ mid
            for q in range(n):
                ech.insert({i: x for i, x in
                            enumerate(vec_of_matrix(post_w @ pre[q])) if x})
                order.append((k, q))
            res, combo = ech.reduce(rhs)
            if not res:
                T = Matrix.zeros(f, len(gens), n)
                for idx, v in combo.items():
                    kk, qq = order[idx]
                    T.rows[kk][qq] = T.rows[kk][qq] - v
                return T
        return None

    gens = _free_module_generators(fd, basis)
    pairs = None
    if gens is not None:
        T = try_generators(gens)
        if T is not None:
            pairs = _rank_factor_pairs(f, T, gens, basis)
    if pairs is None:
        T = try_generators(basis)
        if T is None:
            return None
        pairs = _rank_factor_pairs(f, T, basis, basis)
    if max_terms is not None and len(pairs) > max_terms:
        return None
    qb = D2QuasiBasis(pairs)
    if not verify_d2(fd, qb).passed:
        raise CoherenceError("internal: solved quasi-basis fails its own condition")
    return qb


def _rank_factor_pairs(f, T, ygens, xbasis):
    """Write the solution tensor as a rank(T)-term sum of y (x) x pairs.

    Rows of T are reduced to echelon form; since reduced rows carry 1 at
    their own pivot and 0 at every other pivot, the coefficient of
    echelon row k inside row i is simply T[i][pivot_k].
    """
    ech = Echelon(f)
    for i in range(T.nrows):
        ech.insert({j: x for j, x in enumerate(T.rows[i]) if x})
    pairs = []
    for p in sorted(ech.pivots):
        k = ech.pivots[p]
        xvec = [f.zero] * T.ncols
        for c, v in ech.rows[k].items():
            xvec[c] = v
        yvec = [T.rows[i][p] for i in range(T.nrows)]
        pairs.append((_combine(f, yvec, ygens), _combine(f, xvec, xbasis)))
    return pairs


def _combine(f, coords, basis):
    out = None
    for c, b in zip(coords, basis):
        if c:
            m = b.scale(c)
            out = m if out is None else out + m
    if out is None:
        out = Matrix.zeros(f, basis[0].nrows, basis[0].ncols)
    return out


def phi_L(fd, amat):
    """The Frobenius map of the source-map ring extension, on one element.

    Takes and returns raw matrices: an endomorphism of the composite
    word goes to an endomorphism of the 1-cell itself.
    """
    post, pre = phi_L_compiled(fd)
    node = fd.snake_word()
    return post @ whisker(fd.ctx, node, ("L",), amat) @ pre


def phi_L_compiled(fd):
    ctx = fd.ctx
    i, ib = fd.i, fd.ib
    pre = vcomp(acell_inv(ctx, i, ib, i),
                hcomp(ident_cell(ctx, i), fd.coev_R),
                rcell_inv(ctx, i))
    post = vcomp(rcell(ctx, i),
                 hcomp(ident_cell(ctx, i), fd.ev_L),
                 acell(ctx, i, ib, i))
    if pre.tgt != fd.snake_word() or post.src != fd.snake_word():
        raise CoherenceError("internal: Frobenius map built around the wrong word")
    return post.mat, pre.mat
