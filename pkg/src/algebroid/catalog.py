"""Built-in examples: algebras, ring extensions and their Frobenius data.

Group algebras ship the coefficient-of-unit Frobenius map with the
quasi-basis of (coset representative, inverse) pairs; the matrix algebra
ships the trace with the matrix-unit quasi-basis.
"""

from .linalg import Matrix
from .scalars import QQ
from .monoidal import VecCategory, CoherenceError
from .bimodules import Monoid, InternalBimodule
from .cells import CellContext, TwoCell, gen, id0, H
from .frobenius import FrobeniusDatum


def group_mul_table(field, elements, compose):
    """Free-level multiplication table of a group algebra."""
    n = len(elements)
    index = {g: k for k, g in enumerate(elements)}
    cols = []
    for a in range(n):
        for b in range(n):
            v = [field.zero] * n
            v[index[compose(elements[a], elements[b])]] = field.one
            cols.append(v)
    return Matrix.from_cols(field, cols, n)


def cyclic_elements(n):
    return list(range(n))


def cyclic_compose(n):
    return lambda a, b: (a + b) % n


def s3_elements():
    return [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]


def s3_compose(a, b):
    return tuple(a[b[i]] for i in range(3))


def matrix_units_mul_table(field, n):
    """Multiplication table of the n x n matrix algebra in the unit basis
    e_(i,j) at index i*n + j."""
    d = n * n
    cols = []
    for a in range(d):
        i, j = divmod(a, n)
        for b in range(d):
            k, l = divmod(b, n)
            v = [field.zero] * d
            if j == k:
                v[i * n + l] = field.one
            cols.append(v)
    return Matrix.from_cols(field, cols, d)


def matrix_algebra_unit(field, n):
    v = [field.zero] * (n * n)
    for i in range(n):
        v[i * n + i] = field.one
    return v


def group_algebra_unit(field, elements, identity):
    v = [field.zero] * len(elements)
    v[elements.index(identity)] = field.one
    return v


class Extension:
    """A ring extension with a Frobenius system: base N, total M, the
    embedding N -> M, the Frobenius map phi: M -> N, and quasi-basis
    pairs (y_j, x_j) with sum_j y_j phi(x_j m) = m = sum_j phi(m y_j) x_j."""

    def __init__(self, name, field, n_mul, n_unit, m_mul, m_unit, embed, phi, qb_pairs):
        self.name = name
        self.field = field
        self.n_mul = n_mul
        self.n_unit = n_unit
        self.m_mul = m_mul
        self.m_unit = m_unit
        self.embed = embed
        self.phi = phi
        self.qb_pairs = qb_pairs

    def context(self):
        """Build the bimodule context and the Frobenius datum of the extension."""
        f = self.field
        cat = VecCategory(f)
        N = Monoid.from_mul_table(cat, self.n_mul, self.n_unit, "N")
        M = Monoid.from_mul_table(cat, self.m_mul, self.m_unit, "M")
        dm = M.dim

        def leftmult(v):
            cols = [M.product(v, _unit_vec(f, dm, m)) for m in range(dm)]
            return Matrix.from_cols(f, cols, dm)

        def rightmult(v):
            cols = [M.product(_unit_vec(f, dm, m), v) for m in range(dm)]
            return Matrix.from_cols(f, cols, dm)

        emb_cols = [self.embed.col(k) for k in range(N.dim)]
        iota = InternalBimodule.from_action_mats(
            cat, N, M, cat.obj(dm),
            [leftmult(c) for c in emb_cols],
            [rightmult(_unit_vec(f, dm, m)) for m in range(dm)], name="i")
        ibar = InternalBimodule.from_action_mats(
            cat, M, N, cat.obj(dm),
            [leftmult(_unit_vec(f, dm, m)) for m in range(dm)],
            [rightmult(c) for c in emb_cols], name="ibar")
        ctx = CellContext(cat)
        ctx.add_monoid("N", N)
        ctx.add_monoid("M", M)
        ctx.add_gen("i", iota)
        ctx.add_gen("ibar", ibar)
        i, ib = gen("i"), gen("ibar")
        W = ctx.realize(H(i, ib)).tens
        BW = ctx.realize(H(ib, i)).tens

        # ev_R = the Frobenius map on the collapsed composite
        free = Matrix.from_cols(
            f, [self.phi.apply(M.product(_unit_vec(f, dm, a), _unit_vec(f, dm, b)))
                for a in range(dm) for b in range(dm)], N.dim)
        ev_R = TwoCell(ctx, H(i, ib), id0("N"), free @ W.incl_free)
        _assert_descends(ev_R.mat, W.proj_free, free, "ev_R")

        # coev_R sends the unit to the quasi-basis tensor
        cols = []
        for u in range(dm):
            v = [f.zero] * (dm * dm)
            for y, x in self.qb_pairs:
                uy = M.product(_unit_vec(f, dm, u), y)
                for a, va in enumerate(uy):
                    if va:
                        for b, vb in enumerate(x):
                            if vb:
                                v[a * dm + b] = v[a * dm + b] + va * vb
            cols.append(v)
        coev_R = TwoCell(ctx, id0("M"), H(ib, i),
                         BW.proj_free @ Matrix.from_cols(f, cols, dm))

        # ev_L is the multiplication
        mul_free = self.m_mul
        ev_L = TwoCell(ctx, H(ib, i), id0("M"), mul_free @ BW.incl_free)
        _assert_descends(ev_L.mat, BW.proj_free, mul_free, "ev_L")

        # coev_L embeds the base unitally
        cols = []
        for k in range(N.dim):
            v = [f.zero] * (dm * dm)
            for a, va in enumerate(emb_cols[k]):
                if va:
                    for b, vb in enumerate(self.m_unit):
                        if vb:
                            v[a * dm + b] = va * vb
            cols.append(v)
        coev_L = TwoCell(ctx, id0("N"), H(i, ib),
                         W.proj_free @ Matrix.from_cols(f, cols, N.dim))
        return ctx, FrobeniusDatum(ctx, i, ib, ev_R, coev_R, ev_L, coev_L)


def _unit_vec(field, n, k):
    v = [field.zero] * n
    v[k] = field.one
    return v


def _assert_descends(mat, proj_free, free, name):
    if mat @ proj_free != free:
        raise CoherenceError("%s is not constant on tensor classes" % name)


def _group_extension(name, field, elements, compose, identity, sub_elements=None,
                     sub_compose=None, sub_identity=None, embed_map=None):
    m_mul = group_mul_table(field, elements, compose)
    m_unit = group_algebra_unit(field, elements, identity)
    n = len(elements)
    index = {g: k for k, g in enumerate(elements)}
    if sub_elements is None:
        # base field extension
        n_mul = Matrix(field, [[field.one]], 1)
        n_unit = [field.one]
        embed = Matrix.from_cols(field, [m_unit], n)
        phi_cols = [[field.one if g == identity else field.zero] for g in elements]
        phi = Matrix(field, [[c[0] for c in phi_cols]], n)
        reps = elements
    else:
        n_mul = group_mul_table(field, sub_elements, sub_compose)
        n_unit = group_algebra_unit(field, sub_elements, sub_identity)
        embed = Matrix.from_cols(
            field, [_unit_vec(field, n, index[embed_map(h)]) for h in sub_elements], n)
        sub_image = {embed_map(h): k for k, h in enumerate(sub_elements)}
        cols = []
        for g in elements:
            v = [field.zero] * len(sub_elements)
            if g in sub_image:
                v[sub_image[g]] = field.one
            cols.append(v)
        phi = Matrix.from_cols(field, cols, len(sub_elements))
        image = set(sub_image)
        reps = []
        covered = set()
        for g in elements:
            # left coset representatives of the embedded subgroup
            coset = frozenset(compose(g, h) for h in image)
            if coset not in covered:
                covered.add(coset)
                reps.append(g)
    inv = {}
    for g in elements:
        for h in elements:
            if compose(g, h) == identity:
                inv[g] = h
    qb_pairs = [(_unit_vec(field, n, index[r]), _unit_vec(field, n, index[inv[r]]))
                for r in reps]
    return Extension(name, field, n_mul, n_unit, m_mul, m_unit, embed, phi, qb_pairs)


def extension_trivial(field=QQ):
    one = Matrix(field, [[field.one]], 1)
    return Extension("trivial", field, one, [field.one], one, [field.one],
                     Matrix(field, [[field.one]], 1), Matrix(field, [[field.one]], 1),
                     [([field.one], [field.one])])


def extension_qc2(field=QQ):
    return _group_extension("qc2", field, cyclic_elements(2), cyclic_compose(2), 0)


def extension_qs3(field=QQ):
    return _group_extension("qs3", field, s3_elements(), s3_compose, (0, 1, 2))


def extension_qc2_in_qc4(field=QQ):
    return _group_extension(
        "qc2-in-qc4", field, cyclic_elements(4), cyclic_compose(4), 0,
        sub_elements=cyclic_elements(2), sub_compose=cyclic_compose(2),
        sub_identity=0, embed_map=lambda h: (2 * h) % 4)


def extension_mat2(field=QQ):
    n = 2
    d = n * n
    m_mul = matrix_units_mul_table(field, n)
    m_unit = matrix_algebra_unit(field, n)
    one = Matrix(field, [[field.one]], 1)
    embed = Matrix.from_cols(field, [m_unit], d)
    # trace functional
    tr = [field.zero] * d
    for i in range(n):
        tr[i * n + i] = field.one
    phi = Matrix(field, [tr], d)
    qb_pairs = []
    for k in range(n):
        for l in range(n):
            qb_pairs.append((_unit_vec(field, d, k * n + l), _unit_vec(field, d, l * n + k)))
    return Extension("mat2", field, one, [field.one], m_mul, m_unit, embed, phi, qb_pairs)


EXTENSIONS = {
    "trivial": extension_trivial,
    "qc2": extension_qc2,
    "qc2-in-qc4": extension_qc2_in_qc4,
    "mat2": extension_mat2,
    "qs3": extension_qs3,
}


# ---------------------------------------------------------------------------
# catalog Hopf algebroids over the trivial base


def group_hopf_algebroid(field, elements, compose, identity, name):
    """A group algebra as a Hopf algebroid over the one dimensional base:
    group-like coproduct, counit sending every group element to 1, and
    antipode induced by inversion."""
    from .hopf import RingData, BialgebroidSide, HopfAlgebroid, ring_from_mul_matrix
    n = len(elements)
    total = ring_from_mul_matrix(
        field, group_mul_table(field, elements, compose),
        group_algebra_unit(field, elements, identity), name)
    base = RingData(field, [[[field.one]]], [field.one], "k")
    s = Matrix.column(field, total.unit)
    pi = Matrix(field, [[field.one] * n], n)
    gamma = Matrix.zeros(field, n * n, n)
    for g in range(n):
        gamma.rows[g * n + g][g] = field.one
    index = {g: k for k, g in enumerate(elements)}
    inv = {}
    for g in elements:
        for hh in elements:
            if compose(g, hh) == identity:
                inv[g] = hh
    S = Matrix.zeros(field, n, n)
    for k, g in enumerate(elements):
        S.rows[index[inv[g]]][k] = field.one
    left = BialgebroidSide("left", total, base, s, s, gamma, pi)
    right = BialgebroidSide("right", total, base, s, s, gamma, pi)
    return HopfAlgebroid(left, right, S, base_anti_iso=Matrix.identity(field, 1),
                         name=name)


def hopf_qc2(field=QQ):
    """The order-two group algebra with its two-sided integral 1 + g."""
    h = group_hopf_algebroid(field, cyclic_elements(2), cyclic_compose(2), 0, "qc2")
    return h, [field.one, field.one]


def hopf_qc4(field=QQ):
    h = group_hopf_algebroid(field, cyclic_elements(4), cyclic_compose(4), 0, "qc4")
    return h, [field.one, field.one, field.one, field.one]


def hopf_fnc2(field=QQ):
    """Functions on the order-two group, with integral the delta at the unit."""
    from .hopf import RingData, BialgebroidSide, HopfAlgebroid
    table = [[[field.one, field.zero], [field.zero, field.zero]],
             [[field.zero, field.zero], [field.zero, field.one]]]
    total = RingData(field, table, [field.one, field.one], "fnc2")
    base = RingData(field, [[[field.one]]], [field.one], "k")
    s = Matrix.column(field, total.unit)
    pi = Matrix(field, [[field.one, field.zero]], 2)
    gamma = Matrix.zeros(field, 4, 2)
    # delta_1 -> d1 (x) d1 + dg (x) dg ; delta_g -> d1 (x) dg + dg (x) d1
    gamma.rows[0][0] = field.one
    gamma.rows[3][0] = field.one
    gamma.rows[1][1] = field.one
    gamma.rows[2][1] = field.one
    S = Matrix.identity(field, 2)
    left = BialgebroidSide("left", total, base, s, s, gamma, pi)
    right = BialgebroidSide("right", total, base, s, s, gamma, pi)
    h = HopfAlgebroid(left, right, S, base_anti_iso=Matrix.identity(field, 1),
                      name="fnc2")
    return h, [field.one, field.zero]


HOPF_ALGEBROIDS = {
    "hopf-qc2": hopf_qc2,
    "hopf-fnc2": hopf_fnc2,
}
