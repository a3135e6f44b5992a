"""Exact linear algebra: matrices, solving, kernels, quotients, tensors.

Matrices are dense row-major lists of field scalars; multiplication
skips zero entries, so permutation-like matrices compose cheaply.  The
Echelon class keeps a reduced row basis with sparse dict rows and is the
single primitive behind rank, solve, kernel, membership and quotient
computations.  Pivot choice is always the smallest column index, so
every result is deterministic.

Convention: the tensor product index of v_i (x) w_j is i*dim_w + j
(row major).  Every coherence map elsewhere relies on this ordering.
"""


class DimensionError(ValueError):
    pass


class Matrix:
    __slots__ = ("field", "nrows", "ncols", "rows", "is_id")

    def __init__(self, field, rows, ncols=None, is_id=False):
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        if ncols is None:
            if not rows:
                raise DimensionError("ncols required for empty matrix")
            ncols = len(rows[0])
        self.ncols = ncols
        self.is_id = is_id   # fast-path marker; identity matrices compose freely
        for r in rows:
            if len(r) != ncols:
                raise DimensionError("ragged rows")

    # -- constructors ------------------------------------------------

    @staticmethod
    def zeros(field, nrows, ncols):
        z = field.zero
        return Matrix(field, [[z] * ncols for _ in range(nrows)], ncols)

    @staticmethod
    def identity(field, n):
        z, o = field.zero, field.one
        rows = [[z] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = o
        return Matrix(field, rows, n, is_id=True)

    @staticmethod
    def from_rows(field, rows, ncols=None):
        return Matrix(field, [list(r) for r in rows], ncols)

    @staticmethod
    def from_cols(field, cols, nrows=None):
        if not cols:
            return Matrix(field, [[] for _ in range(nrows)], 0)
        nrows = len(cols[0])
        z = field.zero
        rows = [[z] * len(cols) for _ in range(nrows)]
        for j, c in enumerate(cols):
            for i, x in enumerate(c):
                rows[i][j] = x
        return Matrix(field, rows, len(cols))

    @staticmethod
    def column(field, vec):
        return Matrix(field, [[x] for x in vec], 1)

    # -- basic ops ---------------------------------------------------

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise DimensionError(
                "compose %dx%d with %dx%d" % (self.nrows, self.ncols, other.nrows, other.ncols))
        if self.is_id:
            return other
        if other.is_id:
            return self
        z = self.field.zero
        out = [[z] * other.ncols for _ in range(self.nrows)]
        orows = other.rows
        for i, row in enumerate(self.rows):
            orow = out[i]
            for k, x in enumerate(row):
                if x:
                    brow = orows[k]
                    for j, y in enumerate(brow):
                        if y:
                            orow[j] = orow[j] + x * y
        return Matrix(self.field, out, other.ncols)

    def __add__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionError("shape mismatch in add")
        z = self.field.zero
        return Matrix(self.field,
                      [[(a + b) if (a or b) else z for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionError("shape mismatch in sub")
        z = self.field.zero
        return Matrix(self.field,
                      [[(a - b) if (a or b) else z for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self):
        return Matrix(self.field, [[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, c):
        return Matrix(self.field, [[c * a for a in r] for r in self.rows], self.ncols)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(tuple(r) for r in self.rows)))

    def is_zero(self):
        return all(not x for r in self.rows for x in r)

    def transpose(self):
        z = self.field.zero
        out = [[z] * self.nrows for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if x:
                    out[j][i] = x
        return Matrix(self.field, out, self.nrows)

    def apply(self, vec):
        """Matrix times column vector (a list)."""
        if len(vec) != self.ncols:
            raise DimensionError("vector length %d, expected %d" % (len(vec), self.ncols))
        z = self.field.zero
        out = [z] * self.nrows
        for i, row in enumerate(self.rows):
            acc = z
            for j, x in enumerate(row):
                if x and vec[j]:
                    acc = acc + x * vec[j]
            out[i] = acc
        return out

    def col(self, j):
        return [r[j] for r in self.rows]

    def kron(self, other):
        """Kronecker product; index of v_i(x)w_j is i*dim_w + j."""
        f = self.field
        if self.is_id and other.is_id:
            return Matrix.identity(f, self.nrows * other.nrows)
        z = f.zero
        nr, nc = self.nrows * other.nrows, self.ncols * other.ncols
        out = [[z] * nc for _ in range(nr)]
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if x:
                    for k, orow in enumerate(other.rows):
                        trow = out[i * other.nrows + k]
                        base = j * other.ncols
                        for l, y in enumerate(orow):
                            if y:
                                trow[base + l] = x * y
        return Matrix(f, out, nc)

    def rank(self):
        ech = Echelon(self.field)
        for row in self.rows:
            ech.insert_list(row)
        return ech.rank

    def inverse(self):
        if self.nrows != self.ncols:
            raise DimensionError("inverse of non-square matrix")
        sol = Echelon(self.field, track=True)
        for j in range(self.ncols):
            if sol.insert_list(self.col(j)) is None:
                raise DimensionError("matrix is singular")
        cols = []
        o = self.field.one
        for i in range(self.nrows):
            res, combo = sol.reduce({i: o})
            if res:
                raise DimensionError("matrix is singular")
            # res = e_i + sum combo[k] col_k, so the solution is -combo
            cols.append(_dict_to_list({k: -v for k, v in combo.items()},
                                      self.ncols, self.field))
        return Matrix.from_cols(self.field, cols, self.nrows)

    def __repr__(self):
        return "Matrix(%dx%d over %r)" % (self.nrows, self.ncols, self.field)


def _dict_to_list(d, n, field):
    out = [field.zero] * n
    for k, v in d.items():
        out[k] = v
    return out


def _list_to_dict(vec):
    return {i: x for i, x in enumerate(vec) if x}


class Echelon:
    """Reduced sparse row echelon with deterministic smallest-index pivots.

    Rows are dicts col->value with the pivot entry normalized to 1 and no
    other pivot columns present, so reduce() is a single pass.  With
    track=True each row also carries its expression over the inserted
    vectors, which yields solve() and kernel combinations for free.
    """

    def __init__(self, field, track=False):
        self.field = field
        self.rows = []          # list of dicts, parallel to combos
        self.pivots = {}        # pivot col -> row index
        self.occupancy = {}     # col -> set of row indices containing it
        self.track = track
        self.combos = []        # expression of each row over inserted vecs
        self.n_inserted = 0

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vd):
        """Reduce a dict vector; returns (residual dict, combo dict)."""
        vd = dict(vd)
        combo = {}
        # one pass: subtracting a row introduces only non-pivot columns
        for c in [c for c in vd if c in self.pivots]:
            coef = vd.get(c)
            if not coef:
                continue
            ri = self.pivots[c]
            row = self.rows[ri]
            for cc, val in row.items():
                nv = vd.get(cc, self.field.zero) - coef * val
                if nv:
                    vd[cc] = nv
                else:
                    vd.pop(cc, None)
            if self.track:
                for k, v in self.combos[ri].items():
                    nv = combo.get(k, self.field.zero) - coef * v
                    if nv:
                        combo[k] = nv
                    else:
                        combo.pop(k, None)
        return vd, combo

    def insert(self, vd):
        """Insert a dict vector; returns pivot col, or None if dependent.

        When dependent and track=True, the combination expressing the
        vector over previously inserted ones is in self.last_combo.
        """
        idx = self.n_inserted
        self.n_inserted += 1
        res, combo = self.reduce(vd)
        if self.track:
            combo[idx] = self.field.one
        if not res:
            self.last_combo = combo
            return None
        p = min(res)
        inv = self.field.one / res[p]
        if inv != self.field.one:
            res = {c: inv * v for c, v in res.items()}
            if self.track:
                combo = {k: inv * v for k, v in combo.items()}
        ri = len(self.rows)
        # back-eliminate the new pivot from existing rows
        holders = self.occupancy.get(p)
        if holders:
            for hi in list(holders):
                row = self.rows[hi]
                coef = row.get(p)
                if not coef:
                    continue
                for cc, val in res.items():
                    nv = row.get(cc, self.field.zero) - coef * val
                    if nv:
                        if cc not in row:
                            self.occupancy.setdefault(cc, set()).add(hi)
                        row[cc] = nv
                    else:
                        if cc in row:
                            del row[cc]
                            self.occupancy[cc].discard(hi)
                if self.track:
                    hc = self.combos[hi]
                    for k, v in combo.items():
                        nv = hc.get(k, self.field.zero) - coef * v
                        if nv:
                            hc[k] = nv
                        else:
                            hc.pop(k, None)
        self.rows.append(res)
        for cc in res:
            self.occupancy.setdefault(cc, set()).add(ri)
        if self.track:
            self.combos.append(combo)
        self.pivots[p] = ri
        self.last_combo = None
        return p

    def insert_list(self, vec):
        return self.insert(_list_to_dict(vec))

    def contains_list(self, vec):
        res, _ = self.reduce(_list_to_dict(vec))
        return not res

    def residual_list(self, vec):
        res, _ = self.reduce(_list_to_dict(vec))
        return res


class Subspace:
    """A subspace given by an independent list of basis vectors."""

    def __init__(self, field, ambient_dim, basis):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = [list(v) for v in basis]
        ech = Echelon(field)
        for v in self.basis:
            if len(v) != ambient_dim:
                raise DimensionError("basis vector of wrong length")
            if ech.insert_list(v) is None:
                raise DimensionError("basis vectors are dependent")
        self._ech = ech

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, vec):
        return self._ech.contains_list(vec)

    def __eq__(self, other):
        if not isinstance(other, Subspace) or self.ambient_dim != other.ambient_dim:
            return False
        return (all(other.contains(v) for v in self.basis)
                and all(self.contains(v) for v in other.basis))


def solve(A, b):
    """One exact solution x of A x = b, or None if inconsistent."""
    if len(b) != A.nrows:
        raise DimensionError("rhs length %d, expected %d" % (len(b), A.nrows))
    ech = Echelon(A.field, track=True)
    for j in range(A.ncols):
        ech.insert_list(A.col(j))
    res, combo = ech.reduce(_list_to_dict(b))
    if res:
        return None
    # res = b + sum combo[k] col_k, so the solution is -combo
    return _dict_to_list({k: -v for k, v in combo.items()}, A.ncols, A.field)


def kernel(A):
    """Basis of the right kernel of A, as a Subspace of the domain."""
    ech = Echelon(A.field, track=True)
    basis = []
    for j in range(A.ncols):
        if ech.insert(_list_to_dict(A.col(j))) is None:
            # 0 = sum_k combo[k] col_k with combo[j] = 1
            basis.append(_dict_to_list(ech.last_combo, A.ncols, A.field))
    return Subspace(A.field, A.ncols, basis)


class Quotient:
    """Quotient of an ambient space by a subspace, with projection and section.

    projection is surjective with kernel exactly the subspace and
    projection @ section is the identity on the quotient.  For large
    ambient spaces use membership (is_zero_class) instead of the
    matrices.
    """

    def __init__(self, field, ambient_dim, relation_vectors, materialize=True):
        self.field = field
        self.ambient_dim = ambient_dim
        ech = Echelon(field)
        for v in relation_vectors:
            ech.insert(v if isinstance(v, dict) else _list_to_dict(v))
        self.ech = ech
        self.pivot_cols = sorted(ech.pivots)
        self.free_cols = [j for j in range(ambient_dim) if j not in ech.pivots]
        self.dim = len(self.free_cols)
        self.projection = None
        self.section = None
        if materialize:
            self._materialize()

    def _materialize(self):
        f = self.field
        if self.ech.rank == 0:
            self.projection = Matrix.identity(f, self.ambient_dim)
            self.section = self.projection
            return
        z, o = f.zero, f.one
        col_index = {c: k for k, c in enumerate(self.free_cols)}
        proj = [[z] * self.ambient_dim for _ in range(self.dim)]
        for j in range(self.ambient_dim):
            res, _ = self.ech.reduce({j: o})
            for c, v in res.items():
                proj[col_index[c]][j] = v
        self.projection = Matrix(f, proj, self.ambient_dim)
        sec = [[z] * self.dim for _ in range(self.ambient_dim)]
        for k, c in enumerate(self.free_cols):
            sec[c][k] = o
        self.section = Matrix(f, sec, self.dim)

    def project_vec(self, vec):
        res, _ = self.ech.reduce(_list_to_dict(vec))
        return _dict_to_list({k: res.get(c, self.field.zero)
                              for k, c in enumerate(self.free_cols)
                              if c in res}, self.dim, self.field)

    def is_zero_class(self, vec):
        res, _ = self.ech.reduce(_list_to_dict(vec))
        return not res

    def residual_rank_of(self, vectors):
        """Rank of the span of the given vectors modulo the subspace."""
        ech = Echelon(self.field)
        for v in vectors:
            res, _ = self.ech.reduce(_list_to_dict(v))
            ech.insert(res)
        return ech.rank


def quotient_by(ambient_dim, subspace):
    """Quotient of an ambient space by a Subspace: (dim, projection, section)."""
    if subspace.ambient_dim != ambient_dim:
        raise DimensionError("subspace ambient dim %d, expected %d"
                             % (subspace.ambient_dim, ambient_dim))
    q = Quotient(subspace.field, ambient_dim, subspace.basis)
    return q.dim, q.projection, q.section


def tensor(A, B):
    """Kronecker product of two maps, row-major index convention."""
    return A.kron(B)


def kron_times(A, B, M):
    """(A (x) B) @ M without materializing the Kronecker product.

    Each column of M is reshaped row-major to an A.ncols x B.ncols block
    X, and the corresponding output column is vec(A @ X @ B^T).
    """
    f = A.field
    if A.nrows * B.nrows == 0 or M.ncols == 0:
        return Matrix(f, [[] for _ in range(A.nrows * B.nrows)], M.ncols)
    BT = None if B.is_id else B.transpose()
    cols = []
    for c in range(M.ncols):
        X = matrix_of_vec(f, M.col(c), A.ncols, B.ncols)
        if A.is_id and BT is None:
            Y = X
        elif A.is_id:
            Y = X @ BT
        elif BT is None:
            Y = A @ X
        else:
            Y = A @ X @ BT
        cols.append(vec_of_matrix(Y))
    return Matrix.from_cols(f, cols, A.nrows * B.nrows)


def vec_of_matrix(M):
    """Row-major flattening of a matrix into a vector."""
    out = []
    for r in M.rows:
        out.extend(r)
    return out


def matrix_of_vec(field, vec, nrows, ncols):
    rows = [list(vec[i * ncols:(i + 1) * ncols]) for i in range(nrows)]
    return Matrix(field, rows, ncols)
