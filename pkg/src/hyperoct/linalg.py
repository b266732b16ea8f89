"""Sparse exact linear algebra.

Vectors and matrices are stored as dictionaries of their nonzero entries and
carry the scalar ring they live over. Elimination over fields is sparse and
incremental; integer work (Smith normal form, lattice membership) is dense
because it is only ever applied to small matrices.
"""

from .scalars import QQ, ZZ


class FreeModuleVector:
    """An element of the free module of rank ``dimension`` over ``ring``."""

    __slots__ = ("dimension", "ring", "entries")

    def __init__(self, dimension, entries=None, ring=QQ):
        self.dimension = dimension
        self.ring = ring
        clean = {}
        if entries:
            for i, x in entries.items():
                if not 0 <= i < dimension:
                    raise IndexError("index %d out of range for dimension %d" % (i, dimension))
                x = ring(x)
                if x != 0:
                    clean[i] = x
        self.entries = clean

    @classmethod
    def _raw(cls, dimension, entries, ring):
        # trusted constructor: entries already coerced and nonzero
        v = cls.__new__(cls)
        v.dimension = dimension
        v.ring = ring
        v.entries = entries
        return v

    @classmethod
    def basis(cls, dimension, i, ring=QQ):
        return cls(dimension, {i: 1}, ring)

    @classmethod
    def zero(cls, dimension, ring=QQ):
        return cls._raw(dimension, {}, ring)

    @classmethod
    def from_list(cls, values, ring=QQ):
        return cls(len(values), {i: x for i, x in enumerate(values)}, ring)

    def to_list(self):
        z = self.ring.zero()
        return [self.entries.get(i, z) for i in range(self.dimension)]

    def __getitem__(self, i):
        return self.entries.get(i, self.ring.zero())

    def __len__(self):
        return self.dimension

    def items(self):
        return sorted(self.entries.items())

    def is_zero(self):
        return not self.entries

    def _check(self, other):
        if self.dimension != other.dimension:
            raise ValueError("dimension mismatch: %d vs %d" % (self.dimension, other.dimension))

    def axpy(self, c, other):
        """Return ``self + c * other``."""
        self._check(other)
        R = self.ring
        out = dict(self.entries)
        for i, x in other.entries.items():
            y = R.add(out.get(i, 0), R.mul(c, x))
            if y == 0:
                out.pop(i, None)
            else:
                out[i] = y
        return FreeModuleVector._raw(self.dimension, out, R)

    def __add__(self, other):
        return self.axpy(self.ring.one(), other)

    def __sub__(self, other):
        return self.axpy(self.ring.neg(self.ring.one()), other)

    def __neg__(self):
        return self.scale(self.ring.neg(self.ring.one()))

    def scale(self, c):
        R = self.ring
        c = R(c)
        if c == 0:
            return FreeModuleVector.zero(self.dimension, R)
        out = {}
        for i, x in self.entries.items():
            y = R.mul(c, x)
            if y != 0:
                out[i] = y
        return FreeModuleVector._raw(self.dimension, out, R)

    def __eq__(self, other):
        if not isinstance(other, FreeModuleVector):
            return NotImplemented
        return self.dimension == other.dimension and self.entries == other.entries

    def __hash__(self):
        return hash((self.dimension, tuple(self.items())))

    def __repr__(self):
        return "FreeModuleVector(%d, %r, %s)" % (self.dimension, dict(self.items()), self.ring)


class SparseMatrix:
    """A ``rows x cols`` matrix with entries in ``ring``."""

    __slots__ = ("rows", "cols", "ring", "entries")

    def __init__(self, rows, cols, entries=None, ring=QQ):
        self.rows = rows
        self.cols = cols
        self.ring = ring
        clean = {}
        if entries:
            for (i, j), x in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexError("entry (%d, %d) out of range" % (i, j))
                x = ring(x)
                if x != 0:
                    clean[i, j] = x
        self.entries = clean

    @classmethod
    def from_dense(cls, rows, ring=QQ, cols=None):
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError("ragged dense matrix")
            for j, x in enumerate(row):
                entries[i, j] = x
        return cls(len(rows), cols, entries, ring)

    @classmethod
    def from_columns(cls, columns, rows, ring=QQ):
        entries = {}
        for j, v in enumerate(columns):
            if v.dimension != rows:
                raise ValueError("column %d has dimension %d, expected %d" % (j, v.dimension, rows))
            for i, x in v.entries.items():
                entries[i, j] = x
        return cls(rows, len(columns), entries, ring)

    @classmethod
    def identity(cls, n, ring=QQ):
        return cls(n, n, {(i, i): 1 for i in range(n)}, ring)

    @classmethod
    def zero(cls, rows, cols, ring=QQ):
        return cls(rows, cols, None, ring)

    def over(self, ring):
        """The same matrix with entries coerced into another ring."""
        if ring == self.ring:
            return self
        return SparseMatrix(self.rows, self.cols, self.entries, ring)

    def to_dense(self):
        z = self.ring.zero()
        out = [[z] * self.cols for _ in range(self.rows)]
        for (i, j), x in self.entries.items():
            out[i][j] = x
        return out

    def triplets(self):
        return sorted((i, j, x) for (i, j), x in self.entries.items())

    def column_dicts(self):
        cols = [dict() for _ in range(self.cols)]
        for (i, j), x in self.entries.items():
            cols[j][i] = x
        return cols

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (i, j), x in self.entries.items():
            rows[i][j] = x
        return rows

    def column(self, j):
        return FreeModuleVector._raw(
            self.rows, {i: x for (i, jj), x in self.entries.items() if jj == j}, self.ring
        )

    def columns(self):
        return [FreeModuleVector._raw(self.rows, c, self.ring) for c in self.column_dicts()]

    def transpose(self):
        return SparseMatrix(self.cols, self.rows, {(j, i): x for (i, j), x in self.entries.items()}, self.ring)

    def is_zero(self):
        return not self.entries

    def __matmul__(self, other):
        R = self.ring
        if isinstance(other, FreeModuleVector):
            if other.dimension != self.cols:
                raise ValueError("shape mismatch")
            out = {}
            for (i, j), x in self.entries.items():
                y = other.entries.get(j)
                if y is not None:
                    out[i] = R.add(out.get(i, 0), R.mul(x, y))
            return FreeModuleVector(self.rows, out, R)
        if self.cols != other.rows:
            raise ValueError("shape mismatch: %dx%d @ %dx%d" % (self.rows, self.cols, other.rows, other.cols))
        by_row = other.row_dicts()
        out = {}
        for (i, j), x in self.entries.items():
            for k, y in by_row[j].items():
                out[i, k] = R.add(out.get((i, k), 0), R.mul(x, y))
        return SparseMatrix(self.rows, other.cols, out, R)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.triplets())))

    def __repr__(self):
        return "SparseMatrix(%d, %d, %d nonzeros, %s)" % (self.rows, self.cols, len(self.entries), self.ring)


# -- elimination over fields ------------------------------------------------


def _field(ring):
    # rank over Z is rank over its fraction field
    return QQ if ring == ZZ else ring


def _axpy_dict(v, c, w, R):
    for k, x in w.items():
        y = R.add(v.get(k, 0), R.mul(c, x))
        if y == 0:
            v.pop(k, None)
        else:
            v[k] = y


def _insert_echelon(basis, v, R):
    """Reduce ``v`` (a dict) by leading terms; add it to ``basis`` if independent.

    ``basis`` maps a pivot index to a row whose smallest index is that pivot
    and whose pivot coefficient is one.
    """
    while v:
        lead = min(v)
        row = basis.get(lead)
        if row is None:
            c = R.inv(v[lead])
            basis[lead] = {k: R.mul(c, x) for k, x in v.items()}
            return True
        _axpy_dict(v, R.neg(v[lead]), row, R)
    return False


def rank(M, ring=None):
    """Rank of ``M`` over ``ring`` (default: the matrix's own ring)."""
    R = _field(ring or M.ring)
    M = M.over(R)
    vectors = M.column_dicts() if M.cols >= M.rows else M.row_dicts()
    basis = {}
    r = 0
    full = min(M.rows, M.cols)
    for v in vectors:
        if r == full:
            break
        if _insert_echelon(basis, dict(v), R):
            r += 1
    return r


def rref_rows(rows, R):
    """Reduced row echelon form of a list of row dicts.

    Returns a dict ``pivot -> row`` where every row has a one at its pivot and
    zeros at every other pivot.
    """
    basis = {}
    for v in rows:
        v = dict(v)
        hit = [p for p in v if p in basis]
        while hit:
            for p in hit:
                if p in v:
                    _axpy_dict(v, R.neg(v[p]), basis[p], R)
            hit = [p for p in v if p in basis]
        if not v:
            continue
        lead = min(v)
        c = R.inv(v[lead])
        v = {k: R.mul(c, x) for k, x in v.items()}
        for row in basis.values():
            x = row.get(lead)
            if x is not None:
                _axpy_dict(row, R.neg(x), v, R)
        basis[lead] = v
    return dict(sorted(basis.items()))


def kernel_basis(M, ring=None):
    """Basis of ``{x : M x = 0}``, one vector per non-pivot column."""
    R = _field(ring or M.ring)
    M = M.over(R)
    piv = rref_rows(M.row_dicts(), R)
    out = []
    for f in range(M.cols):
        if f in piv:
            continue
        v = {f: R.one()}
        for p, row in piv.items():
            x = row.get(f)
            if x is not None:
                v[p] = R.neg(x)
        out.append(FreeModuleVector._raw(M.cols, v, R))
    return out


def image_basis(M, ring=None):
    """Echelon basis of the column space of ``M``."""
    R = _field(ring or M.ring)
    M = M.over(R)
    piv = rref_rows(M.column_dicts(), R)
    return [FreeModuleVector._raw(M.rows, row, R) for row in piv.values()]


# -- integer algorithms ------------------------------------------------------


def xgcd(a, b):
    """Return ``(x, y, g)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


class IntegerLattice:
    """Hermite-style echelon basis of a sublattice of ``Z^dim``."""

    def __init__(self, dim):
        self.dim = dim
        self.basis = {}

    def _reduce(self, v, insert):
        v = list(v)
        for p in range(self.dim):
            c = v[p]
            if c == 0:
                continue
            b = self.basis.get(p)
            if b is None:
                if not insert:
                    return v
                if c < 0:
                    v = [-x for x in v]
                self.basis[p] = v
                return None
            a = b[p]
            if c % a == 0:
                q = c // a
                v = [vi - q * bi for vi, bi in zip(v, b)]
                continue
            if not insert:
                return v
            x, y, g = xgcd(a, c)
            self.basis[p] = [x * bi + y * vi for bi, vi in zip(b, v)]
            v = [(a // g) * vi - (c // g) * bi for bi, vi in zip(b, v)]
        return None if insert else v

    def add(self, v):
        self._reduce(v, True)

    def contains(self, v):
        rest = self._reduce(v, False)
        return rest is not None and not any(rest)

    def generators(self):
        return [self.basis[p] for p in sorted(self.basis)]


def _snf_dense(A, r, c, with_transforms):
    U = [[int(i == j) for j in range(r)] for i in range(r)] if with_transforms else None
    V = [[int(i == j) for j in range(c)] for i in range(c)] if with_transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        if V is not None:
            for row in V:
                row[dst] += q * row[src]

    factors = []
    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, r):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // piv))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, c):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // piv))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                # a smaller remainder exists in row or column t: make it the pivot
                best = (abs(piv), t, t)
                for i in range(t + 1, r):
                    if A[i][t] and abs(A[i][t]) < best[0]:
                        best = (abs(A[i][t]), i, t)
                for j in range(t + 1, c):
                    if A[t][j] and abs(A[t][j]) < best[0]:
                        best = (abs(A[t][j]), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if A[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        factors.append(A[t][t])
        t += 1
    return factors, U, V


def smith_normal_form(M, transforms=True):
    """Smith normal form of an integer matrix.

    Returns ``(factors, U, V)`` where ``factors`` are the positive invariant
    factors ``d_1 | d_2 | ...`` and ``U @ M @ V`` is the diagonal matrix with
    those entries. ``U`` and ``V`` are ``None`` when ``transforms`` is false.
    """
    r, c = M.rows, M.cols
    A = [[int(x) for x in row] for row in M.over(ZZ).to_dense()]
    if not transforms and c > r:
        # only the column lattice matters for the invariant factors
        lat = IntegerLattice(r)
        for col in zip(*A) if A else ():
            if any(col):
                lat.add(col)
        gens = lat.generators()
        A = [list(row) for row in zip(*gens)] if gens else [[] for _ in range(r)]
        c = len(gens)
    factors, U, V = _snf_dense(A, r, c, transforms)
    if not transforms:
        return factors, None, None
    return factors, SparseMatrix.from_dense(U, ZZ, r), SparseMatrix.from_dense(V, ZZ, M.cols)


def integer_determinant(M):
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    n = M.rows
    if n != M.cols:
        raise ValueError("determinant of a non-square matrix")
    A = [[int(x) for x in row] for row in M.over(ZZ).to_dense()]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


# -- cokernels ---------------------------------------------------------------


class CokernelPresentation:
    """The quotient of ``ring^ambient_dimension`` by the columns of ``relations``.

    Over a field the quotient basis is the set of non-pivot coordinates of the
    reduced echelon form of the relation span, and ``projection`` maps the
    ambient module onto those coordinates. Over the integers the quotient is
    described by its free rank and torsion invariant factors.
    """

    def __init__(self, relations, ring=None):
        R = ring or relations.ring
        self.ring = R
        self.relations = relations.over(R)
        self.ambient_dimension = relations.rows
        self._lattice = None
        if R.is_field:
            self._rref = rref_rows(self.relations.column_dicts(), R)
            self.quotient_basis = [i for i in range(self.ambient_dimension) if i not in self._rref]
            self.quotient_dimension = len(self.quotient_basis)
            self.rank = len(self._rref)
            pos = {b: k for k, b in enumerate(self.quotient_basis)}
            self._position = pos
            entries = {}
            for i in range(self.ambient_dimension):
                if i in pos:
                    entries[pos[i], i] = R.one()
                else:
                    for c, x in self._rref[i].items():
                        if c in pos:
                            entries[pos[c], i] = R.neg(x)
            self.projection = SparseMatrix(self.quotient_dimension, self.ambient_dimension, entries, R)
            self.invariant_factors = None
            self.free_rank = self.quotient_dimension
            self.torsion = []
        else:
            factors, _, _ = smith_normal_form(self.relations, transforms=False)
            self.invariant_factors = factors
            self.rank = len(factors)
            self.free_rank = self.ambient_dimension - len(factors)
            self.torsion = [d for d in factors if d != 1]
            self.quotient_dimension = None
            self.quotient_basis = None
            self.projection = None

    def project(self, v):
        """Coordinates of the class of ``v`` in the quotient basis (fields only)."""
        if self.projection is None:
            raise ValueError("quotient coordinates are only available over a field")
        return self.projection @ v

    def lift(self, coords):
        R = self.ring
        return FreeModuleVector(
            self.ambient_dimension, {self.quotient_basis[k]: x for k, x in coords.entries.items()}, R
        )

    def in_relations(self, v):
        if self.projection is not None:
            return self.project(v).is_zero()
        if self._lattice is None:
            self._lattice = IntegerLattice(self.ambient_dimension)
            for col in self.relations.columns():
                if not col.is_zero():
                    self._lattice.add(col.to_list())
        return self._lattice.contains([int(x) for x in v.to_list()])


def cokernel(M, ring=None):
    return CokernelPresentation(M, ring)
