"""Exact rational linear algebra.

Everything here works over arbitrary-precision rationals
(``fractions.Fraction``), stored in lowest terms with positive denominator,
so equality of results is literal equality and "is this zero" is decidable.
Vectors are tuples of Fractions; matrices are dense and row-major.
"""

from fractions import Fraction


def scalar(x) -> Fraction:
    """Coerce ints, strings like "3/4", and Fractions to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError("not an exact scalar: %r" % (x,))


def format_scalar(x: Fraction) -> str:
    """Serialize as "p/q", or just "p" when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


ZERO = Fraction(0)
ONE = Fraction(1)


def vec(entries):
    return tuple(scalar(e) for e in entries)


def vec_zero(n):
    return (ZERO,) * n


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_scale(c, a):
    c = scalar(c)
    return tuple(c * x for x in a)


def vec_is_zero(a) -> bool:
    return all(x == 0 for x in a)


class Matrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        data = tuple(tuple(scalar(e) for e in row) for row in data)
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != self.cols:
                raise ValueError("ragged rows")
        self.data = data

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows, cols):
        m = cls([[ZERO] * cols for _ in range(rows)])
        m.cols = cols  # keep the column count even when there are no rows
        return m

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [tuple(c) for c in columns]
        if not columns:
            return cls.zeros(rows if rows is not None else 0, 0)
        return cls(list(zip(*columns)))

    def column(self, j):
        return tuple(row[j] for row in self.data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self):
        return Matrix(list(zip(*self.data))) if self.rows else Matrix.zeros(self.cols, 0)

    def mul_vec(self, v):
        if len(v) != self.cols:
            raise ValueError("dimension mismatch: %d cols, %d entries" % (self.cols, len(v)))
        nz = [(j, x) for j, x in enumerate(v) if x]
        return tuple(sum((r[j] * x for j, x in nz), ZERO) for r in self.data)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch")
            ot = other.transpose()
            return Matrix([[sum((r[k] * c[k] for k in range(self.cols)), ZERO)
                            for c in ot.data] for r in self.data])
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, Matrix):
            return Matrix([vec_add(r, s) for r, s in zip(self.data, other.data, strict=True)])
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Matrix):
            return Matrix([vec_sub(r, s) for r, s in zip(self.data, other.data, strict=True)])
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return "Matrix(%r)" % ([[format_scalar(e) for e in row] for row in self.data],)

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for row in self.data for e in row)

    def is_zero(self) -> bool:
        return all(e == 0 for row in self.data for e in row)


def rref(m: Matrix):
    """Reduced row echelon form.  Returns (R, pivot column list)."""
    rows = [list(r) for r in m.data]
    pivots = []
    r = 0
    for c in range(m.cols):
        pr = next((i for i in range(r, m.rows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [e / pv if e else e for e in rows[r]]
        for i in range(m.rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b if b else a
                           for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return Matrix(rows), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def det(m: Matrix) -> Fraction:
    if m.rows != m.cols:
        raise ValueError("det of non-square matrix")
    rows = [list(r) for r in m.data]
    n = m.rows
    d = ONE
    for c in range(n):
        pr = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pr is None:
            return ZERO
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            d = -d
        d *= rows[c][c]
        inv = ONE / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return d


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of non-square matrix")
    n = m.rows
    aug = Matrix([list(m.data[i]) + list(Matrix.identity(n).data[i]) for i in range(n)])
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return Matrix([row[n:] for row in red.data])


def kernel_basis(m: Matrix):
    """Basis of the exact null space {v : m v = 0}, as a list of vectors."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * m.cols
        v[fc] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -red.data[i][fc]
        basis.append(tuple(v))
    return basis


def solve_affine(m: Matrix, b):
    """Solve m x = b exactly.

    Returns (particular solution, kernel basis), or None when unsolvable.
    """
    if len(b) != m.rows:
        raise ValueError("right-hand side has wrong length")
    aug = Matrix([list(row) + [bi] for row, bi in zip(m.data, b)])
    red, pivots = rref(aug)
    if m.cols in pivots:
        return None
    x = [ZERO] * m.cols
    for i, pc in enumerate(pivots):
        x[pc] = red.data[i][m.cols]
    x = tuple(x)
    assert m.mul_vec(x) == tuple(b)
    return x, kernel_basis(m)


# ---------------------------------------------------------------------------
# Subspace utilities (row-space form; canonical via RREF)

def echelon_basis(vectors, dim=None):
    """Canonical (RREF) basis of the span of the given vectors."""
    vectors = [tuple(v) for v in vectors if not vec_is_zero(v)]
    if not vectors:
        return []
    red, pivots = rref(Matrix(vectors))
    return [tuple(red.data[i]) for i in range(len(pivots))]


class IncrementalSpan:
    """A growing subspace kept in row echelon form.

    Membership queries and insertions both cost one reduction pass against
    the current rows, which is much cheaper than re-echelonizing from
    scratch when the same span is probed many times.
    """

    def __init__(self, vectors=()):
        self.rows = []    # echelon rows, sorted by pivot column
        self.pivots = []
        for v in vectors:
            self.add(v)

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, v):
        v = list(v)
        for r, p in zip(self.rows, self.pivots):
            f = v[p]
            if f:
                for j in range(p, len(v)):
                    if r[j]:
                        v[j] -= f * r[j]
        return v

    def contains(self, v) -> bool:
        return all(x == 0 for x in self.reduce(v))

    def add(self, v) -> bool:
        """Insert v if independent of the span; True when the span grew."""
        v = self.reduce(v)
        p = next((j for j, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = ONE / v[p]
        row = tuple(x * inv if x else x for x in v)
        at = next((t for t, q in enumerate(self.pivots) if q > p),
                  len(self.pivots))
        self.rows.insert(at, row)
        self.pivots.insert(at, p)
        return True


def span_contains(basis, v) -> bool:
    if vec_is_zero(v):
        return True
    if not basis:
        return False
    return IncrementalSpan(basis).contains(v)


def spans_equal(basis_a, basis_b) -> bool:
    return echelon_basis(basis_a) == echelon_basis(basis_b)


def coords_in_basis(basis, v):
    """Coefficients of v in the given (independent) spanning list, or None."""
    if not basis:
        return () if vec_is_zero(v) else None
    sol = solve_affine(Matrix.from_columns(basis), v)
    return None if sol is None else sol[0]


# ---------------------------------------------------------------------------
# Smith normal form

def smith_normal_form(m: Matrix):
    """Smith normal form of an integer matrix.

    Returns (U, D, V) with U m V = D, U and V unimodular, D diagonal with
    nonnegative entries satisfying d_i | d_{i+1}.
    """
    if not m.is_integral():
        raise ValueError("smith_normal_form requires integral entries")
    a = [[int(e) for e in row] for row in m.data]
    nr, nc = m.rows, m.cols
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(nr, nc):
        # locate a pivot of minimal absolute value in the trailing block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        # clear row and column t by euclidean steps
        dirty = False
        for i in range(t + 1, nr):
            if a[i][t] != 0:
                q = a[i][t] // a[t][t]
                add_row(t, i, -q)
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, nc):
            if a[t][j] != 0:
                q = a[t][j] // a[t][t]
                add_col(t, j, -q)
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility of the remaining block by the pivot
        offender = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    return Matrix(u), Matrix(a), Matrix(v)
