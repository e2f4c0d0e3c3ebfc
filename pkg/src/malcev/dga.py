"""Finite graded-commutative DGAs, cohomology rings, and Massey products.

Degrees run 0..D with dense per-degree bases.  The differential raises
degree by one; products are stored as per-degree-pair tables.  The
Chevalley-Eilenberg functor turns any finite-dimensional Lie algebra into a
test-case DGA whose d^2 = 0 is equivalent to the Jacobi identity.
"""

import itertools
from fractions import Fraction

from .linalg import (
    Matrix, ZERO, scalar, format_scalar, vec_add, vec_scale, vec_sub,
    vec_zero, vec_is_zero, kernel_basis, solve_affine,
    echelon_basis, span_contains,
)


class FiniteDGA:
    """Graded-commutative DGA on finite per-degree bases.

    dims[n] is the dimension in degree n; d[n] the matrix of the
    differential degree n -> n+1; products[(p, q)][i][j] the coordinate
    vector in degree p+q of (i-th degree-p basis) * (j-th degree-q basis).
    Tables are stored for all degree pairs with p + q <= D.
    """

    def __init__(self, dims, d, products, validate=True):
        self.dims = list(dims)
        self.top = len(self.dims) - 1
        self.d = [m if isinstance(m, Matrix) else Matrix(m) for m in d]
        while len(self.d) < self.top + 1:
            self.d.append(Matrix.zeros(self._dim_at(len(self.d) + 1), self.dims[len(self.d)]))
        self.products = {}
        for (p, q), table in products.items():
            self.products[(p, q)] = [[tuple(scalar(c) for c in cell) for cell in row]
                                     for row in table]
        if validate:
            errors = self.validate()
            if errors:
                raise ValueError("DGA axioms violated: " + "; ".join(errors))

    def _dim_at(self, n):
        return self.dims[n] if 0 <= n <= self.top else 0

    def diff(self, n, v):
        if self._dim_at(n + 1) == 0:
            return ()
        return self.d[n].mul_vec(v)

    def product(self, p, vp, q, vq):
        n = p + q
        if n > self.top:
            return ()
        out = [ZERO] * self.dims[n]
        table = self.products.get((p, q))
        if table is None:
            # derive from graded commutativity
            table_qp = self.products.get((q, p))
            if table_qp is None:
                return tuple(out)
            sign = Fraction(-1) ** (p * q)
            for i, a in enumerate(vp):
                if a == 0:
                    continue
                for j, b in enumerate(vq):
                    if b == 0:
                        continue
                    cell = table_qp[j][i]
                    for k, c in enumerate(cell):
                        out[k] += sign * a * b * c
            return tuple(out)
        for i, a in enumerate(vp):
            if a == 0:
                continue
            for j, b in enumerate(vq):
                if b == 0:
                    continue
                cell = table[i][j]
                for k, c in enumerate(cell):
                    out[k] += a * b * c
        return tuple(out)

    def basis_vector(self, n, i):
        return tuple(Fraction(1) if t == i else ZERO for t in range(self.dims[n]))

    def validate(self):
        """Check d^2 = 0, graded commutativity, associativity, Leibniz."""
        errors = []
        for n in range(self.top - 1):
            if not (self.d[n + 1] * self.d[n]).is_zero():
                errors.append("d^2 != 0 at degree %d" % n)
        basis = lambda n: [self.basis_vector(n, i) for i in range(self.dims[n])]
        for p in range(self.top + 1):
            for q in range(self.top + 1 - p):
                sign = Fraction(-1) ** (p * q)
                for i, a in enumerate(basis(p)):
                    for j, b in enumerate(basis(q)):
                        ab = self.product(p, a, q, b)
                        ba = self.product(q, b, p, a)
                        if ab != vec_scale(sign, ba):
                            errors.append("graded commutativity fails at (%d,%d)" % (p, q))
                            break
                    else:
                        continue
                    break
        for p in range(self.top + 1):
            for q in range(self.top + 1 - p):
                for r in range(self.top + 1 - p - q):
                    for a in basis(p):
                        for b in basis(q):
                            for c in basis(r):
                                lhs = self.product(p + q, self.product(p, a, q, b), r, c)
                                rhs = self.product(p, a, q + r, self.product(q, b, r, c))
                                if lhs != rhs:
                                    errors.append(
                                        "associativity fails at (%d,%d,%d)" % (p, q, r))
                                    break
        for p in range(self.top + 1):
            for q in range(self.top - p):
                sign = Fraction(-1) ** p
                for a in basis(p):
                    for b in basis(q):
                        lhs = self.diff(p + q, self.product(p, a, q, b))
                        rhs = vec_add(self.product(p + 1, self.diff(p, a), q, b),
                                      vec_scale(sign, self.product(p, a, q + 1, self.diff(q, b))))
                        if lhs != rhs:
                            errors.append("Leibniz fails at (%d,%d)" % (p, q))
        return sorted(set(errors))

    def to_json(self):
        return {
            "dims": self.dims,
            "d": [[[format_scalar(c) for c in row] for row in m.data] for m in self.d],
            "product": {
                "%d,%d" % key: [[[format_scalar(c) for c in cell] for cell in row]
                                for row in table]
                for key, table in sorted(self.products.items())
            },
        }

    @classmethod
    def from_json(cls, obj):
        products = {}
        for key, table in obj.get("product", {}).items():
            p, q = (int(t) for t in key.split(","))
            products[(p, q)] = table
        return cls(obj["dims"], [Matrix(m) if m else Matrix.zeros(0, 0) for m in obj["d"]],
                   products)


# ---------------------------------------------------------------------------
# Cohomology of a cochain complex

class CohomologyData:
    """Betti numbers and representative bases of a finite cochain complex."""

    def __init__(self, dims, d_mats):
        self.dims = list(dims)
        self.top = len(self.dims) - 1
        self.cocycles = []
        self.coboundaries = []
        self.representatives = []
        for n in range(self.top + 1):
            dn = d_mats[n] if n < len(d_mats) else None
            if dn is None or dn.rows == 0:
                z = [tuple(Fraction(1) if t == i else ZERO for t in range(self.dims[n]))
                     for i in range(self.dims[n])]
            else:
                z = kernel_basis(dn)
            if n == 0 or self.dims[n] == 0:
                b = []
            else:
                prev = d_mats[n - 1]
                b = echelon_basis(prev.transpose().data, self.dims[n]) if prev.rows else []
            self.cocycles.append(z)
            self.coboundaries.append(b)
            reps = []
            cur = list(b)
            for v in z:
                if not span_contains(cur, v):
                    cur.append(v)
                    reps.append(v)
            self.representatives.append(reps)

    def betti(self):
        return [len(r) for r in self.representatives]

    def is_cocycle(self, n, v):
        return span_contains(self.cocycles[n], v) if not vec_is_zero(v) else True

    def is_coboundary(self, n, v):
        return span_contains(self.coboundaries[n], v)

    def class_coordinates(self, n, v):
        """Coordinates of a closed vector's class in the representative basis."""
        cols = list(self.representatives[n]) + list(self.coboundaries[n])
        if not cols:
            assert vec_is_zero(v)
            return ()
        sol = solve_affine(Matrix.from_columns(cols, rows=self.dims[n]), v)
        assert sol is not None, "vector is not a cocycle"
        return sol[0][:len(self.representatives[n])]


def cohomology(dga: FiniteDGA) -> CohomologyData:
    return CohomologyData(dga.dims, dga.d)


def cohomology_ring(dga: FiniteDGA) -> FiniteDGA:
    """H(A) with the induced product and zero differential."""
    H = cohomology(dga)
    dims = H.betti()
    top = dga.top
    products = {}
    for p in range(top + 1):
        for q in range(top + 1 - p):
            table = []
            for a in H.representatives[p]:
                row = []
                for b in H.representatives[q]:
                    ab = dga.product(p, a, q, b)
                    row.append(H.class_coordinates(p + q, ab) if dims[p + q] else ())
                table.append(row)
            products[(p, q)] = table
    d = [Matrix.zeros(dims[n + 1] if n + 1 <= top else 0, dims[n]) for n in range(top)]
    return FiniteDGA(dims, d, products)


def adjoin_acyclic(dga: FiniteDGA, deg: int = 1):
    """A (+) (acyclic two-step piece a, b with da = b) in degrees deg, deg+1.

    All products touching the new coordinates vanish, so the result is a
    valid graded-commutative DGA and the evident inclusion is a
    quasi-isomorphism.  Returns (B, inclusion_matrices).
    """
    if not 0 <= deg < dga.top:
        raise ValueError("need 0 <= deg < top degree")
    dims = list(dga.dims)
    dims[deg] += 1
    dims[deg + 1] += 1
    dmats = []
    for n in range(dga.top):
        rows, cols = (dims[n + 1], dims[n])
        m = [[ZERO] * cols for _ in range(rows)]
        for i in range(dga.dims[n + 1]):
            for j in range(dga.dims[n]):
                m[i][j] = dga.d[n].data[i][j]
        if n == deg:
            m[dims[deg + 1] - 1][dims[deg] - 1] = Fraction(1)
        dmats.append(m)
    products = {}
    for (p, q), table in dga.products.items():
        new_table = []
        for i in range(dims[p]):
            row = []
            for j in range(dims[q]):
                if i < dga.dims[p] and j < dga.dims[q]:
                    cell = table[i][j]
                    row.append(tuple(cell) + (ZERO,) * (dims[p + q] - dga.dims[p + q]))
                else:
                    row.append(vec_zero(dims[p + q]))
            new_table.append(row)
        products[(p, q)] = new_table
    B = FiniteDGA(dims, dmats, products)
    inclusions = []
    for n in range(dga.top + 1):
        m = [[ZERO] * dga.dims[n] for _ in range(dims[n])]
        for i in range(dga.dims[n]):
            m[i][i] = Fraction(1)
        inclusions.append(Matrix(m))
    return B, inclusions


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg complex

def _wedge_single(i, basis_tuple):
    """Insert generator i into a sorted tuple; returns (sign, tuple) or None."""
    if i in basis_tuple:
        return None
    pos = 0
    while pos < len(basis_tuple) and basis_tuple[pos] < i:
        pos += 1
    sign = Fraction(-1) ** pos
    return sign, basis_tuple[:pos] + (i,) + basis_tuple[pos:]


def _wedge_tuples(s, t):
    sign = Fraction(1)
    out = t
    for i in reversed(s):
        step = _wedge_single(i, out)
        if step is None:
            return None
        sg, out = step
        sign *= sg
    return sign, out


def chevalley_eilenberg(L) -> FiniteDGA:
    """Exterior algebra on the dual of L with the differential dual to the
    bracket: d xi^k = - sum_{i<j} c^k_{ij} xi^i ^ xi^j, extended as an odd
    derivation.  d^2 = 0 is equivalent to the Jacobi identity, which is
    verified up front.
    """
    if L.check_jacobi():
        raise ValueError("Jacobi identity fails; CE differential would not square to zero")
    n = L.dim
    bases = [list(itertools.combinations(range(n), k)) for k in range(n + 1)]
    index = [{t: i for i, t in enumerate(bs)} for bs in bases]
    dims = [len(bs) for bs in bases]

    # d on degree-1 generators
    dgen = {}
    for k in range(n):
        out = {}
        for (i, j), v in L.brackets.items():
            c = v[k]
            if c != 0:
                out[(i, j)] = out.get((i, j), ZERO) - c
        dgen[k] = out

    def d_on_tuple(t):
        out = {}
        for pos, g in enumerate(t):
            rest = t[:pos] + t[pos + 1:]
            sign = Fraction(-1) ** pos
            for pair, c in dgen[g].items():
                merged = _wedge_tuples(pair, rest)
                if merged is None:
                    continue
                sg, w = merged
                out[w] = out.get(w, ZERO) + sign * sg * c
        return out

    d_mats = []
    for k in range(n):
        cols = []
        for t in bases[k]:
            col = [ZERO] * dims[k + 1]
            for w, c in d_on_tuple(t).items():
                col[index[k + 1][w]] = c
            cols.append(tuple(col))
        d_mats.append(Matrix.from_columns(cols, rows=dims[k + 1]))

    products = {}
    for p in range(n + 1):
        for q in range(n + 1 - p):
            table = []
            for s in bases[p]:
                row = []
                for t in bases[q]:
                    cell = [ZERO] * dims[p + q]
                    merged = _wedge_tuples(s, t)
                    if merged is not None:
                        sg, w = merged
                        cell[index[p + q][w]] = sg
                    row.append(tuple(cell))
                table.append(row)
            products[(p, q)] = table

    return FiniteDGA(dims, d_mats, products)


# ---------------------------------------------------------------------------
# Massey triple products

class MasseyResult:
    """Triple Massey product: representative class plus indeterminacy.

    The sign convention is <a,b,c> = [a y - (-1)^{|a|} x c] for dx = ab,
    dy = bc; "vanishes" means the representative lies in the indeterminacy
    subspace modulo exact terms, i.e. the full coset meets zero.
    """

    def __init__(self, degree, representative, rep_class, indeterminacy, vanishes):
        self.degree = degree
        self.representative = representative
        self.rep_class = rep_class
        self.indeterminacy = indeterminacy
        self.vanishes = vanishes

    def to_json(self):
        return {
            "degree": self.degree,
            "representative": [format_scalar(c) for c in self.representative],
            "class": [format_scalar(c) for c in self.rep_class],
            "indeterminacy": [[format_scalar(c) for c in v] for v in self.indeterminacy],
            "vanishes": self.vanishes,
        }


class MasseyUndefined(ValueError):
    pass


def massey_triple(dga: FiniteDGA, pa, pb, pc, H=None) -> MasseyResult:
    """Triple Massey product of cocycles a, b, c given as (degree, vector).

    Requires da = db = dc = 0 and both a.b and b.c exact; raises
    MasseyUndefined otherwise.
    """
    H = H or cohomology(dga)
    (p, a), (q, b), (r, c) = pa, pb, pc
    for (n, v) in ((p, a), (q, b), (r, c)):
        dv = dga.diff(n, v)
        if dv and not vec_is_zero(dv):
            raise MasseyUndefined("input in degree %d is not a cocycle" % n)
    ab = dga.product(p, a, q, b)
    bc = dga.product(q, b, r, c)
    sol_x = solve_affine(dga.d[p + q - 1], ab) if dga.dims[p + q] else ((), [])
    sol_y = solve_affine(dga.d[q + r - 1], bc) if dga.dims[q + r] else ((), [])
    if sol_x is None or sol_y is None:
        raise MasseyUndefined("products are not exact; Massey product undefined")
    x = sol_x[0] if dga.dims[p + q] else vec_zero(dga.dims[p + q - 1])
    y = sol_y[0] if dga.dims[q + r] else vec_zero(dga.dims[q + r - 1])
    n_out = p + q + r - 1
    sign = Fraction(-1) ** p
    rep = vec_sub(dga.product(p, a, q + r - 1, y),
                  vec_scale(sign, dga.product(p + q - 1, x, r, c)))
    rep_class = H.class_coordinates(n_out, rep)
    # indeterminacy: a . H^{q+r-1} + H^{p+q-1} . c, as classes
    indet = []
    for h in H.representatives[q + r - 1]:
        indet.append(H.class_coordinates(n_out, dga.product(p, a, q + r - 1, h)))
    for h in H.representatives[p + q - 1]:
        indet.append(H.class_coordinates(n_out, dga.product(p + q - 1, h, r, c)))
    indet = echelon_basis(indet, len(rep_class))
    vanishes = span_contains(indet, rep_class)
    return MasseyResult(n_out, rep, rep_class, indet, vanishes)


def formality_consequence_report(dga: FiniteDGA):
    """Scan degree-1 triple Massey products for formality obstructions.

    Returns (witnesses, undefined_count) where each witness is
    ((i, j, k), MasseyResult) over indices into the H^1 representative basis.
    """
    H = cohomology(dga)
    reps = H.representatives[1] if dga.top >= 1 else []
    witnesses = []
    undefined = 0
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            for k, c in enumerate(reps):
                try:
                    res = massey_triple(dga, (1, a), (1, b), (1, c), H=H)
                except MasseyUndefined:
                    undefined += 1
                    continue
                if not res.vanishes:
                    witnesses.append(((i, j, k), res))
    return witnesses, undefined
