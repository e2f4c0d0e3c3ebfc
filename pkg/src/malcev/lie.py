"""Finite-dimensional Lie algebras given by exact structure constants.

A ``LieAlgebra`` stores the bracket only for basis pairs (i, j) with i < j;
antisymmetry holds by construction, so the only well-definedness condition
left to verify at runtime is the Jacobi identity.  Ideals are explicit lists
of coordinate vectors in the parent's basis, which keeps every downstream
computation linear-algebraic.
"""

from fractions import Fraction

from .linalg import (
    Matrix, ZERO, scalar, format_scalar, vec, vec_add, vec_scale,
    vec_zero, vec_is_zero, echelon_basis, span_contains,
    rank, inverse, IncrementalSpan,
)


class LieAlgebra:
    """Lie algebra over the rationals, by structure constants.

    brackets maps (i, j) with i < j to the coordinate vector of [e_i, e_j];
    missing pairs bracket to zero.  An optional grading assigns a positive
    integer weight to each basis vector; when present, brackets must be
    additive in the weights.
    """

    def __init__(self, dim, brackets, basis_names=None, grading=None):
        self.dim = dim
        self.basis_names = tuple(basis_names) if basis_names else tuple(
            "e%d" % (i + 1) for i in range(dim))
        table = {}
        for (i, j), v in brackets.items():
            if not (0 <= i < j < dim):
                raise ValueError("bad bracket key (%d, %d)" % (i, j))
            v = vec(v)
            if len(v) != dim:
                raise ValueError("bracket value has wrong length")
            if not vec_is_zero(v):
                table[(i, j)] = v
        self.brackets = table
        self.grading = tuple(grading) if grading is not None else None
        if self.grading is not None:
            if len(self.grading) != dim:
                raise ValueError("grading length mismatch")
            self._check_grading()

    def _check_grading(self):
        for (i, j), v in self.brackets.items():
            w = self.grading[i] + self.grading[j]
            for k, c in enumerate(v):
                if c != 0 and self.grading[k] != w:
                    raise ValueError(
                        "bracket [e%d, e%d] not homogeneous of weight %d" % (i, j, w))

    def basis_bracket(self, i, j):
        if i == j:
            return vec_zero(self.dim)
        if i < j:
            return self.brackets.get((i, j), vec_zero(self.dim))
        return vec_scale(-1, self.brackets.get((j, i), vec_zero(self.dim)))

    def bracket(self, x, y):
        """Bilinear antisymmetric expansion of [x, y] in structure constants."""
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("vector length must equal dim=%d" % self.dim)
        out = [ZERO] * self.dim
        for (i, j), v in self.brackets.items():
            xi, yj, xj, yi = x[i], y[j], x[j], y[i]
            c = xi * yj if xi and yj else ZERO
            if xj and yi:
                c = c - xj * yi
            if c != 0:
                for k, e in enumerate(v):
                    if e != 0:
                        out[k] += c * e
        return tuple(out)

    def check_jacobi(self):
        """Return the list of basis triples violating the Jacobi identity."""
        bad = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(j + 1, self.dim):
                    ei = tuple(ZERO if t != i else Fraction(1) for t in range(self.dim))
                    ej = tuple(ZERO if t != j else Fraction(1) for t in range(self.dim))
                    ek = tuple(ZERO if t != k else Fraction(1) for t in range(self.dim))
                    s = vec_add(
                        vec_add(self.bracket(self.bracket(ei, ej), ek),
                                self.bracket(self.bracket(ej, ek), ei)),
                        self.bracket(self.bracket(ek, ei), ej))
                    if not vec_is_zero(s):
                        bad.append((i, j, k))
        return bad

    def basis_vector(self, i):
        return tuple(Fraction(1) if t == i else ZERO for t in range(self.dim))

    def graded_component_indices(self, n):
        if self.grading is None:
            raise ValueError("algebra carries no grading")
        return [i for i, w in enumerate(self.grading) if w == n]

    def to_json(self):
        out = {
            "dim": self.dim,
            "basis": list(self.basis_names),
            "brackets": [
                {"i": i, "j": j, "value": [format_scalar(c) for c in v]}
                for (i, j), v in sorted(self.brackets.items())
            ],
        }
        if self.grading is not None:
            out["grading"] = list(self.grading)
        return out

    @classmethod
    def from_json(cls, obj):
        brackets = {(b["i"], b["j"]): [scalar(c) for c in b["value"]]
                    for b in obj.get("brackets", [])}
        return cls(obj["dim"], brackets, basis_names=obj.get("basis"),
                   grading=obj.get("grading"))


class LieIdeal:
    """Ideal of a LieAlgebra, by an explicit basis in parent coordinates."""

    def __init__(self, parent, basis, check=True):
        self.parent = parent
        self.basis = [tuple(v) for v in echelon_basis(basis, parent.dim)]
        if check and not self.is_ideal():
            raise ValueError("span is not an ideal")

    @property
    def dim(self):
        return len(self.basis)

    def is_ideal(self):
        span = IncrementalSpan(self.basis)
        for i in range(self.parent.dim):
            e = self.parent.basis_vector(i)
            for v in self.basis:
                if not span.contains(self.parent.bracket(e, v)):
                    return False
        return True

    def contains(self, v):
        return span_contains(self.basis, v)


def heisenberg():
    """The 3-dimensional Heisenberg algebra: [e1, e2] = e3, e3 central."""
    return LieAlgebra(3, {(0, 1): (0, 0, 1)}, basis_names=("x", "y", "w"))


def abelian(n):
    return LieAlgebra(n, {})


class NonNilpotentError(ValueError):
    pass


def lower_central_series(L):
    """Descending chain of ideals G_1 = L, G_{n+1} = [L, G_n], down to zero.

    Raises NonNilpotentError when the chain fails to shrink before reaching
    zero, which characterises non-nilpotent input.
    """
    full = [L.basis_vector(i) for i in range(L.dim)]
    chain = [LieIdeal(L, full, check=False)]
    while chain[-1].dim > 0:
        prev = chain[-1]
        gens = []
        for e in full:
            for v in prev.basis:
                gens.append(L.bracket(e, v))
        nxt = LieIdeal(L, gens, check=False)
        if nxt.dim >= prev.dim:
            raise NonNilpotentError("lower central series does not shrink")
        chain.append(nxt)
    return chain


def nilpotency_class(L):
    return len(lower_central_series(L)) - 1


def lcs_dims(L):
    return [t.dim for t in lower_central_series(L)]


class GradedLieAlgebra:
    """Graded Lie algebra: a LieAlgebra with weights, plus filtration data.

    algebra.grading holds the degree of each basis vector; when built from
    associated_graded, from_parent maps the graded basis back to a
    filtration-adapted basis of the original algebra.
    """

    def __init__(self, algebra, from_parent=None):
        if algebra.grading is None:
            raise ValueError("underlying algebra must be graded")
        self.algebra = algebra
        self.from_parent = from_parent  # list of parent-coordinate vectors

    @property
    def dim(self):
        return self.algebra.dim

    def component_dims(self):
        top = max(self.algebra.grading, default=0)
        return [len(self.algebra.graded_component_indices(n))
                for n in range(1, top + 1)]


def adapted_basis(L):
    """Filtration-adapted basis of a nilpotent L.

    Returns (vectors, degrees): vectors form a basis of L where the tail
    vectors of degree >= n span G_n; degrees[i] is the filtration step the
    i-th vector represents.
    """
    chain = lower_central_series(L)
    vectors = []
    degrees = []
    for n in range(len(chain) - 1):
        lower = chain[n + 1].basis
        # extend a basis of G_{n+1} to G_n; the new vectors represent gr_n
        current = IncrementalSpan(lower)
        for v in chain[n].basis:
            if current.add(v):
                vectors.append(v)
                degrees.append(n + 1)
    # order by degree so graded components are contiguous
    order = sorted(range(len(vectors)), key=lambda i: degrees[i])
    return [vectors[i] for i in order], [degrees[i] for i in order]


def associated_graded(L):
    """gr L with gr_n = G_n / G_{n+1} and the induced graded bracket."""
    vectors, degrees = adapted_basis(L)
    basis_matrix = Matrix.from_columns(vectors)
    inv = inverse(basis_matrix)
    dim = L.dim
    brackets = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            w = degrees[i] + degrees[j]
            b = L.bracket(vectors[i], vectors[j])
            coords = inv.mul_vec(b)
            # quotient by the deeper filtration: keep only degree-w coordinates
            out = tuple(c if degrees[k] == w else ZERO for k, c in enumerate(coords))
            if not vec_is_zero(out):
                brackets[(i, j)] = out
    algebra = LieAlgebra(dim, brackets, grading=degrees)
    return GradedLieAlgebra(algebra, from_parent=vectors)


def direct_sum(L1, L2):
    """L1 + L2 with vanishing cross brackets."""
    d1, d2 = L1.dim, L2.dim
    brackets = {}
    for (i, j), v in L1.brackets.items():
        brackets[(i, j)] = tuple(v) + vec_zero(d2)
    for (i, j), v in L2.brackets.items():
        brackets[(d1 + i, d1 + j)] = vec_zero(d1) + tuple(v)
    grading = None
    if L1.grading is not None and L2.grading is not None:
        grading = L1.grading + L2.grading
    names = tuple("a." + n for n in L1.basis_names) + tuple("b." + n for n in L2.basis_names)
    return LieAlgebra(d1 + d2, brackets, basis_names=names, grading=grading)


def check_automorphism(L, m: Matrix) -> bool:
    """True iff m is invertible and m[x, y] = [mx, my] for all basis pairs."""
    if m.rows != L.dim or m.cols != L.dim:
        raise ValueError("matrix must be %d x %d" % (L.dim, L.dim))
    if rank(m) < L.dim:
        return False
    cols = m.columns()
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = m.mul_vec(L.basis_bracket(i, j))
            rhs = L.bracket(cols[i], cols[j])
            if lhs != rhs:
                return False
    return True


def quotient_by_ideal(L, ideal):
    """Quotient algebra L / I on a complement basis.

    Returns (Q, projection) where projection is a Matrix sending parent
    coordinates to quotient coordinates.  The projection is verified to be a
    Lie homomorphism.
    """
    if not ideal.is_ideal():
        raise ValueError("not an ideal")
    comp = []
    current = IncrementalSpan(ideal.basis)
    for i in range(L.dim):
        v = L.basis_vector(i)
        if current.add(v):
            comp.append(v)
    qdim = len(comp)
    # parent coords -> (ideal, complement) coords; keep the complement block
    basis_matrix = Matrix.from_columns(list(ideal.basis) + comp)
    inv = inverse(basis_matrix)
    proj = Matrix(inv.data[len(ideal.basis):]) if qdim else Matrix.zeros(0, L.dim)
    brackets = {}
    for i in range(qdim):
        for j in range(i + 1, qdim):
            v = proj.mul_vec(L.bracket(comp[i], comp[j]))
            if not vec_is_zero(v):
                brackets[(i, j)] = v
    grading = None
    if L.grading is not None:
        # the quotient inherits a grading only if the complement is homogeneous
        degs = []
        homogeneous = True
        for v in comp:
            ws = {L.grading[k] for k, c in enumerate(v) if c != 0}
            if len(ws) != 1:
                homogeneous = False
                break
            degs.append(ws.pop())
        if homogeneous:
            grading = degs
    Q = LieAlgebra(qdim, brackets, grading=grading)
    # verify the projection is a Lie homomorphism
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = proj.mul_vec(L.basis_bracket(i, j))
            rhs = Q.bracket(proj.column(i), proj.column(j))
            assert lhs == rhs, "projection failed to be a homomorphism"
    return Q, proj
