"""Unipotent group arithmetic via the Campbell-Baker-Hausdorff formula.

The BCH product is computed by the associative-envelope method: multiply the
exponentials of two formal generators in the class-truncated free associative
algebra, take the logarithm, and express the resulting Lie series in Hall
coordinates by solving the embedding system degree by degree.  The universal
expansion is cached per class and then evaluated in any nilpotent algebra by
substituting structure constants, so the same code is correct for every
class bound.
"""

import functools
from fractions import Fraction

from .linalg import (
    Matrix, ZERO, vec_add, vec_scale, vec_zero, vec_is_zero, inverse,
    solve_affine, smith_normal_form,
)
from .lie import LieAlgebra, nilpotency_class, check_automorphism
from .freelie import hall_basis, degree


# ---------------------------------------------------------------------------
# Truncated free associative algebra on two symbols

def _assoc_mul(a, b, c):
    out = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            if len(wa) + len(wb) <= c:
                w = wa + wb
                out[w] = out.get(w, ZERO) + ca * cb
    return {w: v for w, v in out.items() if v != 0}


def _assoc_exp(x, c):
    # x must have no constant term; the series terminates at class c
    out = {(): Fraction(1)}
    term = {(): Fraction(1)}
    fact = 1
    for n in range(1, c + 1):
        term = _assoc_mul(term, x, c)
        if not term:
            break
        fact *= n
        for w, v in term.items():
            out[w] = out.get(w, ZERO) + v / fact
    return {w: v for w, v in out.items() if v != 0}


def _assoc_log(x, c):
    # x must have constant term 1
    z = dict(x)
    z[()] = z.get((), ZERO) - 1
    z = {w: v for w, v in z.items() if v != 0}
    out = {}
    term = {(): Fraction(1)}
    sign = 1
    for n in range(1, c + 1):
        term = _assoc_mul(term, z, c)
        if not term:
            break
        for w, v in term.items():
            out[w] = out.get(w, ZERO) + sign * v / n
        sign = -sign
    return {w: v for w, v in out.items() if v != 0}


def _word_embed(w, c):
    """Associative expansion of a Hall word via [a, b] = ab - ba."""
    if isinstance(w, int):
        return {(w,): Fraction(1)}
    a = _word_embed(w[0], c)
    b = _word_embed(w[1], c)
    out = _assoc_mul(a, b, c)
    for word, v in _assoc_mul(b, a, c).items():
        out[word] = out.get(word, ZERO) - v
    return {word: v for word, v in out.items() if v != 0}


@functools.lru_cache(maxsize=None)
def bch_universal(c):
    """Hall coordinates of log(exp X . exp Y) on two generators, class c.

    Returns a list of (hall_word, coefficient) pairs; the class-2 truncation
    is X + Y + 1/2 [X, Y].
    """
    X = {(0,): Fraction(1)}
    Y = {(1,): Fraction(1)}
    z = _assoc_log(_assoc_mul(_assoc_exp(X, c), _assoc_exp(Y, c), c), c)
    groups = hall_basis(2, c)
    coeffs = []
    for n in range(1, c + 1):
        words = groups[n - 1]
        assoc_words = sorted({w for w in z if len(w) == n})
        target = [z.get(w, ZERO) for w in assoc_words]
        cols = []
        for hw in words:
            emb = _word_embed(hw, c)
            cols.append(tuple(emb.get(w, ZERO) for w in assoc_words))
        if not assoc_words:
            continue
        sol = solve_affine(Matrix.from_columns(cols, rows=len(assoc_words)), target)
        assert sol is not None, "logarithm failed to be a Lie element"
        for hw, cf in zip(words, sol[0]):
            if cf != 0:
                coeffs.append((hw, cf))
    return tuple(coeffs)


def _eval_word(w, x, y, L):
    if isinstance(w, int):
        return x if w == 0 else y
    return L.bracket(_eval_word(w[0], x, y, L), _eval_word(w[1], x, y, L))


def bch(x, y, L: LieAlgebra, cls=None):
    """Group product log(exp x . exp y) in a nilpotent Lie algebra."""
    c = cls if cls is not None else nilpotency_class(L)
    out = vec_zero(L.dim)
    for w, cf in bch_universal(c):
        out = vec_add(out, vec_scale(cf, _eval_word(w, x, y, L)))
    return out


def group_inverse(x, L=None):
    """Inverse in the exp group; exp(-x) since bch(x, -x) = 0 termwise."""
    return vec_scale(-1, x)


# ---------------------------------------------------------------------------
# Semidirect products exp(u) x| G

class SemidirectElement:
    """Element (n, g) of exp(u) x| G: unipotent log part plus an automorphism.

    The action convention is fixed as (n1, g1)(n2, g2) = (bch(n1, g1 n2), g1 g2),
    i.e. the automorphism part acts on the left.
    """

    def __init__(self, L, log, aut=None, check=False, cls=None):
        self.L = L
        self.log = tuple(log)
        self.aut = aut if aut is not None else Matrix.identity(L.dim)
        self.cls = cls if cls is not None else nilpotency_class(L)
        if check and not check_automorphism(L, self.aut):
            raise ValueError("automorphism part is not a Lie algebra automorphism")

    @classmethod
    def identity(cls, L, nilp_cls=None):
        return cls(L, vec_zero(L.dim), Matrix.identity(L.dim), cls=nilp_cls)

    def __mul__(self, other):
        if not isinstance(other, SemidirectElement):
            return NotImplemented
        return SemidirectElement(
            self.L, bch(self.log, self.aut.mul_vec(other.log), self.L, cls=self.cls),
            self.aut * other.aut, cls=self.cls)

    def inverse(self):
        ai = inverse(self.aut)
        return SemidirectElement(self.L, ai.mul_vec(vec_scale(-1, self.log)), ai,
                                 cls=self.cls)

    def __eq__(self, other):
        return (isinstance(other, SemidirectElement) and self.log == other.log
                and self.aut == other.aut)

    def is_identity(self):
        return vec_is_zero(self.log) and self.aut == Matrix.identity(self.L.dim)

    def __repr__(self):
        return "SemidirectElement(log=%r)" % (self.log,)


class GroupPresentation:
    """Finite group presentation: generator names plus relator words.

    Relators are lists of letters "g" or "g^-1" over the generator names.
    """

    def __init__(self, generators, relators):
        self.generators = list(generators)
        self.relators = [list(r) for r in relators]
        for r in self.relators:
            for letter in r:
                if _base_letter(letter) not in self.generators:
                    raise ValueError("relator uses unknown generator %r" % letter)

    def to_json(self):
        return {"generators": self.generators, "relators": self.relators}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["generators"], obj["relators"])


def _base_letter(letter):
    return letter[:-3] if letter.endswith("^-1") else letter


def evaluate_word(assignment, word, L=None, cls=None):
    """Left-to-right product of assigned generator images over a word."""
    result = None
    for letter in word:
        base = _base_letter(letter)
        if base not in assignment:
            raise KeyError("letter %r not assigned" % letter)
        g = assignment[base]
        if letter.endswith("^-1"):
            g = g.inverse()
        result = g if result is None else result * g
    if result is None:
        if L is None:
            some = next(iter(assignment.values()))
            L, cls = some.L, some.cls
        result = SemidirectElement.identity(L, nilp_cls=cls)
    return result


def check_representation(presentation: GroupPresentation, assignment):
    """Verdict: [] when all relators map to the identity, else a defect list.

    Each defect is (relator, log part, automorphism deviation from identity).
    """
    defects = []
    for rel in presentation.relators:
        val = evaluate_word(assignment, rel)
        if not val.is_identity():
            dev = val.aut - Matrix.identity(val.L.dim)
            defects.append((rel, val.log, dev))
    return defects


# ---------------------------------------------------------------------------
# Lattices

def lattice_membership_test(basis_vectors):
    """Exact membership test for the integer span of rational vectors."""
    cols = [tuple(v) for v in basis_vectors]
    n = len(cols[0])
    denom = 1
    for v in cols:
        for e in v:
            denom = denom * e.denominator // _gcd(denom, e.denominator)
    B = Matrix.from_columns([vec_scale(denom, v) for v in cols], rows=n)
    U, D, V = smith_normal_form(B)
    diag = [int(D.data[i][i]) for i in range(min(D.rows, D.cols))]
    r = sum(1 for d in diag if d != 0)

    def contains(v):
        w = vec_scale(denom, v)
        if any(e.denominator != 1 for e in w):
            return False
        uv = U.mul_vec(w)
        for i, e in enumerate(uv):
            if i < r:
                if e % diag[i] != 0:
                    return False
            elif e != 0:
                return False
        return True

    return contains


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def lattice_closed_under_bch(L: LieAlgebra, basis_vectors):
    """Check closure of a lattice under the BCH product.

    Tests the products of every pair of lattice generators and their
    inverses; returns None when closed, else a witness (x, y, bch(x, y)).
    """
    contains = lattice_membership_test(basis_vectors)
    c = nilpotency_class(L)
    gens = []
    for v in basis_vectors:
        gens.append(tuple(v))
        gens.append(vec_scale(-1, v))
    for x in gens:
        for y in gens:
            z = bch(x, y, L, cls=c)
            if not contains(z):
                return (x, y, z)
    return None


def commutator_index(M: Matrix):
    """Index of the image lattice of M - I, via SNF; None means infinite."""
    if M.rows != M.cols:
        raise ValueError("matrix must be square")
    if not M.is_integral():
        raise ValueError("matrix must be integral")
    A = M - Matrix.identity(M.rows)
    _, D, _ = smith_normal_form(A)
    idx = 1
    for i in range(D.rows):
        d = int(D.data[i][i])
        if d == 0:
            return None
        idx *= d
    return idx
