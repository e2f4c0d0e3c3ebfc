"""Class-truncated free nilpotent Lie algebras via Hall bases.

Hall words are nested tuples over generator indices: an int is a generator,
a pair (u, v) is the bracket [u, v].  The Hall set uses the classical
convention with a degree-first order (ties broken left-to-right
lexicographically on subtree keys), fixed once and for all so serialized
coordinates are stable:

    (u, v) is a Hall word  iff  u < v, u and v are Hall words, and
    either v is a generator or v = (a, b) with a <= u.

The degree-2 Hall words are then (i, j) with i < j, and the degree-3 words
on two generators are (0, (0, 1)) and (1, (0, 1)), matching the serialized
form [[0, 1], 0] ~ [[x, y], x] rewriting to -[x, [x, y]].
"""

import functools
from fractions import Fraction

from .linalg import ZERO, scalar, format_scalar, echelon_basis
from .lie import LieAlgebra, LieIdeal


def degree(w) -> int:
    return 1 if isinstance(w, int) else degree(w[0]) + degree(w[1])


@functools.lru_cache(maxsize=None)
def _key(w):
    if isinstance(w, int):
        return (1, (w,))
    kl, kr = _key(w[0]), _key(w[1])
    return (kl[0] + kr[0], (kl, kr))


def hall_less(u, v) -> bool:
    return _key(u) < _key(v)


def is_hall_word(w) -> bool:
    if isinstance(w, int):
        return w >= 0
    u, v = w
    if not (is_hall_word(u) and is_hall_word(v) and hall_less(u, v)):
        return False
    return _is_standard_pair(u, v)


def _is_standard_pair(u, v) -> bool:
    """Whether (u, v) is a Hall word given u, v are Hall words with u < v."""
    return isinstance(v, int) or not hall_less(u, v[0])


def hall_basis(k, c):
    """Hall words on k generators grouped by degree 1..c, in canonical order."""
    if k < 1 or c < 1:
        raise ValueError("need k >= 1 and c >= 1")
    by_degree = [sorted(range(k), key=_key)]
    for n in range(2, c + 1):
        words = []
        for du in range(1, n):
            for u in by_degree[du - 1]:
                for v in by_degree[n - du - 1]:
                    if hall_less(u, v) and _is_standard_pair(u, v):
                        words.append((u, v))
        by_degree.append(sorted(words, key=_key))
    return by_degree


def word_to_json(w):
    return w if isinstance(w, int) else [word_to_json(w[0]), word_to_json(w[1])]


def word_from_json(obj):
    if isinstance(obj, int):
        return obj
    a, b = obj
    return (word_from_json(a), word_from_json(b))


def word_str(w, names=None):
    if isinstance(w, int):
        return names[w] if names else "x%d" % w
    return "[%s,%s]" % (word_str(w[0], names), word_str(w[1], names))


class FreeLieElement:
    """Element of the free Lie algebra truncated at bracket class c."""

    def __init__(self, k, c, coords=None):
        self.k = k
        self.c = c
        self.coords = {}
        for w, cf in (coords or {}).items():
            cf = scalar(cf)
            if cf != 0 and degree(w) <= c:
                self.coords[w] = cf

    def __add__(self, other):
        out = dict(self.coords)
        for w, cf in other.coords.items():
            out[w] = out.get(w, ZERO) + cf
        return FreeLieElement(self.k, self.c, out)

    def __sub__(self, other):
        out = dict(self.coords)
        for w, cf in other.coords.items():
            out[w] = out.get(w, ZERO) - cf
        return FreeLieElement(self.k, self.c, out)

    def scale(self, s):
        s = scalar(s)
        return FreeLieElement(self.k, self.c, {w: s * cf for w, cf in self.coords.items()})

    def __eq__(self, other):
        return (self.k, self.c, self.coords) == (other.k, other.c, other.coords)

    def is_zero(self):
        return not self.coords

    def homogeneous_part(self, n):
        return FreeLieElement(self.k, self.c,
                              {w: cf for w, cf in self.coords.items() if degree(w) == n})

    def to_json(self):
        return {repr_word(w): format_scalar(cf)
                for w, cf in sorted(self.coords.items(), key=lambda t: _key(t[0]))}

    def __repr__(self):
        if not self.coords:
            return "0"
        terms = ["%s*%s" % (format_scalar(cf), word_str(w))
                 for w, cf in sorted(self.coords.items(), key=lambda t: _key(t[0]))]
        return " + ".join(terms)


def repr_word(w):
    import json
    return json.dumps(word_to_json(w))


class HallRewriter:
    """Rewrites brackets of Hall words into Hall coordinates.

    Memoized on word pairs; truncation class is fixed per instance.  The
    rewriting uses antisymmetry plus the Jacobi identity in the standard
    collection pattern: for u < v = (a, b) with a > u,
        [u, [a, b]] = [[u, a], b] + [a, [u, b]].
    """

    def __init__(self, k, c):
        self.k = k
        self.c = c
        self._cache = {}

    def bracket_words(self, u, v):
        """Hall coordinates of [u, v], as a dict word -> coefficient."""
        if degree(u) + degree(v) > self.c:
            return {}
        if u == v:
            return {}
        if hall_less(v, u):
            return {w: -cf for w, cf in self.bracket_words(v, u).items()}
        key = (u, v)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if _is_standard_pair(u, v):
            out = {(u, v): Fraction(1)}
        else:
            a, b = v
            out = {}
            for w, cf in self.bracket_words(u, a).items():
                for w2, cf2 in self.bracket_words(w, b).items():
                    out[w2] = out.get(w2, ZERO) + cf * cf2
            for w, cf in self.bracket_words(u, b).items():
                for w2, cf2 in self.bracket_words(a, w).items():
                    out[w2] = out.get(w2, ZERO) + cf * cf2
            out = {w: cf for w, cf in out.items() if cf != 0}
        self._cache[key] = out
        return out

    def bracket(self, x: FreeLieElement, y: FreeLieElement) -> FreeLieElement:
        out = {}
        for u, cu in x.coords.items():
            for v, cv in y.coords.items():
                c = cu * cv
                for w, cf in self.bracket_words(u, v).items():
                    out[w] = out.get(w, ZERO) + c * cf
        return FreeLieElement(self.k, self.c, out)

    def rewrite(self, expr) -> FreeLieElement:
        """Normal form of a formal bracket expression (nested ints/pairs)."""
        if isinstance(expr, int):
            if not 0 <= expr < self.k:
                raise ValueError("generator index out of range: %d" % expr)
            return FreeLieElement(self.k, self.c, {expr: Fraction(1)})
        a, b = expr
        return self.bracket(self.rewrite(a), self.rewrite(b))


_rewriters = {}


def get_rewriter(k, c) -> HallRewriter:
    if (k, c) not in _rewriters:
        _rewriters[(k, c)] = HallRewriter(k, c)
    return _rewriters[(k, c)]


def rewrite_to_hall(expr, k, c) -> FreeLieElement:
    return get_rewriter(k, c).rewrite(expr)


@functools.lru_cache(maxsize=None)
def free_nilpotent(k, c) -> LieAlgebra:
    """Free nilpotent Lie algebra on k generators of class c, on a Hall basis.

    Carries the canonical grading by bracket degree; basis vectors follow the
    Hall order, generators first.
    """
    groups = hall_basis(k, c)
    words = [w for grp in groups for w in grp]
    index = {w: i for i, w in enumerate(words)}
    dim = len(words)
    rw = get_rewriter(k, c)
    brackets = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            if degree(words[i]) + degree(words[j]) > c:
                continue
            coords = rw.bracket_words(words[i], words[j])
            if coords:
                v = [ZERO] * dim
                for w, cf in coords.items():
                    v[index[w]] = cf
                brackets[(i, j)] = tuple(v)
    grading = [degree(w) for w in words]
    names = tuple(word_str(w) for w in words)
    L = LieAlgebra(dim, brackets, basis_names=names, grading=grading)
    L.hall_words = words
    L.hall_index = index
    return L


def element_to_vector(el: FreeLieElement, L: LieAlgebra):
    v = [ZERO] * L.dim
    for w, cf in el.coords.items():
        v[L.hall_index[w]] = cf
    return tuple(v)


def homogeneous_degree(L: LieAlgebra, v):
    """Degree of a homogeneous vector of a graded algebra, or None for 0."""
    degs = {L.grading[i] for i, c in enumerate(v) if c != 0}
    if not degs:
        return None
    if len(degs) > 1:
        raise ValueError("vector is not homogeneous")
    return degs.pop()


def graded_ideal_closure(L: LieAlgebra, generators):
    """Smallest graded ideal of a degree-1-generated graded L containing the
    given homogeneous generators.

    Returns (ideal, per_degree) where per_degree[n] is a basis of the
    degree-(n+1) piece.  Uses the recursion I_n = span(S_n) + [L_1, I_{n-1}],
    valid because L is generated in degree 1.
    """
    if L.grading is None:
        raise ValueError("ambient algebra must be graded")
    top = max(L.grading, default=0)
    gens_by_degree = {n: [] for n in range(1, top + 1)}
    for v in generators:
        d = homogeneous_degree(L, v)
        if d is not None:
            gens_by_degree[d].append(tuple(v))
    deg1 = [L.basis_vector(i) for i in L.graded_component_indices(1)]
    per_degree = []
    prev = []
    for n in range(1, top + 1):
        cur = list(gens_by_degree[n])
        for e in deg1:
            for v in prev:
                cur.append(L.bracket(e, v))
        prev = echelon_basis(cur, L.dim)
        per_degree.append(prev)
    ideal = LieIdeal(L, [v for grp in per_degree for v in grp], check=False)
    return ideal, per_degree


def quotient(L: LieAlgebra, ideal: LieIdeal):
    """Quotient by a verified ideal; see lie.quotient_by_ideal."""
    from .lie import quotient_by_ideal
    return quotient_by_ideal(L, ideal)
