"""The Plucker ideal I_{d,n} and related constructions.

Variables are named ``p_<i1><i2>...<id>`` for sorted d-subsets of [n], in
lexicographic subset order.  Generators are the quadratic exchange
relations, minimalized by linear algebra in degree two.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

from ..pvector import INF, PlueckerVector, d_subsets, subset_key
from .poly import MultiPoly, PolyRing
from .scalars import QQ


def sort_sign(tup):
    """(sign, sorted tuple) of an index tuple, or None on a repeat."""
    t = list(tup)
    if len(set(t)) != len(t):
        return None
    sign = 1
    for i in range(len(t)):
        for j in range(len(t) - 1 - i):
            if t[j] > t[j + 1]:
                t[j], t[j + 1] = t[j + 1], t[j]
                sign = -sign
    return sign, tuple(t)


def plucker_ring(d: int, n: int, field=QQ) -> PolyRing:
    names = ["p_" + subset_key(S) for S in d_subsets(d, n)]
    ring = PolyRing(field, names)
    ring.plucker_shape = (d, n)
    return ring


def _exchange_relations(d: int, n: int):
    """Quadratic exchange relations as {(S,T): int} with S <= T sorted."""
    rels = []
    seen = set()
    for I in combinations(range(1, n + 1), d - 1):
        for J in combinations(range(1, n + 1), d + 1):
            terms = {}
            for pos, j in enumerate(J):
                b1 = sort_sign(I + (j,))
                b2 = sort_sign(tuple(x for x in J if x != j))
                if b1 is None or b2 is None:
                    continue
                s = (-1) ** pos * b1[0] * b2[0]
                key = tuple(sorted((b1[1], b2[1])))
                terms[key] = terms.get(key, 0) + s
            terms = {k: v for k, v in terms.items() if v}
            if not terms:
                continue
            items = sorted(terms.items())
            sgn = 1 if items[0][1] > 0 else -1
            canon = tuple((k, sgn * v) for k, v in items)
            if canon not in seen:
                seen.add(canon)
                rels.append(dict(canon))
    return rels


def _to_poly(ring: PolyRing, rel: dict) -> MultiPoly:
    terms = []
    for (S, T), c in rel.items():
        exp = [0] * ring.nvars
        exp[ring.var_index("p_" + subset_key(S))] += 1
        exp[ring.var_index("p_" + subset_key(T))] += 1
        terms.append((tuple(exp), c))
    return ring.from_terms(terms)


def _minimalize_quadrics(polys):
    """Maximal linearly independent subset, by incremental elimination."""
    if not polys:
        return []
    field = polys[0].ring.field
    zero = field.zero()
    echelon = {}  # pivot exponent -> reduced row dict
    kept = []
    for f in polys:
        row = dict(f.terms)
        while row:
            pivot = max(row)
            if pivot not in echelon:
                inv = field.inv(row[pivot])
                echelon[pivot] = {e: field.mul(c, inv) for e, c in row.items()}
                kept.append(f)
                break
            base = echelon[pivot]
            c = row[pivot]
            for e, v in base.items():
                s = field.add(row.get(e, zero), field.neg(field.mul(c, v)))
                if s == zero:
                    row.pop(e, None)
                else:
                    row[e] = s
    return kept


def plucker_generators(d: int, n: int, field=QQ, minimal=True):
    """Generators of I_{d,n}: the quadratic exchange relations.

    With minimal=True (default) the set is minimalized by linear algebra
    in degree 2; for d=2 this yields the C(n,4) three-term relations.
    """
    if d < 2 or d >= n:
        raise ValueError("need 2 <= d < n")
    ring = plucker_ring(d, n, field)
    polys = [_to_poly(ring, rel) for rel in _exchange_relations(d, n)]
    if minimal:
        polys = _minimalize_quadrics(polys)
    return polys


def three_term_quadric(ring: PolyRing, i, j, k, l) -> MultiPoly:
    """p_ij p_kl - p_ik p_jl + p_il p_jk (d=2), for i<j<k<l."""
    text = (
        f"p_{i}{j}*p_{k}{l} - p_{i}{k}*p_{j}{l} + p_{i}{l}*p_{j}{k}"
    )
    return ring.parse(text)


# -- expansion on a generic matrix --------------------------------------


def generic_matrix_ring(d: int, n: int, field=QQ) -> PolyRing:
    names = [f"x{r}_{c}" for r in range(1, d + 1) for c in range(1, n + 1)]
    return PolyRing(field, names)


def _generic_minor(ring: PolyRing, d: int, n: int, cols) -> MultiPoly:
    terms = []
    exp0 = [0] * ring.nvars
    for perm in permutations(range(d)):
        sign = _perm_sign(perm)
        exp = exp0[:]
        for r, pos in enumerate(perm):
            c = cols[pos]
            exp[r * n + (c - 1)] += 1
        terms.append((tuple(exp), sign))
    return ring.from_terms(terms)


def _perm_sign(perm):
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def expand_on_generic_matrix(f: MultiPoly, d: int, n: int) -> MultiPoly:
    """Substitute each p_S by the d x d minor on columns S of a generic
    symbolic d x n matrix and expand.  Zero output certifies membership
    in I_{d,n}."""
    target = generic_matrix_ring(d, n, f.ring.field)
    minors = {}
    subs = d_subsets(d, n)
    result = target.zero()
    for exp, c in f.terms.items():
        term = target.one() * c
        for vi, e in enumerate(exp):
            if e == 0:
                continue
            S = subs[vi]
            if S not in minors:
                minors[S] = _generic_minor(target, d, n, S)
            term = term * minors[S] ** e
        result = result + term
    return result


# -- valuation certificates over k[t] ------------------------------------


class TPolyMatrix:
    """A d x n matrix of univariate polynomials in t over a field.

    Entries are coefficient lists [c0, c1, ...] (index = power of t).
    """

    def __init__(self, rows, field=QQ):
        self.field = field
        self.entries = [
            [self._coerce(entry) for entry in row] for row in rows
        ]
        self.d = len(self.entries)
        self.n = len(self.entries[0]) if self.entries else 0
        if any(len(row) != self.n for row in self.entries):
            raise ValueError("ragged matrix")

    def _coerce(self, entry):
        if isinstance(entry, (list, tuple)):
            coeffs = [self.field(c) for c in entry]
        else:
            coeffs = [self.field(entry)]
        while coeffs and coeffs[-1] == self.field.zero():
            coeffs.pop()
        return coeffs

    def _mul(self, a, b):
        if not a or not b:
            return []
        zero = self.field.zero()
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == zero:
                continue
            for j, y in enumerate(b):
                out[i + j] = self.field.add(out[i + j], self.field.mul(x, y))
        while out and out[-1] == zero:
            out.pop()
        return out

    def _add(self, a, b):
        zero = self.field.zero()
        out = [zero] * max(len(a), len(b))
        for i, x in enumerate(a):
            out[i] = x
        for i, y in enumerate(b):
            out[i] = self.field.add(out[i], y)
        while out and out[-1] == zero:
            out.pop()
        return out

    def minor(self, cols):
        """Determinant of the column submatrix, as a t-polynomial."""
        cols = list(cols)
        det = []
        for perm in permutations(range(self.d)):
            sign = _perm_sign(perm)
            prod = [self.field.one()]
            for r, pos in enumerate(perm):
                prod = self._mul(prod, self.entries[r][cols[pos] - 1])
                if not prod:
                    break
            if not prod:
                continue
            if sign < 0:
                prod = [self.field.neg(c) for c in prod]
            det = self._add(det, prod)
        return det


def plucker_valuations(M: TPolyMatrix) -> PlueckerVector:
    """Per d-subset S: the lowest t-degree of the minor on columns S.

    A vanishing minor yields an infinite coordinate; callers decide how
    to treat it.
    """
    zero = M.field.zero()
    coords = {}
    for S in d_subsets(M.d, M.n):
        det = M.minor(S)
        val = next((i for i, c in enumerate(det) if c != zero), None)
        coords[S] = INF if val is None else val
    return PlueckerVector(M.d, M.n, coords)


# -- the Fano configuration and its valuation certificate ----------------

FANO_LINES = (
    (1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7),
    (1, 5, 6), (2, 6, 7), (1, 3, 7),
)

# columns of a GF(2) realization: triples are dependent exactly on the lines
FANO_COLUMNS = (
    (0, 0, 1), (0, 1, 0), (1, 0, 0), (0, 1, 1),
    (1, 1, 0), (1, 1, 1), (1, 0, 1),
)


def fano_weight() -> PlueckerVector:
    """The (3,7) weight vector with coordinate 1 on the line-triples of
    the Fano plane and 0 elsewhere."""
    return PlueckerVector(3, 7, {T: 1 for T in FANO_LINES})


def fano_certificate_search(field, rng, max_trials=20000):
    """Bounded search for a t-perturbation of the Fano matrix over the
    given characteristic-2 field whose Pluecker valuations equal the
    Fano weight vector exactly.

    Tries matrices M(t) with entry (r, c) = FANO_COLUMNS[c][r] + t*E[r][c]
    for random E over the field.  Returns (matrix, trials) on success or
    (None, best) after max_trials, where best is the largest number of
    line-triples that simultaneously reached valuation exactly 1.

    Over GF(2) itself the search provably cannot succeed: the seven
    t-coefficients of the line minors are linear forms in E whose sum is
    identically zero mod 2, so at most six can be nonzero at once.
    """
    if field.characteristic != 2:
        raise ValueError("the Fano vector needs residue characteristic 2")
    w = fano_weight()
    # the nonzero field elements, probed from small integer labels
    units = sorted({field(x) for x in range(1, 8)} - {field.zero()})
    best = 0
    for trial in range(1, max_trials + 1):
        E = [[rng.choice([field.zero()] + units) for _ in range(7)] for _ in range(3)]
        rows = [
            [[field(FANO_COLUMNS[c][r]), E[r][c]] for c in range(7)]
            for r in range(3)
        ]
        M = TPolyMatrix(rows, field)
        pv = plucker_valuations(M)
        good = sum(1 for T in FANO_LINES if pv[T] == 1)
        if good > best:
            best = good
        if good == 7 and pv == w:
            return M, trial
    return None, best
