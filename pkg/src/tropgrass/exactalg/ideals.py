"""Ideal-level operations: initial ideals, monomial-freeness, intersection,
elimination, toric kernels and Hilbert-series degrees."""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations_with_replacement

from .groebner import normal_form, reduced_groebner_basis
from .orders import TermOrder, degrevlex, elimination_order
from .poly import MultiPoly, PolyRing
from .scalars import GF, QQ


class IdealHandle:
    """An ideal presented by generators, with cached reduced bases."""

    def __init__(self, ring: PolyRing, generators):
        self.ring = ring
        self.generators = tuple(g for g in generators if not g.is_zero())
        self._bases = {}

    @classmethod
    def of(cls, generators):
        gens = list(generators)
        if not gens:
            raise ValueError("need at least one generator (possibly zero)")
        return cls(gens[0].ring, gens)

    def reduced_groebner(self, order: TermOrder, max_steps=None):
        if order not in self._bases:
            self._bases[order] = reduced_groebner_basis(
                self.generators, order, max_steps=max_steps
            )
        return self._bases[order]

    def normal_form(self, f: MultiPoly, order=None):
        order = order or degrevlex(self.ring.nvars)
        return normal_form(f, self.reduced_groebner(order), order)

    def contains(self, f: MultiPoly, order=None) -> bool:
        return self.normal_form(f, order).is_zero()

    def equals(self, other: "IdealHandle") -> bool:
        """Ideal equality via mutual membership of generators."""
        return all(self.contains(g) for g in other.generators) and all(
            other.contains(g) for g in self.generators
        )

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def to_json(self) -> str:
        field = self.ring.field
        return json.dumps(
            {
                "characteristic": field.characteristic,
                "variables": list(self.ring.variables),
                "generators": [str(g) for g in self.generators],
            }
        )

    @classmethod
    def from_json(cls, text: str):
        data = json.loads(text)
        field = QQ if data["characteristic"] == 0 else GF(data["characteristic"])
        ring = PolyRing(field, data["variables"])
        return cls(ring, [ring.parse(g) for g in data["generators"]])

    def __repr__(self):
        return f"IdealHandle({len(self.generators)} gens in {self.ring})"


# -- initial forms and initial ideals ------------------------------------


def initial_form(f: MultiPoly, w) -> MultiPoly:
    """Sum of the terms of f with minimal <exponent, w> (min convention)."""
    if f.is_zero():
        return f
    w = [Fraction(x) for x in w]
    if len(w) != f.ring.nvars:
        raise ValueError("weight length does not match variable count")
    best = None
    chosen = {}
    for exp, c in f.terms.items():
        wt = sum(a * b for a, b in zip(exp, w))
        if best is None or wt < best:
            best = wt
            chosen = {exp: c}
        elif wt == best:
            chosen[exp] = c
    return MultiPoly(f.ring, chosen)


def weight_refined_order(w, negate=False) -> TermOrder:
    """Term order refining w (min convention) by degrevlex.

    The leading term of any f under this order is a term of in_w(f); this
    is the order 'defined by -w' in max-convention systems.  negate=True
    flips the sign of w first, for callers that want the opposite regime.
    """
    w = [Fraction(x) for x in w]
    if negate:
        w = [-x for x in w]
    return TermOrder(w)


def initial_ideal(ideal: IdealHandle, w, max_steps=None) -> IdealHandle:
    """in_w(I), generated by initial forms of a w-refined reduced basis."""
    order = weight_refined_order(w)
    basis = ideal.reduced_groebner(order, max_steps=max_steps)
    return IdealHandle(ideal.ring, [initial_form(g, w) for g in basis])


# -- monomial-freeness ----------------------------------------------------


class MonomialFreeness:
    """Decision result: free flag plus a monomial witness when not free."""

    def __init__(self, free: bool, witness=None):
        self.free = free
        self.witness = witness

    def __bool__(self):
        return self.free

    def __repr__(self):
        if self.free:
            return "MonomialFreeness(free=True)"
        return f"MonomialFreeness(free=False, witness={self.witness})"


def contains_monomial(ideal: IdealHandle, max_steps=None, witness_degree_cap=6):
    """Does the ideal contain a monomial?  Decided by saturation.

    Adds an auxiliary variable y and the relation y*(product of all
    variables) - 1; the ideal contains a monomial iff the extended ideal
    is the unit ideal.  On a positive answer a smallest-degree monomial
    witness is located by degree-bounded search.
    """
    ring = ideal.ring
    ext = ring.extend(("_y",))
    lift = [
        MultiPoly(ext, {e + (0,): c for e, c in g.terms.items()})
        for g in ideal.generators
    ]
    prod_exp = tuple([1] * ring.nvars + [1])
    relation = ext.from_terms([(prod_exp, 1), ((0,) * ext.nvars, -1)])
    order = degrevlex(ext.nvars)
    basis = reduced_groebner_basis(lift + [relation], order, max_steps=max_steps)
    is_unit = len(basis) == 1 and basis[0].total_degree() == 0
    if not is_unit:
        return MonomialFreeness(True)
    # a monomial exists; find one by degree escalation
    base_order = degrevlex(ring.nvars)
    gbase = ideal.reduced_groebner(base_order, max_steps=max_steps)
    for g in gbase:
        if g.is_monomial():
            return MonomialFreeness(False, witness=g)
    for deg in range(1, witness_degree_cap + 1):
        for combo in combinations_with_replacement(range(ring.nvars), deg):
            exp = [0] * ring.nvars
            for i in combo:
                exp[i] += 1
            mono = ring.monomial(exp)
            if normal_form(mono, gbase, base_order).is_zero():
                return MonomialFreeness(False, witness=mono)
    raise RuntimeError(
        f"ideal contains a monomial but none found up to degree {witness_degree_cap}"
    )


def is_monomial_free(ideal: IdealHandle, w, max_steps=None) -> MonomialFreeness:
    """True iff in_w(I) contains no monomial (Grassmannian membership test)."""
    inw = initial_ideal(ideal, w, max_steps=max_steps)
    return contains_monomial(inw, max_steps=max_steps)


# -- elimination, intersection, toric kernels ----------------------------


def eliminate(ideal: IdealHandle, variables, max_steps=None) -> IdealHandle:
    """Intersection with the subring omitting the given variables.

    Returns an ideal in the smaller ring (variables dropped).
    """
    ring = ideal.ring
    idx = sorted(ring.var_index(v) if isinstance(v, str) else v for v in variables)
    idx_set = set(idx)
    order = elimination_order(ring.nvars, idx)
    basis = reduced_groebner_basis(ideal.generators, order, max_steps=max_steps)
    keep = [i for i in range(ring.nvars) if i not in idx_set]
    small = PolyRing(ring.field, [ring.variables[i] for i in keep])
    out = []
    for g in basis:
        if all(all(e[i] == 0 for i in idx) for e in g.terms):
            out.append(
                MultiPoly(small, {tuple(e[i] for i in keep): c for e, c in g.terms.items()})
            )
    return IdealHandle(small, out)


def intersect_ideals(a: IdealHandle, b: IdealHandle, max_steps=None) -> IdealHandle:
    """I cap J via the auxiliary variable t and elimination."""
    if a.ring != b.ring:
        raise ValueError("ideals live in different rings")
    ring = a.ring
    ext = ring.extend(("_t",), front=True)

    def lift(g):
        return MultiPoly(ext, {(0,) + e: c for e, c in g.terms.items()})

    t = ext.gen(0)
    gens = [t * lift(g) for g in a.generators]
    gens += [(ext.one() - t) * lift(g) for g in b.generators]
    elim = eliminate(IdealHandle(ext, gens), ["_t"], max_steps=max_steps)
    # map back onto the original ring object
    out = [MultiPoly(ring, dict(g.terms)) for g in elim.generators]
    return IdealHandle(ring, out)


def toric_kernel(monomial_map, source_ring: PolyRing, target_ring: PolyRing,
                 max_steps=None) -> IdealHandle:
    """Kernel of the ring map sending each source variable to a monomial
    in the target variables.

    monomial_map: dict source-variable-name -> exponent tuple over the
    target ring (or a MultiPoly term c * monomial in the target ring,
    c a nonzero scalar).
    """
    field = source_ring.field
    comb = PolyRing(
        field, source_ring.variables + target_ring.variables
    )
    ns, nt = source_ring.nvars, target_ring.nvars
    gens = []
    for i, name in enumerate(source_ring.variables):
        image = monomial_map[name]
        if isinstance(image, MultiPoly):
            if not image.is_monomial():
                raise ValueError("images must be monomials")
            ((texp, tc),) = image.terms.items()
        else:
            texp = tuple(image)
            tc = field.one()
        if sum(texp) == 0:
            raise ValueError("images must be nonconstant monomials")
        src_exp = [0] * ns
        src_exp[i] = 1
        gens.append(
            comb.from_terms(
                [
                    (tuple(src_exp) + (0,) * nt, field.one()),
                    ((0,) * ns + texp, field.neg(tc)),
                ]
            )
        )
    elim = eliminate(IdealHandle(comb, gens), list(target_ring.variables),
                     max_steps=max_steps)
    out = [MultiPoly(source_ring, dict(g.terms)) for g in elim.generators]
    return IdealHandle(source_ring, out)


# -- Hilbert series degree ------------------------------------------------


def _poly_sub(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_add(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] += y
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_shift_mul(a, k):
    return [0] * k + list(a)


def _minimalize_monomials(exps):
    exps = sorted(set(exps), key=lambda e: (sum(e), e))
    out = []
    for e in exps:
        if not any(all(x <= y for x, y in zip(m, e)) for m in out):
            out.append(e)
    return out


def _hilbert_numerator(exps):
    """Numerator of the Hilbert series of R/<exps> over (1-t)^nvars."""
    exps = _minimalize_monomials(exps)
    if not exps:
        return [1]
    if any(sum(e) == 0 for e in exps):
        return []
    # base case: pairwise coprime generators -> complete intersection
    def coprime(a, b):
        return all(x == 0 or y == 0 for x, y in zip(a, b))

    if all(
        coprime(exps[i], exps[j])
        for i in range(len(exps))
        for j in range(i + 1, len(exps))
    ):
        num = [1]
        for e in exps:
            num = _poly_sub(num, _poly_shift_mul(num, sum(e)))
        return num
    # pivot on the most frequent variable
    nvars = len(exps[0])
    counts = [sum(1 for e in exps if e[i] > 0) for i in range(nvars)]
    piv = max(range(nvars), key=lambda i: counts[i])
    pivot_exp = tuple(1 if i == piv else 0 for i in range(nvars))
    # <I, x> : drop generators divisible by x, add x
    with_x = [e for e in exps if e[piv] == 0] + [pivot_exp]
    # I : x
    colon = [tuple(max(v - 1, 0) if i == piv else v for i, v in enumerate(e))
             for e in exps]
    # exact sequence 0 -> (R/(I:x))(-1) -> R/I -> R/(I+<x>) -> 0
    return _poly_add(_hilbert_numerator(with_x),
                     _poly_shift_mul(_hilbert_numerator(colon), 1))


def degree_of(ideal: IdealHandle, order=None, max_steps=None) -> int:
    """Degree of the projective scheme of a homogeneous ideal.

    Computed from the Hilbert series of the initial monomial ideal of a
    reduced Groebner basis: strip all (1-t) factors from the numerator
    and evaluate at t=1.
    """
    if not ideal.is_homogeneous():
        raise ValueError("degree_of requires a homogeneous ideal")
    order = order or degrevlex(ideal.ring.nvars)
    basis = ideal.reduced_groebner(order, max_steps=max_steps)
    exps = [order.leading_monomial(g) for g in basis]
    num = _hilbert_numerator(exps)
    if not num:
        raise ValueError("unit ideal has no projective degree")
    while sum(num) == 0:
        # divide by (1 - t): num / (1-t), exact when num(1) == 0
        out = []
        acc = 0
        for c in num[:-1]:
            acc += c
            out.append(acc)
        num = out
        while num and num[-1] == 0:
            num.pop()
    return sum(num)
