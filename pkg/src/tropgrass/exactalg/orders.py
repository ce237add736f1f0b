"""Term orders: weight vectors refined by degree-reverse-lexicographic.

Convention: the *leading* term of a polynomial is the term whose order key
is largest, and keys are built so that the leading term has minimal
weight <exponent, w>.  This matches the min-plus convention used for
initial forms throughout: the leading term of f under the order refining
w is a term of in_w(f).
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm


def _integerize(weight):
    """Scale a rational weight vector to integers (order-equivalent)."""
    fracs = [Fraction(x) for x in weight]
    denom = lcm(*[f.denominator for f in fracs]) if fracs else 1
    return tuple(int(f * denom) for f in fracs)


class TermOrder:
    """Weight order refined by degrevlex, with an optional elimination block.

    ``key(exp)`` returns a tuple; larger key = greater monomial = closer
    to leading.  Components, in comparison order:

    1. (only if eliminating) total degree in the eliminated variables, so
       any monomial touching them beats every monomial that avoids them;
       a Groebner basis under this order intersects the subring cleanly;
    2. negated w-weight, so minimal-weight terms lead;
    3. degrevlex on the fixed variable order.
    """

    def __init__(self, weight, nvars=None, eliminate=()):
        if weight is None:
            if nvars is None:
                raise ValueError("need nvars when weight is None")
            weight = (0,) * nvars
        self.weight = tuple(Fraction(x) for x in weight)
        self.nvars = len(self.weight)
        self._iw = _integerize(self.weight)
        self.eliminate = tuple(sorted(eliminate))
        self._elim_set = frozenset(self.eliminate)
        self._cache = {}

    def key(self, exp):
        k = self._cache.get(exp)
        if k is None:
            wdot = sum(a * b for a, b in zip(exp, self._iw))
            grevlex = (sum(exp), tuple(-e for e in reversed(exp)))
            if self._elim_set:
                block = sum(exp[i] for i in self.eliminate)
                k = (block, -wdot, grevlex)
            else:
                k = (-wdot, grevlex)
            self._cache[exp] = k
        return k

    def leading_term(self, poly):
        """(exponent, coefficient) of the leading term; None for zero."""
        if poly.is_zero():
            return None
        exp = max(poly.terms, key=self.key)
        return exp, poly.terms[exp]

    def leading_monomial(self, poly):
        lt = self.leading_term(poly)
        return None if lt is None else lt[0]

    def is_degree_compatible(self) -> bool:
        """True if this is a global term order (1 is the least monomial),
        hence usable on inhomogeneous input.  The elimination block is
        harmless; only weights that can make some variable beat 1 (i.e.
        positive entries, given the min convention's negated weight key)
        break globality.
        """
        return all(x <= 0 for x in self.weight)

    def _ident(self):
        return (self._iw, self.eliminate)

    def __eq__(self, other):
        return isinstance(other, TermOrder) and other._ident() == self._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        tag = f", eliminate={self.eliminate}" if self.eliminate else ""
        wtag = "0" if all(x == 0 for x in self.weight) else str(list(self.weight))
        return f"TermOrder(w={wtag}{tag})"


def degrevlex(nvars: int) -> TermOrder:
    return TermOrder(None, nvars=nvars)


def weight_order(weight) -> TermOrder:
    return TermOrder(weight)


def elimination_order(nvars: int, eliminate, weight=None) -> TermOrder:
    return TermOrder(weight, nvars=nvars, eliminate=eliminate)
