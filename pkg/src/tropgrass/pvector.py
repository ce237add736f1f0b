"""Plucker vectors: rational coordinates indexed by d-subsets of [n].

Also hosts the sum-over-subsets map phi : R^n -> R^C(n,d) whose image is
the common lineality space of all cones of the tropical Grassmannian,
and exact reduction modulo that image.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations

INF = float("inf")


def d_subsets(d: int, n: int):
    """All sorted d-subsets of {1, ..., n}."""
    return list(combinations(range(1, n + 1), d))


def subset_key(subset) -> str:
    return "".join(str(i) for i in subset)


def parse_subset(key: str):
    return tuple(int(c) for c in key)


def phi(a, d: int):
    """Map an n-vector to the C(n,d)-vector of d-subset sums."""
    n = len(a)
    a = [Fraction(x) for x in a]
    return PlueckerVector(
        d, n, {S: sum(a[i - 1] for i in S) for S in d_subsets(d, n)}
    )


class PlueckerVector:
    """A rational (or +inf) coordinate per d-subset of [n]."""

    def __init__(self, d: int, n: int, coords=None):
        self.d = d
        self.n = n
        self.subsets = d_subsets(d, n)
        full = {}
        coords = coords or {}
        for S in self.subsets:
            v = coords.get(S, 0)
            full[S] = v if v == INF else Fraction(v)
        self.coords = full
        if all(v == INF for v in full.values()):
            raise ValueError("PlueckerVector needs at least one finite coordinate")

    def __getitem__(self, subset):
        return self.coords[tuple(sorted(subset))]

    def is_finite(self) -> bool:
        return all(v != INF for v in self.coords.values())

    def as_list(self):
        return [self.coords[S] for S in self.subsets]

    def __add__(self, other):
        self._check(other)
        return PlueckerVector(
            self.d, self.n, {S: self.coords[S] + other.coords[S] for S in self.subsets}
        )

    def __sub__(self, other):
        self._check(other)
        return PlueckerVector(
            self.d, self.n, {S: self.coords[S] - other.coords[S] for S in self.subsets}
        )

    def __neg__(self):
        return PlueckerVector(self.d, self.n, {S: -v for S, v in self.coords.items()})

    def scale(self, c):
        c = Fraction(c)
        return PlueckerVector(self.d, self.n, {S: v * c for S, v in self.coords.items()})

    def _check(self, other):
        if (self.d, self.n) != (other.d, other.n):
            raise ValueError("mismatched Plucker vector shapes")

    def __eq__(self, other):
        return (
            isinstance(other, PlueckerVector)
            and (self.d, self.n) == (other.d, other.n)
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.d, self.n, tuple(self.coords[S] for S in self.subsets)))

    def reduce_mod_phi(self):
        """Canonical representative modulo image(phi).

        Subtracts phi(a*) where a* is the least-squares preimage, computed
        exactly over Q; two vectors agree modulo image(phi) iff their
        reductions are equal.  Requires all coordinates finite.
        """
        if not self.is_finite():
            raise ValueError("cannot reduce a vector with infinite coordinates")
        n, d = self.n, self.d
        # Gram matrix of phi columns: diag C(n-1,d-1), offdiag C(n-2,d-2)
        from math import comb

        gram = [
            [
                Fraction(comb(n - 1, d - 1) if i == j else comb(n - 2, d - 2))
                for j in range(n)
            ]
            for i in range(n)
        ]
        rhs = [
            sum(self.coords[S] for S in self.subsets if i + 1 in S) for i in range(n)
        ]
        a = _solve(gram, rhs)
        return self - phi(a, d)

    def equals_mod_phi(self, other) -> bool:
        return self.reduce_mod_phi() == other.reduce_mod_phi()

    # -- JSON wire format ------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(
            {
                "d": self.d,
                "n": self.n,
                "coords": {
                    subset_key(S): ("inf" if v == INF else str(v))
                    for S, v in self.coords.items()
                },
            }
        )

    @classmethod
    def from_json(cls, text: str):
        data = json.loads(text)
        coords = {}
        for key, val in data["coords"].items():
            S = parse_subset(key)
            coords[S] = INF if val == "inf" else Fraction(val)
        return cls(data["d"], data["n"], coords)

    def __repr__(self):
        nz = {subset_key(S): str(v) for S, v in self.coords.items() if v != 0}
        return f"PlueckerVector(d={self.d}, n={self.n}, {nz})"


def _solve(matrix, rhs):
    """Solve a square rational linear system by Gaussian elimination."""
    n = len(matrix)
    A = [row[:] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


def basis_vector(d: int, n: int, *subsets):
    """Sum of unit vectors e_S for the given d-subsets."""
    coords = {}
    for S in subsets:
        S = tuple(sorted(S))
        coords[S] = coords.get(S, 0) + 1
    return PlueckerVector(d, n, coords)
