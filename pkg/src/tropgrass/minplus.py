"""Tropical (min-plus) arithmetic.

Scalars live in (Q union {+infinity}, min, +): exact rationals so that
ties -- the defining condition for tropical hypersurfaces -- are decidable.
Infinity is neutral for tropical addition (min) and absorbing for tropical
multiplication (ordinary +).
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from itertools import permutations
from math import factorial

from .pvector import INF, PlueckerVector, d_subsets


def ext(x):
    """Coerce to an extended real: Fraction or +infinity."""
    if x == INF:
        return INF
    return Fraction(x)


def trop_add(a, b):
    """Tropical sum: min."""
    if a == INF:
        return b
    if b == INF:
        return a
    return min(a, b)


def trop_mul(a, b):
    """Tropical product: ordinary sum, with absorbing infinity."""
    if a == INF or b == INF:
        return INF
    return a + b


class TropPolynomial:
    """A tropical polynomial: finitely many (exponent, coefficient) terms.

    Exponents are tuples of nonnegative ints; coefficients are extended
    reals with at least one finite.  Terms with +infinity coefficient are
    tolerated but never attain the minimum.
    """

    def __init__(self, nvars: int, terms):
        self.nvars = nvars
        clean = {}
        for exp, c in (terms.items() if isinstance(terms, dict) else terms):
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError("exponent length does not match variable count")
            if any(e < 0 for e in exp):
                raise ValueError("exponents must be nonnegative")
            if exp in clean:
                raise ValueError(f"duplicate exponent {exp}")
            clean[exp] = ext(c)
        if not clean or all(c == INF for c in clean.values()):
            raise ValueError("need at least one finite coefficient")
        self.terms = clean

    def evaluate(self, x):
        """min over terms of coefficient + <exponent, x>."""
        x = self._coerce_point(x)
        best = INF
        for exp, c in self.terms.items():
            if c == INF:
                continue
            v = c + sum(e * xi for e, xi in zip(exp, x))
            if v < best:
                best = v
        return best

    def tight_terms(self, x):
        """The set of exponents attaining evaluate(F, x)."""
        x = self._coerce_point(x)
        best = None
        tight = set()
        for exp, c in self.terms.items():
            if c == INF:
                continue
            v = c + sum(e * xi for e, xi in zip(exp, x))
            if best is None or v < best:
                best = v
                tight = {exp}
            elif v == best:
                tight.add(exp)
        return tight

    def on_hypersurface(self, x) -> bool:
        """x lies on T(F) iff the minimum is attained at least twice."""
        return len(self.tight_terms(x)) >= 2

    def _coerce_point(self, x):
        x = [ext(v) for v in x]
        if len(x) != self.nvars:
            raise ValueError("point length does not match variable count")
        if any(v == INF for v in x):
            raise ValueError("evaluation points must be finite")
        return x

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e, c in self.terms.items() if c != INF}
        return len(degs) <= 1

    def __eq__(self, other):
        return (
            isinstance(other, TropPolynomial)
            and other.nvars == self.nvars
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def to_json(self) -> str:
        return json.dumps(
            {
                "vars": self.nvars,
                "terms": [
                    {
                        "exp": list(exp),
                        "coeff": "inf" if c == INF else str(c),
                    }
                    for exp, c in sorted(self.terms.items())
                ],
            }
        )

    @classmethod
    def from_json(cls, text: str):
        data = json.loads(text)
        terms = [
            (
                tuple(t["exp"]),
                INF if t["coeff"] == "inf" else Fraction(t["coeff"]),
            )
            for t in data["terms"]
        ]
        return cls(data["vars"], terms)

    def __repr__(self):
        chunks = []
        for exp, c in sorted(self.terms.items()):
            mono = "*".join(
                f"x{i+1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exp)
                if e
            )
            cs = "inf" if c == INF else str(c)
            chunks.append(f"{cs}" + (f"*{mono}" if mono else ""))
        return "TropPolynomial(" + " (+) ".join(chunks) + ")"


def trop_linear_form(coeffs) -> TropPolynomial:
    """c1*x1 (+) ... (+) cn*xn from a coefficient list."""
    n = len(coeffs)
    terms = []
    for i, c in enumerate(coeffs):
        exp = [0] * n
        exp[i] = 1
        terms.append((tuple(exp), c))
    return TropPolynomial(n, terms)


class TropMatrix:
    """A rectangular matrix of extended reals."""

    MAX_DET = 8  # direct permutation enumeration; 8! = 40320

    def __init__(self, rows):
        self.entries = [[ext(v) for v in row] for row in rows]
        self.nrows = len(self.entries)
        self.ncols = len(self.entries[0]) if self.entries else 0
        if any(len(r) != self.ncols for r in self.entries):
            raise ValueError("ragged matrix")

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def column_submatrix(self, cols):
        """Submatrix on 1-based column indices."""
        return TropMatrix([[row[c - 1] for c in cols] for row in self.entries])

    def tropical_determinant(self):
        """min over permutations sigma of sum_r M[r, sigma(r)]."""
        if self.nrows != self.ncols:
            raise ValueError("tropical determinant needs a square matrix")
        if self.nrows > self.MAX_DET:
            raise ValueError(
                f"direct enumeration limited to {self.MAX_DET}x{self.MAX_DET}"
            )
        best = INF
        for perm in permutations(range(self.nrows)):
            total = Fraction(0)
            infinite = False
            for r, c in enumerate(perm):
                v = self.entries[r][c]
                if v == INF:
                    infinite = True
                    break
                total += v
            if not infinite and total < best:
                best = total
        return best

    def tropical_minors(self) -> PlueckerVector:
        """PlueckerVector of tropical maximal-minor values (d = nrows)."""
        if self.nrows > self.ncols:
            raise ValueError("need at least as many columns as rows")
        coords = {}
        for S in d_subsets(self.nrows, self.ncols):
            coords[S] = self.column_submatrix(S).tropical_determinant()
        return PlueckerVector(self.nrows, self.ncols, coords)

    def is_tropically_singular(self) -> bool:
        """Square matrix whose permutation minimum is attained twice."""
        if self.nrows != self.ncols:
            raise ValueError("singularity test needs a square matrix")
        det = self.tropical_determinant()
        if det == INF:
            return True
        count = 0
        for perm in permutations(range(self.nrows)):
            total = Fraction(0)
            infinite = False
            for r, c in enumerate(perm):
                v = self.entries[r][c]
                if v == INF:
                    infinite = True
                    break
                total += v
            if not infinite and total == det:
                count += 1
                if count >= 2:
                    return True
        return False

    # -- CSV wire format --------------------------------------------------

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        for row in self.entries:
            writer.writerow(["inf" if v == INF else str(v) for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str):
        rows = []
        for row in csv.reader(io.StringIO(text)):
            if not row:
                continue
            rows.append([INF if v.strip() == "inf" else Fraction(v) for v in row])
        return cls(rows)

    def __eq__(self, other):
        return isinstance(other, TropMatrix) and other.entries == self.entries

    def __repr__(self):
        return f"TropMatrix({self.nrows}x{self.ncols})"


def tropical_determinant(rows):
    """Convenience wrapper accepting raw nested lists."""
    m = rows if isinstance(rows, TropMatrix) else TropMatrix(rows)
    return m.tropical_determinant()


def tropical_minors(rows):
    m = rows if isinstance(rows, TropMatrix) else TropMatrix(rows)
    return m.tropical_minors()
