"""Tropical linear spaces L_w from Pluecker vectors.

Circuit generation, membership, face types (d-partitions), duality,
reconstruction of w from a membership oracle, bounded faces, and the
complete-intersection obstruction for d = 2.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .minplus import TropPolynomial, ext, trop_linear_form
from .pvector import INF, PlueckerVector, d_subsets

_TYPE_GUARD_D = (2, 3)
_TYPE_GUARD_N = 7


class DegenerateCircuit(ValueError):
    """A circuit with fewer than two finite coefficients: w is outside
    the regime where L_w is a tropical linear space."""


class DPartition:
    """An unordered partition of [n] into exactly d nonempty blocks."""

    __slots__ = ("n", "blocks")

    def __init__(self, n, blocks):
        blocks = tuple(
            sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0])
        )
        flat = sorted(i for b in blocks for i in b)
        if flat != list(range(1, n + 1)) or any(not b for b in blocks):
            raise ValueError("blocks must partition [n]")
        self.n = n
        self.blocks = blocks

    @property
    def d(self):
        return len(self.blocks)

    @classmethod
    def parse(cls, text, n=None):
        blocks = [[int(c) for c in chunk] for chunk in text.split("|")]
        if n is None:
            n = sum(len(b) for b in blocks)
        return cls(n, blocks)

    def __str__(self):
        return "|".join("".join(str(i) for i in b) for b in self.blocks)

    __repr__ = __str__

    def __eq__(self, other):
        return (
            isinstance(other, DPartition)
            and other.n == self.n
            and other.blocks == self.blocks
        )

    def __hash__(self):
        return hash((self.n, self.blocks))

    def __lt__(self, other):
        return self.blocks < other.blocks


def is_bounded_face(p: DPartition) -> bool:
    """A type's face is bounded iff every block has at least 2 elements."""
    return all(len(b) >= 2 for b in p.blocks)


class TropicalPlane:
    """The tropical linear space cut out by the circuits of w."""

    def __init__(self, w: PlueckerVector):
        self.w = w
        self._circuits = None

    @property
    def d(self):
        return self.w.d

    @property
    def n(self):
        return self.w.n

    def circuit_subsets(self):
        return d_subsets(self.w.d + 1, self.w.n)

    def circuits(self):
        """The C(n, d+1) tropical linear forms F_J, J of size d+1, with
        coefficient w_{J minus j} on x_j."""
        if self._circuits is None:
            out = []
            for J in self.circuit_subsets():
                coeffs = [INF] * self.n
                finite = 0
                for j in J:
                    c = self.w[tuple(x for x in J if x != j)]
                    coeffs[j - 1] = c
                    if c != INF:
                        finite += 1
                if finite < 2:
                    raise DegenerateCircuit(
                        f"circuit {''.join(map(str, J))} has fewer than "
                        "two finite coefficients"
                    )
                out.append(trop_linear_form(coeffs))
            self._circuits = out
        return self._circuits

    def contains(self, x):
        """Whether x lies on every circuit hypersurface; returns a
        truthy/falsy result carrying the first violating circuit."""
        forms = self.circuits()
        for J, F in zip(self.circuit_subsets(), forms):
            if not F.on_hypersurface(x):
                return Membership(False, J)
        return Membership(True, None)

    def __contains__(self, x):
        return bool(self.contains(x))


class Membership:
    """Boolean membership answer plus the violating circuit, if any."""

    __slots__ = ("ok", "violating_circuit")

    def __init__(self, ok, violating_circuit):
        self.ok = ok
        self.violating_circuit = violating_circuit

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "Membership(True)"
        J = "".join(map(str, self.violating_circuit))
        return f"Membership(False, violating_circuit={J})"


def circuits(w: PlueckerVector):
    return TropicalPlane(w).circuits()


def dual(w: PlueckerVector) -> PlueckerVector:
    """w* has ([n] minus I)-coordinate equal to the I-coordinate of w."""
    full = set(range(1, w.n + 1))
    coords = {
        tuple(sorted(full - set(S))): v for S, v in w.coords.items()
    }
    return PlueckerVector(w.n - w.d, w.n, coords)


# -- face types via exhaustive tight-pattern search ----------------------


def plane_type(plane) -> set:
    """The set of d-partitions of the d-dimensional faces of L_w.

    Depth-first search over exact tight sets, one circuit at a time:
    choosing S as *the* argmin of circuit J adds the equalities
    x_j - x_k = w_{J-k} - w_{J-j} for j, k in S and strict inequalities
    against J - S, so the feasible leaves are the disjoint relative
    interiors of the faces of L_w.  Constraints are pure difference
    bounds, so exact feasibility is an incremental all-pairs-shortest-
    path check over (value, strictness) weights.  A feasible leaf has
    dimension equal to its number of difference-constancy classes; the
    leaves with exactly d classes contribute their class partitions.
    """
    if isinstance(plane, PlueckerVector):
        plane = TropicalPlane(plane)
    d, n = plane.d, plane.n
    if d not in _TYPE_GUARD_D or n > _TYPE_GUARD_N:
        raise ValueError(
            f"plane_type is guarded to d in {_TYPE_GUARD_D}, n <= {_TYPE_GUARD_N}"
        )
    if any(v == INF for v in plane.w.coords.values()):
        raise ValueError("plane_type requires a finite Pluecker vector")
    # per circuit: list of (arcs for each exact tight set S), where an
    # arc (a, b, c, s) means x_a - x_b <= c, strictly if s
    circuit_choices = []
    for J in plane.circuit_subsets():
        coeff = {j: plane.w[tuple(x for x in J if x != j)] for j in J}
        choices = []
        for size in range(2, len(J) + 1):
            for S in combinations(J, size):
                arcs = []
                for j in S:
                    for m in J:
                        if m == j:
                            continue
                        arcs.append(
                            (j - 1, m - 1, coeff[m] - coeff[j], m not in S)
                        )
                choices.append(arcs)
        circuit_choices.append(choices)

    results = set()

    def add_arc(dist, a, b, c, s):
        """Tighten with x_a - x_b <= c (strict if s); None if empty."""
        old = dist[a][b]
        if old is not None and (old[0] < c or (old[0] == c and (old[1] or not s))):
            return dist
        nd = [row[:] for row in dist]
        nd[a][b] = (c, s)
        for i in range(n):
            ia = nd[i][a]
            if ia is None:
                continue
            for j in range(n):
                bj = nd[b][j]
                if bj is None:
                    continue
                v = ia[0] + c + bj[0]
                vs = ia[1] or s or bj[1]
                cur = nd[i][j]
                if cur is None or v < cur[0] or (v == cur[0] and vs and not cur[1]):
                    nd[i][j] = (v, vs)
        for i in range(n):
            di = nd[i][i]
            if di[0] < 0 or (di[0] == 0 and di[1]):
                return None
        return nd

    def classes_of(dist):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in range(n):
            for b in range(a + 1, n):
                ab, ba = dist[a][b], dist[b][a]
                if ab is not None and ba is not None and ab[0] + ba[0] == 0:
                    parent[find(a)] = find(b)
        groups = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(i + 1)
        return list(groups.values())

    def dfs(idx, dist):
        if idx == len(circuit_choices):
            blocks = classes_of(dist)
            if len(blocks) == d:
                results.add(DPartition(n, blocks))
            return
        for arcs in circuit_choices[idx]:
            nd = dist
            for a, b, c, s in arcs:
                nd = add_arc(nd, a, b, c, s)
                if nd is None:
                    break
            if nd is not None:
                dfs(idx + 1, nd)

    start = [[None] * n for _ in range(n)]
    for i in range(n):
        start[i][i] = (Fraction(0), False)
    dfs(0, start)
    return results


def obvious_types(d, n):
    """The partitions with d-1 singletons and one big block: the types
    of the unbounded coordinate-direction faces present in every L_w."""
    out = set()
    for singles in combinations(range(1, n + 1), d - 1):
        rest = [i for i in range(1, n + 1) if i not in singles]
        out.add(DPartition(n, [[s] for s in singles] + [rest]))
    return out


# -- reconstruction from a membership oracle -----------------------------


class PlaneOracle:
    """Black-box access to a tropical linear space: a membership test
    plus a witness finder for points with prescribed huge coordinates.

    Reconstruction uses only oracle answers; the defining vector is
    hidden.  from_vector builds the standard oracle of L_w, whose
    witness for I is the cocircuit point x_i = M (i in I),
    x_m = w_{I+m} (m not in I).
    """

    def __init__(self, d, n, member, witness):
        self.d = d
        self.n = n
        self.member = member
        self.witness = witness

    @classmethod
    def from_vector(cls, w: PlueckerVector):
        if any(v == INF for v in w.coords.values()):
            raise ValueError("oracle construction requires a finite vector")
        plane = TropicalPlane(w)

        def member(x):
            return bool(plane.contains(x))

        def witness(I, M):
            x = []
            for m in range(1, w.n + 1):
                if m in I:
                    x.append(ext(M))
                else:
                    x.append(ext(w[tuple(sorted(set(I) | {m}))]))
            return x

        return cls(w.d, w.n, member, witness)


class ReconstructionError(ValueError):
    """The oracle is inconsistent with every Pluecker vector in bound."""


def reconstruct_plucker(oracle: PlaneOracle, d=None, n=None, bound=1):
    """Recover w modulo image(phi) from a plane oracle.

    For each (d-1)-subset I the oracle must produce a point of the plane
    with x_i = M := 4*bound*n + 1 on I and all other coordinates at most
    M - (2*bound + 1); each witness is validated against the membership
    test, and the circuit on I + {j,k} then forces
    w_{I+j} - w_{I+k} = x_j - x_k.  The differences are glued into a
    single vector, anchored at 0 on the first d-subset.
    """
    d = oracle.d if d is None else d
    n = oracle.n if n is None else n
    bound = Fraction(bound)
    M = 4 * bound * n + 1
    slack = 2 * bound + 1
    subsets = d_subsets(d, n)
    index = {S: i for i, S in enumerate(subsets)}
    # weighted union-find over d-subsets: value[S] - value[root] tracked
    parent = list(range(len(subsets)))
    offset = [Fraction(0)] * len(subsets)

    def find(i):
        if parent[i] == i:
            return i, Fraction(0)
        root, above = find(parent[i])
        parent[i] = root
        offset[i] += above
        return root, offset[i]

    def union(i, j, diff):
        """Record value_i - value_j = diff; False on contradiction."""
        ri, oi = find(i)
        rj, oj = find(j)
        if ri == rj:
            return oi - oj == diff
        parent[ri] = rj
        offset[ri] = diff + oj - oi
        return True

    for I in d_subsets(d - 1, n):
        x = oracle.witness(set(I), M)
        if len(x) != n:
            raise ReconstructionError("witness has wrong length")
        for i in I:
            if x[i - 1] != M:
                raise ReconstructionError(
                    f"witness for I={I} does not sit at height M on I"
                )
        rest = [m for m in range(1, n + 1) if m not in I]
        if any(x[m - 1] > M - slack for m in rest):
            raise ReconstructionError(
                f"witness for I={I} is not far below M off I"
            )
        if not oracle.member(x):
            raise ReconstructionError(f"witness for I={I} fails membership")
        k0 = rest[0]
        for j in rest[1:]:
            diff = x[j - 1] - x[k0 - 1]
            if abs(diff) > 2 * bound:
                raise ReconstructionError(
                    f"difference for I={I} exceeds the stated bound"
                )
            Sj = tuple(sorted(set(I) | {j}))
            Sk = tuple(sorted(set(I) | {k0}))
            if not union(index[Sj], index[Sk], diff):
                raise ReconstructionError(
                    "inconsistent differences across witnesses"
                )
    root0, _ = find(0)
    coords = {}
    for S in subsets:
        r, off = find(index[S])
        if r != root0:
            raise ReconstructionError("difference graph is disconnected")
        coords[S] = off
    base = coords[subsets[0]]
    coords = {S: v - base for S, v in coords.items()}
    return PlueckerVector(d, n, coords)


# -- complete-intersection obstruction for d = 2 -------------------------


class CIStatus:
    """Outcome of the complete-intersection test for a tree's dual."""

    __slots__ = ("status", "certificate")

    def __init__(self, status, certificate=None):
        self.status = status
        self.certificate = certificate

    def __repr__(self):
        if self.certificate is None:
            return f"CIStatus({self.status})"
        return f"CIStatus({self.status}, certificate={self.certificate})"


def ci_status_d2(tree) -> CIStatus:
    """Prop-style obstruction: if the trivalent tree is not a
    caterpillar it has three pairwise disjoint cherries, and any path
    between two tree points misses the interior of at least one of
    them, so that leaf pair is never separated: the dual (n-2)-plane is
    not a complete intersection.  Caterpillars are left Unknown."""
    from .treespace import is_caterpillar

    n = tree.n
    if n < 5:
        raise ValueError("need n >= 5 leaves")
    if len(tree.internal_lengths) != n - 3:
        raise ValueError("complete-intersection test needs a trivalent tree")
    if is_caterpillar(tree):
        return CIStatus("Unknown")
    cherries = []
    for split in tree.internal_lengths:
        small = min((split.A, split.B), key=len)
        if len(small) == 2:
            cherries.append(tuple(sorted(small)))
    cherries.sort()
    if len(cherries) < 3:
        raise AssertionError("non-caterpillar trivalent tree must have 3 cherries")
    return CIStatus("NotCompleteIntersection", tuple(cherries[:3]))
