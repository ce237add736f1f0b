"""Finite simplicial complexes: f-vectors, links, flag complexes, and
integral simplicial homology via exact linear algebra."""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations


class SimplicialComplex:
    """A finite simplicial complex stored by its maximal faces.

    Vertices are hashable labels; faces are frozensets of vertices.
    """

    def __init__(self, vertices, maximal_faces):
        self.vertices = tuple(vertices)
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertices")
        maximal = [frozenset(f) for f in maximal_faces]
        for f in maximal:
            if not f <= vset:
                raise ValueError(f"face {sorted(f)} uses unknown vertices")
        # drop faces contained in others
        maximal.sort(key=len, reverse=True)
        kept = []
        for f in maximal:
            if not any(f <= g for g in kept):
                kept.append(f)
        self.maximal_faces = kept
        self._faces_by_dim = None

    @classmethod
    def flag(cls, vertices, edges):
        """The flag (clique) complex of a graph: faces = cliques."""
        vertices = list(vertices)
        adj = {v: set() for v in vertices}
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        cliques = list(_max_cliques(adj))
        isolated = [frozenset([v]) for v in vertices if not adj[v]]
        return cls(vertices, cliques + isolated)

    def faces(self):
        """dict: dimension -> sorted list of faces (frozensets)."""
        if self._faces_by_dim is None:
            seen = set()
            for m in self.maximal_faces:
                for k in range(1, len(m) + 1):
                    for f in combinations(sorted(m, key=str), k):
                        seen.add(frozenset(f))
            by_dim = {}
            for f in seen:
                by_dim.setdefault(len(f) - 1, []).append(f)
            for d in by_dim:
                by_dim[d].sort(key=lambda f: sorted(map(str, f)))
            self._faces_by_dim = by_dim
        return self._faces_by_dim

    def faces_of_dim(self, d):
        return self.faces().get(d, [])

    def f_vector(self):
        by_dim = self.faces()
        if not by_dim:
            return ()
        top = max(by_dim)
        return tuple(len(by_dim.get(d, [])) for d in range(top + 1))

    def dim(self):
        by_dim = self.faces()
        return max(by_dim) if by_dim else -1

    def is_pure(self) -> bool:
        d = self.dim()
        return all(len(m) - 1 == d for m in self.maximal_faces)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.f_vector()))

    def has_face(self, face) -> bool:
        f = frozenset(face)
        return any(f <= m for m in self.maximal_faces)

    def link(self, face) -> "SimplicialComplex":
        f = frozenset(face)
        if not self.has_face(f):
            raise ValueError(f"face {sorted(map(str, f))} not in complex")
        link_max = []
        for m in self.maximal_faces:
            if f <= m:
                link_max.append(m - f)
        link_max = [g for g in link_max if g]
        verts = sorted(set().union(*link_max) if link_max else set(), key=str)
        return SimplicialComplex(verts, link_max)

    # -- homology ---------------------------------------------------------

    def boundary_matrix(self, d):
        """Sparse boundary map C_d -> C_{d-1} with the sorted-vertex
        orientation; columns indexed by d-faces, rows by (d-1)-faces."""
        lower = {f: i for i, f in enumerate(self.faces_of_dim(d - 1))}
        cols = []
        for f in self.faces_of_dim(d):
            ordered = sorted(f, key=str)
            col = {}
            for i in range(len(ordered)):
                sub = frozenset(ordered[:i] + ordered[i + 1 :])
                col[lower[sub]] = (-1) ** i
            cols.append(col)
        return cols, len(lower)

    def betti_numbers(self, check_torsion=False):
        """Ranks of H_d(K; Q) for d = 0..dim.

        With check_torsion=True, also verifies via Smith diagonalization
        that every boundary matrix has all invariant factors equal to 1,
        so integral homology is free and the Betti numbers tell all;
        raises if torsion is found.
        """
        top = self.dim()
        if top < 0:
            return ()
        ranks = {}
        ncells = {d: len(self.faces_of_dim(d)) for d in range(top + 1)}
        for d in range(1, top + 1):
            cols, nrows = self.boundary_matrix(d)
            ranks[d] = _sparse_rank(cols, nrows)
            if check_torsion:
                cols2, nrows2 = self.boundary_matrix(d)
                if not _smith_all_units(cols2, nrows2):
                    raise ValueError(f"torsion detected in boundary map d={d}")
        ranks[0] = 0
        ranks[top + 1] = 0
        return tuple(
            ncells[d] - ranks[d] - ranks[d + 1] for d in range(top + 1)
        )

    # -- JSON wire format -------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(
            {
                "vertices": [str(v) for v in self.vertices],
                "maximal_faces": sorted(
                    [sorted(map(str, f)) for f in self.maximal_faces]
                ),
            }
        )

    @classmethod
    def from_json(cls, text: str):
        data = json.loads(text)
        return cls(data["vertices"], data["maximal_faces"])

    def __repr__(self):
        return f"SimplicialComplex(f={self.f_vector()})"


def _max_cliques(adj):
    """Bron-Kerbosch with pivoting; yields maximal cliques of size >= 1."""
    order = sorted(adj, key=str)

    def bk(R, P, X):
        if not P and not X:
            if R:
                yield frozenset(R)
            return
        pivot = max(P | X, key=lambda u: len(adj[u] & P))
        for v in [v for v in order if v in P - adj[pivot]]:
            yield from bk(R | {v}, P & adj[v], X & adj[v])
            P = P - {v}
            X = X | {v}

    yield from bk(set(), set(order), set())


def _sparse_rank(cols, nrows):
    """Rank over Q of a sparse integer matrix given as column dicts."""
    # row-echelon over columns: pivots[row] = reduced column with that pivot
    pivots = {}
    rank = 0
    for col in cols:
        col = {r: Fraction(v) for r, v in col.items()}
        while col:
            r = min(col)
            if r not in pivots:
                inv = 1 / col[r]
                pivots[r] = {k: v * inv for k, v in col.items()}
                rank += 1
                break
            base = pivots[r]
            c = col[r]
            for k, v in base.items():
                nv = col.get(k, Fraction(0)) - c * v
                if nv:
                    col[k] = nv
                else:
                    col.pop(k, None)
    return rank


def _smith_all_units(cols, nrows):
    """True iff every invariant factor of the integer matrix is 1.

    Performs fraction-free elimination preferring unit pivots; boundary
    matrices of simplicial complexes have +-1 entries throughout, so a
    unit pivot is almost always available and elimination stays integral.
    Falls back to a full Smith reduction on any residual block.
    """
    # dense-dict representation {(r, c): int}
    mat = {}
    for c, col in enumerate(cols):
        for r, v in col.items():
            if v:
                mat[(r, c)] = v
    used_r, used_c = set(), set()
    changed = True
    while changed:
        changed = False
        unit = next(
            (
                (r, c)
                for (r, c), v in mat.items()
                if abs(v) == 1 and r not in used_r and c not in used_c
            ),
            None,
        )
        if unit is None:
            break
        r0, c0 = unit
        piv = mat[(r0, c0)]
        # clear column c0 and row r0
        col_entries = [(r, mat[(r, c0)]) for (r, c) in list(mat) if c == c0]
        row_entries = [(c, mat[(r0, c)]) for (r, c) in list(mat) if r == r0]
        for r, v in col_entries:
            if r == r0:
                continue
            factor = v * piv  # v / piv since piv = +-1
            for c, w in row_entries:
                if c == c0:
                    continue
                key = (r, c)
                nv = mat.get(key, 0) - factor * w
                if nv:
                    mat[key] = nv
                else:
                    mat.pop(key, None)
            mat.pop((r, c0), None)
        for c, w in row_entries:
            if c != c0:
                mat.pop((r0, c), None)
        used_r.add(r0)
        used_c.add(c0)
        changed = True
    rest = {k: v for k, v in mat.items() if k[0] not in used_r and k[1] not in used_c}
    if not rest:
        return True
    # residual block without unit entries: full Smith reduction decides
    rows = sorted({r for r, _ in rest})
    colsr = sorted({c for _, c in rest})
    ri = {r: i for i, r in enumerate(rows)}
    ci = {c: i for i, c in enumerate(colsr)}
    dense = [[0] * len(colsr) for _ in rows]
    for (r, c), v in rest.items():
        dense[ri[r]][ci[c]] = v
    return all(f == 1 for f in _smith_factors(dense))


def _smith_factors(a):
    """Nonzero invariant factors of a small dense integer matrix."""
    a = [row[:] for row in a]
    m, n = len(a), len(a[0]) if a else 0
    factors = []
    top = 0
    while top < min(m, n):
        # find smallest nonzero entry at or below/right of (top, top)
        best = None
        for i in range(top, m):
            for j in range(top, n):
                v = a[i][j]
                if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        a[top], a[bi] = a[bi], a[top]
        for row in a:
            row[top], row[bj] = row[bj], row[top]
        piv = a[top][top]
        dirty = False
        for i in range(top + 1, m):
            q = a[i][top] // piv
            if q:
                for j in range(top, n):
                    a[i][j] -= q * a[top][j]
            if a[i][top]:
                dirty = True
        for j in range(top + 1, n):
            q = a[top][j] // piv
            if q:
                for i in range(top, m):
                    a[i][j] -= q * a[i][top]
            if a[top][j]:
                dirty = True
        if dirty:
            continue
        factors.append(abs(piv))
        top += 1
    return factors
