"""Integer homology of 2-complexes through the Smith normal form.

Everything is exact: entries are Python ints, so coefficient growth never
overflows. Boundary matrices are mostly unit entries, so elimination runs
sparse while a unit pivot exists and only the leftover core is treated
densely with minimal-absolute-value pivoting.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, gcd, prod
from typing import Sequence

from .complex import Simplex2Complex, component_count, triangle_edges
from .errors import TooLarge


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                         tuple(() for _ in range(self.cols)))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        oc = other.transpose().entries
        return IntMatrix(self.rows, other.cols, tuple(
            tuple(sum(a * b for a, b in zip(r, c)) for c in oc) for r in self.entries))

    def hstack(self, col: Sequence[int]) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols + 1,
                         tuple(r + (int(c),) for r, c in zip(self.entries, col)))

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class SmithNormalForm:
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


@dataclass(frozen=True)
class HomologySummary:
    betti: tuple[int, int, int]
    h1_torsion_factors: tuple[int, ...]

    @property
    def torsion_order(self) -> int:
        return prod(self.h1_torsion_factors)

    def to_dict(self) -> dict:
        return {"betti": list(self.betti), "torsion": list(self.h1_torsion_factors)}


def boundary_matrix(X: Simplex2Complex, k: int) -> IntMatrix:
    """Simplicial boundary map C_k -> C_{k-1} in the sorted simplex bases.

    Edge (a, b) with a < b maps to b - a; triangle (a, b, c) maps to
    bc - ac + ab.
    """
    edges = X.edges
    if k == 1:
        M = [[0] * len(edges) for _ in range(X.vertex_count)]
        for j, (a, b) in enumerate(edges):
            M[a][j] = -1
            M[b][j] = 1
        return IntMatrix.from_rows(M, len(edges))
    if k == 2:
        idx = {e: i for i, e in enumerate(edges)}
        M = [[0] * X.s2 for _ in range(len(edges))]
        for j, t in enumerate(X.triangles):
            ab, ac, bc = triangle_edges(t)
            M[idx[ab]][j] = 1
            M[idx[ac]][j] = -1
            M[idx[bc]][j] = 1
        return IntMatrix.from_rows(M, X.s2)
    raise ValueError("k must be 1 or 2")


# ------------------------------------------------------------------ SNF


def _sparse_rows(M) -> dict[int, dict[int, int]]:
    if isinstance(M, IntMatrix):
        M = M.entries
    return {i: {j: x for j, x in enumerate(r) if x} for i, r in enumerate(M)}


def _eliminate_units(rows: dict[int, dict[int, int]]) -> int:
    """Peel off unit pivots in place; returns how many were removed.

    A unit pivot's column is cleared by row operations, after which its row
    can be cleared by column operations that touch nothing else, so both
    are simply dropped and a factor 1 is recorded.
    """
    cols: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    units = 0
    while True:
        best = None
        for i, r in rows.items():
            for j, x in r.items():
                if x == 1 or x == -1:
                    cost = (len(r) - 1) * (len(cols[j]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            return units
        _, pi, pj = best
        prow = rows.pop(pi)
        pv = prow[pj]
        for j in prow:
            cols[j].discard(pi)
        for i in list(cols[pj]):
            r = rows[i]
            f = r[pj] * pv  # pv = +-1, so r[pj]/pv == r[pj]*pv
            for j, x in prow.items():
                y = r.get(j, 0) - f * x
                if y:
                    if j not in r:
                        cols[j].add(i)
                    r[j] = y
                elif j in r:
                    del r[j]
                    cols[j].discard(i)
        del cols[pj]
        for j in prow:
            if j in cols and not cols[j]:
                del cols[j]
        units += 1


def _dense_snf(A: list[list[int]]) -> list[int]:
    """Diagonalise by unimodular operations; returns the nonzero diagonal."""
    diag = []
    while True:
        m = len(A)
        n = len(A[0]) if m else 0
        piv = None
        for i in range(m):
            for j in range(n):
                x = A[i][j]
                if x and (piv is None or abs(x) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        pi, pj = piv
        A[0], A[pi] = A[pi], A[0]
        for r in A:
            r[0], r[pj] = r[pj], r[0]
        while True:
            p = A[0][0]
            dirty = False
            for i in range(1, m):
                q = A[i][0] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[0])]
                if A[i][0]:
                    dirty = True
            for j in range(1, n):
                q = A[0][j] // p
                if q:
                    for r in A:
                        r[j] -= q * r[0]
                if A[0][j]:
                    dirty = True
            if not dirty:
                # pivot must divide the rest for the divisibility chain
                bad = next(((i, j) for i in range(1, m) for j in range(1, n)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                A[0] = [x + y for x, y in zip(A[0], A[bad[0]])]
                continue
            # a remainder smaller than p appeared: move it to the pivot slot
            best = None
            for i in range(1, m):
                if A[i][0] and (best is None or abs(A[i][0]) < abs(best[2])):
                    best = (i, 0, A[i][0])
            for j in range(1, n):
                if A[0][j] and (best is None or abs(A[0][j]) < abs(best[2])):
                    best = (0, j, A[0][j])
            i, j, _ = best
            if i:
                A[0], A[i] = A[i], A[0]
            else:
                for r in A:
                    r[0], r[j] = r[j], r[0]
        diag.append(abs(A[0][0]))
        A = [r[1:] for r in A[1:]]
        if not A or not A[0]:
            break
    return diag


def smith_normal_form(M) -> SmithNormalForm:
    """Invariant factors d_1 | d_2 | ... | d_r of an integer matrix."""
    rows = _sparse_rows(M)
    units = _eliminate_units(rows)
    live_rows = [r for r in rows.values() if r]
    live_cols = sorted({j for r in live_rows for j in r})
    factors = [1] * units
    if live_rows:
        cidx = {j: k for k, j in enumerate(live_cols)}
        A = [[0] * len(live_cols) for _ in live_rows]
        for a, r in zip(A, live_rows):
            for j, x in r.items():
                a[cidx[j]] = x
        factors += _dense_snf(A)
    # unit elimination can leave the core's factors unordered w.r.t. 1s only;
    # the core itself is a divisibility chain
    return SmithNormalForm(tuple(sorted(factors)))


def _det_bareiss(A: list[list[int]]) -> int:
    n = len(A)
    if n == 0:
        return 1
    A = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if A[i][k]), None)
            if sw is None:
                return 0
            A[k], A[sw] = A[sw], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def gcd_of_minors_oracle(M, k: int, limit: int = 10**6) -> int:
    """gcd of all k x k minors by enumeration (test oracle; 0 if all vanish)."""
    if isinstance(M, IntMatrix):
        rows, cols, E = M.rows, M.cols, M.entries
    else:
        E = [list(r) for r in M]
        rows, cols = len(E), len(E[0]) if E else 0
    if not 0 <= k <= min(rows, cols):
        raise ValueError("order out of range")
    total = comb(rows, k) * comb(cols, k)
    if total > limit:
        raise TooLarge(f"{total} minors exceed the limit {limit}")
    g = 0
    for rs in combinations(range(rows), k):
        for cs in combinations(range(cols), k):
            g = gcd(g, _det_bareiss([[E[i][j] for j in cs] for i in rs]))
            if g == 1:
                return 1
    return g


# ------------------------------------------------------------- homology


def homology_summary(X: Simplex2Complex) -> HomologySummary:
    s0, s1 = X.vertex_count, X.s1
    b0 = component_count(X) if s0 else 0
    rank1 = s0 - b0
    snf2 = smith_normal_form(boundary_matrix(X, 2))
    rank2 = snf2.rank
    b1 = s1 - rank1 - rank2
    b2 = X.s2 - rank2
    return HomologySummary((b0, b1, b2), tuple(d for d in snf2.invariant_factors if d > 1))


def kappa_lower_torsion(t: int) -> int:
    """Smallest k with 3**k >= t**2, i.e. the ceiling of 2*log_3(t)."""
    if t < 1:
        raise ValueError("torsion order must be >= 1")
    target = t * t
    k, p = 0, 1
    while p < target:
        p *= 3
        k += 1
    return k


def in_boundary_image(X: Simplex2Complex, chain: Sequence[int], D2: IntMatrix | None = None) -> bool:
    """Whether an integer 1-chain lies in the image of the boundary map on 2-chains.

    Adding ``chain`` as a column keeps the rank and the product of the
    invariant factors exactly when it lies in the lattice spanned by the
    boundary columns.
    """
    D2 = D2 or boundary_matrix(X, 2)
    if not any(chain):
        return True
    base = smith_normal_form(D2)
    ext = smith_normal_form(D2.hstack(chain))
    return ext.rank == base.rank and prod(ext.invariant_factors) == prod(base.invariant_factors)
