"""Edge metrics, homological systoles and the two explicit sigma upper bounds."""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from .complex import Edge, Simplex2Complex, component_count
from .errors import Disconnected, SystoleTooShort, TooLarge, TrivialH1
from .homology import boundary_matrix, smith_normal_form
from .kernels import rank_mod_p
from .numeric import Interval, certified


@dataclass(frozen=True)
class EdgeMetric:
    """Positive length per edge; values may be ints, Fractions or mpmath reals."""
    lengths: Mapping[Edge, object]

    @classmethod
    def unit(cls, X: Simplex2Complex) -> "EdgeMetric":
        return cls({e: 1 for e in X.edges})

    @classmethod
    def uniform(cls, X: Simplex2Complex, value) -> "EdgeMetric":
        return cls({e: value for e in X.edges})

    def scaled(self, factor) -> "EdgeMetric":
        return EdgeMetric({e: factor * x for e, x in self.lengths.items()})

    def check(self, X: Simplex2Complex) -> None:
        if set(self.lengths) != set(X.edges):
            raise ValueError("metric domain must be exactly the edge set")
        if any(not x > 0 for x in self.lengths.values()):
            raise ValueError("edge lengths must be positive")

    def __getitem__(self, e: Edge):
        return self.lengths[(min(e), max(e))]


@dataclass(frozen=True)
class SystoleResult:
    length: object
    witness_cycle: tuple[int, ...]
    coefficient_ring: str

    @property
    def edge_count(self) -> int:
        return len(self.witness_cycle)

    def to_dict(self) -> dict:
        L = self.length
        return {"length": str(L) if isinstance(L, Fraction) else float(L) if not isinstance(L, int) else L,
                "witness_cycle": list(self.witness_cycle), "ring": self.coefficient_ring}


def canonical_cycle(cyc) -> tuple[int, ...]:
    """Rotate to start at the smallest vertex and orient toward the smaller neighbour."""
    c = list(cyc)
    i = c.index(min(c))
    c = c[i:] + c[:i]
    if len(c) > 2 and c[-1] < c[1]:
        c = [c[0]] + c[1:][::-1]
    return tuple(c)


def cycle_chain(X: Simplex2Complex, cyc, eidx=None) -> list[int]:
    eidx = eidx or X.edge_index()
    c = [0] * len(eidx)
    for a, b in zip(cyc, cyc[1:] + type(cyc)(cyc[:1])):
        c[eidx[(min(a, b), max(a, b))]] += 1 if a < b else -1
    return c


def _ring_name(ring) -> str:
    if ring in (0, "Z", "z", None):
        return "Z"
    p = int(str(ring).lstrip("Zz_"))
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"coefficient ring Z_{p} needs a prime")
    return f"Z_{p}"


class NontrivialityTest:
    """Decides whether an edge cycle has nonzero class in H_1 with given coefficients."""

    def __init__(self, X: Simplex2Complex, ring="Z"):
        self.ring = _ring_name(ring)
        self.eidx = X.edge_index()
        self.D2 = boundary_matrix(X, 2)
        if self.ring == "Z":
            snf = smith_normal_form(self.D2)
            self._base = (snf.rank, np.prod(snf.invariant_factors, dtype=object))
        else:
            self.p = int(self.ring[2:])
            self._arr = np.array(self.D2.entries, dtype=np.int64).reshape(self.D2.rows, self.D2.cols)
            self._base = rank_mod_p(self._arr, self.p)

    def chain_is_nontrivial(self, c) -> bool:
        if self.ring == "Z":
            snf = smith_normal_form(self.D2.hstack(c))
            return (snf.rank, np.prod(snf.invariant_factors, dtype=object)) != self._base
        M = np.hstack([self._arr, np.array(c, dtype=np.int64).reshape(-1, 1)])
        return rank_mod_p(M, self.p) > self._base

    def __call__(self, cyc) -> bool:
        return self.chain_is_nontrivial(cycle_chain(None, list(cyc), self.eidx))


def _adjacency(X: Simplex2Complex) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {v: [] for v in range(X.vertex_count)}
    for a, b in X.edges:
        adj[a].append(b)
        adj[b].append(a)
    for v in adj:
        adj[v].sort()
    return adj


def _shortest_path_tree(adj, metric: EdgeMetric, root: int):
    dist = {root: 0}
    parent = {root: None}
    done = set()
    heap = [(0, root)]
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        for w in adj[u]:
            nd = d + metric[(u, w)]
            if w not in dist or nd < dist[w]:
                dist[w] = nd
                parent[w] = u
                heapq.heappush(heap, (nd, w))
    return dist, parent


def _path_to_root(parent, v):
    out = []
    while v is not None:
        out.append(v)
        v = parent[v]
    return out[::-1]


def _cycle_length(cyc, metric: EdgeMetric):
    return sum((metric[(a, b)] for a, b in zip(cyc, cyc[1:] + cyc[:1])), 0)


def candidate_cycles(X: Simplex2Complex, metric: EdgeMetric) -> list[tuple[object, tuple[int, ...]]]:
    """Fundamental cycles of shortest-path trees from every root, shortest first.

    A shortest nontrivial cycle always occurs here: splitting any cycle at
    a vertex along shortest paths writes it as a sum of such cycles, one of
    which must carry a nonzero class.
    """
    adj = _adjacency(X)
    seen = {}
    for r in range(X.vertex_count):
        dist, parent = _shortest_path_tree(adj, metric, r)
        tree = {(min(v, p), max(v, p)) for v, p in parent.items() if p is not None}
        for u, v in X.edges:
            if (u, v) in tree or u not in dist:
                continue
            pu, pv = _path_to_root(parent, u), _path_to_root(parent, v)
            k = 0
            while k < min(len(pu), len(pv)) and pu[k] == pv[k]:
                k += 1
            cyc = pu[k - 1:] + pv[k:][::-1]
            if len(cyc) < 3 or len(set(cyc)) != len(cyc):
                continue
            key = canonical_cycle(cyc)
            if key not in seen:
                seen[key] = _cycle_length(list(key), metric)
    return sorted(((L, c) for c, L in seen.items()), key=lambda x: (x[0], x[1]))


def homological_systole(X: Simplex2Complex, metric: EdgeMetric | None = None,
                        ring="Z") -> SystoleResult:
    """Shortest edge cycle whose class in H_1(X; ring) is nonzero.

    Ties are broken by the lexicographically smallest canonical witness.
    """
    if X.vertex_count == 0 or component_count(X) != 1:
        raise Disconnected("systole needs a connected complex")
    metric = metric or EdgeMetric.unit(X)
    metric.check(X)
    test = NontrivialityTest(X, ring)
    for L, cyc in candidate_cycles(X, metric):
        if test(cyc):
            return SystoleResult(L, cyc, test.ring)
    raise TrivialH1(f"H_1 with {test.ring} coefficients vanishes")


def simple_cycles(X: Simplex2Complex, max_edges: int = 30) -> list[tuple[int, ...]]:
    """All simple cycles of the 1-skeleton in canonical form (brute force)."""
    if X.s1 > max_edges:
        raise TooLarge(f"{X.s1} edges exceed the brute-force limit {max_edges}")
    adj = _adjacency(X)
    found = set()

    def dfs(start, path, on):
        u = path[-1]
        for w in adj[u]:
            if w == start and len(path) >= 3:
                found.add(canonical_cycle(path))
            elif w > start and w not in on:
                on.add(w)
                path.append(w)
                dfs(start, path, on)
                path.pop()
                on.discard(w)

    for s in range(X.vertex_count):
        dfs(s, [s], {s})
    return sorted(found)


def brute_force_systole(X: Simplex2Complex, metric: EdgeMetric | None = None, ring="Z"):
    """Reference systole by testing every simple cycle, shortest first (<= 30 edges)."""
    metric = metric or EdgeMetric.unit(X)
    test = NontrivialityTest(X, ring)
    cands = sorted(((_cycle_length(list(c), metric), c) for c in simple_cycles(X)),
                   key=lambda x: (x[0], x[1]))
    for L, c in cands:
        if test(c):
            return SystoleResult(L, c, test.ring)
    raise TrivialH1(f"H_1 with {test.ring} coefficients vanishes")


# ------------------------------------------------------- sigma bounds


@dataclass(frozen=True)
class EquilateralBound:
    s2: int
    systole_edges: int
    ring: str
    bound: Interval

    def to_dict(self) -> dict:
        return {"s2": self.s2, "systole_edges": self.systole_edges, "ring": self.ring,
                "bound": self.bound.to_dict(),
                "proviso": "systole checked on 1-skeleton cycles with nonzero homology class"}


def equilateral_sigma_upper(X: Simplex2Complex) -> EquilateralBound:
    """s2/(2 pi): area over squared systole for unit hemispheres with edges of length 2 pi/3.

    The systole condition (no nontrivial cycle of fewer than three edges) is
    verified with integer coefficients rather than assumed.
    """
    sysres = homological_systole(X, EdgeMetric.unit(X), "Z")
    if sysres.edge_count < 3:
        raise SystoleTooShort(f"nontrivial cycle with {sysres.edge_count} edges")
    s2 = X.s2
    return EquilateralBound(s2, sysres.edge_count, "Z",
                            certified(lambda c: c.mpf(s2) / (2 * c.pi)))


@dataclass(frozen=True)
class TelescopeBound:
    m: int
    n: int
    bound: Interval
    strips_area: Interval
    disk_area_max: Interval
    systole: Interval
    area_over_sys2: Interval

    def to_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "bound": self.bound.to_dict(),
                "area_breakdown": {"strips": self.strips_area.to_dict(),
                                   "disk_max": self.disk_area_max.to_dict()},
                "systole": self.systole.to_dict(),
                "area_over_sys2": self.area_over_sys2.to_dict()}


def telescope_sigma_upper(m: int) -> TelescopeBound:
    """(1 + 2 sqrt 3)/pi * log2 m from round Moebius strips and a hemispherical cap.

    Each of the n strips has area 2 pi sqrt 3, the disk at most pi n and the
    systole is pi; since 2^n <= m the ratio is at most the stated bound.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    n = m.bit_length() - 1
    assert 2 ** n <= m
    bound = certified(lambda c: (1 + 2 * c.sqrt(3)) / c.pi * c.log(m) / c.log(2))
    strips = certified(lambda c: 2 * c.pi * c.sqrt(3) * n)
    disk = certified(lambda c: c.pi * n)
    sysv = certified(lambda c: c.pi)
    ratio = certified(lambda c: (2 * c.pi * c.sqrt(3) * n + c.pi * n) / c.pi ** 2)
    if not ratio.lo <= bound.hi:
        raise AssertionError("telescope area ratio exceeds the stated bound")
    return TelescopeBound(m, n, bound, strips, disk, sysv, ratio)
