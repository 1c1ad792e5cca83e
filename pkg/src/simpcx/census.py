"""Three-coloured graph encoding, counting formulas and the exhaustive census.

A complex is encoded by the 1-skeleton of its barycentric subdivision with
face-to-vertex edges erased: black = vertices, green = edges, red = faces.
Only the two incidence blocks are stored.
"""
from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .complex import Simplex2Complex, stats, triangle_edges, validate
from .errors import BudgetExceeded, NotAComplex, TooLarge
from .homology import homology_summary
from .kernels import SearchTables, orderly_search

DEFAULT_MAX_T = 10


@dataclass(frozen=True)
class ColoredGraph:
    b: int
    g: int
    r: int
    A: tuple[tuple[int, ...], ...]  # g x b, two ones per row
    B: tuple[tuple[int, ...], ...]  # r x g, three ones per row

    def __post_init__(self):
        if len(self.A) != self.g or any(len(row) != self.b for row in self.A):
            raise ValueError("A must be g x b")
        if len(self.B) != self.r or any(len(row) != self.g for row in self.B):
            raise ValueError("B must be r x g")
        for row in self.A + self.B:
            if any(x not in (0, 1) for x in row):
                raise ValueError("incidence entries must be 0 or 1")
        if any(sum(row) != 2 for row in self.A):
            raise ValueError("every green vertex needs exactly two black neighbours")
        if any(sum(row) != 3 for row in self.B):
            raise ValueError("every red vertex needs exactly three green neighbours")

    def to_dict(self) -> dict:
        return {"b": self.b, "g": self.g, "r": self.r,
                "A": [list(x) for x in self.A], "B": [list(x) for x in self.B]}

    @classmethod
    def from_dict(cls, d) -> "ColoredGraph":
        return cls(int(d["b"]), int(d["g"]), int(d["r"]),
                   tuple(tuple(int(x) for x in row) for row in d["A"]),
                   tuple(tuple(int(x) for x in row) for row in d["B"]))


def encode(X: Simplex2Complex) -> ColoredGraph:
    edges = X.edges
    eidx = {e: i for i, e in enumerate(edges)}
    A = []
    for a, b in edges:
        row = [0] * X.s0
        row[a] = row[b] = 1
        A.append(tuple(row))
    B = []
    for t in X.triangles:
        row = [0] * len(edges)
        for e in triangle_edges(t):
            row[eidx[e]] = 1
        B.append(tuple(row))
    return ColoredGraph(X.s0, len(edges), X.s2, tuple(A), tuple(B))


def decode(Gc: ColoredGraph) -> Simplex2Complex:
    """Rebuild the complex, or explain why the graph encodes none."""
    edges = []
    seen = {}
    for i, row in enumerate(Gc.A):
        e = tuple(j for j, x in enumerate(row) if x)
        if e in seen:
            raise NotAComplex("duplicate edge", f"green {seen[e]} and {i} join {list(e)}")
        seen[e] = i
        edges.append(e)
    tris = {}
    for i, row in enumerate(Gc.B):
        es = [edges[j] for j, x in enumerate(row) if x]
        verts = tuple(sorted({v for e in es for v in e}))
        if len(verts) != 3 or set(es) != set(triangle_edges(verts)):
            raise NotAComplex("non-triangle red vertex",
                              f"red {i} sees edges {[list(e) for e in es]}")
        if verts in tris:
            raise NotAComplex("duplicate triangle", f"red {tris[verts]} and {i} span {list(verts)}")
        tris[verts] = i
    in_tri = {e for t in tris for e in triangle_edges(t)}
    extra = [e for e in edges if e not in in_tri]
    return validate({"vertex_count": Gc.b, "triangles": sorted(tris), "extra_edges": extra})


@dataclass(frozen=True)
class PropertyReport:
    P1: bool
    P2: bool
    P3: bool
    P4: bool
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.P1 and self.P2 and self.P3 and self.P4

    def to_dict(self) -> dict:
        return {"P1": self.P1, "P2": self.P2, "P3": self.P3, "P4": self.P4,
                "failures": list(self.failures)}


def check_properties(Gc: ColoredGraph, T: int) -> PropertyReport:
    """Size bounds (P1) and the incidence shape conditions (P2-P4).

    P2 and P3 are row-sum conditions and P4 (no red-black adjacency) holds
    by the block shape; they are rechecked here so the report is explicit.
    """
    fails = []
    T4 = Fraction(3 * T, 4)
    if Gc.b > T4:
        fails.append(f"P1: b={Gc.b} > 3T/4={T4}")
    if Gc.g > Fraction(3 * T, 2):
        fails.append(f"P1: g={Gc.g} > 3T/2={Fraction(3 * T, 2)}")
    if Gc.r > T:
        fails.append(f"P1: r={Gc.r} > T={T}")
    p2 = [i for i, row in enumerate(Gc.A) if sum(row) != 2]
    p3 = [i for i, row in enumerate(Gc.B) if sum(row) != 3]
    fails += [f"P2: green {i}" for i in p2] + [f"P3: red {i}" for i in p3]
    return PropertyReport(not any(f.startswith("P1") for f in fails), not p2, not p3, True,
                          tuple(fails))


# ------------------------------------------------------------- counting


def iroot(x: int, k: int) -> int:
    """Largest integer y with y**k <= x."""
    if x < 0 or k < 1:
        raise ValueError("need x >= 0 and k >= 1")
    if x < 2:
        return x
    y = 1 << -(-x.bit_length() // k)
    while True:
        z = ((k - 1) * y + x // y ** (k - 1)) // k
        if z >= y:
            break
        y = z
    while y ** k > x:
        y -= 1
    while (y + 1) ** k <= x:
        y += 1
    return y


@dataclass(frozen=True)
class CountBounds:
    T: int
    log2_full: float
    log2_simplified: float
    log2_lower_abelian: Fraction
    lower_abelian_count: int

    def to_dict(self) -> dict:
        return {"T": self.T, "log2_full": float(self.log2_full),
                "log2_simplified": float(self.log2_simplified),
                "log2_lower_abelian": float(self.log2_lower_abelian),
                "lower_abelian_count": self.lower_abelian_count}


def count_bounds(T: int) -> CountBounds:
    """log2 of the colored-graph count, its T^(6T) simplification, and the abelian lower count.

    Logarithms are double precision (relative error far below 1e-9); the
    abelian count floor(2^((T-3)/14)) is exact.
    """
    if T < 2:
        raise ValueError("T must be >= 2")
    t = Fraction(T)
    b, g = 3 * t / 4, 3 * t / 2
    full = (math.log2(9 * t ** 3 / 8) + float(g) * math.log2(b * (b - 1) / 2)
            + T * math.log2(g * (g - 1) * (g - 2) / 6))
    simplified = 6 * T * math.log2(T)
    if full > simplified:
        raise AssertionError(f"colored-graph count exceeds T^(6T) at T={T}")
    low = Fraction(T - 3, 14)
    count = iroot(2 ** (T - 3), 14) if T >= 3 else 0
    return CountBounds(T, full, simplified, low, count)


# --------------------------------------------------------------- census


@dataclass(frozen=True)
class CensusEntry:
    canonical_triangles: tuple[tuple[int, int, int], ...]
    s0: int
    s1: int
    s2: int
    euler: int
    betti: tuple[int, int, int]
    torsion: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"canonical_triangles": [list(t) for t in self.canonical_triangles],
                "s0": self.s0, "s1": self.s1, "s2": self.s2, "euler": self.euler,
                "betti": list(self.betti), "torsion": list(self.torsion)}

    @property
    def complex(self) -> Simplex2Complex:
        return validate({"vertex_count": self.s0, "triangles": self.canonical_triangles})


@dataclass(frozen=True)
class CensusResult:
    T: int
    entries: tuple[CensusEntry, ...]
    complete: bool
    nodes: int
    reason: str = ""
    stats_by_n: dict = field(default_factory=dict)

    def ndjson(self) -> str:
        lines = [json.dumps(e.to_dict(), sort_keys=True) for e in self.entries]
        if not self.complete:
            lines.append(json.dumps({"incomplete": True, "T": self.T, "reason": self.reason,
                                     "entries_reported": len(self.entries)}, sort_keys=True))
        return "".join(line + "\n" for line in lines)


def _entry(n: int, triangles) -> CensusEntry:
    X = validate({"vertex_count": n, "triangles": triangles})
    st = stats(X)
    h = homology_summary(X)
    return CensusEntry(X.triangles, st.s0, st.s1, st.s2, st.euler, h.betti, h.h1_torsion_factors)


@lru_cache(maxsize=None)
def _tables(n: int) -> SearchTables:
    return SearchTables(n)


def _run_chunk(n: int, T: int, second: int, max_nodes: int):
    tb = _tables(n)
    mask = np.zeros(len(tb.triangles), dtype=np.bool_)
    mask[second] = True
    sets, nodes, complete = orderly_search(tb, T, mask, max_nodes=max_nodes)
    return [[tb.triangles[i] for i in s] for s in sets], nodes, complete


def census(T: int, *, max_T: int = DEFAULT_MAX_T, budget_nodes: int | None = None,
           budget_seconds: float | None = None, workers: int = 1,
           raise_on_budget: bool = False) -> CensusResult:
    """All complexes with at most T triangles satisfying (M1) and (M2), up to relabeling.

    Only connected complexes are listed. The search space is split by the
    second triangle of the canonical form; chunks are merged in a fixed order,
    and a node budget is charged chunk by chunk in that order, so the output
    does not depend on ``workers``. Budget exhaustion yields an incomplete
    result (or :class:`BudgetExceeded` with the partial result attached).
    """
    if T > max_T:
        raise TooLarge(f"T={T} exceeds the configured maximum {max_T}")
    budget = budget_nodes if budget_nodes is not None else 10 ** 15
    start = time.monotonic()
    jobs = [(n, j) for n in range(3, 3 * T // 4 + 1) for j in range(1, len(_tables(n).triangles))]
    found: list[CensusEntry] = []
    used, complete, reason = 0, True, ""
    per_n: dict[int, int] = {}

    def take(n, res) -> bool:
        nonlocal used, complete, reason
        sets, nodes, done = res
        used += nodes
        if not done or used > budget:
            complete, reason = False, f"node budget {budget} exhausted"
            return False
        for s in sets:
            found.append(_entry(n, s))
            per_n[n] = per_n.get(n, 0) + 1
        return True

    def out_of_time() -> bool:
        nonlocal complete, reason
        if budget_seconds is not None and time.monotonic() - start > budget_seconds:
            complete, reason = False, f"time budget {budget_seconds}s exhausted"
            return True
        return False

    if workers <= 1:
        for n, j in jobs:
            if out_of_time() or not take(n, _run_chunk(n, T, j, budget - used)):
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(_run_chunk, n, T, j, budget) for n, j in jobs]
            for (n, _), f in zip(jobs, futs):
                if out_of_time() or not take(n, f.result()):
                    for g in futs:
                        g.cancel()
                    break
    entries = tuple(sorted(found, key=lambda e: (e.s0, e.s2, e.canonical_triangles)))
    result = CensusResult(T, entries, complete, used, reason, dict(sorted(per_n.items())))
    if not complete and raise_on_budget:
        raise BudgetExceeded(reason, partial=result)
    return result
