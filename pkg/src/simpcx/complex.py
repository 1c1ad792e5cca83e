"""Finite 2-dimensional simplicial complexes.

A complex is stored as a vertex count, a sorted list of triangles and a
sorted list of extra edges (edges lying in no triangle). Lower faces are
always derived, never stored.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    DegenerateSimplex,
    DuplicateSimplex,
    IndexOutOfRange,
    NotATriangle,
    QuotientNotSimplicial,
)

Triangle = tuple[int, int, int]
Edge = tuple[int, int]


def triangle_edges(t: Sequence[int]) -> tuple[Edge, Edge, Edge]:
    a, b, c = t
    return (a, b), (a, c), (b, c)


@dataclass(frozen=True)
class Simplex2Complex:
    vertex_count: int
    triangles: tuple[Triangle, ...] = ()
    extra_edges: tuple[Edge, ...] = ()

    @property
    def edges(self) -> tuple[Edge, ...]:
        es = {e for t in self.triangles for e in triangle_edges(t)}
        es.update(self.extra_edges)
        return tuple(sorted(es))

    @property
    def s0(self) -> int:
        return self.vertex_count

    @property
    def s1(self) -> int:
        return len(self.edges)

    @property
    def s2(self) -> int:
        return len(self.triangles)

    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def relabel(self, perm: Sequence[int]) -> "Simplex2Complex":
        """Apply the vertex relabeling ``v -> perm[v]`` (a bijection)."""
        tris = [tuple(sorted(perm[v] for v in t)) for t in self.triangles]
        extra = [tuple(sorted(perm[v] for v in e)) for e in self.extra_edges]
        return validate({"vertex_count": self.vertex_count, "triangles": tris,
                         "extra_edges": extra})

    def to_dict(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "triangles": [list(t) for t in self.triangles],
            "extra_edges": [list(e) for e in self.extra_edges],
        }


@dataclass(frozen=True)
class ComplexStats:
    s0: int
    s1: int
    s2: int
    euler: int
    edge_face_degrees: tuple[int, ...]
    vertex_face_degrees: tuple[int, ...]
    connected: bool

    def to_dict(self) -> dict:
        return {"s0": self.s0, "s1": self.s1, "s2": self.s2, "euler": self.euler,
                "connected": self.connected}


@dataclass(frozen=True)
class MarkedComplex:
    complex: Simplex2Complex
    marked_vertices: Mapping[str, int] = field(default_factory=dict)
    marked_loops: Mapping[str, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        edges = set(self.complex.edges)
        for name, v in self.marked_vertices.items():
            if not 0 <= v < self.complex.vertex_count:
                raise IndexOutOfRange(f"marked vertex {name}={v}")
        for name, loop in self.marked_loops.items():
            if len(loop) < 2:
                raise ValueError(f"loop {name} too short")
            for a, b in zip(loop, loop[1:] + loop[:1]):
                if (min(a, b), max(a, b)) not in edges:
                    raise ValueError(f"loop {name}: ({a},{b}) is not an edge")

    @property
    def s2(self) -> int:
        return self.complex.s2

    def to_dict(self) -> dict:
        d = self.complex.to_dict()
        d["marks"] = {
            "vertices": {k: self.marked_vertices[k] for k in sorted(self.marked_vertices)},
            "loops": {k: list(self.marked_loops[k]) for k in sorted(self.marked_loops)},
        }
        return d


def validate(raw) -> Simplex2Complex:
    """Check a candidate description and return the canonical complex.

    ``raw`` is a mapping with ``vertex_count``, ``triangles`` and optional
    ``extra_edges`` (or an existing complex). Order is canonicalised;
    duplicates and degenerate simplices are errors, never repaired.
    """
    if isinstance(raw, Simplex2Complex):
        raw = raw.to_dict()
    n = int(raw["vertex_count"])
    if n < 0:
        raise IndexOutOfRange("negative vertex_count")

    def _canon(simplex, size):
        s = tuple(int(v) for v in simplex)
        if len(s) != size:
            raise DegenerateSimplex(f"{list(s)} does not have {size} vertices")
        if len(set(s)) != size:
            raise DegenerateSimplex(f"repeated index in {list(s)}")
        for v in s:
            if not 0 <= v < n:
                raise IndexOutOfRange(f"index {v} not in [0, {n})")
        return tuple(sorted(s))

    tris = [_canon(t, 3) for t in raw.get("triangles", ())]
    extra = [_canon(e, 2) for e in raw.get("extra_edges", ())]
    for what, items in (("triangle", tris), ("edge", extra)):
        dup = [s for s, c in Counter(items).items() if c > 1]
        if dup:
            raise DuplicateSimplex(f"duplicate {what} {list(dup[0])}")
    tri_edges = {e for t in tris for e in triangle_edges(t)}
    for e in extra:
        if e in tri_edges:
            raise DuplicateSimplex(f"extra edge {list(e)} is an edge of a triangle")
    return Simplex2Complex(n, tuple(sorted(tris)), tuple(sorted(extra)))


def _components(n: int, edges: Iterable[Edge]) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return [find(v) for v in range(n)]


def component_count(X: Simplex2Complex) -> int:
    return len(set(_components(X.vertex_count, X.edges)))


def stats(X: Simplex2Complex) -> ComplexStats:
    edges = X.edges
    idx = {e: i for i, e in enumerate(edges)}
    edeg = [0] * len(edges)
    vdeg = [0] * X.vertex_count
    for t in X.triangles:
        for e in triangle_edges(t):
            edeg[idx[e]] += 1
        for v in t:
            vdeg[v] += 1
    return ComplexStats(
        s0=X.s0, s1=len(edges), s2=X.s2,
        euler=X.s0 - len(edges) + X.s2,
        edge_face_degrees=tuple(edeg),
        vertex_face_degrees=tuple(vdeg),
        connected=X.vertex_count > 0 and component_count(X) == 1,
    )


def is_minimal_candidate(X: Simplex2Complex) -> tuple[bool, list[tuple[str, tuple]]]:
    """Check (M1) every edge in >= 2 triangles and (M2) every vertex in >= 4."""
    st = stats(X)
    violations = [("M1", e) for e, d in zip(X.edges, st.edge_face_degrees) if d < 2]
    violations += [("M2", (v,)) for v, d in enumerate(st.vertex_face_degrees) if d < 4]
    return not violations, violations


BLACK, GREEN, RED = "black", "green", "red"


def barycentric_subdivide(X: Simplex2Complex) -> tuple[Simplex2Complex, tuple[str, ...]]:
    """Barycentric subdivision plus the black/green/red coloring of new vertices.

    New vertex order: original vertices, then edge barycenters in edge order,
    then face barycenters in triangle order.
    """
    edges = X.edges
    eidx = {e: X.s0 + i for i, e in enumerate(edges)}
    base_f = X.s0 + len(edges)
    tris = []
    for fi, t in enumerate(X.triangles):
        f = base_f + fi
        for e in triangle_edges(t):
            for v in e:
                tris.append((v, eidx[e], f))
    tri_edges = {e for t in X.triangles for e in triangle_edges(t)}
    extra = []
    for e in edges:
        if e not in tri_edges:
            extra.extend([(e[0], eidx[e]), (e[1], eidx[e])])
    colors = (BLACK,) * X.s0 + (GREEN,) * len(edges) + (RED,) * X.s2
    sd = validate({"vertex_count": base_f + X.s2, "triangles": tris, "extra_edges": extra})
    return sd, colors


def identify(X: Simplex2Complex, vertex_map) -> tuple[Simplex2Complex, list[int]]:
    """Quotient by merging vertex classes.

    ``vertex_map`` is either a mapping ``v -> w`` (v is merged into w's class)
    or an iterable of classes (iterables of vertices). Classes are relabeled
    densely in order of their smallest member. Returns the quotient and the
    map old vertex -> new vertex. Edges may merge; triangles may not.
    """
    n = X.vertex_count
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        for v in (a, b):
            if not 0 <= v < n:
                raise IndexOutOfRange(f"vertex {v} not in [0, {n})")
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    if isinstance(vertex_map, Mapping):
        for a, b in vertex_map.items():
            union(a, b)
    else:
        for cls in vertex_map:
            cls = list(cls)
            for v in cls[1:]:
                union(cls[0], v)

    roots = sorted({find(v) for v in range(n)})
    new_of_root = {r: i for i, r in enumerate(roots)}
    new = [new_of_root[find(v)] for v in range(n)]

    tris = []
    for t in X.triangles:
        nt = tuple(sorted(new[v] for v in t))
        if len(set(nt)) < 3:
            raise QuotientNotSimplicial(f"triangle {list(t)} degenerates")
        tris.append(nt)
    seen = {}
    for t, nt in zip(X.triangles, tris):
        if nt in seen:
            raise QuotientNotSimplicial(
                f"triangles {list(seen[nt])} and {list(t)} collide")
        seen[nt] = t
    tri_edges = {e for t in tris for e in triangle_edges(t)}
    extra = set()
    for e in X.extra_edges:
        ne = tuple(sorted(new[v] for v in e))
        if ne[0] == ne[1]:
            raise QuotientNotSimplicial(f"edge {list(e)} degenerates")
        if ne not in tri_edges:
            extra.add(ne)
    for t in X.triangles:
        for e in triangle_edges(t):
            if new[e[0]] == new[e[1]]:
                raise QuotientNotSimplicial(f"edge {list(e)} degenerates")
    Q = Simplex2Complex(len(roots), tuple(sorted(tris)), tuple(sorted(extra)))
    return Q, new


def disjoint_union(A: Simplex2Complex, B: Simplex2Complex) -> Simplex2Complex:
    k = A.vertex_count
    return Simplex2Complex(
        k + B.vertex_count,
        tuple(sorted(A.triangles + tuple(tuple(v + k for v in t) for t in B.triangles))),
        tuple(sorted(A.extra_edges + tuple(tuple(v + k for v in e) for e in B.extra_edges))),
    )


def _merge_marks(A: MarkedComplex, B: MarkedComplex, mapA, mapB):
    verts = {k: mapA[v] for k, v in A.marked_vertices.items()}
    loops = {k: tuple(mapA[v] for v in l) for k, l in A.marked_loops.items()}

    def fresh(name, taken):
        while name in taken:
            name += "'"
        return name

    for k, v in B.marked_vertices.items():
        if k in verts and verts[k] == mapB[v]:
            continue
        verts[fresh(k, verts)] = mapB[v]
    for k, l in B.marked_loops.items():
        loops[fresh(k, loops)] = tuple(mapB[v] for v in l)
    return verts, loops


def glue(A: MarkedComplex, B: MarkedComplex, pairs: Iterable[tuple[int, int]],
         drop_b_triangles: Iterable[Triangle] = ()) -> tuple[MarkedComplex, list[int], list[int]]:
    """Disjoint union of A and B with vertex a of A identified to b of B.

    Returns the glued complex and the vertex maps from A and from B.
    """
    XB = B.complex
    drop = {tuple(sorted(t)) for t in drop_b_triangles}
    if drop:
        keep = tuple(t for t in XB.triangles if t not in drop)
        kept_edges = {e for t in keep for e in triangle_edges(t)}
        lost = {e for t in drop for e in triangle_edges(t)} - kept_edges
        XB = Simplex2Complex(XB.vertex_count, keep, tuple(sorted(set(XB.extra_edges) | lost)))
    k = A.complex.vertex_count
    U = disjoint_union(A.complex, XB)
    Q, new = identify(U, [(a, b + k) for a, b in pairs])
    mapA = new[:k]
    mapB = new[k:]
    verts, loops = _merge_marks(A, B, mapA, mapB)
    return MarkedComplex(Q, verts, loops), mapA, mapB


def wedge(A: MarkedComplex, B: MarkedComplex, at: tuple[str, str] = ("P", "P")) -> MarkedComplex:
    """One-point union at the named base vertices; marks of B renamed on clash."""
    a = A.marked_vertices[at[0]]
    b = B.marked_vertices[at[1]]
    W, _, _ = glue(A, B, [(a, b)])
    return W


def glue_triangle(A: Simplex2Complex, tA: Sequence[int], B: Simplex2Complex,
                  tB: Sequence[int]) -> Simplex2Complex:
    """Identify triangle tA of A with triangle tB of B (vertexwise, in the given order)."""
    tA, tB = tuple(tA), tuple(tB)
    if tuple(sorted(tA)) not in set(A.triangles):
        raise NotATriangle(f"{list(tA)} is not a triangle of the first complex")
    if tuple(sorted(tB)) not in set(B.triangles):
        raise NotATriangle(f"{list(tB)} is not a triangle of the second complex")
    G, _, _ = glue(MarkedComplex(A), MarkedComplex(B), zip(tA, tB), drop_b_triangles=[tB])
    return G.complex


def point() -> MarkedComplex:
    return MarkedComplex(Simplex2Complex(1), {"P": 0}, {})

