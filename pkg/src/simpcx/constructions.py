"""Catalog of explicit complexes and the registry that builds them by name.

Every builder returns a :class:`MarkedComplex` with base vertex ``P`` and the
loops later constructions glue along.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Sequence

from .complex import (MarkedComplex, Simplex2Complex, glue, point, triangle_edges,
                      validate)
from .groups import (GroupSpec, merge_numeric_tokens, parse_group, split_top_level,
                     strip_parens)

_RP2_TRIANGLES = ((0, 1, 2), (0, 1, 5), (0, 2, 3), (0, 3, 4), (0, 4, 5),
                  (1, 2, 4), (1, 3, 4), (1, 3, 5), (2, 3, 5), (2, 4, 5))
# a 3-cycle through vertex 0 that bounds no face: generates H_1
_RP2_GAMMA = (0, 1, 3)
# face removed to open the projective plane into a Moebius strip, oriented
# so that its boundary is homologous to twice the core loop
_MOEBIUS_BOUNDARY = (0, 5, 4)
# two non-face 3-cycles of the 7-vertex torus meeting only at 0 and forming
# a basis of H_1
_TORUS_ALPHA = ((0, 1, 2), (0, 3, 4))


def _torus_triangles() -> list[tuple[int, int, int]]:
    tris = set()
    for i in range(7):
        tris.add(tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))))
        tris.add(tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))))
    return sorted(tris)


def minimal_rp2() -> MarkedComplex:
    """Six-vertex projective plane (antipodal quotient of the icosahedron)."""
    X = validate({"vertex_count": 6, "triangles": _RP2_TRIANGLES})
    return MarkedComplex(X, {"P": 0}, {"gamma": _RP2_GAMMA})


def minimal_torus() -> MarkedComplex:
    """Seven-vertex torus with 3-edge loops alpha1, alpha2 through P spanning H_1."""
    X = validate({"vertex_count": 7, "triangles": _torus_triangles()})
    return MarkedComplex(X, {"P": 0}, {"alpha1": _TORUS_ALPHA[0], "alpha2": _TORUS_ALPHA[1]})


def moebius_strip() -> MarkedComplex:
    """Nine-triangle Moebius strip: the projective plane minus one face."""
    drop = tuple(sorted(_MOEBIUS_BOUNDARY))
    X = validate({"vertex_count": 6, "triangles": [t for t in _RP2_TRIANGLES if t != drop]})
    return MarkedComplex(X, {"P": 0}, {"gamma": _RP2_GAMMA, "boundary": _MOEBIUS_BOUNDARY})


def loop_circle() -> MarkedComplex:
    """A 3-edge circle through P, with no triangles."""
    X = validate({"vertex_count": 3, "extra_edges": [(0, 1), (0, 2), (1, 2)]})
    return MarkedComplex(X, {"P": 0}, {"gamma": (0, 1, 2)})


@dataclass(frozen=True)
class TelescopeSpec:
    height: int

    def __post_init__(self):
        if self.height < 1:
            raise ValueError("telescope height must be >= 1")


def moebius_telescope(spec: TelescopeSpec | int) -> MarkedComplex:
    """Chain of Moebius strips, each core glued to the previous boundary.

    Loops ``gamma0 .. gamma{n-1}`` satisfy [gamma_i] = 2^i [gamma0];
    ``boundary`` is the free boundary of the last strip.
    """
    n = spec.height if isinstance(spec, TelescopeSpec) else TelescopeSpec(int(spec)).height
    M = moebius_strip()
    T = M
    gammas = [M.marked_loops["gamma"]]
    boundary = M.marked_loops["boundary"]
    for _ in range(1, n):
        pairs = list(zip(boundary, M.marked_loops["gamma"]))
        G, mapA, mapB = glue(T, M, pairs)
        gammas = [tuple(mapA[v] for v in g) for g in gammas]
        gammas.append(tuple(mapA[v] for v in boundary))
        boundary = tuple(mapB[v] for v in M.marked_loops["boundary"])
        T = MarkedComplex(G.complex, {"P": mapA[0]}, {})
    loops = {f"gamma{i}": g for i, g in enumerate(gammas)}
    loops["boundary"] = boundary
    return MarkedComplex(T.complex, {"P": T.marked_vertices["P"]}, loops)


def fill_disk(boundary: Sequence[int], arcs: Sequence[int], start: int, fresh: int) -> tuple[list, int]:
    """Triangulate a disk whose boundary cycle maps onto ``boundary``.

    The boundary is cut into consecutive arcs (edge counts ``arcs``, first
    arc starting at position ``start``); each arc is coned to its own new
    interior vertex, consecutive cone points share a triangle with the
    common boundary vertex and the inner polygon of cone points is fanned.
    Distinct images along each arc keep the glued result simplicial.
    Returns the triangles and the next unused vertex id.
    """
    M = len(boundary)
    if sum(arcs) != M:
        raise ValueError("arc lengths must add up to the boundary length")
    k = len(arcs)
    qs = list(range(fresh, fresh + k))
    tris = []
    pos = start
    ends = []
    for q, length in zip(qs, arcs):
        for i in range(pos, pos + length):
            tris.append((q, boundary[i % M], boundary[(i + 1) % M]))
        pos += length
        ends.append(boundary[pos % M])
    if k >= 2:
        for j in range(k):
            tris.append((qs[j], ends[j], qs[(j + 1) % k]))
        for i in range(1, k - 1):
            tris.append((qs[0], qs[i], qs[i + 1]))
    return tris, fresh + k


@dataclass(frozen=True)
class CyclicTarget:
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("m must be >= 2")

    @property
    def n(self) -> int:
        return self.m.bit_length() - 1

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n + 1) if self.m >> i & 1)

    @property
    def s(self) -> int:
        return len(self.exponents)


def complex_for_cyclic(m: int) -> MarkedComplex:
    """Complex with H_1 = Z_m: a telescope of height n plus a disk on xi(m).

    xi(m) runs through gamma_{n_1}, ..., gamma_{n_{s-1}} and then the last
    boundary loop, so its class is m times the generator. A single loop is
    capped by one triangle; otherwise each loop term gets one cone point
    (5s - 2 disk triangles).
    """
    tgt = CyclicTarget(m)
    T = moebius_telescope(tgt.n)
    loops = T.marked_loops
    terms = [loops[f"gamma{e}"] for e in tgt.exponents[:-1]] + [loops["boundary"]]
    xi = tuple(v for t in terms for v in t)
    X = T.complex
    if tgt.s == 1:
        tris = [tuple(xi)]
        nv = X.vertex_count
    else:
        tris, nv = fill_disk(xi, [3] * tgt.s, len(xi) - 1, X.vertex_count)
    Y = validate({"vertex_count": nv, "triangles": list(X.triangles) + tris,
                  "extra_edges": X.extra_edges})
    return MarkedComplex(Y, {"P": T.marked_vertices["P"]}, {"gamma": loops["gamma0"], "xi": xi})


def _bouquet(summands: Sequence[MarkedComplex]) -> tuple[MarkedComplex, list[tuple[int, ...]]]:
    """Wedge at P; returns the wedge and the images of each summand's ``gamma``."""
    W = summands[0]
    gens = [W.marked_loops["gamma"]]
    for S in summands[1:]:
        G, mapA, mapB = glue(W, S, [(W.marked_vertices["P"], S.marked_vertices["P"])])
        gens = [tuple(mapA[v] for v in g) for g in gens]
        gens.append(tuple(mapB[v] for v in S.marked_loops["gamma"]))
        W = MarkedComplex(G.complex, {"P": mapA[W.marked_vertices["P"]]}, {})
    return W, gens


def bouquet_of_circles(n: int) -> MarkedComplex:
    if n == 0:
        return point()
    W, gens = _bouquet([loop_circle() for _ in range(n)])
    return MarkedComplex(W.complex, W.marked_vertices, {f"g{i + 1}": g for i, g in enumerate(gens)})


def complex_for_abelian(rank: int, chain: Sequence[int] = ()) -> MarkedComplex:
    """Complex with H_1 = Z^rank + Z_{n_1} + ... + Z_{n_s}.

    Summands (3-edge circles for Z, ``complex_for_cyclic`` for Z_n) are
    wedged at P, and one 7-vertex torus per unordered pair of summands is
    glued with its two basis loops onto the two generators, making them
    commute.
    """
    summands = [loop_circle() for _ in range(rank)] + [complex_for_cyclic(n) for n in chain]
    if not summands:
        return point()
    W, gens = _bouquet(summands)
    torus = minimal_torus()
    a1, a2 = torus.marked_loops["alpha1"], torus.marked_loops["alpha2"]
    k = len(gens)
    for i in range(k):
        for j in range(i + 1, k):
            pairs = list(zip(gens[i], a1)) + list(zip(gens[j], a2))
            G, mapA, _ = glue(W, torus, pairs)
            gens = [tuple(mapA[v] for v in g) for g in gens]
            W = MarkedComplex(G.complex, {"P": mapA[W.marked_vertices["P"]]}, {})
    return MarkedComplex(W.complex, W.marked_vertices,
                         {f"g{i + 1}": g for i, g in enumerate(gens)})


def connected_sum(A: MarkedComplex, tA: Sequence[int], B: MarkedComplex,
                  tB: Sequence[int]) -> tuple[MarkedComplex, list[int], list[int]]:
    """Remove tA and tB and identify their boundaries vertexwise."""
    drop = tuple(sorted(tA))
    XA = A.complex
    keep = tuple(t for t in XA.triangles if t != drop)
    lost = set(triangle_edges(drop)) - {e for t in keep for e in triangle_edges(t)}
    A2 = MarkedComplex(Simplex2Complex(XA.vertex_count, keep,
                                       tuple(sorted(set(XA.extra_edges) | lost))),
                       A.marked_vertices, {})
    return glue(A2, B, list(zip(tA, tB)), drop_b_triangles=[tB])


def surface_witness(genus: int) -> MarkedComplex:
    """Orientable genus-l surface as a connected sum of 7-vertex tori (12l + 2 triangles)."""
    if genus < 1:
        raise ValueError("genus must be >= 1")
    torus = minimal_torus()
    tt = torus.complex.triangles
    t_in = tt[0]
    S = MarkedComplex(torus.complex, {"P": 0}, {})
    last_map = list(range(7))
    prev_in: tuple[int, ...] = ()
    for _ in range(1, genus):
        t_out = next(t for t in tt if not set(t) & set(prev_in))
        S, mapA, mapB = connected_sum(S, [last_map[v] for v in t_out], torus, t_in)
        S = MarkedComplex(S.complex, {"P": mapA[S.marked_vertices["P"]]}, {})
        last_map, prev_in = mapB, t_in
    return S


@dataclass(frozen=True)
class SurfaceBounds:
    genus: int
    kappa_lo: int
    kappa_hi: int
    witness: MarkedComplex | None = None


def surface_bounds(genus: int, with_witness: bool = False) -> SurfaceBounds:
    """Lower bound ceil(4l/3) and the minimal-triangulation upper bound."""
    if genus < 1:
        raise ValueError("genus must be >= 1")
    lo = -(-4 * genus // 3)
    if genus == 2:
        hi = 24
    else:
        d = 1 + 48 * genus
        r = isqrt(d)
        half = (7 + r + 1) // 2 if r * r == d else (7 + r) // 2 + 1
        hi = 4 * (genus - 1) + 2 * half
    return SurfaceBounds(genus, lo, hi, surface_witness(genus) if with_witness else None)


def free_product_complex(A: MarkedComplex, B: MarkedComplex) -> MarkedComplex:
    """Identify the first triangle of B with the first triangle of A."""
    if not A.complex.triangles or not B.complex.triangles:
        raise ValueError("both factors need at least one triangle")
    tA, tB = A.complex.triangles[0], B.complex.triangles[0]
    G, mapA, _ = glue(A, B, list(zip(tA, tB)), drop_b_triangles=[tB])
    verts = {"P": mapA[A.marked_vertices["P"]]} if "P" in A.marked_vertices else {}
    return MarkedComplex(G.complex, verts, {})


def join_factors(A: MarkedComplex, B: MarkedComplex) -> MarkedComplex:
    """Free product of fundamental groups: triangle gluing when possible, else a wedge."""
    if A.complex.triangles and B.complex.triangles:
        return free_product_complex(A, B)
    G, mapA, _ = glue(A, B, [(A.marked_vertices.get("P", 0), B.marked_vertices.get("P", 0))])
    return MarkedComplex(G.complex, {"P": mapA[A.marked_vertices.get("P", 0)]}, {})


def witness_for_group(spec: GroupSpec) -> MarkedComplex:
    v = spec.variant
    if v == "trivial":
        return point()
    if v == "free":
        return bouquet_of_circles(spec.rank)
    if v == "cyclic":
        return complex_for_cyclic(spec.chain[0])
    if v in ("finite_abelian", "fg_abelian"):
        return complex_for_abelian(spec.rank, spec.chain)
    if v == "surface_orientable":
        return surface_witness(spec.genus)
    parts = [witness_for_group(p) for p in spec.parts]
    W = parts[0]
    for p in parts[1:]:
        W = join_factors(W, p)
    return W


_NAMED = {
    "rp2": minimal_rp2,
    "torus": minimal_torus,
    "moebius": moebius_strip,
    "point": point,
}


def build(name: str) -> MarkedComplex:
    """Build a complex from a registry name or a group spec string.

    Names: rp2, torus, moebius, point, telescope:n, freeprod:(name, ...),
    and every group spec (cyclic:m, abelian:r:(...), surface:l, ...).
    """
    s = name.strip()
    if s in _NAMED:
        return _NAMED[s]()
    head, _, rest = s.partition(":")
    if head == "telescope":
        return moebius_telescope(int(rest))
    if head == "freeprod":
        items = merge_numeric_tokens(split_top_level(strip_parens(rest)))
        parts = [build(x) for x in items if x]
        if not parts:
            raise ValueError("freeprod needs at least one factor")
        W = parts[0]
        for p in parts[1:]:
            W = join_factors(W, p)
        return W
    return witness_for_group(parse_group(s))
