"""Finite group presentations and their passage to and from 2-complexes.

Words are tuples of nonzero ints: ``g`` is the g-th generator (1-based),
``-g`` its inverse.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .constructions import fill_disk, minimal_rp2
from .complex import MarkedComplex, Simplex2Complex, component_count, triangle_edges, validate
from .errors import BadLengthTwoRelator, Disconnected, UnreducedRelator
from .homology import smith_normal_form

Word = tuple[int, ...]


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: tuple[Word, ...] = ()

    def __init__(self, generator_count: int, relators: Iterable[Sequence[int]] = ()):
        rels = tuple(tuple(int(x) for x in r) for r in relators)
        rels = tuple(r for r in rels if r)
        for r in rels:
            for x in r:
                if x == 0 or abs(x) > generator_count:
                    raise ValueError(f"letter {x} out of range for {generator_count} generators")
        object.__setattr__(self, "generator_count", int(generator_count))
        object.__setattr__(self, "relators", rels)

    @property
    def length(self) -> int:
        return sum(len(r) for r in self.relators)

    def __str__(self) -> str:
        return format_presentation(self)


@dataclass(frozen=True)
class PresentationStats:
    length: int
    c_upper: int
    t_upper: int


@dataclass(frozen=True)
class AbelianInvariants:
    rank: int
    torsion: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


def presentation_stats(P: Presentation) -> PresentationStats:
    return PresentationStats(
        length=P.length,
        c_upper=P.length,
        t_upper=sum(max(len(r) - 2, 0) for r in P.relators),
    )


# ------------------------------------------------------------ word tools


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def free_reduce(w: Sequence[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w: Sequence[int]) -> Word:
    w = list(free_reduce(w))
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def is_cyclically_reduced(w: Sequence[int]) -> bool:
    return len(w) > 0 and cyclic_reduce(w) == tuple(w)


def cyclic_key(w: Sequence[int]) -> Word:
    """Representative of w up to rotation and inversion."""
    cands = []
    for v in (tuple(w), inverse(w)):
        cands.extend(v[i:] + v[:i] for i in range(len(v)))
    return min(cands) if cands else ()


def abelianization(P: Presentation) -> AbelianInvariants:
    n = P.generator_count
    rows = []
    for r in P.relators:
        row = [0] * n
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    if not rows or n == 0:
        return AbelianInvariants(n, ())
    snf = smith_normal_form(rows)
    return AbelianInvariants(n - snf.rank, tuple(d for d in snf.invariant_factors if d > 1))


# -------------------------------------------------------------- Tietze


def _renumber(n: int, rels: list[Word], dead: int) -> tuple[int, list[Word]]:
    def f(x):
        g = abs(x)
        g2 = g - 1 if g > dead else g
        return g2 if x > 0 else -g2
    return n - 1, [tuple(f(x) for x in r) for r in rels]


def _substitute(rels: list[Word], g: int, image: Word) -> list[Word]:
    inv = inverse(image)
    out = []
    for r in rels:
        w: list[int] = []
        for x in r:
            if x == g:
                w.extend(image)
            elif x == -g:
                w.extend(inv)
            else:
                w.append(x)
        out.append(tuple(w))
    return out


def _tietze_step(n: int, rels: list[Word]) -> tuple[int, list[Word]] | None:
    reduced = [cyclic_reduce(r) for r in rels]
    reduced = [r for r in reduced if r]
    seen, uniq = set(), []
    for r in reduced:
        k = cyclic_key(r)
        if k not in seen:
            seen.add(k)
            uniq.append(r)
    if uniq != rels:
        return n, uniq
    # a generator equal to the identity
    for r in rels:
        if len(r) == 1:
            g = abs(r[0])
            rest = [tuple(x for x in s if abs(x) != g) for s in rels if s is not r]
            return _renumber(n, rest, g)
    # x^a y^b = 1 with x != y: x = y^(-a*b)
    for r in rels:
        if len(r) == 2 and abs(r[0]) != abs(r[1]):
            (x, y) = sorted(r, key=abs, reverse=True)
            g = abs(x)
            a = 1 if x > 0 else -1
            image = (-y * a,) if a == 1 else (y,)
            rest = [s for s in rels if s is not r]
            return _renumber(n, _substitute(rest, g, image), g)
    # a generator occurring once in some relator, when substituting it
    # away shortens the presentation
    for g in range(n, 0, -1):
        for r in rels:
            occ = [i for i, x in enumerate(r) if abs(x) == g]
            if len(occ) != 1:
                continue
            others = sum(1 for s in rels if s is not r for x in s if abs(x) == g)
            if (len(r) - 1) * others >= len(r):
                continue
            i = occ[0]
            rot = r[i:] + r[:i]
            w = rot[1:]
            image = inverse(w) if rot[0] > 0 else w
            rest = [s for s in rels if s is not r]
            return _renumber(n, _substitute(rest, g, image), g)
    return None


def tietze_simplify(P: Presentation) -> Presentation:
    """Apply length-nonincreasing Tietze moves until none applies."""
    n, rels = P.generator_count, list(P.relators)
    while True:
        step = _tietze_step(n, rels)
        if step is None:
            return Presentation(n, rels)
        n, rels = step


def triangularize(P: Presentation) -> Presentation:
    """Split every relator longer than 3 into length-3 pieces with fresh generators."""
    n = P.generator_count
    rels: list[Word] = []
    for r in P.relators:
        if len(r) <= 3:
            rels.append(r)
            continue
        prev = r[0]
        for x in r[1:-2]:
            n += 1
            rels.append((prev, x, -n))  # new generator n = prev * x
            prev = n
        rels.append((prev, r[-2], r[-1]))
    return Presentation(n, rels)


# ---------------------------------------------------- complex <-> words


def complex_to_presentation(X: Simplex2Complex) -> Presentation:
    """Edge-path presentation of pi_1 relative to a BFS spanning tree from vertex 0.

    Generators are the non-tree edges (sorted, oriented low -> high); each
    triangle (a, b, c) contributes the word read along a -> b -> c -> a.
    """
    if X.vertex_count == 0 or component_count(X) != 1:
        raise Disconnected("complex must be nonempty and connected")
    edges = X.edges
    adj: dict[int, list[int]] = {v: [] for v in range(X.vertex_count)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    tree, seen, q = set(), {0}, deque([0])
    while q:
        u = q.popleft()
        for w in sorted(adj[u]):
            if w not in seen:
                seen.add(w)
                tree.add((min(u, w), max(u, w)))
                q.append(w)
    gen = {}
    for e in edges:
        if e not in tree:
            gen[e] = len(gen) + 1

    def letter(u, v):
        e = (min(u, v), max(u, v))
        if e in tree:
            return None
        return gen[e] if u < v else -gen[e]

    rels = []
    for a, b, c in X.triangles:
        w = [letter(a, b), letter(b, c), letter(c, a)]
        rels.append(tuple(x for x in w if x is not None))
    return Presentation(len(gen), rels)


def relator_disk_arcs(length: int) -> list[int]:
    """Arc layout for a relator of the given word length: 2-edge arcs plus a 1-edge arc if odd."""
    M = 3 * length
    return [2] * (M // 2) + ([1] if M % 2 else [])


def presentation_to_complex(P: Presentation) -> MarkedComplex:
    """Wedge of 3-edge circles with one triangulated disk per relator.

    Relators of length 2 must be squares; they get a 10-triangle projective
    plane glued along its generating loop. Longer relators get a disk with
    6|r| - 2 (even) or 6|r| - 1 (odd) triangles.
    """
    for r in P.relators:
        if len(r) == 1:
            raise UnreducedRelator(f"length-1 relator {list(r)}; kill the generator first")
        if len(r) == 2 and r[0] != r[1]:
            raise BadLengthTwoRelator(f"length-2 relator {list(r)} is not a square")
        if not is_cyclically_reduced(r):
            raise UnreducedRelator(f"relator {list(r)} is not cyclically reduced")

    n = P.generator_count
    loops = {}
    extra = []
    for g in range(1, n + 1):
        g1, g2 = 2 * g - 1, 2 * g
        loops[f"a{g}"] = (0, g1, g2)
        extra += [(0, g1), (g1, g2), (0, g2)]
    nv = 2 * n + 1
    tris: list[tuple] = []
    rp2 = minimal_rp2()
    rp2_tris = rp2.complex.triangles
    rP, ru, rv = rp2.marked_loops["gamma"]

    for r in P.relators:
        if len(r) == 2:
            g = abs(r[0])
            vmap = {rP: 0, ru: 2 * g - 1, rv: 2 * g}
            for v in range(rp2.complex.vertex_count):
                if v not in vmap:
                    vmap[v] = nv
                    nv += 1
            tris += [tuple(vmap[v] for v in t) for t in rp2_tris]
            continue
        boundary = []
        for x in r:
            g = abs(x)
            boundary += [0, 2 * g - 1, 2 * g] if x > 0 else [0, 2 * g, 2 * g - 1]
        disk, nv = fill_disk(boundary, relator_disk_arcs(len(r)), 0, nv)
        tris += disk
    tri_edges = {e for t in tris for e in triangle_edges(tuple(sorted(t)))}
    extra = [e for e in extra if e not in tri_edges]
    X = validate({"vertex_count": nv, "triangles": tris, "extra_edges": extra})
    return MarkedComplex(X, {"P": 0}, loops)


# ------------------------------------------------------------ text form

_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(-?\d+))?$")


def parse_presentation(text: str) -> Presentation:
    """Parse ``<a1, a2 | a1 a2 a1^-1 a2^-1, a1^2>`` (brackets optional).

    Relators are separated by commas or semicolons; a letter may carry an
    integer power.
    """
    s = text.strip()
    if s.startswith("<") and s.endswith(">"):
        s = s[1:-1]
    if "|" not in s:
        raise ValueError("presentation needs a '|' between generators and relators")
    gens_s, rels_s = s.split("|", 1)
    gens = [g.strip() for g in re.split(r"[,\s]+", gens_s.strip()) if g.strip()]
    if len(set(gens)) != len(gens):
        raise ValueError("repeated generator name")
    index = {g: i + 1 for i, g in enumerate(gens)}
    rels = []
    for chunk in re.split(r"[,;]", rels_s):
        chunk = chunk.strip()
        if not chunk:
            continue
        w = []
        for tok in chunk.split():
            m = _TOKEN.match(tok)
            if not m or m.group(1) not in index:
                raise ValueError(f"bad token {tok!r}")
            g = index[m.group(1)]
            p = int(m.group(2)) if m.group(2) is not None else 1
            w += [g if p > 0 else -g] * abs(p)
        rels.append(tuple(w))
    return Presentation(len(gens), rels)


def format_presentation(P: Presentation) -> str:
    gens = ", ".join(f"a{i}" for i in range(1, P.generator_count + 1))
    words = []
    for r in P.relators:
        toks = []
        i = 0
        while i < len(r):
            j = i
            while j < len(r) and r[j] == r[i]:
                j += 1
            p = (j - i) * (1 if r[i] > 0 else -1)
            toks.append(f"a{abs(r[i])}" + ("" if p == 1 else f"^{p}"))
            i = j
        words.append(" ".join(toks))
    return f"<{gens} | {', '.join(words)}>"
