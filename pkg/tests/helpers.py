from itertools import combinations, permutations

from simpcx.complex import Simplex2Complex, triangle_edges, validate


def canonical_form(X: Simplex2Complex):
    """Lexicographically least relabeling (brute force; small complexes only)."""
    best = None
    for p in permutations(range(X.vertex_count)):
        key = (tuple(sorted(tuple(sorted(p[v] for v in t)) for t in X.triangles)),
               tuple(sorted(tuple(sorted(p[v] for v in e)) for e in X.extra_edges)))
        if best is None or key < best:
            best = key
    return X.vertex_count, best


def random_complex(rng, max_vertices=7, max_triangles=10) -> Simplex2Complex:
    n = rng.randint(3, max_vertices)
    tris = rng.sample(list(combinations(range(n), 3)), rng.randint(1, min(max_triangles, n * (n - 1) * (n - 2) // 6)))
    used = {e for t in tris for e in triangle_edges(t)}
    free = [e for e in combinations(range(n), 2) if e not in used]
    extra = rng.sample(free, rng.randint(0, min(3, len(free))))
    return validate({"vertex_count": n, "triangles": tris, "extra_edges": extra})
