"""Hot inner loops, each in a numba and a pure-numpy flavour.

``rank_mod_p`` and ``orderly_search`` dispatch on :data:`_accel.USE_NUMBA`;
the ``*_numba`` / ``*_numpy`` variants are public for benchmarking and for
cross-checking the two paths against each other.
"""
from __future__ import annotations

from itertools import combinations, permutations

import numpy as np

from ._accel import USE_NUMBA, njit

# ---------------------------------------------------------------- rank mod p


@njit(cache=True)
def _rank_mod_p_nb(M, p):
    A = M.copy()
    rows, cols = A.shape
    for i in range(rows):
        for j in range(cols):
            A[i, j] %= p
    r = 0
    for c in range(cols):
        piv = -1
        for i in range(r, rows):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        # modular inverse by Fermat (p prime)
        inv = 1
        base = A[r, c]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for j in range(cols):
            A[r, j] = (A[r, j] * inv) % p
        for i in range(rows):
            if i != r and A[i, c] != 0:
                f = A[i, c]
                for j in range(cols):
                    A[i, j] = (A[i, j] - f * A[r, j]) % p
        r += 1
        if r == rows:
            break
    return r


def rank_mod_p_numpy(M, p: int) -> int:
    A = np.asarray(M, dtype=np.int64) % p
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        f = A[:, c].copy()
        f[r] = 0
        A = (A - np.outer(f, A[r])) % p
        r += 1
    return r


def rank_mod_p_numba(M, p: int) -> int:
    return int(_rank_mod_p_nb(np.ascontiguousarray(M, dtype=np.int64), np.int64(p)))


def rank_mod_p(M, p: int) -> int:
    """Rank of an integer matrix over GF(p), p prime."""
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    if USE_NUMBA:
        return rank_mod_p_numba(M, p)
    return rank_mod_p_numpy(M, p)


# ------------------------------------------------------ orderly generation


class SearchTables:
    """Lookup tables for the triangle-set search on ``n`` labelled vertices.

    Triangles and edges are indexed in lexicographic order; ``perm_map[k, t]``
    is the index of the image of triangle ``t`` under the k-th non-identity
    vertex permutation.
    """

    def __init__(self, n: int):
        self.n = n
        self.triangles = list(combinations(range(n), 3))
        self.edges = list(combinations(range(n), 2))
        tindex = {t: i for i, t in enumerate(self.triangles)}
        eindex = {e: i for i, e in enumerate(self.edges)}
        N, E = len(self.triangles), len(self.edges)
        self.tv = np.array(self.triangles, dtype=np.int64).reshape(N, 3)
        self.te = np.array([[eindex[(a, b)], eindex[(a, c)], eindex[(b, c)]]
                            for a, b, c in self.triangles], dtype=np.int64).reshape(N, 3)
        perms = [p for p in permutations(range(n)) if list(p) != list(range(n))]
        pm = np.empty((len(perms), N), dtype=np.int64)
        for k, p in enumerate(perms):
            for i, (a, b, c) in enumerate(self.triangles):
                pm[k, i] = tindex[tuple(sorted((p[a], p[b], p[c])))]
        self.perm_map = pm
        # suffix counts: avail_v[i, v] = #triangles with index >= i containing v
        inc_v = np.zeros((N + 1, n), dtype=np.int64)
        inc_e = np.zeros((N + 1, E), dtype=np.int64)
        for i in range(N - 1, -1, -1):
            inc_v[i] = inc_v[i + 1]
            inc_e[i] = inc_e[i + 1]
            inc_v[i, self.tv[i]] += 1
            inc_e[i, self.te[i]] += 1
        self.avail_v = inc_v
        self.avail_e = inc_e


@njit(cache=True)
def _is_canonical_nb(S, k, perm_map, buf):
    P = perm_map.shape[0]
    for q in range(P):
        # image, insertion-sorted into buf
        for i in range(k):
            x = perm_map[q, S[i]]
            j = i
            while j > 0 and buf[j - 1] > x:
                buf[j] = buf[j - 1]
                j -= 1
            buf[j] = x
        for i in range(k):
            if buf[i] < S[i]:
                return False
            if buf[i] > S[i]:
                break
    return True


@njit(cache=True)
def _feasible_nb(k, t, T, deg, ec, avail_v, avail_e):
    rem = T - k
    need_total = 0
    for v in range(deg.shape[0]):
        need = 4 - deg[v]
        if need > 0:
            if need > rem or avail_v[t + 1, v] < need:
                return False
            need_total += need
    if need_total > 3 * rem:
        return False
    open_e = 0
    for e in range(ec.shape[0]):
        if ec[e] == 1:
            if rem == 0 or avail_e[t + 1, e] == 0:
                return False
            open_e += 1
    return open_e <= 3 * rem


@njit(cache=True)
def _is_valid_nb(S, k, n, deg, ec, tv):
    for v in range(n):
        if deg[v] < 4:
            return False
    for e in range(ec.shape[0]):
        if ec[e] == 1:
            return False
    parent = np.arange(n)
    for i in range(k):
        for j in range(1, 3):
            a = tv[S[i], 0]
            b = tv[S[i], j]
            while parent[a] != a:
                a = parent[a]
            while parent[b] != b:
                b = parent[b]
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    root = 0
    for v in range(n):
        a = v
        while parent[a] != a:
            a = parent[a]
        if a != root:
            return False
    return True


@njit(cache=True)
def _orderly_search_nb(n, T, tv, te, perm_map, avail_v, avail_e, second_allowed,
                       max_nodes, max_out):
    N = tv.shape[0]
    E = avail_e.shape[1]
    S = np.zeros(T + 1, dtype=np.int64)
    nxt = np.zeros(T + 1, dtype=np.int64)
    deg = np.zeros(n, dtype=np.int64)
    ec = np.zeros(E, dtype=np.int64)
    buf = np.zeros(T + 1, dtype=np.int64)
    out = np.full((min(max_out, 256), T), -1, dtype=np.int64)
    n_out = 0
    nodes = 0
    complete = True
    depth = 0
    nxt[0] = 0
    while depth >= 0:
        t = nxt[depth]
        if depth == 0 and t > 0:
            t = N  # a canonical set always starts with triangle 0
        if depth == 1:
            while t < N and not second_allowed[t]:
                t += 1
        if t >= N:
            depth -= 1
            if depth >= 0:
                u = S[depth]
                for j in range(3):
                    deg[tv[u, j]] -= 1
                    ec[te[u, j]] -= 1
                nxt[depth] = u + 1
            continue
        if nodes >= max_nodes:
            complete = False
            break
        nodes += 1
        S[depth] = t
        for j in range(3):
            deg[tv[t, j]] += 1
            ec[te[t, j]] += 1
        k = depth + 1
        ok = _feasible_nb(k, t, T, deg, ec, avail_v, avail_e)
        if ok:
            ok = _is_canonical_nb(S, k, perm_map, buf)
        if ok:
            if _is_valid_nb(S, k, n, deg, ec, tv):
                if n_out >= max_out:
                    complete = False
                    break
                if n_out == out.shape[0]:
                    grown = np.full((min(max_out, 2 * n_out), T), -1, dtype=np.int64)
                    grown[:n_out] = out
                    out = grown
                for i in range(k):
                    out[n_out, i] = S[i]
                n_out += 1
            if k < T:
                depth = k
                nxt[depth] = t + 1
                continue
        for j in range(3):
            deg[tv[t, j]] -= 1
            ec[te[t, j]] -= 1
        nxt[depth] = t + 1
    return out[:n_out], nodes, complete


def _is_canonical_np(S, perm_map):
    img = np.sort(perm_map[:, S], axis=1)
    d = img - np.asarray(S)[None, :]
    nz = d != 0
    first = nz.argmax(axis=1)
    neg = d[np.arange(d.shape[0]), first] < 0
    return not np.any(nz.any(axis=1) & neg)


def _feasible_np(k, t, T, deg, ec, avail_v, avail_e):
    rem = T - k
    need = np.maximum(4 - deg, 0)
    if np.any(need > rem) or np.any(avail_v[t + 1] < need) or need.sum() > 3 * rem:
        return False
    open_e = ec == 1
    if open_e.any() and (rem == 0 or np.any(avail_e[t + 1][open_e] == 0)):
        return False
    return open_e.sum() <= 3 * rem


def _is_valid_np(S, n, deg, ec, tv):
    if np.any(deg < 4) or np.any(ec == 1):
        return False
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for t in S:
        a, b, c = tv[t]
        for u, w in ((a, b), (a, c)):
            ru, rw = find(u), find(w)
            if ru != rw:
                parent[max(ru, rw)] = min(ru, rw)
    return len({find(v) for v in range(n)}) == 1


def orderly_search_numpy(tables: SearchTables, T: int, second_allowed, max_nodes, max_out):
    tv, te, pm = tables.tv, tables.te, tables.perm_map
    av, ae = tables.avail_v, tables.avail_e
    N = tv.shape[0]
    deg = np.zeros(tables.n, dtype=np.int64)
    ec = np.zeros(ae.shape[1], dtype=np.int64)
    out, nodes = [], 0
    S: list[int] = []

    # explicit stack keeps the traversal order identical to the numba kernel
    nxt = [0]
    while nxt:
        depth = len(nxt) - 1
        t = nxt[depth]
        if depth == 0 and t > 0:
            t = N
        if depth == 1:
            while t < N and not second_allowed[t]:
                t += 1
        if t >= N:
            nxt.pop()
            if nxt:
                u = S.pop()
                deg[tv[u]] -= 1
                np.subtract.at(ec, te[u], 1)
                nxt[-1] = u + 1
            continue
        if nodes >= max_nodes:
            return out, nodes, False
        nodes += 1
        S.append(t)
        deg[tv[t]] += 1
        np.add.at(ec, te[t], 1)
        k = len(S)
        ok = _feasible_np(k, t, T, deg, ec, av, ae) and _is_canonical_np(S, pm)
        if ok:
            if _is_valid_np(S, tables.n, deg, ec, tv):
                if len(out) >= max_out:
                    return out, nodes, False
                out.append(list(S))
            if k < T:
                nxt.append(t + 1)
                continue
        S.pop()
        deg[tv[t]] -= 1
        np.subtract.at(ec, te[t], 1)
        nxt[depth] = t + 1
    return out, nodes, True


def orderly_search_numba(tables: SearchTables, T: int, second_allowed, max_nodes, max_out):
    arr, nodes, complete = _orderly_search_nb(
        np.int64(tables.n), np.int64(T), tables.tv, tables.te, tables.perm_map,
        tables.avail_v, tables.avail_e, np.asarray(second_allowed, dtype=np.bool_),
        np.int64(max_nodes), np.int64(max_out))
    out = [[int(x) for x in row if x >= 0] for row in arr]
    return out, int(nodes), bool(complete)


def orderly_search(tables: SearchTables, T: int, second_allowed=None,
                   max_nodes: int = 10**12, max_out: int = 100_000):
    """Isomorph-free search for triangle sets on ``tables.n`` vertices.

    Read-style orderly generation: a set is kept only if it is the
    lexicographic minimum of its orbit under vertex permutations, and it is
    extended only by triangles larger than its last one. Returned sets have
    at most ``T`` triangles, every vertex in at least 4 triangles, no edge in
    exactly one triangle, and a connected 1-skeleton.

    Returns ``(sets, nodes_visited, complete)``.
    """
    if second_allowed is None:
        second_allowed = np.ones(len(tables.triangles), dtype=np.bool_)
    if T < 1 or tables.n < 3:
        return [], 0, True
    if USE_NUMBA:
        return orderly_search_numba(tables, T, second_allowed, max_nodes, max_out)
    return orderly_search_numpy(tables, T, second_allowed, max_nodes, max_out)
