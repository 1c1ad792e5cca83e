"""Time the numba kernels against their numpy twins.

    python benchmarks/bench_kernels.py [--repeat 3]

Numba timings exclude the first (compiling) call.
"""
import argparse
import time

import numpy as np

from simpcx import kernels
from simpcx.constructions import complex_for_cyclic
from simpcx.homology import boundary_matrix


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_rank(repeat):
    X = complex_for_cyclic(1000).complex
    D = boundary_matrix(X, 2)
    M = np.array(D.entries, dtype=np.int64)
    kernels.rank_mod_p_numba(M[:4, :4], 5)
    tn, rn = best_of(lambda: kernels.rank_mod_p_numba(M, 5), repeat)
    tp, rp = best_of(lambda: kernels.rank_mod_p_numpy(M, 5), repeat)
    assert rn == rp
    return f"rank mod 5 of a {M.shape[0]}x{M.shape[1]} boundary matrix", tn, tp


def bench_search(T, repeat):
    tables = [kernels.SearchTables(n) for n in range(3, 3 * T // 4 + 1)]
    mask = lambda tb: np.ones(len(tb.triangles), dtype=np.bool_)

    def run(fn):
        return sorted(len(fn(tb, T, mask(tb), 10**12, 10**6)[0]) for tb in tables)

    run(kernels.orderly_search_numba)
    tn, rn = best_of(lambda: run(kernels.orderly_search_numba), repeat)
    tp, rp = best_of(lambda: run(kernels.orderly_search_numpy), repeat)
    assert rn == rp
    return f"orderly search up to T={T}", tn, tp


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--max-T", type=int, default=10)
    args = ap.parse_args()
    rows = [bench_rank(args.repeat)]
    rows += [bench_search(T, args.repeat) for T in range(8, args.max_T + 1)]
    print(f"{'kernel':<48} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for name, tn, tp in rows:
        print(f"{name:<48} {tn:>10.4f} {tp:>10.4f} {tp / tn:>8.1f}")


if __name__ == "__main__":
    main()
