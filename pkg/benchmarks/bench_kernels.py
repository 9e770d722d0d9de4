#!/usr/bin/env python3
"""Time the numba kernels against the pure-numpy fallback.

Two workloads dominate pipeline runtime: the candidate scan behind
search_curve (character sums over F_q and F_{q^2} for every candidate
sextic) and the subgroup closure BFS.  Both backends are run on identical
inputs; the scan targets are unsatisfiable so every candidate is costed.

Usage: python benchmarks/bench_kernels.py [--q 29] [--count 262144] [--ell 3]
"""
import argparse
import time

import numpy as np

from gspforge.kernels import _numpy as knp
from gspforge.kernels import char_tables
from gspforge.sympgroup import pack_matrix, standard_generators

try:
    from gspforge.kernels import _numba as knb
except ImportError:
    knb = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=29, help="field size for the scan")
    ap.add_argument("--count", type=int, default=1 << 18,
                    help="candidates per scan")
    ap.add_argument("--ell", type=int, default=3, help="field for the closure")
    ap.add_argument("--repeat", type=int, default=3, help="take the best of N")
    args = ap.parse_args()

    chi, ns, chi2 = char_tables(args.q)
    fixed = np.full(7, -1, dtype=np.int64)
    gens = np.asarray(sorted({pack_matrix(g, args.ell)
                              for g in standard_generators(args.ell)}),
                      dtype=np.int64)
    cap = 12_000_000

    def scan(backend):
        # n1 = n2 = 0 is unreachable, so the scan always costs the full block
        return lambda: backend.scan_block(args.q, 0, 0, 0, np.uint64(271828),
                                          0, args.count, fixed, chi, ns, chi2)

    def closure(backend):
        return lambda: backend.closure_bfs(gens, args.ell, cap)

    workloads = [
        (f"scan {args.count} candidates over F_{args.q}", scan),
        (f"closure of Sp4(F_{args.ell}) generators", closure),
    ]

    if knb is None:
        print("numba backend unavailable; timing the numpy fallback only\n")
    else:
        for _, make in workloads:  # compile outside the timed region
            make(knb)()

    name_w = max(len(n) for n, _ in workloads)
    header = f"{'workload':<{name_w}}  {'numpy':>9}"
    if knb is not None:
        header += f"  {'numba':>9}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, make in workloads:
        t_np = best_of(make(knp), args.repeat)
        line = f"{name:<{name_w}}  {t_np:>8.4f}s"
        if knb is not None:
            t_nb = best_of(make(knb), args.repeat)
            line += f"  {t_nb:>8.4f}s  {t_np / t_nb:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
