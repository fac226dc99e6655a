"""Compare the compiled kernels against their pure-Python twins.

Times the three hot paths (coset-table construction, bounded-distance
decoding, puncture-candidate scoring) on desk-scale BCH codes and prints
one line per (kernel, backend) pair plus the speedup.

Usage: python3 benchmarks/bench_kernels.py [--decodes N] [--repeats N]
"""

import argparse
import random
import time

from punctstego import _kernels_py as pyk
from punctstego._backend import BACKEND, kernels
from punctstego.bch import bch_code
from punctstego.codes import column_syndromes_rev, coset_leader_table


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def bench_coset_table(repeats):
    code = bch_code(5, 3).base  # [31, 16], 2^15 cosets
    cols = column_syndromes_rev(code)
    out = {}
    for name, mod in [("compiled", kernels), ("python", pyk)]:
        out[name] = best_of(lambda: mod.build_coset_table(cols, code.n, code.r),
                            repeats)
    return "coset table BCH_5(3) [31,16]", out


def bench_decode(n_decodes, repeats):
    bchc = bch_code(5, 3)
    f = bchc.field
    rng = random.Random(0)
    words = [rng.getrandbits(bchc.n) for _ in range(n_decodes)]

    out = {}
    for name, mod in [("compiled", kernels), ("python", pyk)]:
        def run(mod=mod):
            for y in words:
                mod.decode_bch(y, bchc.n, 3, f.log_arr, f.exp_arr)
        out[name] = best_of(run, repeats)
    return f"decode BCH_5(3) x {n_decodes}", out


def bench_support_counts(repeats):
    code = bch_code(5, 3).base
    cols = column_syndromes_rev(code)
    weights = coset_leader_table(code).weights
    out = {}
    for name, mod in [("compiled", kernels), ("python", pyk)]:
        out[name] = best_of(
            lambda: mod.support_counts(cols, weights, code.n, code.r, 3),
            repeats,
        )
    return "support counts BCH_5(3)", out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--decodes", type=int, default=20000)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    if BACKEND == "python":
        print("warning: compiled backend unavailable; 'compiled' rows below "
              "also use the pure-Python kernels")

    results = [
        bench_coset_table(args.repeats),
        bench_decode(args.decodes, args.repeats),
        bench_support_counts(args.repeats),
    ]
    width = max(len(name) for name, _ in results)
    for name, out in results:
        speedup = out["python"] / out["compiled"] if out["compiled"] else float("inf")
        print(f"{name.ljust(width)}  compiled {out['compiled']*1e3:9.2f} ms"
              f"  python {out['python']*1e3:9.2f} ms  speedup {speedup:6.1f}x")


if __name__ == "__main__":
    main()
