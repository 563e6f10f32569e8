"""Compare the compiled and pure-Python kernel backends.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--order N]

Each workload runs on every available backend; results are checked to agree
before timings are reported.
"""

import argparse
import random
import sys
import time
from itertools import permutations, product

from semidense.kernels import available_backends
from semidense.search import census


def workloads(order):
    perms = tuple(permutations(range(order)))
    rows = list(product(range(order), repeat=order))
    sample = [S for S in census(4, "iso") if S.order == 4]
    rng = random.Random(0)

    def enumerate_all(k):
        return [t for fr in rows for t in k.enumerate_tables(order, fr, 1, perms)]

    def associativity(k):
        return [k.first_nonassociative(S.flat, S.order) for S in sample for _ in range(20)]

    def invariant_sets(k):
        return [k.invariant_subsets(S.flat, S.order) for S in sample]

    masks = [rng.getrandbits(4) for _ in sample]

    def dt_oracle(k):
        out = []
        for S, a in zip(sample, masks):
            pre = [sum(1 << x for x in range(4) if a >> S.table[x][s] & 1) for s in range(4)]
            out.append(k.dt_oracle(pre, 4))
        return out

    return {
        f"enumerate order {order} (iso)": enumerate_all,
        "associativity check x20": associativity,
        "invariant subset scan": invariant_sets,
        "d_t oracle": dt_oracle,
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--order", type=int, default=4, help="enumeration order (4 or 5)")
    args = parser.parse_args(argv)

    backends = available_backends()
    if len(backends) < 2:
        print("compiled backend not built; only timing the Python kernels", file=sys.stderr)
    print("workload\tbackend\tseconds\tspeedup")
    for name, fn in workloads(args.order).items():
        results, times = {}, {}
        for bname, mod in backends.items():
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                results[bname] = fn(mod)
                best = min(best, time.perf_counter() - t0)
            times[bname] = best
        values = list(results.values())
        if any(v != values[0] for v in values[1:]):
            print(f"backends disagree on {name}", file=sys.stderr)
            return 1
        base = times["python"]
        for bname, t in times.items():
            print(f"{name}\t{bname}\t{t:.4f}\t{base / t:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
