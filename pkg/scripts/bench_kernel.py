"""Time the point-counting kernels on one prime.

    python3 scripts/bench_kernel.py --kind catalan --n 4 --prime 101
"""
import argparse
import time

from tuttearr.families import make
from tuttearr.finite_field import FieldConfig, incidence_histogram


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--kind", default="catalan")
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--prime", type=int, default=101)
    ap.add_argument("--workers", type=int, nargs="*", default=[1, 2, 4])
    args = ap.parse_args()

    arr = make(args.kind, args.n)
    ref = None
    for kernel, reduce in (("python", False), ("python", True), ("numpy", False), ("numpy", True)):
        if kernel == "python" and not reduce and args.prime ** args.n > 2 * 10**6:
            print(f"{kernel:6s} reduce={reduce!s:5s}  skipped ({args.prime}^{args.n} points)")
            continue
        for w in args.workers:
            start = time.perf_counter()
            h = incidence_histogram(arr, args.prime, FieldConfig(kernel=kernel, reduce=reduce, workers=w))
            took = time.perf_counter() - start
            ref = ref or h.counts
            same = "ok" if h.counts == ref else "MISMATCH"
            print(f"{kernel:6s} reduce={reduce!s:5s} workers={w}  {took:8.3f}s  {same}")


if __name__ == "__main__":
    main()
