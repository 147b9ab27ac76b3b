"""Print characteristic polynomials, region counts and Tutte polynomials for the families.

    python3 scripts/reproduce_tables.py --max-n 4
"""
import argparse
import time

from tuttearr.algebra import characteristic_from_coboundary, region_counts, tutte_from_coboundary
from tuttearr.core import arrangement_rank
from tuttearr.egf import signed_object_counts
from tuttearr.families import make
from tuttearr.pipeline import coboundary

KINDS = ("braid", "coxeter_b", "coxeter_d", "threshold", "shi", "linial", "semiorder", "catalan", "generic_deformation")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--tutte", action="store_true", help="also print Tutte polynomials")
    args = ap.parse_args()

    print("| kind | n | m | r | chi(q) | regions | bounded | seconds |")
    print("|---|---|---|---|---|---|---|---|")
    tuttes = []
    for kind in KINDS:
        for n in range(1, args.max_n + 1):
            arr = make(kind, n)
            start = time.perf_counter()
            chibar = coboundary(arr, "auto")
            took = time.perf_counter() - start
            r = arrangement_rank(arr)
            chi = characteristic_from_coboundary(chibar, n, r)
            regions, bounded = region_counts(chi, n, r)
            print(f"| {kind} | {n} | {len(arr)} | {r} | {chi} | {regions} | {bounded} | {took:.2f} |")
            tuttes.append((kind, n, tutte_from_coboundary(chibar, r)))

    print()
    print("series coefficients of lim A_(r-1)/A_r at t=0, unsigned:")
    for kind in ("linial", "shi", "semiorder", "catalan"):
        print(f"  {kind:10s}", signed_object_counts(kind, args.max_n))

    if args.tutte:
        print()
        for kind, n, T in tuttes:
            print(f"T[{kind}_{n}] = {T}")


if __name__ == "__main__":
    main()
