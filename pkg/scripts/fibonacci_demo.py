"""Catalan slopes at t=0: A_r(1) is a Fibonacci number.

The limit series lim A_(r-1)/A_r is (sqrt(1+4x)-1)/(2x) as a formal power
series. Plugging x=1 into a formal identity is not justified; it happens to
give the right growth rate of F_(r+1)/F_(r+2). Demo only, not a test.
"""
from fractions import Fraction

from tuttearr.egf import fibonacci_specialization


def main(r_max=12):
    prev = None
    for r in range(r_max + 1):
        v = fibonacci_specialization(r)
        ratio = f"{float(Fraction(prev, v)):.6f}" if prev else "-"
        print(f"r={r:2d}  A_r(1)={v:4d}  A_(r-1)(1)/A_r(1)={ratio}")
        prev = v
    print(f"(sqrt(5)-1)/2               {(5 ** 0.5 - 1) / 2:.6f}")


if __name__ == "__main__":
    main()
