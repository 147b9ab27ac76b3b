"""Truncated exponential generating functions and the series identities they satisfy.

Coefficients are polynomials in ``t``; an :class:`EGF` of order N stores the
coefficients of ``x^k/k!`` for k = 0..N. Anything involving the variable q
is checked by sampling integer q, never symbolically.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable, Sequence

from .algebra import Poly, divide_by_shift, interpolate, region_counts
from .errors import (
    BadExponent,
    IdentityFailure,
    NoStabilization,
    NonInvertibleDivisor,
    ResourceLimit,
)

T = ("t",)
ENUM_BUDGET = 5_000_000


def tpoly(c) -> Poly:
    if isinstance(c, Poly):
        if c.vars == T:
            return c
        if c.is_constant():
            return Poly.const(c.constant_term(), T)
        raise ValueError(f"expected a polynomial in t, got {c.vars}")
    return Poly.const(c, T)


def t_power(k: int, coeff=1) -> Poly:
    return Poly(T, {(k,): coeff})


def _const_inverse(c: Poly):
    if not c.is_constant() or c.is_zero():
        raise NonInvertibleDivisor(f"constant term {c} is not a nonzero constant")
    return Fraction(1) / c.constant_term()


class EGF:
    """Truncated EGF sum c_k x^k/k! with t-polynomial coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        self.coeffs = tuple(tpoly(c) for c in coeffs)

    @classmethod
    def from_function(cls, f: Callable[[int], object], order: int) -> "EGF":
        return cls(f(k) for k in range(order + 1))

    @classmethod
    def from_ordinary(cls, seq: Sequence, order: int) -> "EGF":
        """EGF of the ordinary series sum a_k x^k."""
        return cls(tpoly(seq[k] if k < len(seq) else 0) * factorial(k) for k in range(order + 1))

    @classmethod
    def one(cls, order: int) -> "EGF":
        return cls([1] + [0] * order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def _check(self, other: "EGF"):
        if other.order != self.order:
            raise ValueError(f"order mismatch {self.order} vs {other.order}")

    def __add__(self, other):
        if not isinstance(other, EGF):
            other = EGF([other] + [0] * self.order)
        self._check(other)
        return EGF(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return EGF(-a for a in self.coeffs)

    def __sub__(self, other):
        return self + (-other if isinstance(other, EGF) else -tpoly(other))

    def __mul__(self, other):
        if not isinstance(other, EGF):
            return EGF(a * other for a in self.coeffs)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        out = []
        for n in range(self.order + 1):
            s = Poly(T)
            for k in range(n + 1):
                if a[k].terms and b[n - k].terms:
                    s = s + comb(n, k) * (a[k] * b[n - k])
            out.append(s)
        return EGF(out)

    __rmul__ = __mul__

    def inverse(self) -> "EGF":
        inv0 = _const_inverse(self.coeffs[0])
        a = self.coeffs
        b = [Poly.const(inv0, T)]
        for n in range(1, self.order + 1):
            s = Poly(T)
            for k in range(1, n + 1):
                if a[k].terms:
                    s = s + comb(n, k) * (a[k] * b[n - k])
            b.append(s * (-inv0))
        return EGF(b)

    def __truediv__(self, other):
        if isinstance(other, EGF):
            return self * other.inverse()
        return EGF(a / other for a in self.coeffs)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = EGF.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exp(self) -> "EGF":
        """exp of a series with zero constant term."""
        if not self.coeffs[0].is_zero():
            raise ValueError("exp needs a zero constant term")
        g = self.coeffs
        f = [Poly.const(1, T)]
        for n in range(self.order):
            s = Poly(T)
            for k in range(n + 1):
                if g[k + 1].terms:
                    s = s + comb(n, k) * (g[k + 1] * f[n - k])
            f.append(s)
        return EGF(f)

    def log(self) -> "EGF":
        """log of a series with constant term 1."""
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        f = self.coeffs
        g = [Poly(T)]
        for n in range(self.order):
            s = f[n + 1]
            for k in range(n):
                if g[k + 1].terms:
                    s = s - comb(n, k) * (g[k + 1] * f[n - k])
            g.append(s)
        return EGF(g)

    def map(self, fn: Callable[[Poly], object]) -> "EGF":
        return EGF(fn(c) for c in self.coeffs)

    def at_t(self, value) -> "EGF":
        return self.map(lambda c: c.evaluate({"t": value}))

    def ordinary(self) -> list[Poly]:
        """Coefficients of x^k (not x^k/k!)."""
        return [c / factorial(k) for k, c in enumerate(self.coeffs)]

    def numbers(self) -> list:
        """Coefficients as numbers; all of them must be constant in t."""
        out = []
        for c in self.coeffs:
            if not c.is_constant():
                raise ValueError(f"coefficient {c} depends on t")
            out.append(c.constant_term())
        return out

    def __eq__(self, other):
        if not isinstance(other, EGF):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return "EGF(" + ", ".join(str(c) for c in self.coeffs) + ")"

    def to_dict(self) -> dict:
        return {"basis": "x^k/k!", "coefficients": [c.to_dict() for c in self.coeffs]}


def series_arithmetic(a: EGF, b, op: str) -> EGF:
    if op == "add":
        return a + b
    if op == "multiply":
        return a * b
    if op == "divide":
        return a / b
    if op == "integer_power":
        return a ** int(b)
    raise ValueError(f"unknown op {op!r}")


class BivariateSeries:
    """Truncated sum c[n][r] (x^n/n!) y^r: exponential in x, ordinary in y."""

    __slots__ = ("c", "N", "R")

    def __init__(self, c: Sequence[Sequence], N: int, R: int):
        self.N, self.R = N, R
        self.c = tuple(
            tuple(tpoly(c[n][r]) if n < len(c) and r < len(c[n]) else Poly(T) for r in range(R + 1))
            for n in range(N + 1)
        )

    @classmethod
    def zero(cls, N: int, R: int) -> "BivariateSeries":
        return cls([], N, R)

    @classmethod
    def from_dict(cls, d: dict, N: int, R: int) -> "BivariateSeries":
        rows = [[d.get((n, r), 0) for r in range(R + 1)] for n in range(N + 1)]
        return cls(rows, N, R)

    def _check(self, other):
        if (other.N, other.R) != (self.N, self.R):
            raise ValueError("shape mismatch")

    def __add__(self, other):
        if not isinstance(other, BivariateSeries):
            d = {(n, r): self.c[n][r] for n in range(self.N + 1) for r in range(self.R + 1)}
            d[(0, 0)] = d[(0, 0)] + tpoly(other)
            return BivariateSeries.from_dict(d, self.N, self.R)
        self._check(other)
        return BivariateSeries(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.c, other.c)], self.N, self.R
        )

    def __neg__(self):
        return BivariateSeries([[-a for a in row] for row in self.c], self.N, self.R)

    def __sub__(self, other):
        return self + (-other if isinstance(other, BivariateSeries) else -tpoly(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BivariateSeries):
            return BivariateSeries([[a * other for a in row] for row in self.c], self.N, self.R)
        self._check(other)
        A, B = self.c, other.c
        out = [[Poly(T) for _ in range(self.R + 1)] for _ in range(self.N + 1)]
        nz_a = [(n, r) for n in range(self.N + 1) for r in range(self.R + 1) if A[n][r].terms]
        nz_b = [(n, r) for n in range(self.N + 1) for r in range(self.R + 1) if B[n][r].terms]
        for n1, r1 in nz_a:
            for n2, r2 in nz_b:
                n, r = n1 + n2, r1 + r2
                if n <= self.N and r <= self.R:
                    out[n][r] = out[n][r] + comb(n, n1) * (A[n1][r1] * B[n2][r2])
        return BivariateSeries(out, self.N, self.R)

    __rmul__ = __mul__

    def times_y(self) -> "BivariateSeries":
        return BivariateSeries([[Poly(T)] + list(row[:-1]) for row in self.c], self.N, self.R)

    def inverse(self) -> "BivariateSeries":
        inv0 = _const_inverse(self.c[0][0])
        A = self.c
        b = [[Poly(T) for _ in range(self.R + 1)] for _ in range(self.N + 1)]
        for n in range(self.N + 1):
            for r in range(self.R + 1):
                if n == 0 and r == 0:
                    b[0][0] = Poly.const(inv0, T)
                    continue
                s = Poly(T)
                for k in range(n + 1):
                    for j in range(r + 1):
                        if (k, j) != (0, 0) and A[k][j].terms and b[n - k][r - j].terms:
                            s = s + comb(n, k) * (A[k][j] * b[n - k][r - j])
                b[n][r] = s * (-inv0)
        return BivariateSeries(b, self.N, self.R)

    def __truediv__(self, other):
        return self * other.inverse()

    def y_coefficient(self, r: int) -> EGF:
        return EGF(self.c[n][r] for n in range(self.N + 1))

    def at_t(self, value) -> "BivariateSeries":
        return BivariateSeries(
            [[c.evaluate({"t": value}) for c in row] for row in self.c], self.N, self.R
        )

    def __eq__(self, other):
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return (self.N, self.R) == (other.N, other.R) and self.c == other.c


# function enumeration behind A_r and S


def _ascent_count(f: Sequence[int], A: frozenset) -> int:
    n = len(f)
    return sum(1 for i in range(n) for j in range(i + 1, n) if f[i] - f[j] in A)


def _guard(count: int):
    if count > ENUM_BUDGET:
        raise ResourceLimit(f"{count} functions exceed the enumeration budget {ENUM_BUDGET}")


def A_r_series(slopes: Iterable[int], r: int, N: int) -> EGF:
    """Coefficient of x^n/n! is the sum of t^a(f) over f: [n] -> [r]."""
    A = frozenset(slopes)
    _guard(sum(r**n for n in range(N + 1)))
    out = []
    for n in range(N + 1):
        hist: dict[int, int] = {}
        for f in itertools.product(range(r), repeat=n):
            a = _ascent_count(f, A)
            hist[a] = hist.get(a, 0) + 1
        out.append(Poly(T, {(a,): c for a, c in hist.items()}))
    return EGF(out)


def S_series(slopes: Iterable[int], N: int, R: int, t_zero: bool = False) -> BivariateSeries:
    """Same weights as A_r, restricted to surjections [n] -> [r]."""
    A = frozenset(slopes)
    _guard(sum(r**n for n in range(N + 1) for r in range(min(n, R) + 1)))
    d = {}
    for n in range(N + 1):
        for r in range(min(n, R) + 1):
            hist: dict[int, int] = {}
            for f in itertools.product(range(r), repeat=n):
                if len(set(f)) != r:
                    continue
                a = _ascent_count(f, A)
                hist[a] = hist.get(a, 0) + 1
            d[(n, r)] = Poly(T, {(a,): c for a, c in hist.items()})
    S = BivariateSeries.from_dict(d, N, R)
    return S.at_t(0) if t_zero else S


def A_from_S(S: BivariateSeries) -> BivariateSeries:
    """A = S / (1 - y S)."""
    if S.c[0][0] != 1:
        raise ValueError("S must have constant term 1")
    return S * (1 - S.times_y()).inverse()


# limits


def spread(slopes: Iterable[int]) -> int:
    A = sorted(set(slopes))
    if not A:
        return 0
    return max(-A[0], A[-1], 0)


@dataclass
class LimitResult:
    ratio: EGF
    stabilized_at: int
    threshold: int
    history: list[EGF] = field(default_factory=list, repr=False)


def limit_ratio(slopes: Iterable[int], N: int, t_zero: bool = False) -> LimitResult:
    """Stabilized value of A_r / A_{r-1} truncated at order N.

    Ratios for r > N * spread are already exact, so the loop always reaches
    two agreeing ratios past that point; ``stabilized_at`` is the first r
    from which the ratio no longer changes.
    """
    A = tuple(sorted(set(slopes)))
    threshold = N * spread(A)
    ceiling = max(4 * threshold, threshold + 2)
    prev = A_r_series(A, 0, N)
    if t_zero:
        prev = prev.at_t(0)
    history: list[EGF] = []
    for r in range(1, ceiling + 1):
        cur = A_r_series(A, r, N)
        if t_zero:
            cur = cur.at_t(0)
        history.append(cur / prev)
        prev = cur
        if r >= threshold + 2 and history[-1] == history[-2]:
            final = history[-1]
            first = len(history)
            while first > 1 and history[first - 2] == final:
                first -= 1
            return LimitResult(final, first, threshold, history)
    raise NoStabilization(f"A_r/A_(r-1) did not settle by r = {ceiling}")


# characteristic polynomials and object counts from the limit

LIMIT_KINDS = {"linial": (1,), "shi": (0, 1), "semiorder": (-1, 1), "catalan": (-1, 0, 1)}


def _slopes_for(kind: str, slopes=None) -> tuple[int, ...]:
    if kind == "slope_deformation":
        if slopes is None:
            raise ValueError("slope_deformation needs slopes")
        return tuple(sorted(set(slopes)))
    if kind in LIMIT_KINDS:
        return LIMIT_KINDS[kind]
    if kind == "braid":
        return (0,)
    raise ValueError(f"no slope set for {kind!r}")


def char_via_limit(kind: str, n: int, slopes=None, check: bool = True, method: str = "auto") -> Poly:
    """chi_{E_n}(q) read off (lim A_r/A_{r-1} at t=0)^q at q = 1..n+2.

    With ``check`` the answer is compared with the finite-field characteristic
    polynomial and a mismatch raises IdentityFailure.
    """
    A = _slopes_for(kind, slopes)
    ratio = limit_ratio(A, n, t_zero=True).ratio
    pts = []
    for q in range(1, n + 3):
        pts.append((q, (ratio**q)[n].constant_term()))
    chi = interpolate(pts, n + 1, "q")
    if check:
        from .algebra import characteristic_from_coboundary
        from .families import slope_deformation
        from .pipeline import coboundary

        arr = slope_deformation(n, A)
        other = characteristic_from_coboundary(coboundary(arr, method), n, arr.rank)
        if other != chi:
            raise IdentityFailure(f"{kind} n={n}: limit gives {chi}, finite field gives {other}")
    return chi


def signed_object_counts(kind: str, N: int, slopes=None, check: bool = True, method: str = "auto") -> list[int]:
    """Unsigned x^n/n! coefficients of lim A_{r-1}/A_r at t=0.

    These are region counts of E_n; with ``check`` they are compared against
    Zaslavsky counts from the finite-field characteristic polynomial for n <= 4.
    """
    A = _slopes_for(kind, slopes)
    inv = limit_ratio(A, N, t_zero=True).ratio.inverse()
    counts = []
    for n, c in enumerate(inv.numbers()):
        v = (-1) ** n * c
        if Fraction(v).denominator != 1:
            raise IdentityFailure(f"non-integral count {v} at n={n}")
        counts.append(int(v))
    if check:
        from .algebra import characteristic_from_coboundary
        from .families import slope_deformation
        from .pipeline import coboundary

        for n in range(min(N, 4) + 1):
            arr = slope_deformation(n, A)
            r = arr.rank
            chi = characteristic_from_coboundary(coboundary(arr, method), n, r)
            regions, _ = region_counts(chi, n, r)
            if regions != counts[n]:
                raise IdentityFailure(f"{kind} n={n}: series gives {counts[n]}, Zaslavsky gives {regions}")
    return counts


def fibonacci_specialization(r: int) -> int:
    """A_r(1) for the Catalan slope set at t=0, read from S/(1-yS)."""
    N = (r + 1) // 2 + 1
    S = S_series((-1, 0, 1), N, r, t_zero=True)
    Ar = A_from_S(S).y_coefficient(r)
    total = sum(c.constant_term() for c in Ar.ordinary())
    return int(total)


# family identities


@dataclass
class EGFReport:
    identity: str
    order: int
    q_values: list[int]
    passed: bool
    certified: bool
    rows: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "order": self.order,
            "q": self.q_values,
            "pass": self.passed,
            "certified": self.certified,
            "rows": self.rows,
        }


def _base(f: Callable[[int], Poly], N: int) -> EGF:
    return EGF.from_function(f, N)


def _half(q: int) -> int:
    if q < 1 or q % 2 == 0:
        raise BadExponent(f"(q-1)/2 must be a nonnegative integer, got q={q}")
    return (q - 1) // 2


def generic_log_series(N: int) -> EGF:
    """log(sum f(n) (t-1)^n x^n/n!) / (t-1), exact coefficientwise."""
    from .oracles import forest_counts

    f = forest_counts(N)
    tm1 = t_power(1) - 1
    F = EGF(f[n] * tm1**n for n in range(N + 1))
    return F.log().map(lambda c: divide_by_shift(c, "t"))


def family_egf_rhs(kind: str, q: int, N: int) -> EGF:
    """Right-hand side of the family's EGF theorem at an integer q."""
    braid_base = _base(lambda n: t_power(comb(n, 2)), N)
    if kind == "braid":
        if q < 0:
            raise BadExponent("q must be nonnegative")
        return braid_base**q
    if kind in ("coxeter_b", "coxeter_d"):
        s = _half(q)
        pair = _base(lambda n: t_power(comb(n, 2), 2**n), N)
        tail = _base(lambda n: t_power(n * n if kind == "coxeter_b" else n * (n - 1)), N)
        return pair**s * tail
    if kind == "threshold":
        s = _half(q)
        inner = _base(lambda n: sum((t_power(k * (n - k), comb(n, k)) for k in range(n + 1)), Poly(T)), N)
        return inner**s * braid_base
    if kind == "generic_deformation":
        # F^(q/(t-1)) = exp(q * log(F) / (t-1)); log(F) is divisible by t-1
        return (generic_log_series(N) * q).exp()
    raise ValueError(f"no EGF theorem for {kind!r}")


def point_series(kind: str, q: int, N: int, method: str = "auto", slopes=None) -> EGF:
    """sum over n of q^(n-r) chibar_{E_n}(q, t) x^n/n! at an integer q."""
    from .pipeline import family_coboundary, family_rank

    key = tuple(sorted(set(slopes))) if slopes is not None else None
    out = []
    for n in range(N + 1):
        chibar = family_coboundary(kind, n, method, key)
        r = family_rank(kind, n, key)
        out.append(q ** (n - r) * chibar.evaluate({"q": q}))
    return EGF(out)


def default_q_values(kind: str, N: int) -> list[int]:
    count = N + 2
    if kind in ("coxeter_b", "coxeter_d", "threshold"):
        return [2 * i + 1 for i in range(count)]
    return list(range(1, count + 1))


def _compare(identity: str, N: int, qs: list[int], lhs_fn, rhs_fn) -> EGFReport:
    rows = []
    for q in qs:
        lhs, rhs = lhs_fn(q), rhs_fn(q)
        for n in range(N + 1):
            if lhs[n] != rhs[n]:
                raise IdentityFailure(f"{identity}: q={q}, coefficient of x^{n}/{n}!: {lhs[n]} != {rhs[n]}")
        rows.append({"q": q, "coefficients": [str(c) for c in lhs.coeffs]})
    # coefficient of x^n is a polynomial of degree <= n+1 in q on both sides
    certified = len(set(qs)) >= N + 2
    return EGFReport(identity, N, list(qs), True, certified, rows)


def verify_family_egf(kind: str, q_values: Sequence[int] | None = None, N: int = 5, method: str = "auto") -> EGFReport:
    """Compare the point-count series with the closed-form right-hand side."""
    qs = list(q_values) if q_values is not None else default_q_values(kind, N)
    return _compare(
        f"egf:{kind}",
        N,
        qs,
        lambda q: point_series(kind, q, N, method),
        lambda q: family_egf_rhs(kind, q, N),
    )


def verify_esa(kind: str, q_values: Sequence[int] | None = None, N: int = 5, slopes=None, method: str = "auto") -> EGFReport:
    """1 + q sum chibar_{E_n}(q,t) x^n/n! == (sum chibar_{E_n}(1,t) x^n/n!)^q."""
    from .pipeline import family_coboundary

    A = _slopes_for(kind, slopes)
    qs = list(q_values) if q_values is not None else default_q_values(kind, N)
    at_one = EGF(family_coboundary("slope_deformation", n, method, A).evaluate({"q": 1}) for n in range(N + 1))
    return _compare(
        f"esa:{kind}",
        N,
        qs,
        lambda q: point_series("slope_deformation", q, N, method, A),
        lambda q: at_one**q,
    )
