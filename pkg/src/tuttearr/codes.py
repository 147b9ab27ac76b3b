"""Graph colorings and code weight enumerators as coboundary specializations."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .algebra import QT, Poly
from .core import Arrangement, Hyperplane
from .errors import IdentityFailure, NotPrime, ResourceLimit, ZeroColumn
from .families import SimpleGraph, graphical
from .finite_field import is_prime

T = ("t",)
DEFAULT_BUDGET = 10**7


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Row rank over F_p by plain elimination."""
    m = [[x % p for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class GeneratorMatrix:
    """r x n generator of a linear code over F_p; rows must be independent mod p."""

    p: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(self.p)
        rows = tuple(tuple(int(x) % self.p for x in row) for row in self.rows)
        if not rows or len({len(r) for r in rows}) != 1:
            raise ValueError("generator needs at least one row, all of equal length")
        object.__setattr__(self, "rows", rows)
        if rank_mod_p(rows, self.p) != len(rows):
            raise ValueError("generator rows are dependent mod p")

    @property
    def r(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(row[j] for row in self.rows) for j in range(self.n)]

    @classmethod
    def from_dict(cls, d: dict) -> "GeneratorMatrix":
        return cls(int(d["p"]), tuple(tuple(r) for r in d["rows"]))

    def to_dict(self) -> dict:
        return {"p": self.p, "rows": [list(r) for r in self.rows]}


def coloring_polynomial(g: SimpleGraph, q: int, budget: int = DEFAULT_BUDGET) -> Poly:
    """Sum over all q-colorings of t^(number of monochromatic edges)."""
    if q < 1:
        raise ValueError("q must be positive")
    if q**g.n > budget:
        raise ResourceLimit(f"{q}^{g.n} colorings exceed budget {budget}")
    hist: dict[int, int] = {}
    edges = [(i - 1, j - 1) for i, j in g.edges]
    for col in itertools.product(range(q), repeat=g.n):
        k = sum(1 for i, j in edges if col[i] == col[j])
        hist[k] = hist.get(k, 0) + 1
    return Poly(T, {(k,): c for k, c in hist.items()})


def coloring_from_arrangement(g: SimpleGraph, q: int, method: str = "auto") -> Poly:
    """q^c(g) chibar(q, t) of the graphical arrangement, as a polynomial in t."""
    from .pipeline import coboundary

    chibar = coboundary(graphical(g), method)
    return q ** g.components() * chibar.evaluate({"q": q})


def codeweight_polynomial(U: GeneratorMatrix, budget: int = DEFAULT_BUDGET) -> Poly:
    """Weight enumerator: sum over codewords of t^(Hamming weight)."""
    p, r, n = U.p, U.r, U.n
    if p**r > budget:
        raise ResourceLimit(f"{p}^{r} codewords exceed budget {budget}")
    hist: dict[int, int] = {}
    for coef in itertools.product(range(p), repeat=r):
        w = 0
        for j in range(n):
            if sum(c * row[j] for c, row in zip(coef, U.rows)) % p:
                w += 1
        hist[w] = hist.get(w, 0) + 1
    return Poly(T, {(k,): c for k, c in hist.items()})


def column_arrangement(U: GeneratorMatrix) -> Arrangement:
    """One hyperplane column . x = 0 per column, in dimension r (integer lifts of the entries)."""
    cols = U.columns()
    for j, c in enumerate(cols):
        if not any(c):
            raise ZeroColumn(f"column {j} is zero")
    return Arrangement(U.r, tuple(Hyperplane(c) for c in cols))


def matroid_coboundary(U: GeneratorMatrix) -> Poly:
    """chibar of the column matroid, with ranks taken over F_p.

    Every subset of a central arrangement is central, so this is the plain
    subset sum of q^(r - rk B) (t-1)^|B|.
    """
    cols = U.columns()
    for j, c in enumerate(cols):
        if not any(c):
            raise ZeroColumn(f"column {j} is zero")
    r = rank_mod_p(cols, U.p)
    terms: dict[tuple[int, int], int] = {}
    q = Poly.var("q", QT)
    tm1 = Poly.var("t", QT) - 1
    total = Poly(QT)
    for size in range(len(cols) + 1):
        for B in itertools.combinations(cols, size):
            rk = rank_mod_p(B, U.p) if B else 0
            key = (r - rk, size)
            terms[key] = terms.get(key, 0) + 1
    for (a, b), c in terms.items():
        total = total + c * q**a * tm1**b
    return total


def reciprocal(chibar: Poly, q: int, n: int) -> Poly:
    """t^n chibar(q, 1/t), which is a polynomial since deg_t chibar <= n."""
    at_q = chibar.evaluate({"q": q})
    if at_q.degree("t") > n:
        raise ValueError("t-degree exceeds n")
    return Poly(T, {(n - e,): c for (e,), c in at_q.terms.items()})


@dataclass
class GreeneReport:
    p: int
    n: int
    r: int
    weight: Poly
    chibar: Poly
    transformed: Poly

    @property
    def passed(self) -> bool:
        return self.weight == self.transformed

    def to_dict(self) -> dict:
        return {
            "identity": "greene",
            "p": self.p,
            "n": self.n,
            "r": self.r,
            "lhs": self.weight.to_dict(),
            "rhs": self.transformed.to_dict(),
            "chibar": self.chibar.to_dict(),
            "pass": self.passed,
        }


def greene_check(U: GeneratorMatrix, strict: bool = True) -> GreeneReport:
    """Compare the weight enumerator with t^n chibar(p, 1/t) of the column matroid."""
    chibar = matroid_coboundary(U)
    rep = GreeneReport(U.p, U.n, U.r, codeweight_polynomial(U), chibar, reciprocal(chibar, U.p, U.n))
    if strict and not rep.passed:
        raise IdentityFailure(f"weight enumerator {rep.weight} != {rep.transformed}")
    return rep


def random_generator(rng, p: int = 2, r_max: int = 4, n_max: int = 8) -> GeneratorMatrix:
    """Random full-rank generator with nonzero columns (rejection sampling)."""
    while True:
        r = rng.randint(1, r_max)
        n = rng.randint(r, n_max)
        rows = [[rng.randrange(p) for _ in range(n)] for _ in range(r)]
        cols = list(zip(*rows))
        if any(not any(c) for c in cols):
            continue
        if rank_mod_p(rows, p) == r:
            return GeneratorMatrix(p, tuple(tuple(r_) for r_ in rows))
