"""Independent ground truth for coboundary and Tutte polynomials.

None of these routes count points over a finite field; they work from the
subset definition, the intersection poset, or a combinatorial model.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .algebra import QT, XY, Poly
from .core import Arrangement, arrangement_rank, contract, delete
from .errors import HypothesisViolated, NotComparable, ResourceLimit
from .linalg import Echelon, clear_denominators, rref

DEFAULT_CAP = 22


def _check_cap(arr: Arrangement, cap: int):
    if len(arr) > cap:
        raise ResourceLimit(f"{len(arr)} hyperplanes exceed the brute-force cap {cap}")


def iter_central(arr: Arrangement, cap: int = DEFAULT_CAP) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield ``(indices, rank)`` for every central subset.

    Depth-first with an incremental echelon basis; a non-central set prunes
    its whole subtree since supersets of it are non-central too.
    """
    _check_cap(arr, cap)
    rows = [h.row for h in arr]
    m = len(rows)

    def rec(chosen, basis, start):
        yield chosen, basis.rank
        for j in range(start, m):
            status, nb = basis.add(rows[j])
            if status != "inconsistent":
                yield from rec(chosen + (j,), nb, j + 1)

    yield from rec((), Echelon(), 0)


def central_statistics(arr: Arrangement, cap: int = DEFAULT_CAP) -> Counter:
    """Counter of ``(rank, size)`` over central subsets."""
    return Counter((rk, len(b)) for b, rk in iter_central(arr, cap))


def coboundary_bruteforce(arr: Arrangement, cap: int = DEFAULT_CAP) -> Poly:
    """Sum of q^(r - r(B)) (t-1)^|B| over central subsets B."""
    r = arrangement_rank(arr)
    q = Poly.var("q", QT)
    tm1 = Poly.var("t", QT) - 1
    total = Poly(QT)
    for (rk, size), count in central_statistics(arr, cap).items():
        total = total + count * q ** (r - rk) * tm1**size
    return total


def tutte_bruteforce(arr: Arrangement, cap: int = DEFAULT_CAP) -> Poly:
    """Sum of (x-1)^(r - r(B)) (y-1)^(|B| - r(B)) over central subsets B."""
    r = arrangement_rank(arr)
    xm1 = Poly.var("x", XY) - 1
    ym1 = Poly.var("y", XY) - 1
    total = Poly(XY)
    for (rk, size), count in central_statistics(arr, cap).items():
        total = total + count * xm1 ** (r - rk) * ym1 ** (size - rk)
    return total


# intersection poset


@dataclass(frozen=True)
class Flat:
    key: tuple  # canonical reduced echelon form of the defining system
    rank: int
    mask: int  # bitmask of hyperplanes containing the flat

    @property
    def h(self) -> int:
        return bin(self.mask).count("1")

    @property
    def hyperplanes(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.mask.bit_length()) if self.mask >> i & 1)


def _canonical(basis: Echelon) -> tuple:
    red, _ = rref([row for _, row in basis.rows])
    return tuple(clear_denominators(r) for r in red)


class IntersectionPoset:
    """Nonempty intersections ordered by reverse inclusion.

    A flat is identified by the set of hyperplanes containing it, so
    ``x <= y`` exactly when every hyperplane through x also passes through y.
    """

    def __init__(self, arr: Arrangement, cap: int = DEFAULT_CAP):
        _check_cap(arr, cap)
        self.arr = arr
        rows = [h.row for h in arr]
        bottom = Flat((), 0, 0)
        self.flats: list[Flat] = [bottom]
        seen = {(): bottom}
        frontier = [(bottom, Echelon())]
        while frontier:
            nxt = []
            for flat, basis in frontier:
                for j, row in enumerate(rows):
                    if flat.mask >> j & 1:
                        continue
                    status, nb = basis.add(row)
                    if status != "new":
                        continue
                    key = _canonical(nb)
                    if key in seen:
                        continue
                    mask = 0
                    for i, other in enumerate(rows):
                        if nb.add(other)[0] == "dependent":
                            mask |= 1 << i
                    f = Flat(key, nb.rank, mask)
                    seen[key] = f
                    self.flats.append(f)
                    nxt.append((f, nb))
            frontier = nxt
        self.flats.sort(key=lambda f: (f.rank, f.key))
        self._index = {f.key: i for i, f in enumerate(self.flats)}
        self._mu: dict[int, dict[int, int]] = {}

    def __len__(self):
        return len(self.flats)

    @property
    def bottom(self) -> Flat:
        return self.flats[0]

    def leq(self, x: Flat, y: Flat) -> bool:
        return x.mask & ~y.mask == 0

    def _row(self, i: int) -> dict[int, int]:
        """Memoized ``mu(flats[i], .)`` on the up-set of flats[i]."""
        if i not in self._mu:
            x = self.flats[i]
            up = [j for j in range(i, len(self.flats)) if self.leq(x, self.flats[j])]
            row = {i: 1}
            for j in up[1:]:
                y = self.flats[j]
                s = 0
                for k, v in row.items():
                    if self.flats[k].mask & ~y.mask == 0:
                        s += v
                row[j] = -s
            self._mu[i] = row
        return self._mu[i]

    def moebius(self, x: Flat, y: Flat) -> int:
        if not self.leq(x, y):
            raise NotComparable(f"{x.hyperplanes} is not below {y.hyperplanes}")
        return self._row(self._index[x.key])[self._index[y.key]]

    def intervals(self) -> Iterator[tuple[Flat, Flat, int]]:
        """Yield ``(x, y, mu(x, y))`` for all comparable pairs."""
        for i, x in enumerate(self.flats):
            for j, v in self._row(i).items():
                yield x, self.flats[j], v


def intersection_poset(arr: Arrangement, cap: int = DEFAULT_CAP) -> IntersectionPoset:
    return IntersectionPoset(arr, cap)


def moebius(poset: IntersectionPoset, x: Flat, y: Flat) -> int:
    return poset.moebius(x, y)


def coboundary_moebius(arr: Arrangement, cap: int = DEFAULT_CAP) -> Poly:
    """Sum over x <= y of mu(x, y) q^(r - r(y)) t^h(x)."""
    poset = IntersectionPoset(arr, cap)
    r = arrangement_rank(arr)
    terms: dict = {}
    for x, y, mu in poset.intervals():
        if mu:
            key = (r - y.rank, x.h)
            terms[key] = terms.get(key, 0) + mu
    return Poly(QT, terms)


def characteristic_moebius(arr: Arrangement, cap: int = DEFAULT_CAP) -> Poly:
    """chi(q) = sum over flats x of mu(0, x) q^(n - r(x))."""
    poset = IntersectionPoset(arr, cap)
    terms: dict = {}
    for y in poset.flats:
        mu = poset.moebius(poset.bottom, y)
        terms[(arr.n - y.rank,)] = terms.get((arr.n - y.rank,), 0) + mu
    return Poly(("q",), terms)


# checks


@dataclass
class CheckReport:
    identity: str
    lhs: Poly
    rhs: Poly
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        d = {"identity": self.identity, "lhs": self.lhs.to_dict(), "rhs": self.rhs.to_dict(), "pass": self.passed}
        if self.details:
            d["details"] = self.details
        return d


def deletion_contraction_check(arr: Arrangement, i: int, cap: int = DEFAULT_CAP) -> CheckReport:
    """T_A = T_{A-H} + T_{A/H}, all three by brute force.

    Requires deleting H to keep the rank; raises HypothesisViolated otherwise
    and when H is repeated (the contraction would contain the whole space).
    """
    dl = delete(arr, i)
    if arrangement_rank(dl) != arrangement_rank(arr):
        raise HypothesisViolated(f"deleting hyperplane {i} drops the rank")
    if any(j != i and h == arr[i] for j, h in enumerate(arr)):
        raise HypothesisViolated(f"hyperplane {i} is repeated")
    ct = contract(arr, i)
    t_a = tutte_bruteforce(arr, cap)
    t_d = tutte_bruteforce(dl, cap)
    t_c = tutte_bruteforce(ct, cap)
    return CheckReport(
        "deletion-contraction",
        t_a,
        t_d + t_c,
        {"deletion": t_d.to_dict(), "contraction": t_c.to_dict(), "index": i},
    )


def expected_characteristic(arr: Arrangement, t, cap: int = 12) -> Poly:
    """Expected characteristic polynomial when each hyperplane is dropped with probability t.

    Literal double sum: for every subarrangement C, chi_C(q) from its own
    central subsets (Whitney), weighted by (1-t)^|C| t^(m-|C|).
    """
    _check_cap(arr, cap)
    t = Fraction(t)
    m = len(arr)
    n = arr.n
    central = [(sum(1 << j for j in b), len(b), rk) for b, rk in iter_central(arr, cap)]
    acc: dict[int, Fraction] = {}
    for cmask in range(1 << m):
        size = bin(cmask).count("1")
        w = (1 - t) ** size * t ** (m - size)
        if not w:
            continue
        chi: dict[int, int] = {}
        for bmask, bsize, rk in central:
            if bmask & ~cmask == 0:
                chi[n - rk] = chi.get(n - rk, 0) + (-1) ** bsize
        for e, c in chi.items():
            acc[e] = acc.get(e, 0) + w * c
    return Poly(("q",), {(e,): c for e, c in acc.items()})


# combinatorial models


def _components(n: int, edges) -> list[list[int]]:
    adj = {v: [] for v in range(n)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = set()
    comps = []
    for v in range(n):
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def _is_bipartite(comp: list[int], edges) -> bool:
    members = set(comp)
    adj = {v: [] for v in comp}
    for a, b in edges:
        if a in members:
            adj[a].append(b)
            adj[b].append(a)
    color = {comp[0]: 0}
    stack = [comp[0]]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in color:
                color[w] = 1 - color[u]
                stack.append(w)
            elif color[w] == color[u]:
                return False
    return True


def _graph_sum(n: int, graphs) -> Poly:
    """Sum q^a (t-1)^e over an iterable of (a, e) pairs."""
    q = Poly.var("q", QT)
    tm1 = Poly.var("t", QT) - 1
    total = Poly(QT)
    for (a, e), count in Counter(graphs).items():
        total = total + count * q**a * tm1**e
    return total


def _forests(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for k in range(len(pairs) + 1):
        for es in itertools.combinations(pairs, k):
            if len(_components(n, es)) == n - k:
                yield n - k, k


def _all_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for k in range(len(pairs) + 1):
        for es in itertools.combinations(pairs, k):
            bc = sum(1 for c in _components(n, es) if _is_bipartite(c, es))
            yield bc, k


def planted_graphs(n: int, slopes) -> Iterator[tuple[tuple[int, ...], tuple[tuple[int, int], ...]]]:
    """Planted graded A-graphs on [n] as ``(heights, edges)`` with 0-based vertices."""
    A = sorted(set(slopes))
    spread = max(-A[0], A[-1]) if A else 0
    top = (n - 1) * max(spread, 0)
    pairs = list(itertools.combinations(range(n), 2))
    for h in itertools.product(range(top + 1), repeat=n):
        ok = [(i, j) for i, j in pairs if h[i] - h[j] in A]
        for k in range(len(ok) + 1):
            for es in itertools.combinations(ok, k):
                if all(any(h[v] == 0 for v in c) for c in _components(n, es)):
                    yield h, es


def combinatorial_oracle(kind: str, n: int, slopes=None) -> Poly:
    """Graph-enumeration sums.

    ``forests``: sum of q^(n-e) (t-1)^e over forests on [n].
    ``all_graphs``: sum of q^bc (t-1)^e over all graphs (bc = bipartite components).
    ``planted_A_graphs``: sum of q^c (t-1)^e over planted graded A-graphs.
    """
    if n > 6:
        raise ResourceLimit("graph enumeration is limited to n <= 6")
    if kind == "forests":
        return _graph_sum(n, _forests(n))
    if kind == "all_graphs":
        return _graph_sum(n, _all_graphs(n))
    if kind == "planted_A_graphs":
        if slopes is None:
            raise ValueError("planted_A_graphs needs a slope set")
        return _graph_sum(n, ((len(_components(n, es)), len(es)) for _, es in planted_graphs(n, slopes)))
    raise ValueError(f"unknown oracle kind {kind!r}")


def forest_counts(n_max: int) -> list[int]:
    """Number of forests on [n] for n = 0..n_max."""
    return [sum(1 for _ in _forests(n)) for n in range(n_max + 1)]
