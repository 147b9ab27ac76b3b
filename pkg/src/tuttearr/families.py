"""Generators for the classical arrangement families."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .core import Arrangement, Hyperplane
from .errors import GenericityFailure, UnsupportedKind

KINDS = (
    "braid",
    "coxeter_b",
    "coxeter_d",
    "threshold",
    "shi",
    "linial",
    "semiorder",
    "catalan",
    "generic_deformation",
    "graphical",
    "slope_deformation",
)

# slope sets of the braid deformations handled by make()
SLOPES = {
    "braid": (0,),
    "shi": (0, 1),
    "linial": (1,),
    "semiorder": (-1, 1),
    "catalan": (-1, 0, 1),
}


@dataclass(frozen=True)
class SimpleGraph:
    """Simple graph on vertices 1..n; edges stored as sorted pairs."""

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        es = set()
        for e in self.edges:
            i, j = sorted(e)
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not 1 <= i < j <= self.n:
                raise ValueError(f"edge {e} outside [1, {self.n}]")
            es.add((i, j))
        object.__setattr__(self, "edges", tuple(sorted(es)))

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls(n, tuple(itertools.combinations(range(1, n + 1), 2)))

    @classmethod
    def parse(cls, spec: str, n: int | None = None) -> "SimpleGraph":
        """Parse ``"1-2,2-3"``; n defaults to the largest vertex mentioned."""
        edges = []
        for tok in filter(None, (s.strip() for s in spec.split(","))):
            a, b = tok.split("-")
            edges.append((int(a), int(b)))
        if n is None:
            n = max((max(e) for e in edges), default=0)
        return cls(n, tuple(edges))

    def components(self) -> int:
        parent = list(range(self.n + 1))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        comps = self.n
        for i, j in self.edges:
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
                comps -= 1
        return comps


def _diff(n: int, i: int, j: int, sign: int = -1) -> tuple[int, ...]:
    v = [0] * n
    v[i - 1] = 1
    v[j - 1] = sign
    return tuple(v)


def _unit(n: int, i: int) -> tuple[int, ...]:
    v = [0] * n
    v[i - 1] = 1
    return tuple(v)


def _pairs(n: int):
    return itertools.combinations(range(1, n + 1), 2)


def slope_deformation(n: int, slopes: Iterable[int]) -> Arrangement:
    """Hyperplanes x_i - x_j = a for i < j and a in ``slopes``."""
    A = sorted(set(int(a) for a in slopes))
    hs = [Hyperplane(_diff(n, i, j), a) for i, j in _pairs(n) for a in A]
    return Arrangement(n, tuple(hs))


def make(kind: str, n: int) -> Arrangement:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if kind in SLOPES:
        return slope_deformation(n, SLOPES[kind])
    if kind == "coxeter_b":
        hs = [Hyperplane(_diff(n, i, j, s)) for i, j in _pairs(n) for s in (-1, 1)]
        hs += [Hyperplane(_unit(n, i)) for i in range(1, n + 1)]
        return Arrangement(n, tuple(hs))
    if kind == "coxeter_d":
        return Arrangement(n, tuple(Hyperplane(_diff(n, i, j, s)) for i, j in _pairs(n) for s in (-1, 1)))
    if kind == "threshold":
        return Arrangement(n, tuple(Hyperplane(_diff(n, i, j, 1)) for i, j in _pairs(n)))
    if kind == "generic_deformation":
        return generic_deformation(n)
    if kind in ("graphical", "slope_deformation"):
        raise UnsupportedKind(f"{kind} needs its own constructor")
    raise UnsupportedKind(kind)


def expected_count(kind: str, n: int) -> int:
    """Closed-form number of hyperplanes."""
    p = n * (n - 1) // 2
    return {
        "braid": p,
        "coxeter_b": n * n,
        "coxeter_d": n * (n - 1),
        "threshold": p,
        "shi": 2 * p,
        "linial": p,
        "semiorder": 2 * p,
        "catalan": 3 * p,
        "generic_deformation": p,
    }[kind]


def _cycles(n: int):
    """Simple cycles of K_n as vertex sequences, each listed once."""
    for k in range(3, n + 1):
        for verts in itertools.combinations(range(1, n + 1), k):
            first, rest = verts[0], verts[1:]
            for perm in itertools.permutations(rest):
                if perm[0] < perm[-1]:
                    yield (first,) + perm


def generic_deformation(n: int) -> Arrangement:
    """x_i - x_j = 2**idx, idx the lexicographic rank of the pair (i, j).

    Central subsets are exactly the forests: around any cycle the signed
    offsets are distinct powers of two with signs, which never cancel.
    """
    if n > 8:
        raise ValueError("generic_deformation supports n <= 8")
    offset = {}
    hs = []
    for idx, (i, j) in enumerate(_pairs(n)):
        offset[(i, j)] = 1 << idx
        hs.append(Hyperplane(_diff(n, i, j), 1 << idx))
    for cyc in _cycles(n):
        total = 0
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            total += offset[(a, b)] if a < b else -offset[(b, a)]
        if total == 0:
            raise GenericityFailure(f"cycle {cyc} has zero signed offset")
    return Arrangement(n, tuple(hs))


def graphical(graph: SimpleGraph) -> Arrangement:
    return Arrangement(graph.n, tuple(Hyperplane(_diff(graph.n, i, j)) for i, j in graph.edges))
