"""Integer hyperplane arrangements: rank, centrality, deletion, contraction."""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .errors import DegenerateContraction
from .linalg import Echelon, bareiss_rank


@dataclass(frozen=True)
class Hyperplane:
    """The hyperplane ``normal . x = offset``.

    Stored normalized: the gcd of all entries is 1 and the first nonzero
    normal entry is positive, so equal point sets compare equal.
    """

    normal: tuple[int, ...]
    offset: int = 0

    def __post_init__(self):
        normal = tuple(int(v) for v in self.normal)
        offset = int(self.offset)
        if not any(normal):
            raise ValueError("hyperplane normal must be nonzero")
        g = 0
        for v in normal:
            g = gcd(g, v)
        g = gcd(g, offset)
        lead = next(v for v in normal if v)
        if lead < 0:
            g = -g
        object.__setattr__(self, "normal", tuple(v // g for v in normal))
        object.__setattr__(self, "offset", offset // g)

    @property
    def dim(self) -> int:
        return len(self.normal)

    @property
    def row(self) -> tuple[int, ...]:
        """Augmented row ``(*normal, offset)``."""
        return self.normal + (self.offset,)

    def contains(self, point: Sequence[int]) -> bool:
        return sum(a * x for a, x in zip(self.normal, point)) == self.offset

    def __str__(self):
        terms = []
        for i, a in enumerate(self.normal):
            if not a:
                continue
            coef = "" if abs(a) == 1 else str(abs(a))
            sign = "-" if a < 0 else "+"
            terms.append((sign, f"{coef}x{i + 1}"))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, t in terms[1:]:
            s += f" {sign} {t}"
        return f"{s} = {self.offset}"


@dataclass(frozen=True)
class Arrangement:
    """An ordered multiset of hyperplanes in Q^n (indices are stable ids)."""

    n: int
    hyperplanes: tuple[Hyperplane, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("ambient dimension must be nonnegative")
        hs = tuple(self.hyperplanes)
        for h in hs:
            if h.dim != self.n:
                raise ValueError(f"hyperplane {h} does not live in dimension {self.n}")
        object.__setattr__(self, "hyperplanes", hs)

    @classmethod
    def from_equations(cls, n: int, eqs: Iterable[tuple[Sequence[int], int]]) -> "Arrangement":
        return cls(n, tuple(Hyperplane(tuple(a), c) for a, c in eqs))

    def __len__(self):
        return len(self.hyperplanes)

    def __iter__(self):
        return iter(self.hyperplanes)

    def __getitem__(self, i):
        return self.hyperplanes[i]

    @property
    def rank(self) -> int:
        return arrangement_rank(self)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "hyperplanes": [{"normal": list(h.normal), "offset": h.offset} for h in self.hyperplanes],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "Arrangement":
        return cls.from_equations(int(d["n"]), ((h["normal"], h.get("offset", 0)) for h in d["hyperplanes"]))

    @classmethod
    def from_json(cls, text: str) -> "Arrangement":
        return cls.from_dict(json.loads(text))


def _selection(arr: Arrangement, sel: Iterable[int]) -> list[int]:
    idx = sorted(set(sel))
    for i in idx:
        if not 0 <= i < len(arr):
            raise IndexError(f"hyperplane index {i} out of range for {len(arr)} hyperplanes")
    return idx


def is_central(arr: Arrangement, sel: Iterable[int]) -> bool:
    """True iff the selected hyperplanes have a common point (the empty selection does)."""
    basis = Echelon()
    for i in _selection(arr, sel):
        status, basis = basis.add(arr[i].row)
        if status == "inconsistent":
            return False
    return True


def rank(arr: Arrangement, sel: Iterable[int]) -> int:
    """Rank of a selection.

    For non-central selections this is the largest rank of a central subset,
    which coincides with the rank of the normal vectors: any independent set
    of normals has a common solution.
    """
    idx = _selection(arr, sel)
    return bareiss_rank([arr[i].normal for i in idx])


def arrangement_rank(arr: Arrangement) -> int:
    return rank(arr, range(len(arr)))


def delete(arr: Arrangement, i: int) -> Arrangement:
    if not 0 <= i < len(arr):
        raise IndexError(f"hyperplane index {i} out of range")
    return Arrangement(arr.n, arr.hyperplanes[:i] + arr.hyperplanes[i + 1:])


def contract(arr: Arrangement, i: int) -> Arrangement:
    """Restrict every other hyperplane to ``H_i``.

    The coordinate eliminated is the first one with nonzero coefficient in
    ``H_i``; parallel hyperplanes disappear, multiplicities are kept.
    """
    if not 0 <= i < len(arr):
        raise IndexError(f"hyperplane index {i} out of range")
    h = arr[i]
    k = next(j for j, a in enumerate(h.normal) if a)
    ak = h.normal[k]
    out = []
    for j, g in enumerate(arr.hyperplanes):
        if j == i:
            continue
        bk = g.normal[k]
        normal = [ak * b - bk * a for b, a in zip(g.normal, h.normal)]
        offset = ak * g.offset - bk * h.offset
        del normal[k]
        if not any(normal):
            if offset == 0:
                raise DegenerateContraction(f"hyperplane {j} coincides with hyperplane {i}")
            continue
        out.append(Hyperplane(tuple(normal), offset))
    return Arrangement(arr.n - 1, tuple(out))
