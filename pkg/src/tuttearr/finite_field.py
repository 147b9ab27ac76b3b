"""Coboundary polynomials by counting points of F_q^n.

For a prime q the arrangement is reduced mod q and every point is binned by
``h(p)``, the number of hyperplanes through it. For q past a determinant
bound the binned counts equal ``q^(n-r) chibar(q, t)`` coefficientwise, so
n+1 primes determine chibar by interpolation.

Enumeration never visits the full space when the arrangement is not
essential: translating by an integer null vector of the normals does not
change ``h``, so counting a complementary r-dimensional slice and scaling by
``q^(n-r)`` gives the same histogram exactly.
"""
from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb, isqrt

import numpy as np

from .algebra import QT, Poly, interpolate
from .core import Arrangement, arrangement_rank
from .errors import InexactDivision, NotPrime, ResourceLimit, VerificationMismatch
from .linalg import bareiss_det, kernel_basis

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**9


def is_prime(q: int) -> bool:
    from sympy import isprime

    return bool(isprime(q))


def primes_above(bound: int, count: int) -> list[int]:
    from sympy import nextprime

    out = []
    p = bound
    for _ in range(count):
        p = int(nextprime(p))
        out.append(p)
    return out


def prime_bound(arr: Arrangement) -> int:
    """``S**(r+1)`` with S the largest squared norm of an augmented row.

    Dominates every (r+1)-minor of the augmented matrix (Hadamard), so any
    larger prime makes the arrangement reduce correctly.
    """
    if not len(arr):
        return 1
    s = max(sum(a * a for a in h.row) for h in arr)
    return s ** (arrangement_rank(arr) + 1)


def minor_bound(arr: Arrangement, cap: int = 100_000) -> int | None:
    """Largest |minor| of the augmented matrix, or None if there are more than ``cap`` minors.

    Minors larger than r+1 vanish, so only sizes up to r+1 are visited.
    """
    rows = [h.row for h in arr]
    m = len(rows)
    r = arrangement_rank(arr)
    ncols = arr.n + 1
    top = min(m, ncols, r + 1)
    total = sum(comb(m, k) * comb(ncols, k) for k in range(1, top + 1))
    if total > cap:
        return None
    best = 1
    for k in range(1, top + 1):
        for ri in itertools.combinations(range(m), k):
            sub = [rows[i] for i in ri]
            for ci in itertools.combinations(range(ncols), k):
                d = abs(bareiss_det([[row[c] for c in ci] for row in sub]))
                if d > best:
                    best = d
    return best


def fast_lower_bound(arr: Arrangement) -> int:
    """Prime floor for fast mode: exact minors when cheap, else the square-root Hadamard bound."""
    mb = minor_bound(arr)
    if mb is not None:
        return mb
    return isqrt(prime_bound(arr)) + 1


@dataclass(frozen=True)
class PrimePlan:
    lower_bound: int
    primes: tuple[int, ...]
    verification: tuple[int, ...]

    def __post_init__(self):
        ps = self.primes
        if any(b <= a for a, b in zip(ps, ps[1:])):
            raise ValueError("interpolation primes must be strictly increasing")


@dataclass
class FieldConfig:
    """Knobs for the finite-field pipeline.

    ``fast`` swaps the provable prime bound for the exact-minor bound and
    demands two verification primes. Explicit ``primes`` imply fast mode.
    """

    fast: bool = False
    primes: tuple[int, ...] | None = None
    budget: int = DEFAULT_BUDGET
    workers: int = 1
    reduce: bool = True
    kernel: str = "numpy"
    chunk: int = 1 << 18


@dataclass
class Histogram:
    prime: int
    n: int
    counts: dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def polynomial(self) -> Poly:
        return Poly(("t",), {(k,): c for k, c in self.counts.items()})


def plan_primes(arr: Arrangement, config: FieldConfig | None = None) -> PrimePlan:
    config = config or FieldConfig()
    need = arr.n + 1
    if config.primes:
        ps = [int(p) for p in config.primes]
        for p in ps:
            if not is_prime(p):
                raise NotPrime(p)
        if len(ps) < need:
            raise ValueError(f"need at least {need} primes, got {len(ps)}")
        interp, extra = ps[:need], ps[need:]
        if len(extra) < 2:
            extra += primes_above(max(ps), 2 - len(extra))
        return PrimePlan(0, tuple(interp), tuple(extra))
    if config.fast:
        lower = fast_lower_bound(arr)
        ps = primes_above(lower, need + 2)
        return PrimePlan(lower, tuple(ps[:need]), tuple(ps[need:]))
    lower = prime_bound(arr)
    ps = primes_above(lower, need + 1)
    return PrimePlan(lower, tuple(ps[:need]), tuple(ps[need:]))


# enumeration kernels


def _slice(arr: Arrangement, q: int, reduce: bool):
    """Coordinates to enumerate and the power of q each slice point stands for.

    Returns ``(coords, extra)``; slice points have zeros outside ``coords``.
    """
    n = arr.n
    if not reduce or not len(arr):
        if not len(arr):
            return [], n
        return list(range(n)), 0
    vecs, free = kernel_basis([h.normal for h in arr], n)
    for v in vecs:
        for x in v:
            if x.denominator % q == 0:
                return list(range(n)), 0
    coords = [c for c in range(n) if c not in free]
    return coords, len(free)


def _python_counts(rows, offs, q: int, d: int, first: range) -> list[int]:
    """Reference kernel: mixed-radix odometer with incremental residues."""
    m = len(rows)
    counts = [0] * (m + 1)
    if d == 0:
        counts[sum(1 for c in offs if c % q == 0)] += 1
        return counts
    cols = [[row[k] for row in rows] for k in range(d)]
    for v in first:
        res = [(row[0] * v - c) % q for row, c in zip(rows, offs)]
        digits = [0] * d
        while True:
            counts[sum(1 for x in res if x == 0)] += 1
            k = d - 1
            while k >= 1:
                col = cols[k]
                if digits[k] < q - 1:
                    digits[k] += 1
                    res = [(x + a) % q for x, a in zip(res, col)]
                    break
                digits[k] = 0
                res = [(x - (q - 1) * a) % q for x, a in zip(res, col)]
                k -= 1
            if k == 0:
                break
    return counts


def _suffix_table(rows: np.ndarray, q: int, cols: list[int]) -> np.ndarray:
    m = rows.shape[0]
    table = np.zeros((m, 1), dtype=np.int64)
    ar = np.arange(q, dtype=np.int64)
    for k in cols:
        contrib = (rows[:, k:k + 1] * ar[None, :]) % q
        table = (table[:, :, None] + contrib[:, None, :]).reshape(m, -1) % q
    return table


def _numpy_counts(rows, offs, q: int, d: int, first: range, chunk: int) -> list[int]:
    """Vectorized kernel: odometer over a prefix, one array op per prefix point."""
    m = len(rows)
    if d == 0:
        return _python_counts(rows, offs, q, 0, first)
    A = np.array(rows, dtype=np.int64).reshape(m, d) % q
    c = np.array(offs, dtype=np.int64) % q
    s = 0
    while s + 1 < d and q ** (s + 1) <= chunk:
        s += 1
    p = d - s
    table = _suffix_table(A, q, list(range(p, d)))
    dtype = np.int32 if q < 2**31 else np.int64
    table = table.astype(dtype)
    counts = np.zeros(m + 1, dtype=np.int64)
    for v in first:
        base = (A[:, 0] * v - c) % q
        for tail in itertools.product(range(q), repeat=p - 1):
            res = base
            if tail:
                res = (base + A[:, 1:p] @ np.array(tail, dtype=np.int64)) % q
            need = ((-res) % q).astype(dtype)
            hits = (table == need[:, None]).sum(axis=0)
            counts += np.bincount(hits, minlength=m + 1)
    return [int(x) for x in counts]


def incidence_histogram(arr: Arrangement, q: int, config: FieldConfig | None = None) -> Histogram:
    """Exact counts of points of F_q^n by number of incident hyperplanes mod q."""
    config = config or FieldConfig()
    if not is_prime(q):
        raise NotPrime(q)
    coords, extra = _slice(arr, q, config.reduce)
    d = len(coords)
    rows = [[h.normal[k] % q for k in coords] for h in arr]
    offs = [h.offset % q for h in arr]
    m = len(arr)
    if d == 0:
        shards = [range(1)]
    else:
        w = max(1, min(config.workers, q))
        step = -(-q // w)
        shards = [range(a, min(a + step, q)) for a in range(0, q, step)]

    def run(shard):
        if config.kernel == "python":
            return _python_counts(rows, offs, q, d, shard)
        return _numpy_counts(rows, offs, q, d, shard, config.chunk)

    if len(shards) > 1:
        with ThreadPoolExecutor(max_workers=len(shards)) as pool:
            parts = list(pool.map(run, shards))
    else:
        parts = [run(s) for s in shards]
    total = [0] * (m + 1)
    for part in parts:
        total = [a + b for a, b in zip(total, part)]
    scale = q**extra
    return Histogram(q, arr.n, {k: c * scale for k, c in enumerate(total) if c})


def enumeration_cost(arr: Arrangement, primes) -> int:
    """Points actually visited for the given primes (slice dimension = rank when reducing)."""
    d = arrangement_rank(arr)
    return sum(p**d for p in primes)


@dataclass
class FiniteFieldResult:
    chibar: Poly
    plan: PrimePlan
    histograms: list[Histogram]
    n: int
    rank: int

    @property
    def point_polynomial(self) -> Poly:
        """``q^(n-r) chibar(q, t)``."""
        return self.chibar * Poly(QT, {(self.n - self.rank, 0): 1})


def run_finite_field(arr: Arrangement, config: FieldConfig | None = None) -> FiniteFieldResult:
    config = config or FieldConfig()
    n = arr.n
    r = arrangement_rank(arr)
    plan = plan_primes(arr, config)
    every = plan.primes + plan.verification
    cost = enumeration_cost(arr, every) if config.reduce else sum(p**n for p in every)
    if cost > config.budget:
        raise ResourceLimit(
            f"{cost} points across primes {plan.primes[0]}..{every[-1]} exceed budget {config.budget}"
        )
    log.debug("primes %s verification %s (%d points)", plan.primes, plan.verification, cost)
    hists = [incidence_histogram(arr, p, config) for p in every]
    interp = hists[: len(plan.primes)]
    m = len(arr)
    terms = {}
    for k in range(m + 1):
        pts = [(h.prime, h.counts.get(k, 0)) for h in interp]
        if not any(y for _, y in pts):
            continue
        coeff = interpolate(pts, n, "q")
        for (e,), c in coeff.terms.items():
            terms[(e, k)] = c
    shifted = Poly(QT, terms)
    out = {}
    for (a, b), c in shifted.terms.items():
        if a < n - r:
            raise InexactDivision(f"point polynomial not divisible by q^{n - r}")
        out[(a - (n - r), b)] = c
    chibar = Poly(QT, out)
    if not chibar.is_integral():
        raise InexactDivision(f"non-integral coboundary polynomial {chibar}")
    for h in hists[len(plan.primes):]:
        predicted = shifted.evaluate({"q": h.prime})
        if predicted != h.polynomial():
            raise VerificationMismatch(
                f"prime {h.prime}: interpolated {predicted} but counted {h.polynomial()}"
            )
    return FiniteFieldResult(chibar, plan, hists, n, r)


def coboundary_via_finite_field(arr: Arrangement, config: FieldConfig | None = None, **kw) -> Poly:
    """Coboundary polynomial chibar(q, t) from point counts over several primes."""
    if config is None:
        config = FieldConfig(**kw)
    return run_finite_field(arr, config).chibar
