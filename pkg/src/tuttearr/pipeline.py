"""One entry point for every way of computing chibar."""
from __future__ import annotations

import logging
from functools import lru_cache

from .algebra import Poly, characteristic_from_coboundary, tutte_from_coboundary
from .core import Arrangement, arrangement_rank
from .errors import ResourceLimit
from .finite_field import FieldConfig, run_finite_field
from .oracles import coboundary_bruteforce, coboundary_moebius

log = logging.getLogger(__name__)

METHODS = ("ff", "ff-fast", "brute", "moebius", "auto")


def coboundary(arr: Arrangement, method: str = "auto", config: FieldConfig | None = None) -> Poly:
    """chibar(q, t) by the named method.

    ``auto`` runs the provable finite-field pipeline and drops to fast mode
    (certified exact-minor primes plus two verification primes) when the
    provable primes blow the point budget.
    """
    config = config or FieldConfig()
    if method == "brute":
        return coboundary_bruteforce(arr)
    if method == "moebius":
        return coboundary_moebius(arr)
    if method == "ff":
        return run_finite_field(arr, config).chibar
    if method == "ff-fast":
        return run_finite_field(arr, _fast(config)).chibar
    if method == "auto":
        try:
            return run_finite_field(arr, config).chibar
        except ResourceLimit as exc:
            log.info("provable primes too expensive (%s); using fast mode", exc)
            return run_finite_field(arr, _fast(config)).chibar
    raise ValueError(f"unknown method {method!r}")


def _fast(config: FieldConfig) -> FieldConfig:
    return FieldConfig(
        fast=True,
        primes=config.primes,
        budget=config.budget,
        workers=config.workers,
        reduce=config.reduce,
        kernel=config.kernel,
        chunk=config.chunk,
    )


def characteristic(arr: Arrangement, method: str = "auto", config: FieldConfig | None = None) -> Poly:
    return characteristic_from_coboundary(coboundary(arr, method, config), arr.n, arrangement_rank(arr))


def tutte(arr: Arrangement, method: str = "auto", config: FieldConfig | None = None) -> Poly:
    return tutte_from_coboundary(coboundary(arr, method, config), arrangement_rank(arr))


def point_polynomial(arr: Arrangement, method: str = "auto") -> Poly:
    """q^(n-r) chibar(q, t): the generating function of h over F_q^n."""
    chibar = coboundary(arr, method)
    shift = arr.n - arrangement_rank(arr)
    return chibar * Poly(chibar.vars, {(shift, 0): 1})


@lru_cache(maxsize=None)
def family_coboundary(kind: str, n: int, method: str = "auto", slopes: tuple[int, ...] | None = None) -> Poly:
    """Cached chibar of a family member; ``slopes`` selects a slope deformation."""
    from .families import make, slope_deformation

    arr = slope_deformation(n, slopes) if slopes is not None else make(kind, n)
    return coboundary(arr, method)


@lru_cache(maxsize=None)
def family_rank(kind: str, n: int, slopes: tuple[int, ...] | None = None) -> int:
    from .families import make, slope_deformation

    arr = slope_deformation(n, slopes) if slopes is not None else make(kind, n)
    return arrangement_rank(arr)
