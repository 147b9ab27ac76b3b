import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import arrangements
from tuttearr.algebra import QT, Poly
from tuttearr.core import Arrangement, Hyperplane
from tuttearr.errors import CorrectnessAlarm, NotPrime, ResourceLimit
from tuttearr.families import make
from tuttearr.finite_field import (
    FieldConfig, coboundary_via_finite_field, fast_lower_bound, incidence_histogram,
    minor_bound, plan_primes, prime_bound, run_finite_field,
)
from tuttearr.oracles import coboundary_bruteforce

q = Poly.var("q", QT)
t = Poly.var("t", QT)


def naive_histogram(arr, p):
    out = {}
    for pt in itertools.product(range(p), repeat=arr.n):
        h = sum(1 for H in arr if (sum(a * x for a, x in zip(H.normal, pt)) - H.offset) % p == 0)
        out[h] = out.get(h, 0) + 1
    return out


def test_prime_bound_examples():
    assert prime_bound(make("braid", 3)) == 8
    assert prime_bound(Arrangement(2, ())) == 1
    assert prime_bound(Arrangement(1, (Hyperplane((2,), 1),))) == 25


def test_minor_bound_is_below_hadamard():
    for kind in ("braid", "shi", "catalan", "coxeter_b"):
        arr = make(kind, 3)
        assert minor_bound(arr) <= prime_bound(arr)
    assert fast_lower_bound(make("generic_deformation", 4)) < prime_bound(make("generic_deformation", 4))


@pytest.mark.parametrize(
    "arr, p, expected",
    [
        (make("braid", 3), 5, {0: 60, 1: 60, 3: 5}),
        (Arrangement(1, ()), 3, {0: 3}),
        (Arrangement(1, (Hyperplane((1,)),)), 3, {0: 2, 1: 1}),
    ],
)
@pytest.mark.parametrize("kernel", ["numpy", "python"])
@pytest.mark.parametrize("reduce", [True, False])
def test_histogram_examples(arr, p, expected, kernel, reduce):
    h = incidence_histogram(arr, p, FieldConfig(kernel=kernel, reduce=reduce))
    assert h.counts == expected


def test_histogram_needs_prime():
    with pytest.raises(NotPrime):
        incidence_histogram(make("braid", 3), 9)


@settings(max_examples=60)
@given(arrangements(max_n=3, max_m=6), st.sampled_from([2, 3, 5, 7]), st.sampled_from(["numpy", "python"]))
def test_histogram_matches_naive(arr, p, kernel):
    cfg = FieldConfig(kernel=kernel, chunk=8)
    h = incidence_histogram(arr, p, cfg)
    assert h.counts == naive_histogram(arr, p)
    assert h.total == p**arr.n


@pytest.mark.parametrize("workers", [2, 3, 8])
def test_parallel_histogram_identical(workers):
    arr = make("catalan", 3)
    serial = incidence_histogram(arr, 31, FieldConfig(workers=1))
    assert incidence_histogram(arr, 31, FieldConfig(workers=workers)).counts == serial.counts


@pytest.mark.parametrize(
    "arr, expected",
    [
        (make("braid", 3), q**2 + 3 * q * (t - 1) + 3 * (t - 1) ** 2 + (t - 1) ** 3),
        (make("shi", 2), q + 2 * (t - 1)),
        (Arrangement(2, ()), Poly.const(1, QT)),
    ],
)
def test_coboundary_examples(arr, expected):
    assert coboundary_via_finite_field(arr) == expected


@settings(max_examples=25)
@given(arrangements(max_n=3, max_m=5))
def test_finite_field_matches_bruteforce(arr):
    cfg = FieldConfig(fast=True)
    assert run_finite_field(arr, cfg).chibar == coboundary_bruteforce(arr)


def test_plan_primes_shapes():
    arr = make("shi", 3)
    plan = plan_primes(arr)
    assert len(plan.primes) == arr.n + 1 and len(plan.verification) == 1
    assert all(p > plan.lower_bound for p in plan.primes + plan.verification)
    fast = plan_primes(arr, FieldConfig(fast=True))
    assert len(fast.verification) == 2


def test_verification_prime_agrees():
    res = run_finite_field(make("linial", 3))
    for h in res.histograms:
        assert res.point_polynomial.evaluate({"q": h.prime}) == h.polynomial()


def test_small_user_primes_alarm():
    # mod 2 the Catalan lines x1-x2 = 1 and x1-x2 = -1 coincide, so the counts are not polynomial
    with pytest.raises(CorrectnessAlarm):
        run_finite_field(make("catalan", 2), FieldConfig(primes=(2, 3, 5)))


def test_budget_refusal():
    with pytest.raises(ResourceLimit):
        run_finite_field(make("generic_deformation", 4), FieldConfig(budget=10**6))


def test_characteristic_signs_alternate():
    for kind in ("braid", "shi", "catalan", "coxeter_d", "threshold"):
        arr = make(kind, 3)
        chi0 = coboundary_via_finite_field(arr).evaluate({"t": 0})
        for (e,), c in chi0.terms.items():
            assert c * (-1) ** (arr.rank - e) > 0
