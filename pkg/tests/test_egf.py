from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from tuttearr.algebra import Poly
from tuttearr.egf import (
    EGF, A_from_S, A_r_series, BivariateSeries, S_series, T, char_via_limit, family_egf_rhs,
    fibonacci_specialization, limit_ratio, series_arithmetic, signed_object_counts, spread,
    t_power, verify_esa, verify_family_egf,
)
from tuttearr.errors import BadExponent, IdentityFailure, NonInvertibleDivisor

tv = Poly.var("t", T)
qq = Poly.var("q", ("q",))
SUBSETS = [(), (-1,), (0,), (1,), (-1, 0), (-1, 1), (0, 1), (-1, 0, 1)]


def exp_series(N, a=1):
    return EGF([a**k for k in range(N + 1)])


def test_arithmetic_examples():
    one_x = EGF([1, 1, 0])
    assert series_arithmetic(one_x, one_x, "multiply") == EGF([1, 2, 2])
    assert series_arithmetic(exp_series(5), exp_series(5), "divide") == EGF.one(5)
    cube = series_arithmetic(EGF([1, 1, 0, 0]), 3, "integer_power")
    assert cube == EGF.from_ordinary([1, 3, 3, 1], 3)
    assert exp_series(4) * exp_series(4) == exp_series(4, 2)


def test_inverse_needs_constant():
    with pytest.raises(NonInvertibleDivisor):
        EGF([0, 1]).inverse()
    with pytest.raises(NonInvertibleDivisor):
        EGF([tv, 1]).inverse()


def test_order_mismatch():
    with pytest.raises(ValueError):
        EGF([1, 1]) + EGF([1, 1, 1])


coeff = st.builds(lambda a, b: Poly(T, {(0,): a, (1,): b}), st.fractions(max_denominator=5), st.integers(-3, 3))


@settings(max_examples=50)
@given(st.lists(coeff, min_size=4, max_size=4), st.lists(coeff, min_size=3, max_size=3), st.fractions(max_denominator=4).filter(bool))
def test_divide_then_multiply(a, b_tail, b0):
    A, B = EGF(a), EGF([b0] + b_tail)
    assert (A / B) * B == A


@settings(max_examples=30)
@given(st.lists(coeff, min_size=4, max_size=4))
def test_exp_log_inverse(tail):
    G = EGF([0] + tail)
    assert G.exp().log() == G
    assert G.exp() * (-G).exp() == EGF.one(4)


@pytest.mark.parametrize(
    "slopes, r, N, k, expected",
    [((1,), 1, 3, 3, 1), ((1,), 2, 2, 2, 3 + tv), ((0,), 2, 2, 2, 2 + 2 * tv)],
)
def test_A_r_examples(slopes, r, N, k, expected):
    assert A_r_series(slopes, r, N)[k] == expected


def test_A_r_single_row():
    assert A_r_series((1,), 1, 4) == EGF.one(4) + EGF([0, 1, 1, 1, 1])


def _closed(fn, N, R):
    return BivariateSeries([[fn(n, r) for r in range(R + 1)] for n in range(N + 1)], N, R)


def test_S_closed_forms():
    N, R = 4, 5
    # A={1}: (1 + y e^{x(1+y)}) / (1+y)
    num = _closed(lambda n, r: (1 if (n, r) == (0, 0) else 0) + (comb(n, r - 1) if r >= 1 else 0), N, R)
    den = _closed(lambda n, r: 1 if n == 0 and r <= 1 else 0, N, R)
    assert S_series((1,), N, R, t_zero=True) == num / den
    # A={-1,1}: 1 + (e^x - 1) y
    assert S_series((-1, 1), N, R, t_zero=True) == _closed(
        lambda n, r: 1 if (n, r) == (0, 0) or (r == 1 and n >= 1) else 0, N, R
    )
    # A={-1,0,1}: 1 + xy
    assert S_series((-1, 0, 1), N, R, t_zero=True) == _closed(
        lambda n, r: 1 if (n, r) in ((0, 0), (1, 1)) else 0, N, R
    )


def test_A_from_S_closed_forms():
    N, R = 4, 8
    # S = e^{xy} gives sum_n (r+1-n)^n x^n/n! at y^r, the printed closed form shifted by one in r
    shi = A_from_S(S_series((0, 1), N, R, t_zero=True))
    for r in range(R + 1):
        assert shi.y_coefficient(r) == EGF([(r + 1 - n) ** n if n <= r + 1 else 0 for n in range(N + 1)])
    cat = A_from_S(S_series((-1, 0, 1), N, R, t_zero=True))
    for r in range(R + 1):
        expected = EGF.from_ordinary([comb(r - n + 1, n) if n <= r + 1 else 0 for n in range(N + 1)], N)
        assert cat.y_coefficient(r) == expected
    # A={1}: (1 + y e^{x(1+y)}) / (1 - y^2 e^{x(1+y)})
    e = _closed(lambda n, r: comb(n, r), N, R)
    one = _closed(lambda n, r: 1 if (n, r) == (0, 0) else 0, N, R)
    lin = A_from_S(S_series((1,), N, R, t_zero=True))
    assert lin == (one + e.times_y()) / (one - e.times_y().times_y())


@pytest.mark.parametrize("slopes", SUBSETS)
def test_A_from_S_with_t(slopes):
    A = A_from_S(S_series(slopes, 4, 6))
    for r in range(7):
        assert A.y_coefficient(r) == A_r_series(slopes, r, 4)


def test_limit_braid_inner_series():
    res = limit_ratio((0,), 4)
    assert res.ratio == EGF([t_power(comb(n, 2)) for n in range(5)])


@pytest.mark.parametrize("slopes", [s for s in SUBSETS if s])
def test_limit_within_bound(slopes):
    res = limit_ratio(slopes, 4, t_zero=True)
    assert res.stabilized_at <= 4 * spread(slopes) + 1
    signs = [c * (-1) ** n for n, c in enumerate(res.ratio.inverse().numbers())]
    assert all(v >= 0 for v in signs)


def test_catalan_ratio():
    ordinary = [c.constant_term() for c in limit_ratio((-1, 0, 1), 4, True).ratio.ordinary()]
    assert ordinary == [1, 1, -1, 2, -5]
    inv = [c.constant_term() for c in limit_ratio((-1, 0, 1), 4, True).ratio.inverse().ordinary()]
    assert [(-1) ** n * v for n, v in enumerate(inv)] == [1, 1, 2, 5, 14]


@pytest.mark.parametrize(
    "kind, n, expected",
    [("shi", 3, qq * (qq - 3) ** 2), ("linial", 2, qq * (qq - 1)), ("catalan", 2, qq * (qq - 3))],
)
def test_char_via_limit_examples(kind, n, expected):
    assert char_via_limit(kind, n) == expected


def test_signed_counts_examples():
    assert signed_object_counts("shi", 4) == [1, 1, 3, 16, 125]
    assert signed_object_counts("catalan", 3) == [1, 1, 4, 30]
    assert signed_object_counts("linial", 2)[2] == 2


@pytest.mark.parametrize("r, F", [(0, 1), (1, 2), (2, 3), (3, 5), (4, 8), (5, 13), (6, 21)])
def test_fibonacci(r, F):
    assert fibonacci_specialization(r) == F


def test_family_rhs_examples():
    assert family_egf_rhs("braid", 2, 1)[1] == 2
    assert family_egf_rhs("coxeter_b", 3, 1)[1] == tv + 2
    with pytest.raises(BadExponent):
        family_egf_rhs("coxeter_d", 4, 2)
    with pytest.raises(BadExponent):
        family_egf_rhs("threshold", 2, 2)


def test_braid_rhs_q3():
    from tuttearr.pipeline import family_coboundary

    chibar = family_coboundary("braid", 3)
    assert family_egf_rhs("braid", 3, 3)[3] == 3 * chibar.evaluate({"q": 3})


@pytest.mark.parametrize(
    "kind, qs",
    [("braid", [1, 2, 3, 4, 5]), ("threshold", [3, 5, 7]), ("generic_deformation", [2, 3])],
)
def test_verify_family_examples(kind, qs):
    rep = verify_family_egf(kind, qs, 4)
    assert rep.passed and not rep.certified


@pytest.mark.parametrize("kind", ["shi", "catalan"])
def test_verify_esa_examples(kind):
    assert verify_esa(kind, [1, 2, 3, 4], 3).passed
    assert verify_esa("braid", [1], 4).passed


def test_identity_failure_detected(monkeypatch):
    import tuttearr.egf as egf

    monkeypatch.setattr(egf, "family_egf_rhs", lambda kind, q, N: EGF.one(N) * 2)
    with pytest.raises(IdentityFailure):
        egf.verify_family_egf("braid", [1, 2], 2)


def test_semiorder_generating_function():
    N, R = 4, 8
    ex = _closed(lambda n, r: 1 if r == 0 else 0, N, R)
    one = _closed(lambda n, r: 1 if (n, r) == (0, 0) else 0, N, R)
    yy = one.times_y()
    num = one - yy + ex.times_y()
    den = one - yy + yy.times_y() - ex.times_y().times_y()
    assert A_from_S(S_series((-1, 1), N, R, t_zero=True)) == num / den
