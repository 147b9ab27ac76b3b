from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import FAMILIES, arrangements
from tuttearr.algebra import QT, XY, Poly
from tuttearr.core import Arrangement, Hyperplane
from tuttearr.errors import HypothesisViolated, NotComparable, ResourceLimit
from tuttearr.families import make, slope_deformation
from tuttearr.oracles import (
    coboundary_bruteforce, coboundary_moebius, combinatorial_oracle, deletion_contraction_check,
    expected_characteristic, forest_counts, intersection_poset, moebius, tutte_bruteforce,
)
from tuttearr.pipeline import point_polynomial

q, t = Poly.var("q", QT), Poly.var("t", QT)
x, y = Poly.var("x", XY), Poly.var("y", XY)
qq = Poly.var("q", ("q",))
BRAID3 = q**2 + 3 * q * (t - 1) + 3 * (t - 1) ** 2 + (t - 1) ** 3
ONE = Arrangement(1, (Hyperplane((1,)),))
TWICE = Arrangement(1, (Hyperplane((1,)), Hyperplane((1,))))


@pytest.mark.parametrize("oracle", [coboundary_bruteforce, coboundary_moebius])
@pytest.mark.parametrize(
    "arr, expected",
    [(make("braid", 3), BRAID3), (ONE, q + t - 1), (make("shi", 2), q + 2 * (t - 1)), (Arrangement(3, ()), Poly.const(1, QT))],
)
def test_coboundary_examples(oracle, arr, expected):
    assert oracle(arr) == expected


@pytest.mark.parametrize("arr, expected", [(make("braid", 3), x**2 + x + y), (ONE, x), (TWICE, x + y)])
def test_tutte_examples(arr, expected):
    assert tutte_bruteforce(arr) == expected


def test_bruteforce_cap():
    with pytest.raises(ResourceLimit):
        coboundary_bruteforce(make("catalan", 4), cap=10)


def test_poset_examples():
    P = intersection_poset(make("braid", 3))
    assert len(P) == 5
    top = max(P.flats, key=lambda f: f.rank)
    assert moebius(P, P.bottom, top) == 2
    assert all(moebius(P, f, f) == 1 for f in P.flats)
    S = intersection_poset(make("shi", 2))
    assert len(S) == 3
    atoms = [f for f in S.flats if f.rank == 1]
    assert [moebius(S, S.bottom, a) for a in atoms] == [-1, -1]
    with pytest.raises(NotComparable):
        moebius(S, atoms[0], atoms[1])
    assert len(intersection_poset(Arrangement(2, ()))) == 1


@settings(max_examples=40)
@given(arrangements(max_n=3, max_m=6))
def test_moebius_matches_bruteforce(arr):
    assert coboundary_moebius(arr) == coboundary_bruteforce(arr)


@settings(max_examples=40)
@given(arrangements(max_n=3, max_m=6))
def test_moebius_sums_vanish(arr):
    P = intersection_poset(arr)
    for a in P.flats:
        for b in P.flats:
            if P.leq(a, b) and a != b:
                assert sum(moebius(P, a, z) for z in P.flats if P.leq(a, z) and P.leq(z, b)) == 0


def test_deletion_contraction_examples():
    rep = deletion_contraction_check(make("braid", 3), 0)
    assert rep.passed and rep.lhs == x**2 + x + y
    assert deletion_contraction_check(make("shi", 2), 0).passed
    with pytest.raises(HypothesisViolated):
        deletion_contraction_check(ONE, 0)


@pytest.mark.parametrize("kind", FAMILIES)
@pytest.mark.parametrize("n", [2, 3])
def test_deletion_contraction_families(kind, n):
    arr = make(kind, n)
    for i in range(len(arr)):
        try:
            rep = deletion_contraction_check(arr, i)
        except HypothesisViolated:
            continue
        assert rep.passed, (kind, n, i)


def test_expected_characteristic_examples():
    shi2 = make("shi", 2)
    assert expected_characteristic(shi2, Fraction(1, 2)) == qq**2 - qq
    assert expected_characteristic(shi2, 0) == qq * (qq - 2)
    assert expected_characteristic(shi2, 1) == qq**2


@pytest.mark.parametrize("kind", FAMILIES)
@pytest.mark.parametrize("tv", [Fraction(0), Fraction(1, 2), Fraction(2, 3), Fraction(1)])
def test_expected_characteristic_families(kind, tv):
    for n in (1, 2, 3):
        arr = make(kind, n)
        assert expected_characteristic(arr, tv) == point_polynomial(arr, "brute").evaluate({"t": tv})


def test_combinatorial_examples():
    assert combinatorial_oracle("forests", 3) == q**3 + 3 * q**2 * (t - 1) + 3 * q * (t - 1) ** 2
    assert combinatorial_oracle("all_graphs", 2) == q**2 + q * (t - 1)
    assert combinatorial_oracle("planted_A_graphs", 2, (1,)) == q**2 + q * (t - 1)
    assert forest_counts(4) == [1, 1, 2, 7, 38]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_forests_and_graphs(n):
    assert combinatorial_oracle("forests", n) == point_polynomial(make("generic_deformation", n))
    assert combinatorial_oracle("all_graphs", n) == point_polynomial(make("threshold", n))


def test_threshold_shift_is_n_minus_r():
    # n=2 has rank 1 so the graph sum carries one factor of q; n=3 has full rank and none
    c2 = coboundary_bruteforce(make("threshold", 2))
    assert c2 == q + t - 1
    assert combinatorial_oracle("all_graphs", 2) == q * c2
    assert combinatorial_oracle("all_graphs", 3) == coboundary_bruteforce(make("threshold", 3))
