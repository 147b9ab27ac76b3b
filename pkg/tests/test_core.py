import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import arrangements
from tuttearr.core import (
    Arrangement, Hyperplane, arrangement_rank, contract, delete, is_central, rank,
)
from tuttearr.errors import DegenerateContraction
from tuttearr.families import make
from tuttearr.linalg import bareiss_rank, kernel_basis, rref


def test_hyperplane_normalization():
    h = Hyperplane((-2, 4), -6)
    assert h.normal == (1, -2) and h.offset == 3
    assert Hyperplane((0, 3), 3) == Hyperplane((0, 1), 1)
    with pytest.raises(ValueError):
        Hyperplane((0, 0), 1)


def test_arrangement_dimension_check():
    with pytest.raises(ValueError):
        Arrangement(2, (Hyperplane((1, 0, 0)),))


def test_json_round_trip():
    arr = make("catalan", 3)
    assert Arrangement.from_json(arr.to_json()) == arr


def test_is_central_examples():
    braid3, shi2 = make("braid", 3), make("shi", 2)
    assert is_central(braid3, [])
    assert not is_central(shi2, [0, 1])
    assert is_central(braid3, [0, 1, 2])


def test_rank_examples():
    braid3, shi2 = make("braid", 3), make("shi", 2)
    assert rank(braid3, [0, 1, 2]) == 2
    assert rank(braid3, []) == 0
    assert rank(shi2, [0, 1]) == 1
    assert arrangement_rank(braid3) == 2
    assert arrangement_rank(Arrangement(4, ())) == 0
    assert arrangement_rank(make("coxeter_b", 2)) == 2


def test_delete_examples():
    braid3 = make("braid", 3)
    d = delete(braid3, 0)
    assert d.n == 3 and len(d) == 2
    assert len(delete(Arrangement(1, (Hyperplane((1,)),)), 0)) == 0
    assert delete(make("shi", 2), 1).hyperplanes == (Hyperplane((1, -1), 0),)
    with pytest.raises(IndexError):
        delete(braid3, 3)


def test_contract_examples():
    c = contract(make("braid", 3), 0)
    assert c.n == 2 and len(c) == 2 and c[0] == c[1]
    c = contract(make("shi", 2), 0)
    assert c.n == 1 and len(c) == 0
    with pytest.raises(DegenerateContraction):
        contract(Arrangement(1, (Hyperplane((1,)), Hyperplane((1,)))), 0)


def _brute_rank(arr, sel):
    """max rank over central subsets, straight from the definition"""
    best = 0
    for k in range(len(sel) + 1):
        for sub in itertools.combinations(sel, k):
            if is_central(arr, sub):
                best = max(best, bareiss_rank([arr[i].normal for i in sub]) if sub else 0)
    return best


@given(arrangements(max_n=3, max_m=5))
def test_rank_matches_definition(arr):
    sel = list(range(len(arr)))
    assert rank(arr, sel) == _brute_rank(arr, sel)


@given(arrangements(), st.data())
def test_rank_monotone_and_bounded(arr, data):
    idx = list(range(len(arr)))
    big = data.draw(st.lists(st.sampled_from(idx), unique=True) if idx else st.just([]))
    small = [i for i in big if data.draw(st.booleans())]
    assert rank(arr, small) <= rank(arr, big) <= min(len(big), arr.n)


@given(arrangements(central=True), st.data())
def test_rank_submodular_on_central(arr, data):
    idx = list(range(len(arr)))
    X = set(data.draw(st.lists(st.sampled_from(idx), unique=True) if idx else st.just([])))
    Y = set(data.draw(st.lists(st.sampled_from(idx), unique=True) if idx else st.just([])))
    assert rank(arr, X) + rank(arr, Y) >= rank(arr, X | Y) + rank(arr, X & Y)


@given(arrangements(max_m=6))
def test_centrality_hereditary(arr):
    m = len(arr)
    for k in range(1, m + 1):
        for sel in itertools.combinations(range(m), k):
            if is_central(arr, sel):
                assert all(is_central(arr, sub) for sub in itertools.combinations(sel, k - 1))


@given(arrangements(central=True))
def test_rank_equals_codimension(arr):
    sel = range(len(arr))
    _, free = kernel_basis([h.normal for h in arr], arr.n) if len(arr) else ([], list(range(arr.n)))
    assert rank(arr, sel) == arr.n - len(free)


def test_rref_pivots():
    rows, piv = rref([[2, 4], [1, 2]])
    assert piv == [0] and rows[0] == [1, 2]


@given(arrangements(max_n=4, max_m=6), st.data())
def test_contraction_rank(arr, data):
    if not len(arr):
        return
    i = data.draw(st.integers(0, len(arr) - 1))
    try:
        c = contract(arr, i)
    except DegenerateContraction:
        assert any(j != i and h == arr[i] for j, h in enumerate(arr))
        return
    others = [j for j in range(len(arr)) if j != i]
    best = 1
    for k in range(len(others) + 1):
        for sub in itertools.combinations(others, k):
            if is_central(arr, (i,) + sub):
                best = max(best, rank(arr, (i,) + sub))
    assert arrangement_rank(c) == best - 1
