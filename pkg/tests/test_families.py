import itertools

import pytest

from tuttearr.core import Arrangement, Hyperplane, arrangement_rank, is_central
from tuttearr.errors import UnsupportedKind
from tuttearr.families import (
    SLOPES, SimpleGraph, expected_count, generic_deformation, graphical, make, slope_deformation,
)

COUNTED = ("braid", "coxeter_b", "coxeter_d", "threshold", "shi", "linial", "semiorder", "catalan", "generic_deformation")


@pytest.mark.parametrize("kind", COUNTED)
@pytest.mark.parametrize("n", range(1, 7))
def test_counts(kind, n):
    assert len(make(kind, n)) == expected_count(kind, n)


def test_examples():
    assert make("shi", 2).hyperplanes == (Hyperplane((1, -1), 0), Hyperplane((1, -1), 1))
    assert make("coxeter_b", 2).hyperplanes == (
        Hyperplane((1, -1)), Hyperplane((1, 1)), Hyperplane((1, 0)), Hyperplane((0, 1)),
    )
    assert len(make("catalan", 2)) == 3
    assert make("coxeter_d", 1) == Arrangement(1, ())
    assert make("braid", 0) == Arrangement(0, ())


def test_unsupported():
    for kind in ("graphical", "slope_deformation", "nope"):
        with pytest.raises(UnsupportedKind):
            make(kind, 3)


@pytest.mark.parametrize("kind", sorted(SLOPES))
@pytest.mark.parametrize("n", range(1, 6))
def test_slope_deformation_agrees_with_make(kind, n):
    assert slope_deformation(n, SLOPES[kind]) == make(kind, n)


def test_slope_examples():
    assert slope_deformation(2, {0}) == make("braid", 2)
    assert slope_deformation(2, {-1, 0, 1}) == make("catalan", 2)
    assert len(slope_deformation(3, {1})) == 3


def test_lex_order():
    arr = make("catalan", 3)
    keys = [(h.normal, h.offset) for h in arr]
    pairs = [(next(i for i, a in enumerate(nm) if a), next(i for i, a in enumerate(nm) if a < 0), off) for nm, off in keys]
    assert pairs == sorted(pairs)


@pytest.mark.parametrize("n", range(2, 6))
def test_ranks(n):
    for kind in SLOPES:
        assert arrangement_rank(make(kind, n)) == n - 1
    assert arrangement_rank(make("coxeter_b", n)) == n
    assert arrangement_rank(make("coxeter_d", n)) == n
    assert arrangement_rank(make("threshold", n)) == (1 if n == 2 else n)


def test_generic_offsets():
    assert generic_deformation(2).hyperplanes == (Hyperplane((1, -1), 1),)
    assert [h.offset for h in generic_deformation(3)] == [1, 2, 4]
    assert not is_central(generic_deformation(3), [0, 1, 2])
    with pytest.raises(ValueError):
        generic_deformation(9)


def _is_forest(n, edges):
    parent = list(range(n + 1))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for i, j in edges:
        a, b = find(i), find(j)
        if a == b:
            return False
        parent[a] = b
    return True


@pytest.mark.parametrize("n", range(2, 6))
def test_generic_central_iff_forest(n):
    arr = generic_deformation(n)
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for k in range(len(pairs) + 1):
        for sel in itertools.combinations(range(len(pairs)), k):
            assert is_central(arr, sel) == _is_forest(n, [pairs[i] for i in sel])


def test_graphical():
    assert graphical(SimpleGraph.complete(3)) == make("braid", 3)
    assert graphical(SimpleGraph(2, ((1, 2),))) == make("braid", 2)
    path = graphical(SimpleGraph.parse("1-2,2-3"))
    assert len(path) == 2 and arrangement_rank(path) == 2
    g = SimpleGraph.parse("1-2,3-4,4-5", n=6)
    assert g.components() == 3 and arrangement_rank(graphical(g)) == 6 - 3
    with pytest.raises(ValueError):
        SimpleGraph(2, ((1, 1),))
