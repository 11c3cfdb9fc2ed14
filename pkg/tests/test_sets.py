import pytest
from hypothesis import given, strategies as st

from isoperim.numeric import triangular
from isoperim.sets import (
    IntSet, boundary, complement_perimeter, complement_perimeter_of_elements, perimeter,
    perimeter_of_elements, volume,
)

sets = st.frozensets(st.integers(0, 60), max_size=25).map(IntSet.of)


def test_examples():
    a = IntSet.parse("{0,1,2}")
    assert boundary(a) == IntSet.of([0, 2])
    assert (volume(a), perimeter(a), complement_perimeter(a)) == (3, 2, 3)
    assert boundary(IntSet.of([5])) == IntSet.of([5])
    empty = IntSet.of([])
    assert boundary(empty) == empty
    assert (volume(empty), perimeter(empty), complement_perimeter(empty)) == (0, 0, 0)
    assert complement_perimeter(IntSet.of([1])) == 2


def test_parse_roundtrip():
    a = IntSet.of([3, 0, 7])
    assert IntSet.parse(str(a)) == a
    assert IntSet.parse("{}") == IntSet.of([])
    with pytest.raises(ValueError):
        IntSet.parse("0,1")
    with pytest.raises(ValueError):
        IntSet.of([-1])


@given(st.integers(0, 100), st.integers(0, 100))
def test_interval_volume(l, k):
    l, k = min(l, k), max(l, k)
    assert volume(IntSet.interval(l, k)) == triangular(k) - triangular(l - 1)


@given(sets)
def test_bitmask_matches_lists(a):
    assert perimeter(a) == perimeter_of_elements(a.elements)
    assert complement_perimeter(a) == complement_perimeter_of_elements(a.elements)


@given(sets)
def test_perimeter_bounds(a):
    # the largest element is always on the boundary, and the boundary is a subset
    if a.elements:
        m = a.max
        assert m <= perimeter(a) <= volume(a)
        assert complement_perimeter(a) >= m + 1
    assert set(boundary(a).elements) <= set(a.elements)


@given(sets)
def test_adding_zero_never_hurts(a):
    # 0 adds no volume and can only make 1 interior
    with_zero = IntSet.of(set(a.elements) | {0})
    assert volume(with_zero) == volume(a)
    assert perimeter(with_zero) <= perimeter(a)
