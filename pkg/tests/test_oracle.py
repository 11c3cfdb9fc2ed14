import pytest

from isoperim import oracle
from isoperim.sets import IntSet, volume


def test_enumerate_small():
    assert set(oracle.enumerate_volume_sets(0)) == {IntSet.of([]), IntSet.of([0])}
    got = set(oracle.enumerate_volume_sets(3))
    assert got == {IntSet.of(s) for s in ([3], [0, 3], [1, 2], [0, 1, 2])}


@pytest.mark.parametrize("n", [1, 10, 33, 60])
def test_enumeration_count_and_volume(n):
    sets = list(oracle.enumerate_volume_sets(n))
    assert len(sets) == len(set(sets)) == 2 * oracle.count_distinct_partitions(n)
    assert all(volume(a) == n for a in sets)


def test_distinct_partition_counts():
    # 1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10
    assert [oracle.count_distinct_partitions(n) for n in range(11)] == [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10]


@pytest.mark.parametrize("n,P,Q", [(0, 0, 0), (1, 1, 2), (2, 2, 4), (3, 2, 3), (4, 4, 6), (7, 6, 7), (8, 7, 7)])
def test_values(n, P, Q):
    assert (oracle.brute_P(n), oracle.brute_Q(n)) == (P, Q)


def test_witnesses():
    assert IntSet.of([0, 1, 2]) in oracle.witnesses_P(3)
    assert IntSet.of([0, 1, 2]) in oracle.witnesses_Q(3)


def test_ceiling():
    with pytest.raises(oracle.CeilingError):
        oracle.brute_P(71)
    with pytest.raises(ValueError):
        oracle.brute_Q(-1)


def test_helper_definitions():
    assert oracle.brute_helper(3, 2, "p") == 2
    assert oracle.brute_helper(10, 3, "p") is None
    assert oracle.brute_helper(5, 5, "sigma") == 10
    assert oracle.brute_helper(0, 7, "q") == 0
