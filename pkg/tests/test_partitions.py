from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from derange.partitions import (
    PartitionData,
    enumerate_gl_class_data,
    enumerate_partitions,
    gl_centralizer_size,
    q_pochhammer,
    subset_sums,
)

PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


@pytest.mark.parametrize("n", range(13))
def test_partition_counts(n):
    assert len(enumerate_partitions(n)) == PARTITION_COUNTS[n]


@given(st.integers(min_value=0, max_value=12))
@settings(max_examples=30, deadline=None)
def test_conjugate_involution(n):
    for p in enumerate_partitions(n):
        assert p.conjugate().conjugate() == p
        assert p.conjugate().size == p.size


def test_conjugate_square_sum():
    # sum of squares of conjugate parts = sum (2i-1) * lambda_i for sorted parts
    p = PartitionData((3, 2, 2, 1))
    expected = sum((2 * i - 1) * part for i, part in enumerate(sorted(p.parts, reverse=True), 1))
    assert p.conjugate_square_sum() == expected


def test_subset_sums():
    assert subset_sums(PartitionData((2, 1))) == {0, 1, 2, 3}
    assert subset_sums(PartitionData((3,))) == {0, 3}


@pytest.mark.parametrize("q", [2, 3, 5])
def test_q_pochhammer(q):
    qq = Fraction(1, q)
    assert q_pochhammer(q, 1) == 1 - qq
    assert q_pochhammer(q, 2) == (1 - qq) * (1 - qq**2)


@pytest.mark.parametrize("n,q", [(1, 2), (2, 2), (2, 3), (3, 2), (3, 3), (4, 2)])
def test_class_mass_sums_to_one(n, q):
    total = sum(
        Fraction(ways, gl_centralizer_size(q, datum))
        for datum, ways in enumerate_gl_class_data(n, q)
    )
    assert total == 1


def test_class_count_gl22():
    # GL(2,2) has 3 conjugacy classes: identity, transvection, order-3
    data = list(enumerate_gl_class_data(2, 2))
    assert sum(ways for _, ways in data) >= 3
    sizes = sorted(
        6 // gl_centralizer_size(2, datum) * ways for datum, ways in data
    )
    assert sum(sizes) == 6
