import pytest
from hypothesis import given
from hypothesis import strategies as st

from ccsp_nets.multiset import EMPTY, Multiset, MultisetUnderflow, product_multiset

small = st.dictionaries(st.sampled_from("abcd"), st.integers(0, 3)).map(Multiset)


def test_zero_counts_are_dropped():
    assert Multiset({"a": 0, "b": 2}) == Multiset(["b", "b"])
    assert len(Multiset({"a": 0})) == 0


def test_size_and_elements():
    m = Multiset({"b": 2, "a": 1})
    assert m.size == 3
    assert list(m.elements()) == ["a", "b", "b"]


def test_difference_underflow():
    with pytest.raises(MultisetUnderflow):
        Multiset("a") - Multiset("aa")


def test_negative_count_rejected():
    with pytest.raises(ValueError):
        Multiset({"a": -1})


def test_product():
    p = product_multiset(Multiset({"x": 2}), Multiset({"y": 1, "z": 1}))
    assert p == Multiset({("x", "y"): 2, ("x", "z"): 2})


def test_sub_multisets_count():
    m = Multiset({"a": 2, "b": 1})
    assert len(list(m.sub_multisets())) == 6
    assert [k for k in m.sub_multisets(size=3)] == [m]


@given(small, small)
def test_sum_then_difference(a, b):
    assert (a + b) - b == a
    assert a <= a + b
    assert (a + b).size == a.size + b.size


@given(small, small)
def test_intersection_is_greatest_lower_bound(a, b):
    c = a & b
    assert c <= a and c <= b
    for k in a.sub_multisets():
        if k <= b:
            assert k <= c


@given(small)
def test_hash_consistent_with_equality(a):
    assert hash(a) == hash(Multiset(dict(a.items())))
    assert a + EMPTY == a
