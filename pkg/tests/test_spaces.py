"""Finite spaces, bitmask sets, atom-constant functions."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from maxitive.errors import (
    EmptyBlock,
    ExplicitBudgetExceeded,
    OverlappingBlocks,
    UncoveredElement,
)
from maxitive.spaces import (
    INF,
    MeasurableFn,
    MeasurableSet,
    SetFunction,
    as_value,
    build_space,
    close,
    esub,
    set_partitions,
    submasks,
    vclose,
)


def test_build_space_basic(abc):
    assert abc.n_atoms == 3
    assert abc.n_sets == 8
    assert abc.full_mask == 7
    assert abc.atom_labels() == ("a", "b", "c")


def test_build_space_grouped_atoms():
    sp = build_space("abcd", [["a", "b"], ["c"], ["d"]])
    assert sp.n_atoms == 3
    assert sp.atom_labels() == ("a", "c", "d")
    assert sp.atom_members(0) == ("a", "b")


def test_build_space_rejects_bad_partitions():
    with pytest.raises(EmptyBlock):
        build_space("ab", [["a"], [], ["b"]])
    with pytest.raises(OverlappingBlocks):
        build_space("ab", [["a"], ["a", "b"]])
    with pytest.raises(UncoveredElement):
        build_space("abc", [["a"], ["b"]])
    with pytest.raises(OverlappingBlocks):
        # duplicate ground element
        build_space("aab", [["a"], ["b"]])
    with pytest.raises(ValueError):
        build_space("ab", [["a"], ["b"], ["z"]])


def test_set_of_labels_respects_atoms():
    sp = build_space("abcd", [["a", "b"], ["c"], ["d"]])
    s = sp.set_of_labels(["a", "b", "d"])
    assert s.mask == 0b101
    # naming half an atom is an error, not a silent widening
    with pytest.raises(ValueError):
        sp.set_of_labels(["a", "d"])
    with pytest.raises(ValueError):
        sp.set_of_labels(["q"])


def test_set_operations(abc):
    a = abc.set_of_labels(["a"])
    ab = abc.set_of_labels(["a", "b"])
    c = abc.set_of_labels(["c"])
    assert (a | c).mask == 0b101
    assert (ab & a) == a
    assert (ab - a).labels() == ("b",)
    assert (~a).mask == 0b110
    assert a <= ab
    assert not ab <= a
    assert len(ab) == 2
    assert ab.atom_indices() == (0, 1)
    assert abc.empty().is_empty
    assert abc.full().mask == 7


def test_sets_on_different_spaces_do_not_mix(abc, abcd):
    with pytest.raises(ValueError):
        abc.full() | abcd.full()


MASKS = st.integers(min_value=0, max_value=31)


@settings(deadline=None, max_examples=200)
@given(MASKS, MASKS, MASKS)
def test_set_algebra_laws(x, y, z):
    sp = build_space("pqrst", [["p"], ["q"], ["r"], ["s"], ["t"]])
    a, b, c = (MeasurableSet(sp, m) for m in (x, y, z))
    assert ~(a | b) == (~a) & (~b)
    assert ~(a & b) == (~a) | (~b)
    assert (a | (b & c)) == (a | b) & (a | c)
    assert (a - b) == a & ~b
    assert a | a == a
    if a <= b and b <= a:
        assert a == b


def test_submasks_enumerates_all_subsets():
    got = sorted(submasks(0b1011))
    want = sorted(
        m for m in range(16) if m & ~0b1011 == 0
    )
    assert got == want
    assert list(submasks(0)) == [0]


def test_set_partitions_counts_are_bell_numbers():
    bell = {0: 1, 1: 1, 2: 2, 3: 5, 4: 15, 5: 52}
    for n, count in bell.items():
        parts = list(set_partitions(range(n)))
        assert len(parts) == count
        for part in parts:
            flat = sorted(x for blk in part for x in blk)
            assert flat == list(range(n))


def test_close_and_esub():
    assert close(1.0, 1.0 + 1e-12)
    assert not close(1.0, 1.01)
    assert close(INF, INF)
    assert not close(INF, 1e300)
    assert close(1e6, 1e6 * (1 + 1e-10))
    assert esub(INF, INF) == 0.0
    assert esub(5.0, 2.0) == 3.0
    assert esub(INF, 3.0) == INF
    assert list(vclose([1.0, INF], [1.0 + 1e-12, INF])) == [True, True]
    assert list(vclose([INF], [1e300])) == [False]


def test_as_value_rejects_bad_scalars():
    assert as_value("2.5") == 2.5
    assert as_value(INF) == INF
    with pytest.raises(ValueError):
        as_value(-1.0)
    with pytest.raises(ValueError):
        as_value(float("nan"))


def test_measurable_fn_constructors(abc):
    f = MeasurableFn(abc, [3, 1, 4])
    assert f(0) == 3.0 and f(2) == 4.0
    g = MeasurableFn.from_labels(abc, {"a": 1, "b": 2, "c": 3})
    assert list(g.atom_values) == [1.0, 2.0, 3.0]
    with pytest.raises(ValueError):
        MeasurableFn.from_labels(abc, {"a": 1, "b": 2})
    with pytest.raises(ValueError):
        MeasurableFn(abc, [1, 2])
    with pytest.raises(ValueError):
        MeasurableFn(abc, [1, -2, 3])
    k = MeasurableFn.constant(abc, 7)
    assert set(k.atom_values) == {7.0}


def test_indicator_takes_an_identity(abc):
    b = abc.set_of_labels(["a", "c"])
    ind = MeasurableFn.indicator(abc, b)
    assert list(ind.atom_values) == [1.0, 0.0, 1.0]
    ind_inf = MeasurableFn.indicator(abc, b, one=INF)
    assert list(ind_inf.atom_values) == [INF, 0.0, INF]


def test_level_sets_and_values(abc):
    f = MeasurableFn(abc, [3, 1, 4])
    assert f.level_set(2.5).mask == 0b101
    assert f.level_set(3).mask == 0b100
    assert f.level_set_ge(3).mask == 0b101
    assert f.distinct_values() == [1.0, 3.0, 4.0]
    assert f.distinct_values(abc.set_of_labels(["b"])) == [1.0]
    assert f.min_on(0b101) == 3.0
    assert f.min_on(0) == INF


def test_pointwise(abc):
    f = MeasurableFn(abc, [3, 1, 4])
    g = MeasurableFn(abc, [1, 1, 1])
    s = f.pointwise(lambda a, b: a + b, g)
    assert list(s.atom_values) == [4.0, 2.0, 5.0]
    t = f.pointwise(lambda a: a * 2)
    assert list(t.atom_values) == [6.0, 2.0, 8.0]
    with pytest.raises(ValueError):
        f.pointwise(lambda a, b: a, MeasurableFn(build_space("xy", [["x"], ["y"]]), [1, 1]))


def test_set_function_validation(abc):
    tab = [0.0] * 8
    tab[7] = 1.0
    w = SetFunction(abc, tab)
    assert w(abc.full()) == 1.0
    assert w(0b011) == 0.0
    with pytest.raises(ValueError):
        SetFunction(abc, [1.0] * 8)  # empty set must carry 0
    with pytest.raises(ValueError):
        SetFunction(abc, [0.0] * 7)
    big = build_space([f"g{i}" for i in range(13)], [[f"g{i}"] for i in range(13)])
    with pytest.raises(ExplicitBudgetExceeded):
        SetFunction(big, [0.0] * big.n_sets)


def test_space_equality_and_repr(abc):
    same = build_space("abc", [["a"], ["b"], ["c"]])
    other = build_space("abc", [["a", "b"], ["c"]])
    assert abc == same and hash(abc) == hash(same)
    assert abc != other
    assert "3 atoms" in repr(abc)
    assert "a" in repr(abc.set_of_labels(["a"]))
