import random

import pytest

from semidense import search
from semidense import semigroup as sg
from semidense.errors import OrderTooLarge, SemidenseError


def count(n, dedup="none", jobs=1):
    return sum(1 for _ in search.enumerate_semigroups(n, dedup, jobs))


def test_small_counts():
    assert count(1) == 1
    assert count(2) == 8
    assert count(2, "iso") == 5
    assert count(2, "iso+anti") == 4


def test_brute_filter_agrees_with_enumerator():
    assert search.brute_filter_count(2) == 8
    assert search.brute_filter_count(3) == count(3) == 113


def test_order_three_and_four_counts():
    assert (count(3, "iso"), count(3, "iso+anti")) == (24, 18)
    assert (count(4), count(4, "iso"), count(4, "iso+anti")) == (3492, 188, 126)


@pytest.mark.slow
def test_order_five_counts():
    assert count(5, "iso") == 1915
    assert count(5, "iso+anti") == 1160


def test_every_emitted_table_is_associative():
    for S in search.enumerate_semigroups(3):
        sg.validate_table(3, S.table)


def test_representatives_are_pairwise_non_isomorphic():
    reps = list(search.enumerate_semigroups(3, "iso"))
    for i, S in enumerate(reps):
        for T in reps[i + 1:]:
            assert not sg.brute_isomorphic(S, T)
    labeled = list(search.enumerate_semigroups(3))
    assert all(any(sg.brute_isomorphic(S, R) for R in reps) for S in labeled)


def test_anti_representatives_cover_all_classes():
    reps = list(search.enumerate_semigroups(3, "iso+anti"))
    for S in search.enumerate_semigroups(3, "iso"):
        assert sum(sg.brute_isomorphic(S, R, allow_anti=True) for R in reps) == 1


def test_parallel_enumeration_is_identical():
    assert list(search.enumerate_semigroups(4, "iso", jobs=1)) == list(search.enumerate_semigroups(4, "iso", jobs=4))


def test_errors():
    with pytest.raises(OrderTooLarge):
        list(search.enumerate_semigroups(6))
    with pytest.raises(SemidenseError):
        list(search.enumerate_semigroups(0))
    with pytest.raises(SemidenseError):
        list(search.enumerate_semigroups(2, "bogus"))
    with pytest.raises(OrderTooLarge):
        search.sample_semigroup(40, random.Random(0))


def test_sampler_is_valid_and_seeded():
    for n in [2, 5, 6, 8, 12, 16, 32]:
        a = search.sample_semigroup(n, random.Random(n))
        b = search.sample_semigroup(n, random.Random(n))
        assert a == b and a.order == n
        sg.validate_table(n, a.table)


def test_relabel_gives_isomorphic_table():
    S = search.census(3)[-1]
    T = search.relabel(S, [2, 0, 1])
    assert sg.brute_isomorphic(S, T)
