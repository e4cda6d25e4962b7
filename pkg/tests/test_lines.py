import itertools
import math

import pytest
from hypothesis import given, strategies as st

from hjintervals.lines import (
    LineTemplate,
    chunk_bounds,
    enumerate_templates,
    interval_count,
    intervals,
    line_points,
    substitute,
    template_count,
    template_from_index,
    template_index,
)


def _brute_templates(m, n):
    alphabet = [str(d) for d in range(1, m + 1)] + ["*"]
    return ["".join(s) for s in itertools.product(alphabet, repeat=n) if "*" in s]


@pytest.mark.parametrize(
    "w, S, i, expected",
    [("111", {2}, 2, "121"), ("11122133", set(), 3, "11122133"), ("1313", {1, 2, 3, 4}, 2, "2222")],
)
def test_substitute(w, S, i, expected):
    assert str(substitute(w, S, i)) == expected


def test_substitute_errors():
    with pytest.raises(ValueError):
        substitute("111", {4}, 2)
    with pytest.raises(ValueError):
        substitute("111", {1}, 4)


@pytest.mark.parametrize(
    "tpl, m, expected",
    [("*1*", 3, ["111", "212", "313"]), ("1*", 2, ["11", "12"]), ("**", 3, ["11", "22", "33"])],
)
def test_line_points(tpl, m, expected):
    assert [str(x) for x in line_points(LineTemplate.parse(tpl, m))] == expected


@pytest.mark.parametrize(
    "S, expected", [({2, 3, 4}, 1), ({1, 2, 5, 6, 8}, 3), (set(), 0)]
)
def test_interval_count(S, expected):
    assert interval_count(S, 8) == expected


def test_intervals_runs():
    assert intervals({1, 2, 5, 6, 8}, 8).intervals == ((1, 2), (5, 6), (8, 8))


def test_template_needs_star():
    with pytest.raises(ValueError):
        LineTemplate.parse("123")


@pytest.mark.parametrize("m, n, expected", [(2, 2, 5), (3, 1, 1), (3, 4, 175)])
def test_enumeration_counts(m, n, expected):
    assert len(_brute_templates(m, n)) == expected
    assert sum(1 for _ in enumerate_templates(m, n)) == expected


def test_single_template():
    assert [str(t) for t in enumerate_templates(3, 1)] == ["*"]


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n", range(1, 7))
def test_enumeration_matches_brute_force(m, n):
    got = [str(t) for t in enumerate_templates(m, n)]
    assert got == _brute_templates(m, n)
    assert len(got) == template_count(m, n)
    assert all(t.wildcard_set for t in enumerate_templates(m, n))


@pytest.mark.parametrize("chunks", [1, 2, 3, 7, 50])
def test_chunked_enumeration_same_multiset(chunks):
    m, n = 3, 5
    seq = [str(t) for t in enumerate_templates(m, n)]
    parts = []
    for lo, hi in chunk_bounds((m + 1) ** n, chunks):
        parts.extend(str(t) for t in enumerate_templates(m, n, lo, hi))
    assert sorted(parts) == sorted(seq)
    assert parts == seq


def test_template_index_round_trip():
    for k, t in enumerate(_brute_templates(3, 3)):
        tpl = LineTemplate.parse(t)
        assert str(template_from_index(template_index(tpl), 3, 3)) == t


templates3 = st.lists(st.sampled_from([0, 1, 2, 3]), min_size=1, max_size=20).filter(
    lambda xs: 0 in xs
).map(lambda xs: LineTemplate(tuple(xs), 3))


@given(templates3)
def test_points_distinct_and_agree_off_S(tpl):
    pts = line_points(tpl)
    assert len(set(pts)) == 3
    S = tpl.wildcard_set
    for p in range(1, tpl.n + 1):
        column = {x[p - 1] for x in pts}
        assert column == ({1, 2, 3} if p in S else {tpl.symbols[p - 1]})


@given(st.integers(1, 16).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(1, n)))))
def test_interval_count_bound(case):
    n, S = case
    assert interval_count(S, n) <= math.ceil(n / 2)


@pytest.mark.parametrize("n", range(1, 12))
def test_interval_bound_attained(n):
    assert interval_count(set(range(1, n + 1, 2)), n) == math.ceil(n / 2)
