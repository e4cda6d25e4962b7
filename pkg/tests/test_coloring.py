import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hjintervals.coloring import (
    T,
    T_plus,
    WeightVector,
    canonical_weights,
    evaluate,
    even_r_coloring,
    load_coloring,
    random_coloring,
    save_coloring,
    symbolic_terms,
    symbolic_tplus,
    table_coloring,
    tplus_coloring,
    tplus_stream,
    tplus_table,
    weight_sum,
)
from hjintervals.words import Word, contract, plus_extend, word_from_index

PAPER_T = (2, -1, 2)
words3 = st.lists(st.integers(1, 3), max_size=30).map(lambda xs: Word(tuple(xs), 3))
weights = st.integers(2, 31).flatmap(
    lambda r: st.tuples(st.integers(0, r - 1), st.integers(0, r - 1), st.integers(0, r - 1)).map(
        lambda t: WeightVector(r, t)
    )
)


def coefficients(fn, w):
    """Recover the linear form in (t1, t2, t3) by probing unit weight vectors."""
    big = 10**9 + 7
    return tuple(fn(w, WeightVector(big, tuple(int(k == j) for k in range(3)))) for j in range(3))


def test_weight_sum_examples():
    assert symbolic_terms("12131") == "t1+t2+t1+t3+t1"
    assert coefficients(weight_sum, "12131") == (3, 1, 1)
    assert weight_sum("12131", WeightVector(5, PAPER_T)) == 2
    assert weight_sum("-", WeightVector(5, PAPER_T)) == 0


def test_weight_sum_rejects_letter_outside_alphabet():
    with pytest.raises(ValueError):
        weight_sum(Word((4,), 4), WeightVector(5, PAPER_T))


def test_T_examples():
    assert coefficients(T, "1111221331") == (3, 1, 1)
    assert coefficients(T, "222") == (0, 1, 0)
    assert T("-", WeightVector(5, PAPER_T)) == 0


def test_T_plus_examples():
    assert symbolic_tplus("11122133") == "t1+t2+t1+t3+t1"
    assert coefficients(T_plus, "11122133") == (3, 1, 1)
    assert coefficients(T_plus, "-") == (1, 0, 0)
    # 12221 -> 121 -> 2 - 1 + 2 = 3 = 0 mod 3
    assert T_plus("222", WeightVector(3, PAPER_T)) == 0


@pytest.mark.parametrize("r, expected", [(3, (2, 2, 2)), (5, (2, 4, 2)), (7, (2, 6, 2))])
def test_canonical_weights(r, expected):
    assert canonical_weights(r).t == expected


@pytest.mark.parametrize("r", [2, 4, 1, 10])
def test_canonical_weights_rejects(r):
    with pytest.raises(ValueError):
        canonical_weights(r)


@pytest.mark.parametrize("r, modulus, t", [(4, 3, (2, 2, 2)), (6, 5, (2, 4, 2))])
def test_even_r_coloring(r, modulus, t):
    spec = even_r_coloring(r, 4)
    assert spec.kind == "tplus" and spec.r == r
    assert spec.weights.r == modulus and spec.weights.t == t
    assert spec.table().max() < modulus


@pytest.mark.parametrize("r", [2, 3, 5])
def test_even_r_coloring_rejects(r):
    with pytest.raises(ValueError):
        even_r_coloring(r, 3)


def test_evaluate_examples(tmp_path):
    spec = tplus_coloring(8, WeightVector(5, (2, 4, 2)))
    assert evaluate(spec, "11122133") == 2
    assert evaluate(table_coloring(2, 2, 2, [0, 1, 0, 1]), Word.parse("12", 2)) == 1
    rnd = random_coloring(3, 6, 4, seed=11)
    assert evaluate(rnd, "123123") == evaluate(rnd, "123123")


def test_evaluate_dimension_mismatch():
    spec = tplus_coloring(3, canonical_weights(3))
    with pytest.raises(ValueError):
        evaluate(spec, "1111")


def test_random_coloring_reproducible_and_in_range():
    a = random_coloring(3, 7, 5, seed=3)
    b = random_coloring(3, 7, 5, seed=3)
    ta = a.table()
    assert np.array_equal(ta, b.table())
    assert ta.min() >= 0 and ta.max() < 5
    assert len(set(ta.tolist())) == 5
    for k in (0, 17, 2186):
        assert evaluate(a, word_from_index(k, 3, 7)) == ta[k]
    assert not np.array_equal(ta, random_coloring(3, 7, 5, seed=4).table())


def test_tplus_table_matches_definition_chain():
    rng = random.Random(1)
    for n in range(0, 7):
        for _ in range(3):
            r = rng.randint(2, 31)
            wv = WeightVector(r, tuple(rng.randrange(r) for _ in range(3)))
            table = tplus_table(n, wv)
            expected = [T(plus_extend(word_from_index(k, 3, n)), wv) for k in range(3**n)]
            assert table.tolist() == expected


def test_tplus_table_chunked_slices():
    wv = canonical_weights(7)
    full = tplus_table(6, wv)
    assert np.array_equal(tplus_table(6, wv, 100, 400), full[100:400])


@given(words3, weights)
def test_stream_matches_chain(w, wv):
    assert tplus_stream(w.letters, wv) == weight_sum(contract(plus_extend(w)), wv)


@given(words3, words3, weights)
def test_weight_sum_additive(u, v, wv):
    assert weight_sum(u + v, wv) == (weight_sum(u, wv) + weight_sum(v, wv)) % wv.r


@given(words3, weights, st.data())
def test_tplus_invariant_under_letter_duplication(w, wv, data):
    letters = list(w.letters)
    dup = []
    for a in letters:
        dup.extend([a] * data.draw(st.integers(1, 3)))
    w2 = Word(tuple(dup), 3)
    assert contract(plus_extend(w)) == contract(plus_extend(w2))
    assert T_plus(w, wv) == T_plus(w2, wv)


@given(words3, weights)
def test_outputs_are_residues(w, wv):
    assert 0 <= T_plus(w, wv) < wv.r


def test_file_round_trip(tmp_path):
    spec = random_coloring(3, 4, 3, seed=9)
    path = tmp_path / "c.txt"
    save_coloring(spec, path)
    assert path.read_text().splitlines()[0] == "hjcolor 1 m=3 n=4 r=3"
    loaded = load_coloring(path)
    assert (loaded.m, loaded.n, loaded.r) == (3, 4, 3)
    assert np.array_equal(loaded.table(), spec.table())


@pytest.mark.parametrize(
    "text",
    [
        "hjcolor 1 m=2 n=2 r=2\n0 1 0\n",  # short
        "hjcolor 1 m=2 n=2 r=2\n0 1 0 1 1\n",  # long
        "hjcolor 1 m=2 n=2 r=2\n0 1 0 2\n",  # out of range
        "hjcolor 1 m=2 n=2 r=2\n0 1 0 x\n",
        "hjcolour 1 m=2 n=2 r=2\n0 1 0 1\n",
        "hjcolor 1 m=2 n=2\n0 1 0 1\n",
    ],
)
def test_file_parser_rejects(tmp_path, text):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    with pytest.raises(ValueError):
        load_coloring(path)
