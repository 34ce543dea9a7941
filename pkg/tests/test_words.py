import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import N2, N23, RP, ZP
from qsemigroup import ideals, words
from qsemigroup.semigroup import SemigroupError
from qsemigroup.words import EPSILON, Word, act, concat, evaluate, word, word_inverse

BOUND = 200


def set_act(sg, w, limit=BOUND):
    """wS as an explicit finite set in [0, limit], letters applied right to left.

    Forward steps drop points above ``limit``, so only the lower part of the
    result is trustworthy; callers compare on [0, limit - drift].
    """
    S = {x for x in range(limit + 1) if sg.in_semigroup(sg.coerce(x))}
    X = set(S)
    for b, e in reversed(w.letters):
        b = b[0] if isinstance(b, tuple) else b
        if e == 1:
            X = {x + b for x in X if x + b <= limit}
        else:
            X = {s for s in S if s + b in X}
    return X


letters_z = st.lists(st.tuples(st.integers(0, 6), st.sampled_from([1, -1])), max_size=6)


def test_concat_and_inverse_examples():
    w = word((ZP.coerce(3), -1), (ZP.coerce(5), 1))
    assert concat(EPSILON, w) == w
    assert concat(word((2, 1)), word((3, -1))).letters == ((2, 1), (3, -1))
    assert len(concat(word((4, -1)), word((4, 1)))) == 2  # free: no cancellation
    assert word_inverse(word((3, -1), (5, 1))).letters == ((5, -1), (3, 1))
    assert word_inverse(EPSILON) == EPSILON
    assert word_inverse(word_inverse(word((4, 1)))) == word((4, 1))


def test_evaluate_examples():
    assert evaluate(ZP, words.parse_word(ZP, "3^-1 5")) == (2,)
    assert evaluate(ZP, EPSILON) == (0,)
    assert evaluate(N23, word((7, 1), (7, -1))) == 0


def test_word_of_group_elem_examples():
    assert words.word_of_group_elem(ZP, (-3,)).letters == (((3,), -1), ((0,), 1))
    assert words.word_of_group_elem(ZP, (2,)).letters == (((2,), 1),)
    assert words.word_of_group_elem(N23, 1).letters == ((2, -1), (3, 1))


def test_act_examples():
    assert act(ZP, words.parse_word(ZP, "3^-1 5")) == ideals.LatticeIdeal((2,))
    X = ideals.principal(N23, 3)
    assert act(N23, EPSILON, X) == X
    Y = act(N23, words.parse_word(N23, "2^-1 3"))
    assert Y == ideals.NumericalIdeal(3, "11")
    assert sorted(ideals.elements_in(Y, range(12))) == list(range(3, 12))


def test_act_half_line_and_lattice():
    w = words.parse_word(RP, "5/2 3/2^-1 1/2")
    assert act(RP, w) == ideals.HalfLineIdeal(Fraction(5, 2))
    w2 = words.parse_word(N2, "(1,0)^-1 (0,1) (2,0)")
    assert act(N2, w2) == ideals.LatticeIdeal((1, 1))


@settings(max_examples=200, deadline=None)
@given(letters_z)
def test_act_matches_set_semantics_on_zplus(letters):
    w = Word(tuple(((b,), e) for b, e in letters))
    X = act(ZP, w)
    ref = set_act(ZP, w)
    cut = BOUND - 40
    assert {x for x in range(cut) if X.contains((x,))} == {x for x in ref if x < cut}


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.sampled_from([0, 2, 3, 4, 5, 6, 7]), st.sampled_from([1, -1])), max_size=6))
def test_act_matches_set_semantics_on_n23(letters):
    w = Word(tuple(letters))
    X = act(N23, w)
    ref = set_act(N23, w)
    cut = BOUND - 50
    assert {x for x in range(cut) if X.contains(x)} == {x for x in ref if x < cut}


def test_normalize_merges_runs(sg):
    rng = random.Random(3)
    for _ in range(100):
        w = words.random_word(sg, rng, 8, 4)
        n = words.normalize(sg, w)
        assert len(n) <= len(w)
        assert evaluate(sg, n) == evaluate(sg, w)
        assert act(sg, n) == words.act_letterwise(sg, w)
        assert all(not sg.is_identity(b) for b, _ in n)


def test_word_text_round_trip(sg):
    rng = random.Random(5)
    for _ in range(50):
        w = words.random_word(sg, rng)
        assert words.parse_word(sg, words.format_word(sg, w)) == w
        assert words.from_json(sg, words.to_json(sg, w)) == w


def test_parse_errors():
    with pytest.raises(SemigroupError):
        words.parse_word(ZP, "3^2")
    with pytest.raises(SemigroupError):
        words.parse_word(N23, "1")
    with pytest.raises(SemigroupError):
        words.parse_word(ZP, "-2")
    with pytest.raises(SemigroupError):
        Word((((1,), 0),))
    assert words.parse_word(ZP, "") == EPSILON
    assert words.parse_word(ZP, "  ") == EPSILON
