"""
Tests for the type-A lattice layer: roots, fundamental weights, coweight pairings,
the Weyl action and inversion sets.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sgk.errors import DatumInvariantError, IndexRangeError, RankMismatchError
from sgk.lattice_core import (
    Permutation, ReducedWord, WeightVector, apply, check_conventions, coweight_pair,
    fundamental_weight, inversion_roots, minimal_word, permutation_length, positive_roots,
    root, simple_root, word_to_permutation,
)


def test_simple_roots():
    assert simple_root(1, 3) == WeightVector.of([1, -1, 0])
    assert simple_root(2, 3) == WeightVector.of([0, 1, -1])


def test_simple_roots_dual_to_coweights():
    n = 6
    for i in range(1, n):
        for j in range(1, n):
            assert coweight_pair(simple_root(i, n), j) == (1 if i == j else 0)


def test_index_errors():
    with pytest.raises(IndexRangeError):
        simple_root(0, 3)
    with pytest.raises(IndexRangeError):
        simple_root(3, 3)
    with pytest.raises(IndexRangeError):
        fundamental_weight(4, 4)
    with pytest.raises(IndexRangeError):
        coweight_pair(simple_root(1, 3), 3)


def test_weights_sum_to_zero():
    with pytest.raises(DatumInvariantError):
        WeightVector.of([1, 1])


def test_fundamental_weights():
    assert fundamental_weight(1, 2) == WeightVector.of([Fraction(1, 2), Fraction(-1, 2)])
    omega = fundamental_weight(3, 10)
    assert omega.coords == (Fraction(7, 10),) * 3 + (Fraction(-3, 10),) * 7
    for j in range(1, 10):
        expected = Fraction(j * 7, 10) if j <= 3 else Fraction(3 * (10 - j), 10)
        assert coweight_pair(omega, j) == expected
    assert coweight_pair(10 * omega, 6) == 12


def test_coweight_pair_examples():
    assert coweight_pair(simple_root(2, 4), 2) == 1
    assert coweight_pair(simple_root(2, 5) + simple_root(3, 5), 4) == 0


def test_roots_pair_integrally():
    n = 6
    for beta in positive_roots(n):
        assert all(coweight_pair(beta, j).denominator == 1 for j in range(1, n))


def test_apply_examples():
    mu = WeightVector.of([3, -1, -2])
    assert apply(Permutation.identity(3), mu) == mu
    assert apply(Permutation((2, 1, 3)), simple_root(1, 3)) == -simple_root(1, 3)
    with pytest.raises(RankMismatchError):
        apply(Permutation.identity(4), mu)


def test_peak_pairings_for_w_3_10():
    w = word_to_permutation(minimal_word(3, 3))
    chi = 10 * fundamental_weight(3, 10)
    assert [coweight_pair(apply(w, chi), j) for j in (3, 6, 9)] == [-9, -8, -7]


def test_word_to_permutation():
    assert word_to_permutation(ReducedWord(4, ())) == Permutation.identity(4)
    assert word_to_permutation(minimal_word(3, 3)).images[:3] == (4, 7, 10)
    assert word_to_permutation(minimal_word(2, 3)).images[:2] == (4, 7)
    assert word_to_permutation(minimal_word(2, 2)) == Permutation((3, 5, 1, 2, 4))
    with pytest.raises(IndexRangeError):
        ReducedWord(3, (3,))
    check_conventions()


def test_inversion_roots():
    assert inversion_roots(Permutation.identity(5)) == set()
    w = word_to_permutation(minimal_word(2, 2))
    expected = {root(1, 3, 5), root(2, 3, 5), root(1, 5, 5), root(2, 5, 5), root(4, 5, 5)}
    assert inversion_roots(w) == expected


@pytest.mark.parametrize("r", range(1, 6))
@pytest.mark.parametrize("q", range(2, 6))
def test_inversion_count_matches_word_length(r, q):
    word = minimal_word(r, q)
    w = word_to_permutation(word)
    size = sum(j * q - j + 1 for j in range(1, r + 1))
    assert len(word) == size
    assert permutation_length(w) == size
    assert len(inversion_roots(w)) == size


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(1, 4), max_size=8),
    st.lists(st.integers(1, 4), max_size=8),
    st.lists(st.integers(-5, 5), min_size=5, max_size=5),
)
def test_apply_is_a_group_action(word1, word2, raw):
    w1 = word_to_permutation(ReducedWord(5, tuple(word1)))
    w2 = word_to_permutation(ReducedWord(5, tuple(word2)))
    mean = Fraction(sum(raw), 5)
    mu = WeightVector.of([Fraction(c) - mean for c in raw])
    assert apply(w1 * w2, mu) == apply(w1, apply(w2, mu))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 5), max_size=10))
def test_inverse_undoes_action(word):
    w = word_to_permutation(ReducedWord(6, tuple(word)))
    assert w * w.inverse() == Permutation.identity(6)
    assert inversion_roots(w.inverse()) == {apply(w.inverse(), -b) for b in inversion_roots(w)}
