"""
Tests for the block partition, d(i,j), e-sequences and gamma sums
"""

import pytest

from sgk.errors import DatumInvariantError, IndexRangeError
from sgk.fields import sample_generators
from sgk.lattice_core import simple_root
from sgk.peak_recursion import (
    E_CACHE_SIZE, ESequence, WitnessTuple, _e_values, beta_pair_mismatches, beta_pair_table,
    block_partition, block_sizes, clear_caches, count_witness_tuples, d_index, d_index_closed_form,
    e_sequence, e_steps, gamma_pair_expected, gamma_sum, partition_holds, peak_pairings,
    random_witness_tuple, witness_tuples,
)
from sgk.schubert_cell import build_datum, c_set_formula


def test_blocks():
    assert block_partition(2, 3) == ((1, 2, 3), (5, 6))
    assert block_sizes(3, 3) == (3, 2, 2)
    for q in range(2, 6):
        for j in range(1, 6):
            assert partition_holds(j, q)
            assert sum(block_sizes(j, q)) == len(c_set_formula(j, q))


def test_d_index():
    assert d_index(5, 2, 3) == 2
    assert d_index(3, 3, 3) == 1
    assert d_index(9, 3, 3) == 3
    with pytest.raises(IndexRangeError):
        d_index(4, 2, 3)


def test_d_index_closed_form():
    for q in range(2, 6):
        for j in range(1, 6):
            for i in c_set_formula(j, q):
                assert d_index(i, j, q) == d_index_closed_form(i, q)


def test_e_sequence_examples():
    assert e_sequence(WitnessTuple(2, (2, 4)), 2).values == (2, 1, 0)
    assert e_sequence(WitnessTuple(2, (1, 1)), 2).values == (2, 0)
    assert e_sequence(WitnessTuple(2, (2, 4)), 1).values == (1, 0)
    assert e_steps(WitnessTuple(2, (2, 4)), 2) == ((4, 2), (2, 1))
    assert e_steps(WitnessTuple(2, (2, 4)), 0) == ()
    with pytest.raises(IndexRangeError):
        e_sequence(WitnessTuple(2, (2, 4)), 3)


@pytest.mark.parametrize("r,q", [(1, 2), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_e_sequences_terminate(r, q):
    for J in witness_tuples(q, r):
        for j in range(1, r + 1):
            seq = e_sequence(J, j)
            assert seq.values[0] == j and seq.values[-1] == 0
            assert 1 <= seq.m <= j


def test_e_sequence_validation():
    with pytest.raises(DatumInvariantError):
        ESequence((2, 1))
    with pytest.raises(DatumInvariantError):
        ESequence((1, 2, 0))


def test_clear_caches_drops_e_sequences():
    J = WitnessTuple(3, (2, 5, 9))
    before = e_sequence(J, 3)
    assert _e_values.cache_info().currsize > 0
    assert _e_values.cache_info().maxsize == E_CACHE_SIZE
    clear_caches()
    assert _e_values.cache_info().currsize == 0
    assert e_sequence(J, 3) == before


def test_witness_tuple_validation():
    with pytest.raises(IndexRangeError):
        WitnessTuple(2, (3,))
    J = WitnessTuple(3, (2, 5, 9))
    assert J[2] == 5
    assert J.prefix(2) == WitnessTuple(3, (2, 5))
    assert J.prefix(0).m == 0
    assert J.positions() == ((2, 1), (5, 2), (9, 3))


def test_gamma_example():
    datum = build_datum(2, 2)
    J = WitnessTuple(2, (2, 4))
    assert gamma_sum(J, 2, datum) == simple_root(2, 5) + simple_root(4, 5)
    assert peak_pairings(gamma_sum(J, 2, datum), datum) == (1, 1)
    assert gamma_sum(WitnessTuple(2, (1, 1)), 2, datum) == datum.betas[(1, 2)]


@pytest.mark.parametrize("r,q", [(1, 2), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_gamma_pairs_with_the_first_peaks(r, q):
    datum = build_datum(r, q)
    for J in witness_tuples(q, r):
        for j in range(1, r + 1):
            assert peak_pairings(gamma_sum(J, j, datum), datum) == gamma_pair_expected(j, r)


def test_beta_pair_table_examples():
    assert beta_pair_table(build_datum(3, 3))[(5, 2)] == (0, 1, 0)
    assert beta_pair_table(build_datum(2, 2))[(4, 2)] == (0, 1)
    assert beta_pair_table(build_datum(2, 2))[(1, 2)] == (1, 1)


@pytest.mark.parametrize("r", range(1, 5))
@pytest.mark.parametrize("q", range(2, 5))
def test_beta_pairings_follow_interval_rule(r, q):
    assert beta_pair_mismatches(build_datum(r, q)) == []


def test_witness_tuple_counts():
    assert count_witness_tuples(3, 3) == 105
    assert sum(1 for _ in witness_tuples(3, 3)) == 105
    assert count_witness_tuples(2, 2) == 6


def test_random_witness_tuples_are_valid():
    for rng in sample_generators(5, 50):
        J = random_witness_tuple(3, 4, rng)
        assert J.m == 4
        assert all(i in c_set_formula(j, 3) for j, i in enumerate(J.indices, start=1))
