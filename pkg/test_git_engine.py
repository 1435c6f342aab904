"""
Tests for Hilbert-Mumford values, semistability, torus orbits, stabilizers
and lambda-minimal representatives.
"""

import pytest

from sgk.errors import DatumInvariantError, FieldMismatchError, NotSemistableError, RankMismatchError
from sgk.fields import RATIONAL, ScalarField, draw_unit, sample_generators
from sgk.git_engine import (
    TorusElement, column_witness, destabilizing_column, hm_pairing, hm_pairing_opposite,
    is_semistable, lambda_minimal_one_line, minimal_representative, minimality_floor_check,
    orbit_normal_form, orbit_solve, peak_hm_values, stabilizer_factors, stabilizer_rows,
    stabilizer_trivial, torus_act, witness_tuple_of,
)
from sgk.lattice_core import Permutation, fundamental_weight
from sgk.peak_recursion import WitnessTuple, random_witness_tuple, witness_tuples
from sgk.schubert_cell import build_datum, make_point, restrict, sample_point


def semistable_sample(datum, field, rng):
    J = random_witness_tuple(datum.q, datum.r, rng)
    return sample_point(datum, field, rng, J.positions())


def random_torus(field, r, rng):
    return TorusElement(field, tuple(draw_unit(rng, field) for _ in range(r)))


def test_peak_hm_values_3_3():
    assert peak_hm_values(build_datum(3, 3)) == (9, 8, 7)
    assert peak_hm_values(build_datum(2, 2)) == (4, 3)


@pytest.mark.parametrize("r", range(1, 7))
@pytest.mark.parametrize("q", range(2, 7))
def test_peak_hm_values_grid(r, q):
    datum = build_datum(r, q)
    assert peak_hm_values(datum) == tuple(datum.n - j for j in range(1, r + 1))


def test_identity_is_unstable_everywhere():
    n, r = 7, 2
    chi = n * fundamental_weight(r, n)
    for j in range(1, n):
        assert hm_pairing(Permutation.identity(n), chi, j) < 0
        assert hm_pairing_opposite(Permutation.identity(n), chi, j) == -hm_pairing(Permutation.identity(n), chi, j)


def test_semistable_example():
    datum = build_datum(3, 3)
    p = make_point(datum, RATIONAL, {(1, 1): 1, (5, 2): 2, (8, 3): -1})
    report = is_semistable(p)
    assert report
    assert report.witnesses == {1: 1, 2: 5, 3: 8}
    assert witness_tuple_of(p) == WitnessTuple(3, (1, 5, 8))


def test_unstable_examples():
    zero = make_point(build_datum(3, 3), RATIONAL)
    report = is_semistable(zero)
    assert not report and report.failing_column == 1
    with pytest.raises(NotSemistableError):
        witness_tuple_of(zero)

    p = make_point(build_datum(3, 3), RATIONAL, {(1, 1): 1, (2, 2): 1})
    assert destabilizing_column(p) == 3
    assert is_semistable(p).to_json()["failing_column"] == 3


def test_r_equals_1_witness():
    p = make_point(build_datum(1, 2), RATIONAL, {(2, 1): 3})
    assert column_witness(p, 1) == 2
    assert is_semistable(p).witnesses == {1: 2}


def test_column_patterns_2_2():
    datum = build_datum(2, 2)
    for mask in range(4):
        values = {}
        if mask & 1:
            values[(2, 1)] = 1
        if mask & 2:
            values[(4, 2)] = 1
        assert bool(is_semistable(make_point(datum, RATIONAL, values))) == (mask == 3)


def test_torus_act_example():
    datum = build_datum(2, 2)
    p = make_point(datum, RATIONAL, {(1, 1): 1, (1, 2): 1, (4, 2): 1})
    moved = torus_act(TorusElement.of(RATIONAL, [2, 3]), p)
    assert moved[(1, 1)] == RATIONAL(2)
    assert moved[(1, 2)] == RATIONAL(6)
    assert moved[(4, 2)] == RATIONAL(3)
    assert torus_act(TorusElement.identity(RATIONAL, 2), p) == p


def test_torus_errors():
    with pytest.raises(DatumInvariantError):
        TorusElement.of(RATIONAL, [2, 0])
    p = make_point(build_datum(2, 2), RATIONAL, {(1, 1): 1})
    with pytest.raises(FieldMismatchError):
        torus_act(TorusElement.of(ScalarField("fp:7"), [1, 2]), p)
    with pytest.raises(RankMismatchError):
        torus_act(TorusElement.of(RATIONAL, [1, 2, 3]), p)


@pytest.mark.parametrize("r,q", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_orbit_solve_recovers_torus_element(r, q):
    datum = build_datum(r, q)
    for rng in sample_generators(7, 100, key=(r, q)):
        a = semistable_sample(datum, RATIONAL, rng)
        t = random_torus(RATIONAL, r, rng)
        match = orbit_solve(a, torus_act(t, a))
        assert match and match.element == t


def test_orbit_solve_over_prime_field():
    field = ScalarField("fp:10007")
    datum = build_datum(3, 3)
    for rng in sample_generators(1, 30):
        a = semistable_sample(datum, field, rng)
        t = random_torus(field, 3, rng)
        assert orbit_solve(a, torus_act(t, a)).element == t


def test_orbit_identity():
    datum = build_datum(2, 3)
    a = semistable_sample(datum, RATIONAL, sample_generators(2, 1)[0])
    assert orbit_solve(a, a).element == TorusElement.identity(RATIONAL, 2)


def test_torus_action_composes():
    datum = build_datum(3, 2)
    for rng in sample_generators(4, 20):
        a = semistable_sample(datum, RATIONAL, rng)
        s, t = random_torus(RATIONAL, 3, rng), random_torus(RATIONAL, 3, rng)
        assert torus_act(s * t, a) == torus_act(s, torus_act(t, a))
        assert orbit_solve(torus_act(t, a), torus_act(s * t, a)).element == s


def test_orbit_rejections():
    datum = build_datum(1, 2)
    a = make_point(datum, RATIONAL, {(1, 1): 1, (2, 1): 1})
    ratio = orbit_solve(a, make_point(datum, RATIONAL, {(1, 1): 1, (2, 1): 2}))
    assert not ratio and ratio.mismatch == "ratio" and ratio.position == (1, 1)
    pattern = orbit_solve(a, make_point(datum, RATIONAL, {(2, 1): 1}))
    assert not pattern and pattern.mismatch == "zero_pattern" and pattern.position == (1, 1)
    with pytest.raises(NotSemistableError):
        orbit_solve(make_point(datum, RATIONAL), a)


def test_normal_form_is_an_orbit_invariant():
    datum = build_datum(3, 2)
    for rng in sample_generators(3, 40):
        p = semistable_sample(datum, RATIONAL, rng)
        normal, t = orbit_normal_form(p)
        assert torus_act(t, p) == normal
        assert all(normal[(i, j)] == RATIONAL.one for j, i in is_semistable(p).witnesses.items())
        moved = torus_act(random_torus(RATIONAL, 3, rng), p)
        assert orbit_normal_form(moved)[0] == normal


@pytest.mark.parametrize("r,q", [(2, 2), (3, 3)])
def test_semistability_is_torus_invariant(r, q):
    datum = build_datum(r, q)
    for rng in sample_generators(9, 50):
        p = sample_point(datum, RATIONAL, rng, box=1)
        moved = torus_act(random_torus(RATIONAL, r, rng), p)
        assert is_semistable(moved).witnesses == is_semistable(p).witnesses
        assert bool(is_semistable(moved)) == bool(is_semistable(p))


def test_restriction_preserves_semistability():
    datum = build_datum(3, 3)
    for rng in sample_generators(4, 50):
        p = semistable_sample(datum, RATIONAL, rng)
        assert is_semistable(restrict(p))


@pytest.mark.parametrize("r,q", [(1, 2), (2, 2), (2, 3), (3, 3)])
def test_stabilizers_trivial(r, q):
    datum = build_datum(r, q)
    for J in witness_tuples(q, r):
        assert stabilizer_trivial(J, datum)


def test_stabilizer_rows_shape():
    datum = build_datum(3, 3)
    J = WitnessTuple(3, (1, 5, 8))
    rows = stabilizer_rows(J, datum)
    assert len(rows) == 9 and all(len(row) == 9 for row in rows)
    assert stabilizer_factors(J, datum) == (1,) * 9
    with pytest.raises(RankMismatchError):
        stabilizer_rows(WitnessTuple(3, (1, 5)), datum)


def test_minimality_floor_identity():
    for r in range(1, 13):
        for q in range(2, 13):
            assert minimality_floor_check(r, q)
    with pytest.raises(DatumInvariantError):
        minimality_floor_check(2, 1)


def test_minimal_representative_examples():
    assert minimal_representative(3, 3, [3, 6, 9]) == (4, 7, 10)
    assert minimal_representative(3, 3, [6]) == (1, 7, 8)
    assert lambda_minimal_one_line(3, 3, 1) == (4, 5, 6)
    assert lambda_minimal_one_line(3, 3, 3) == (1, 2, 10)


@pytest.mark.parametrize("r", range(1, 4))
@pytest.mark.parametrize("q", range(2, 4))
def test_minimal_representatives_match_words(r, q):
    peaks = [j * q for j in range(1, r + 1)]
    assert minimal_representative(r, q, peaks) == build_datum(r, q).one_line
    for j in range(1, r + 1):
        assert minimal_representative(r, q, [j * q]) == lambda_minimal_one_line(r, q, j)
