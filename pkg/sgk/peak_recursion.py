"""
Peak recursion for w_{r,n}: the blocks J_{p,j}, the index d(i,j), the
e-sequences e^0 = j, e^k = d(i_{e^{k-1}}, e^{k-1}) - 1, and the gamma sums
built from them, with the lambda_{lq} pairing tables.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Tuple

import numpy as np

from .errors import DatumInvariantError, IndexRangeError
from .lattice_core import WeightVector, coweight_pair
from .schubert_cell import MinimalSchubertDatum, Position, c_set_formula

logger = logging.getLogger(__name__)

E_CACHE_SIZE = 1 << 16


@dataclass(frozen=True)
class WitnessTuple:
    """J = (i_1, ..., i_m) with i_j in C_j"""
    q: int
    indices: Tuple[int, ...]

    def __post_init__(self):
        for j, i in enumerate(self.indices, start=1):
            if i not in c_set_formula(j, self.q):
                raise IndexRangeError(f"i_{j} = {i} is not in C_{j} for q={self.q}")

    @property
    def m(self) -> int:
        return len(self.indices)

    def __getitem__(self, j: int) -> int:
        if not 1 <= j <= self.m:
            raise IndexRangeError(f"column {j} out of range 1..{self.m}")
        return self.indices[j - 1]

    def prefix(self, j: int) -> "WitnessTuple":
        """J(j) = (i_1, ..., i_j); J(0) is empty"""
        if not 0 <= j <= self.m:
            raise IndexRangeError(f"prefix length {j} out of range 0..{self.m}")
        return WitnessTuple(self.q, self.indices[:j])

    def positions(self) -> Tuple[Position, ...]:
        return tuple((i, j) for j, i in enumerate(self.indices, start=1))

    def __str__(self) -> str:
        return "(" + ",".join(str(i) for i in self.indices) + ")"


@dataclass(frozen=True)
class ESequence:
    values: Tuple[int, ...]

    def __post_init__(self):
        v = self.values
        if not v or v[-1] != 0:
            raise DatumInvariantError(f"e-sequence {v} does not end at 0")
        if any(b >= a for a, b in zip(v, v[1:])):
            raise DatumInvariantError(f"e-sequence {v} is not strictly decreasing")

    @property
    def m(self) -> int:
        """stopping index: e^m = 0"""
        return len(self.values) - 1

    def __iter__(self):
        return iter(self.values)


def block_partition(j: int, q: int) -> Tuple[Tuple[int, ...], ...]:
    """Rows of J_{1,j}, ..., J_{j,j}"""
    if j < 1:
        raise IndexRangeError(f"column {j} must be >= 1")
    blocks = [tuple(range(1, q + 1))]
    for p in range(2, j + 1):
        blocks.append(tuple(range((p - 1) * q + 2, p * q + 1)))
    return tuple(blocks)


def block_sizes(j: int, q: int) -> Tuple[int, ...]:
    return tuple(len(block) for block in block_partition(j, q))


def partition_holds(j: int, q: int) -> bool:
    """J_{p,j} are pairwise disjoint and cover C_j"""
    blocks = block_partition(j, q)
    rows = [i for block in blocks for i in block]
    return len(rows) == len(set(rows)) and set(rows) == set(c_set_formula(j, q))


def d_index(i: int, j: int, q: int) -> int:
    """The unique p with (i, j) in J_{p,j}"""
    if i not in c_set_formula(j, q):
        raise IndexRangeError(f"row {i} is not in C_{j} for q={q}")
    for p, block in enumerate(block_partition(j, q), start=1):
        if i in block:
            return p
    raise DatumInvariantError(f"row {i} of C_{j} lies in no block")


def d_index_closed_form(i: int, q: int) -> int:
    return -(-i // q)


@lru_cache(maxsize=E_CACHE_SIZE)
def _e_values(q: int, indices: Tuple[int, ...], j: int) -> Tuple[int, ...]:
    values = [j]
    e = j
    while e > 0:
        e = d_index(indices[e - 1], e, q) - 1
        values.append(e)
    return tuple(values)


def clear_caches():
    """Drop memoized e-sequences"""
    _e_values.cache_clear()


def e_sequence(J: WitnessTuple, j: int) -> ESequence:
    if not 1 <= j <= J.m:
        raise IndexRangeError(f"column {j} out of range 1..{J.m}")
    return ESequence(_e_values(J.q, J.indices, j))


def e_steps(J: WitnessTuple, j: int) -> Tuple[Position, ...]:
    """Positions (i_{e^k}, e^k) for k = 0..m-1; empty for j = 0"""
    if j == 0:
        return ()
    return tuple((J[e], e) for e in e_sequence(J, j).values[:-1])


def gamma_sum(J: WitnessTuple, j: int, datum: MinimalSchubertDatum) -> WeightVector:
    total = WeightVector.zero(datum.n)
    for pos in e_steps(J, j):
        total = total + datum.betas[pos]
    return total


def peak_pairings(mu: WeightVector, datum: MinimalSchubertDatum) -> Tuple[Fraction, ...]:
    """(<mu, lambda_q>, <mu, lambda_2q>, ..., <mu, lambda_rq>)"""
    return tuple(coweight_pair(mu, l * datum.q) for l in range(1, datum.r + 1))


def beta_peak_indicator(i: int, j: int, l: int, q: int) -> int:
    return 1 if d_index(i, j, q) <= l <= j else 0


def beta_pair_table(datum: MinimalSchubertDatum) -> Dict[Position, Tuple[Fraction, ...]]:
    """<beta_{i,j}, lambda_{lq}> for every cell position, read off as partial sums"""
    return {pos: peak_pairings(datum.betas[pos], datum) for pos in datum.positions}


def beta_pair_mismatches(datum: MinimalSchubertDatum) -> List[Tuple[Position, int]]:
    """Entries where the partial-sum table disagrees with the interval rule d(i,j) <= l <= j"""
    mismatches = []
    for (i, j), row in beta_pair_table(datum).items():
        for l, value in enumerate(row, start=1):
            if value != beta_peak_indicator(i, j, l, datum.q):
                mismatches.append(((i, j), l))
    return mismatches


def gamma_pair_expected(j: int, r: int) -> Tuple[int, ...]:
    return tuple(1 if l <= j else 0 for l in range(1, r + 1))


def witness_tuples(q: int, m: int) -> Iterator[WitnessTuple]:
    """Every J in C_1 x ... x C_m"""
    for indices in product(*(c_set_formula(j, q) for j in range(1, m + 1))):
        yield WitnessTuple(q, indices)


def count_witness_tuples(q: int, m: int) -> int:
    total = 1
    for j in range(1, m + 1):
        total *= len(c_set_formula(j, q))
    return total


def random_witness_tuple(q: int, m: int, rng: np.random.Generator) -> WitnessTuple:
    """Uniform J in C_1 x ... x C_m"""
    indices = []
    for j in range(1, m + 1):
        rows = c_set_formula(j, q)
        indices.append(rows[int(rng.integers(len(rows)))])
    return WitnessTuple(q, tuple(indices))


__all__ = [
    "WitnessTuple", "ESequence", "block_partition", "block_sizes", "partition_holds", "d_index",
    "d_index_closed_form", "e_sequence", "e_steps", "gamma_sum", "peak_pairings", "beta_peak_indicator",
    "beta_pair_table", "beta_pair_mismatches", "gamma_pair_expected", "witness_tuples",
    "count_witness_tuples", "random_witness_tuple", "clear_caches",
]
