"""
The minimal Schubert datum w_{r,n} (n = rq+1) and the matrix chart of its Schubert cell.

Points of the cell are stored sparsely as {(i, j): a_ij} over an exact field,
with i in C_j = {1..jq+1} minus {iq+1 : 1 <= i <= j}. The n x r matrix form
(row jq+1 pinned to the unit row e_j, zeros below it) is for I/O only.
"""

import logging
from functools import lru_cache
from itertools import combinations
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    DatumInvariantError, IndexRangeError, MalformedInputError,
    PatternViolationError, RankMismatchError, SgkError,
)
from .fields import BOX, ScalarField, draw
from .lattice_core import (
    Permutation, ReducedWord, WeightVector, inversion_roots, minimal_word,
    root, schubert_one_line, simple_root, word_to_permutation,
)

logger = logging.getLogger(__name__)

Position = Tuple[int, int]


class MinimalSchubertDatum:
    """Combinatorial data of w_{r,n}; build with build_datum"""

    def __init__(self, r: int, q: int, word: ReducedWord, permutation: Permutation,
                 c_sets: Tuple[Tuple[int, ...], ...], betas: Dict[Position, WeightVector]):
        self.r = r
        self.q = q
        self.n = r * q + 1
        self.word = word
        self.permutation = permutation
        self.c_sets = c_sets
        self.betas = betas
        self.positions: Tuple[Position, ...] = tuple((i, j) for j in range(1, r + 1) for i in c_sets[j - 1])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MinimalSchubertDatum) and (other.r, other.q) == (self.r, self.q)

    def __hash__(self) -> int:
        return hash(("MinimalSchubertDatum", self.r, self.q))

    def __repr__(self) -> str:
        return f"MinimalSchubertDatum(r={self.r}, q={self.q})"

    @property
    def one_line(self) -> Tuple[int, ...]:
        return schubert_one_line(self.permutation, self.r)

    @property
    def dimension(self) -> int:
        return len(self.positions)

    @property
    def pinned_rows(self) -> Tuple[int, ...]:
        return tuple(j * self.q + 1 for j in range(1, self.r + 1))

    def c_set(self, j: int) -> Tuple[int, ...]:
        if not 1 <= j <= self.r:
            raise IndexRangeError(f"column {j} out of range 1..{self.r}")
        return self.c_sets[j - 1]

    def check_position(self, i: int, j: int):
        if i not in self.c_set(j):
            raise IndexRangeError(f"row {i} is not in C_{j} for (r,q)=({self.r},{self.q})")

    def smaller(self) -> "MinimalSchubertDatum":
        if self.r < 2:
            raise DatumInvariantError("no smaller datum below r = 1")
        return build_datum(self.r - 1, self.q)


@lru_cache(maxsize=None)
def c_set_formula(j: int, q: int) -> Tuple[int, ...]:
    pinned = {i * q + 1 for i in range(1, j + 1)}
    return tuple(i for i in range(1, j * q + 2) if i not in pinned)


@lru_cache(maxsize=None)
def build_datum(r: int, q: int) -> MinimalSchubertDatum:
    if r < 1:
        raise DatumInvariantError(f"r must be >= 1, got {r}")
    if q < 2:
        raise DatumInvariantError(f"q must be >= 2, got {q}")
    n = r * q + 1
    word = minimal_word(r, q)
    w = word_to_permutation(word)
    c_sets = tuple(c_set_formula(j, q) for j in range(1, r + 1))
    betas: Dict[Position, WeightVector] = {}
    for j in range(1, r + 1):
        for i in c_sets[j - 1]:
            total = WeightVector.zero(n)
            for k in range(i, j * q + 1):
                total = total + simple_root(k, n)
            betas[(i, j)] = total
    datum = MinimalSchubertDatum(r, q, word, w, c_sets, betas)
    _check_datum(datum)
    logger.debug(f"Built datum (r,q)=({r},{q}), n={n}, dim={datum.dimension}")
    return datum


def _check_datum(datum: MinimalSchubertDatum):
    r, q, n = datum.r, datum.q, datum.n
    expected = tuple(j * q + 1 for j in range(1, r + 1))
    if datum.permutation.images[:r] != expected:
        raise DatumInvariantError(f"one-line form {datum.permutation.images[:r]} != {expected}")
    images = datum.permutation.images
    if list(images[:r]) != sorted(images[:r]) or list(images[r:]) != sorted(images[r:]):
        raise DatumInvariantError(f"{images} is not a minimal coset representative")
    if datum.permutation.length() != len(datum.word):
        raise DatumInvariantError("word is not reduced")
    for (i, j), beta in datum.betas.items():
        if beta != root(i, j * q + 1, n):
            raise DatumInvariantError(f"beta_({i},{j}) has wrong support")
    if set(datum.betas.values()) != inversion_roots(datum.permutation):
        raise DatumInvariantError("beta roots differ from the inversion set of w_{r,n}")


def beta(datum: MinimalSchubertDatum, i: int, j: int) -> WeightVector:
    """beta_{i,j} = alpha_i + ... + alpha_{jq}"""
    datum.check_position(i, j)
    return datum.betas[(i, j)]


def commutation_defects(datum: MinimalSchubertDatum) -> List[Tuple[Position, Position]]:
    """Pairs of cell roots whose sum is again a cell root (expected: none)"""
    inversions = set(datum.betas.values())
    defects = []
    for a, b in combinations(datum.positions, 2):
        total = datum.betas[a] + datum.betas[b]
        if total in inversions:
            defects.append((a, b))
    return defects


class CellPoint:
    """Sparse coordinates a_ij of a point u w P/P of the Schubert cell"""

    __slots__ = ("datum", "field", "_entries")

    def __init__(self, datum: MinimalSchubertDatum, field: ScalarField, entries: Mapping[Position, Any]):
        keys = set(entries)
        expected = set(datum.positions)
        if keys != expected:
            extra = sorted(keys - expected)
            missing = sorted(expected - keys)
            raise IndexRangeError(f"cell point keys mismatch: extra {extra}, missing {missing}")
        self.datum = datum
        self.field = field
        self._entries = {pos: entries[pos] for pos in datum.positions}

    @property
    def r(self) -> int:
        return self.datum.r

    @property
    def q(self) -> int:
        return self.datum.q

    def __getitem__(self, pos: Position) -> Any:
        return self._entries[pos]

    def items(self):
        return self._entries.items()

    def column(self, j: int) -> List[Tuple[int, Any]]:
        return [(i, self._entries[(i, j)]) for i in self.datum.c_set(j)]

    def replace(self, updates: Mapping[Position, Any]) -> "CellPoint":
        entries = dict(self._entries)
        for pos, value in updates.items():
            self.datum.check_position(*pos)
            entries[pos] = value
        return CellPoint(self.datum, self.field, entries)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, CellPoint)
            and other.datum == self.datum
            and other.field == self.field
            and other._entries == self._entries
        )

    def __hash__(self) -> int:
        return hash((self.datum, self.field, tuple(self._entries.values())))

    def __repr__(self) -> str:
        body = ", ".join(f"a{i},{j}={self.field.format(v)}" for (i, j), v in self._entries.items())
        return f"CellPoint(r={self.r}, q={self.q}, {self.field.name}: {body})"


def make_point(datum: MinimalSchubertDatum, field: ScalarField, values: Optional[Mapping[Position, Any]] = None) -> CellPoint:
    """Point with the given coordinates (ints or field elements), every other coordinate zero"""
    values = values or {}
    entries = {pos: field.zero for pos in datum.positions}
    for pos, value in values.items():
        datum.check_position(*pos)
        entries[pos] = field(value) if isinstance(value, int) else value
    return CellPoint(datum, field, entries)


def sample_point(
    datum: MinimalSchubertDatum,
    field: ScalarField,
    rng: np.random.Generator,
    nonzero_at: Iterable[Position] = (),
    box: int = BOX,
) -> CellPoint:
    """Box-sampled point whose coordinates at nonzero_at are guaranteed nonzero"""
    forced = set(nonzero_at)
    entries = {pos: draw(rng, field, nonzero=pos in forced, box=box) for pos in datum.positions}
    return CellPoint(datum, field, entries)


def to_matrix(p: CellPoint) -> List[List[Any]]:
    datum, field = p.datum, p.field
    matrix = [[field.zero for _ in range(datum.r)] for _ in range(datum.n)]
    for j in range(1, datum.r + 1):
        matrix[j * datum.q][j - 1] = field.one
    for (i, j), value in p.items():
        matrix[i - 1][j - 1] = value
    return matrix


def from_matrix(datum: MinimalSchubertDatum, field: ScalarField, matrix: Sequence[Sequence[Any]]) -> CellPoint:
    if len(matrix) != datum.n or any(len(row) != datum.r for row in matrix):
        raise RankMismatchError(f"expected a {datum.n}x{datum.r} matrix")
    pinned = {row: k for k, row in enumerate(datum.pinned_rows, start=1)}
    entries: Dict[Position, Any] = {}
    for row in range(1, datum.n + 1):
        for col in range(1, datum.r + 1):
            value = matrix[row - 1][col - 1]
            if row in pinned:
                expected = field.one if pinned[row] == col else field.zero
                if value != expected:
                    raise PatternViolationError(row, col, field.format(value), field.format(expected))
            elif row in datum.c_sets[col - 1]:
                entries[(row, col)] = value
            elif not field.is_zero(value):
                raise PatternViolationError(row, col, field.format(value), "0")
    return CellPoint(datum, field, entries)


def restrict(p: CellPoint) -> CellPoint:
    """u -> u[r-1]: drop column r"""
    if p.r < 2:
        raise DatumInvariantError("cannot restrict a point with r = 1")
    smaller = p.datum.smaller()
    return CellPoint(smaller, p.field, {pos: p[pos] for pos in smaller.positions})


def point_to_json(p: CellPoint) -> Dict[str, Any]:
    return {
        "r": p.r,
        "q": p.q,
        "field": p.field.name,
        "entries": [{"i": i, "j": j, "value": p.field.format(v)} for (i, j), v in p.items()],
    }


def matrix_to_json(p: CellPoint) -> List[List[str]]:
    return [[p.field.format(v) for v in row] for row in to_matrix(p)]


def point_from_json(doc: Mapping[str, Any]) -> CellPoint:
    """Parse CellPoint JSON; accepts "entries" or a row-major "matrix" of strings"""
    try:
        r, q = int(doc["r"]), int(doc["q"])
        field = ScalarField(doc.get("field", "rational"))
        datum = build_datum(r, q)
        if "matrix" in doc and "entries" not in doc:
            matrix = [[field.parse(v) for v in row] for row in doc["matrix"]]
            return from_matrix(datum, field, matrix)
        values = {}
        for item in doc["entries"]:
            pos = (int(item["i"]), int(item["j"]))
            if pos in values:
                raise MalformedInputError(f"duplicate entry {pos}")
            values[pos] = field.parse(item["value"])
    except SgkError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise MalformedInputError(f"malformed cell point document: {e}")
    return make_point(datum, field, values)


__all__ = [
    "Position", "MinimalSchubertDatum", "CellPoint", "build_datum", "c_set_formula", "beta",
    "commutation_defects", "make_point", "sample_point", "to_matrix", "from_matrix", "restrict",
    "point_to_json", "matrix_to_json", "point_from_json",
]
