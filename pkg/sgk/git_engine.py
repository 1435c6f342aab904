"""
Semistability and torus orbits on the cell of X(w_{r,n}) under T_{J_r},
the subtorus generated by lambda_q, lambda_2q, ..., lambda_rq.

Hilbert-Mumford values on the cell are -<w(chi), lambda>; a point is
semistable iff every column of its coordinate matrix has a nonzero free entry.
The torus scales a_ij by the character prod_{l=d(i,j)}^{j} t_l, an
interval-supported unitriangular system, so orbits are decided exactly by
forward substitution through one witness per column.
"""

import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DM
from sympy.polys.matrices.normalforms import invariant_factors

from .errors import DatumInvariantError, FieldMismatchError, NotSemistableError, RankMismatchError
from .fields import ScalarField
from .lattice_core import (
    Permutation, ReducedWord, WeightVector, alpha_coefficients, apply, coweight_pair,
    fundamental_weight, schubert_one_line, simple_root, word_to_permutation,
)
from .peak_recursion import WitnessTuple, d_index
from .schubert_cell import CellPoint, MinimalSchubertDatum, Position

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TorusElement:
    """t = prod_l lambda_{lq}(t_l), components (t_1, ..., t_r)"""
    field: ScalarField
    components: Tuple[Any, ...]

    def __post_init__(self):
        for l, t in enumerate(self.components, start=1):
            if self.field.is_zero(t):
                raise DatumInvariantError(f"torus component t_{l} is zero")

    @classmethod
    def identity(cls, field: ScalarField, r: int) -> "TorusElement":
        return cls(field, (field.one,) * r)

    @classmethod
    def of(cls, field: ScalarField, values: Sequence[int]) -> "TorusElement":
        return cls(field, tuple(field(v) for v in values))

    @property
    def r(self) -> int:
        return len(self.components)

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        if other.field != self.field or other.r != self.r:
            raise FieldMismatchError("torus elements over different fields or ranks")
        return TorusElement(self.field, tuple(a * b for a, b in zip(self.components, other.components)))

    def interval(self, lo: int, hi: int) -> Any:
        """prod_{l=lo}^{hi} t_l (1 when the interval is empty)"""
        return self.field.product(self.components[lo - 1:hi])

    def character(self, exponents: Sequence[int]) -> Any:
        return self.field.product([self.field.pow(t, e) for t, e in zip(self.components, exponents)])

    def format(self) -> List[str]:
        return [self.field.format(t) for t in self.components]


def hm_pairing(w: Permutation, chi: WeightVector, j: int) -> Fraction:
    """mu^{L(chi)}(x, lambda_j) = -<w(chi), lambda_j> for x in the cell B w P/P"""
    return -coweight_pair(apply(w, chi), j)


def hm_pairing_opposite(w: Permutation, chi: WeightVector, j: int) -> Fraction:
    """mu^{L(chi)}(x, -lambda_j) = <w(chi), lambda_j> for x in the opposite cell B^- w P/P"""
    return coweight_pair(apply(w, chi), j)


def peak_hm_values(datum: MinimalSchubertDatum) -> Tuple[Fraction, ...]:
    """hm_pairing(w_{r,n}, n omega_r, lambda_{jq}) for j = 1..r; each equals n - j"""
    chi = datum.n * fundamental_weight(datum.r, datum.n)
    return tuple(hm_pairing(datum.permutation, chi, j * datum.q) for j in range(1, datum.r + 1))


@dataclass
class SemistabilityReport:
    semistable: bool
    witnesses: Dict[int, int] = dc_field(default_factory=dict)
    failing_column: Optional[int] = None

    def __bool__(self) -> bool:
        return self.semistable

    def to_json(self) -> Dict[str, Any]:
        return {
            "semistable": self.semistable,
            "witnesses": [{"j": j, "i": i} for j, i in sorted(self.witnesses.items())],
            "failing_column": self.failing_column,
        }


def column_witness(p: CellPoint, j: int) -> Optional[int]:
    """Largest row i in C_j with a_ij != 0"""
    for i, value in reversed(p.column(j)):
        if not p.field.is_zero(value):
            return i
    return None


def destabilizing_column(p: CellPoint) -> Optional[int]:
    for j in range(1, p.r + 1):
        if column_witness(p, j) is None:
            return j
    return None


def is_semistable(p: CellPoint) -> SemistabilityReport:
    witnesses = {}
    for j in range(1, p.r + 1):
        i = column_witness(p, j)
        if i is None:
            logger.debug(f"Column {j} vanishes, point is unstable")
            return SemistabilityReport(False, witnesses, j)
        witnesses[j] = i
    return SemistabilityReport(True, witnesses)


def witness_tuple_of(p: CellPoint) -> WitnessTuple:
    report = is_semistable(p)
    if not report:
        raise NotSemistableError(report.failing_column)
    return WitnessTuple(p.q, tuple(report.witnesses[j] for j in range(1, p.r + 1)))


def _check_compatible(field: ScalarField, p: CellPoint):
    if field != p.field:
        raise FieldMismatchError(f"torus over {field.name} acting on a point over {p.field.name}")


def torus_act(t: TorusElement, p: CellPoint) -> CellPoint:
    _check_compatible(t.field, p)
    if t.r != p.r:
        raise RankMismatchError(f"torus of rank {t.r} acting on a point with r={p.r}")
    q = p.q
    entries = {(i, j): t.interval(d_index(i, j, q), j) * a for (i, j), a in p.items()}
    return CellPoint(p.datum, p.field, entries)


def _solve_prefixes(field: ScalarField, targets: Sequence[Tuple[int, Any]]) -> TorusElement:
    """Solve prod_{l=d_j}^{j} t_l = c_j for j = 1..r given (d_j, c_j)

    With P_j = t_1 ... t_j this reads P_j = c_j P_{d_j - 1}, and d_j <= j.
    """
    prefixes = [field.one]
    for d, c in targets:
        prefixes.append(c * prefixes[d - 1])
    return TorusElement(field, tuple(prefixes[j] / prefixes[j - 1] for j in range(1, len(prefixes))))


@dataclass
class OrbitMatch:
    element: Optional[TorusElement] = None
    mismatch: Optional[str] = None          # "zero_pattern" or "ratio"
    position: Optional[Position] = None

    def __bool__(self) -> bool:
        return self.element is not None


def orbit_solve(a: CellPoint, b: CellPoint) -> OrbitMatch:
    """Find t with torus_act(t, a) == b, or report why none exists"""
    if a.datum != b.datum:
        raise RankMismatchError(f"points for (r,q)=({a.r},{a.q}) and ({b.r},{b.q})")
    if a.field != b.field:
        raise FieldMismatchError(f"points over {a.field.name} and {b.field.name}")
    for p in (a, b):
        column = destabilizing_column(p)
        if column is not None:
            raise NotSemistableError(column)
    field = a.field
    for pos, value in a.items():
        if field.is_zero(value) != field.is_zero(b[pos]):
            return OrbitMatch(mismatch="zero_pattern", position=pos)

    targets = []
    for j in range(1, a.r + 1):
        i = column_witness(a, j)
        targets.append((d_index(i, j, a.q), b[(i, j)] / a[(i, j)]))
    t = _solve_prefixes(field, targets)

    moved = torus_act(t, a)
    for pos, value in moved.items():
        if value != b[pos]:
            return OrbitMatch(mismatch="ratio", position=pos)
    return OrbitMatch(element=t)


def orbit_normal_form(p: CellPoint) -> Tuple[CellPoint, TorusElement]:
    """Orbit representative with every column witness scaled to 1"""
    column = destabilizing_column(p)
    if column is not None:
        raise NotSemistableError(column)
    targets = []
    for j in range(1, p.r + 1):
        i = column_witness(p, j)
        targets.append((d_index(i, j, p.q), p.field.one / p[(i, j)]))
    t = _solve_prefixes(p.field, targets)
    return torus_act(t, p), t


def stabilizer_rows(J: WitnessTuple, datum: MinimalSchubertDatum) -> List[List[int]]:
    """beta_{i_j,j} and alpha_k (k not a peak) in simple-root coordinates"""
    if J.m != datum.r or J.q != datum.q:
        raise RankMismatchError(f"witness tuple {J} does not index (r,q)=({datum.r},{datum.q})")
    peaks = {l * datum.q for l in range(1, datum.r + 1)}
    rows = [[int(c) for c in alpha_coefficients(datum.betas[pos])] for pos in J.positions()]
    for k in range(1, datum.n):
        if k not in peaks:
            rows.append([int(c) for c in alpha_coefficients(simple_root(k, datum.n))])
    return rows


def stabilizer_factors(J: WitnessTuple, datum: MinimalSchubertDatum) -> Tuple[int, ...]:
    factors = invariant_factors(DM(stabilizer_rows(J, datum), ZZ))
    return tuple(int(f) for f in factors)


def stabilizer_trivial(J: WitnessTuple, datum: MinimalSchubertDatum) -> bool:
    """The rows span the whole root lattice: n-1 invariant factors, all equal to 1"""
    factors = stabilizer_factors(J, datum)
    return len(factors) == datum.n - 1 and all(f == 1 for f in factors)


def minimality_floor_check(r: int, q: int) -> bool:
    """floor(jqr / n) = j - 1 for every 1 <= j <= r"""
    if q < 2:
        raise DatumInvariantError(f"q must be >= 2, got {q}")
    n = r * q + 1
    return all((j * q * r) // n == j - 1 for j in range(1, r + 1))


def lambda_minimal_word(r: int, q: int, j: int) -> ReducedWord:
    """(s_jq ... s_j)(s_{jq+1} ... s_{j+1}) ... (s_{jq+r-j} ... s_r)"""
    if not 1 <= j <= r:
        raise DatumInvariantError(f"peak index {j} out of range 1..{r}")
    letters: List[int] = []
    for k in range(j, r + 1):
        letters.extend(range(j * q + k - j, k - 1, -1))
    return ReducedWord(r * q + 1, tuple(letters))


def _peak_pairing_of_subset(subset: Sequence[int], r: int, n: int, k: int) -> Fraction:
    coords = [Fraction(n - r) if pos in subset else Fraction(-r) for pos in range(1, n + 1)]
    return coweight_pair(WeightVector(n, tuple(coords)), k)


def minimal_representatives(r: int, q: int, peaks: Sequence[int]) -> List[Tuple[int, ...]]:
    """Bruhat-minimal v in W^{S minus alpha_r} with <v(n omega_r), lambda_k> < 0 for every k in peaks"""
    n = r * q + 1
    candidates = [
        subset for subset in combinations(range(1, n + 1), r)
        if all(_peak_pairing_of_subset(subset, r, n, k) < 0 for k in peaks)
    ]

    def below(u: Tuple[int, ...], v: Tuple[int, ...]) -> bool:
        return all(a <= b for a, b in zip(u, v))

    return [v for v in candidates if not any(u != v and below(u, v) for u in candidates)]


def minimal_representative(r: int, q: int, peaks: Sequence[int]) -> Tuple[int, ...]:
    minima = minimal_representatives(r, q, peaks)
    if len(minima) != 1:
        raise DatumInvariantError(f"expected a unique minimal representative, found {minima}")
    return minima[0]


def lambda_minimal_one_line(r: int, q: int, j: int) -> Tuple[int, ...]:
    return schubert_one_line(word_to_permutation(lambda_minimal_word(r, q, j)), r)


__all__ = [
    "TorusElement", "SemistabilityReport", "OrbitMatch", "hm_pairing", "hm_pairing_opposite",
    "peak_hm_values", "column_witness", "destabilizing_column", "is_semistable", "witness_tuple_of",
    "torus_act", "orbit_solve", "orbit_normal_form", "stabilizer_rows", "stabilizer_factors",
    "stabilizer_trivial", "minimality_floor_check", "lambda_minimal_word", "minimal_representatives",
    "minimal_representative", "lambda_minimal_one_line",
]
