"""
Invariant monomials in the cell coordinates X_{beta_{i,j}} = a_ij.

M_r raises one Plücker factor along the witness chain to the power n - r,
M'_j is the degree-one factor along the chain starting at column j, and
M_1 = M_r * M'_1 * ... * M'_{r-1} has lambda_{jq}-pairing -(n - j), which
cancels the weight of p_w. Invariance is certified by weight bookkeeping and
checked numerically through evaluation equivariance under the torus.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Tuple

from .errors import FieldMismatchError, IndexRangeError, RankMismatchError
from .git_engine import TorusElement, torus_act
from .lattice_core import WeightVector, apply, fundamental_weight
from .peak_recursion import WitnessTuple, d_index, peak_pairings
from .schubert_cell import CellPoint, MinimalSchubertDatum, Position

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PluckerFactor:
    """One degree-one Plücker factor, a product of X-variables, raised to power"""
    variables: Tuple[Position, ...]
    power: int = 1

    def columns_distinct(self) -> bool:
        columns = [j for _, j in self.variables]
        return len(columns) == len(set(columns))


@dataclass(frozen=True)
class BetaMonomial:
    datum: MinimalSchubertDatum
    factors: Tuple[PluckerFactor, ...]

    @property
    def exponents(self) -> Dict[Position, int]:
        counts: Counter = Counter()
        for factor in self.factors:
            for pos in factor.variables:
                counts[pos] += factor.power
        return {pos: counts[pos] for pos in self.datum.positions if counts[pos]}

    @property
    def declared_degree(self) -> int:
        return sum(factor.power for factor in self.factors)

    def weight(self) -> WeightVector:
        total = WeightVector.zero(self.datum.n)
        for pos, e in self.exponents.items():
            total = total - e * self.datum.betas[pos]
        return total

    def pairings(self) -> Tuple[Fraction, ...]:
        return peak_pairings(self.weight(), self.datum)

    def columns_distinct(self) -> bool:
        return all(factor.columns_distinct() for factor in self.factors)

    def __mul__(self, other: "BetaMonomial") -> "BetaMonomial":
        if other.datum != self.datum:
            raise RankMismatchError("monomials over different data")
        return BetaMonomial(self.datum, self.factors + other.factors)


def _check_tuple(J: WitnessTuple, datum: MinimalSchubertDatum):
    if J.q != datum.q or J.m != datum.r:
        raise RankMismatchError(f"witness tuple {J} does not index (r,q)=({datum.r},{datum.q})")


def chain(J: WitnessTuple, start: int) -> List[int]:
    """k_1 = least k with i_start <= kq, k_{t+1} = least k with i_{k_t - 1} <= kq, down to 1"""
    if not 1 <= start <= J.m:
        raise IndexRangeError(f"chain start {start} out of range 1..{J.m}")
    ks = [d_index(J[start], start, J.q)]
    while ks[-1] > 1:
        column = ks[-1] - 1
        ks.append(d_index(J[column], column, J.q))
    return ks


def chain_variables(J: WitnessTuple, start: int) -> Tuple[Position, ...]:
    """Witness variables in columns {start} and {k_t - 1 : k_t > 1}"""
    columns = [start] + [k - 1 for k in chain(J, start) if k > 1]
    return tuple((J[c], c) for c in columns)


def monomial_Mr(J: WitnessTuple, datum: MinimalSchubertDatum) -> BetaMonomial:
    _check_tuple(J, datum)
    factor = PluckerFactor(chain_variables(J, datum.r), datum.n - datum.r)
    return BetaMonomial(datum, (factor,))


def monomial_Mprime(J: WitnessTuple, j: int, datum: MinimalSchubertDatum) -> BetaMonomial:
    _check_tuple(J, datum)
    if not 1 <= j <= datum.r - 1:
        raise IndexRangeError(f"M'_j needs 1 <= j <= r-1, got j={j} with r={datum.r}")
    return BetaMonomial(datum, (PluckerFactor(chain_variables(J, j), 1),))


def assemble_invariant(J: WitnessTuple, datum: MinimalSchubertDatum) -> BetaMonomial:
    """M_1 = M_r * prod_{j<r} M'_j"""
    result = monomial_Mr(J, datum)
    for j in range(1, datum.r):
        result = result * monomial_Mprime(J, j, datum)
    return result


def evaluate(M: BetaMonomial, p: CellPoint) -> Any:
    if p.datum != M.datum:
        raise RankMismatchError("monomial and point built for different (r,q)")
    return p.field.product([p.field.pow(p[pos], e) for pos, e in M.exponents.items()])


def predicted_character(M: BetaMonomial) -> Tuple[int, ...]:
    """Exponents of t_1..t_r by which M scales under the torus: minus its peak pairings"""
    return tuple(int(-c) for c in M.pairings())


def equivariance_holds(M: BetaMonomial, t: TorusElement, p: CellPoint) -> bool:
    if t.field != p.field:
        raise FieldMismatchError("torus and point over different fields")
    lhs = evaluate(M, torus_act(t, p))
    rhs = t.character(predicted_character(M)) * evaluate(M, p)
    return lhs == rhs


def pw_weight(datum: MinimalSchubertDatum) -> WeightVector:
    """Weight carried by p_w: minus w(n omega_r)"""
    return -apply(datum.permutation, datum.n * fundamental_weight(datum.r, datum.n))


@dataclass(frozen=True)
class InvarianceCertificate:
    tuple_: WitnessTuple
    monomial_pairings: Tuple[Fraction, ...]
    pw_pairings: Tuple[Fraction, ...]

    @property
    def totals(self) -> Tuple[Fraction, ...]:
        return tuple(a + b for a, b in zip(self.monomial_pairings, self.pw_pairings))

    @property
    def holds(self) -> bool:
        return all(total == 0 for total in self.totals)

    def to_json(self) -> Dict[str, Any]:
        return {
            "J": list(self.tuple_.indices),
            "monomial": [str(c) for c in self.monomial_pairings],
            "p_w": [str(c) for c in self.pw_pairings],
            "holds": self.holds,
        }


def invariance_certificate(J: WitnessTuple, datum: MinimalSchubertDatum) -> InvarianceCertificate:
    M = assemble_invariant(J, datum)
    return InvarianceCertificate(J, M.pairings(), peak_pairings(pw_weight(datum), datum))


def monomial_to_json(M: BetaMonomial) -> Dict[str, Any]:
    return {
        "exponents": [{"i": i, "j": j, "e": e} for (i, j), e in M.exponents.items()],
        "degree": M.declared_degree,
        "factors": [
            {"variables": [{"i": i, "j": j} for i, j in f.variables], "power": f.power}
            for f in M.factors
        ],
    }


def exponents_of(doc: Mapping[str, Any]) -> Dict[Position, int]:
    return {(int(item["i"]), int(item["j"])): int(item["e"]) for item in doc["exponents"]}


__all__ = [
    "PluckerFactor", "BetaMonomial", "InvarianceCertificate", "chain", "chain_variables",
    "monomial_Mr", "monomial_Mprime", "assemble_invariant", "evaluate", "predicted_character",
    "equivariance_holds", "pw_weight", "invariance_certificate", "monomial_to_json", "exponents_of",
]
