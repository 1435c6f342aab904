"""
Quotient charts of X(w_{r,n}) // T_{J_r} and their gluing.

A chart is labelled by a witness tuple J for the smaller datum (r-1, q). The
chart map sends x to the base point x[r-1] and the fiber
[ sum_p sum_{k in J_{p,r}} b(J(p-1))(x[r-1]) a_{k,r} e_k ] of P^{r(q-1)}.
On overlaps the fibers differ by the block-diagonal matrix with scalars
b_{J1,J2}(p-1) = b(J1(p-1)) / b(J2(p-1)), which is a cocycle; this is the
splitting E = L_0^q + L_1^{q-1} + ... + L_{r-1}^{q-1} of a generalized Bott tower stage.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Tuple

from sympy.polys.matrices import DomainMatrix

from .errors import (
    DatumInvariantError, FieldMismatchError, MalformedInputError, NotSemistableError,
    OutsideChartError, RankMismatchError, SgkError,
)
from .fields import BOX, ScalarField, sample_generators
from .git_engine import orbit_solve
from .peak_recursion import WitnessTuple, block_partition, block_sizes, d_index, e_steps
from .schubert_cell import (
    CellPoint, build_datum, c_set_formula, point_from_json, point_to_json, restrict, sample_point,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiberVector:
    """Homogeneous coordinates indexed by k in C_r"""
    q: int
    r: int
    field: ScalarField
    components: Tuple[Any, ...]

    def __post_init__(self):
        if len(self.components) != self.r * (self.q - 1) + 1:
            raise RankMismatchError(
                f"fiber over stage {self.r} needs {self.r * (self.q - 1) + 1} components, got {len(self.components)}"
            )

    @property
    def rows(self) -> Tuple[int, ...]:
        return c_set_formula(self.r, self.q)

    def component(self, k: int) -> Any:
        return self.components[self.rows.index(k)]

    def is_zero(self) -> bool:
        return all(self.field.is_zero(c) for c in self.components)

    def projectively_equal(self, other: "FiberVector") -> bool:
        if (other.q, other.r, other.field) != (self.q, self.r, self.field):
            return False
        if self.is_zero() or other.is_zero():
            return False
        pivot = next(k for k, c in enumerate(self.components) if not self.field.is_zero(c))
        a, b = self.components[pivot], other.components[pivot]
        return all(x * b == y * a for x, y in zip(self.components, other.components))

    def format(self) -> List[str]:
        return [self.field.format(c) for c in self.components]


@dataclass(frozen=True)
class ChartPoint:
    label: WitnessTuple
    base: Optional[CellPoint]
    fiber: FiberVector


def _check_label(J: WitnessTuple, y: CellPoint):
    if J.q != y.q or J.m != y.r:
        raise RankMismatchError(f"chart label {J} does not index base (r,q)=({y.r},{y.q})")


def b_value(J: WitnessTuple, j: int, y: Optional[CellPoint]) -> Any:
    """b(J(j))(y) = prod_k X_{beta_{i_{e^k}, e^k}}(y); b(J(0)) = 1"""
    if j == 0:
        if y is None:
            raise DatumInvariantError("b(J(0)) needs a field; pass the base point")
        return y.field.one
    if y is None:
        raise DatumInvariantError(f"b(J({j})) needs a base point")
    _check_label(J, y)
    value = y.field.one
    for pos in e_steps(J, j):
        factor = y[pos]
        if y.field.is_zero(factor):
            raise OutsideChartError(f"base point outside chart {J}", pos)
        value = value * factor
    return value


def transition(J1: WitnessTuple, J2: WitnessTuple, j: int, y: CellPoint) -> Any:
    """b_{J1,J2}(j)(y) = b(J1(j))(y) / b(J2(j))(y)"""
    return b_value(J1, j, y) / b_value(J2, j, y)


def overlap_positions(*labels: WitnessTuple) -> Tuple[Tuple[int, int], ...]:
    seen = []
    for J in labels:
        for pos in J.positions():
            if pos not in seen:
                seen.append(pos)
    return tuple(seen)


@dataclass
class CocycleReport:
    labels: Tuple[WitnessTuple, WitnessTuple, WitnessTuple]
    j: int
    samples: int
    seed: int
    failure: Optional[Dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return self.failure is None

    def to_json(self) -> Dict[str, Any]:
        return {
            "labels": [list(J.indices) for J in self.labels],
            "j": self.j,
            "samples": self.samples,
            "seed": self.seed,
            "status": "pass" if self.passed else "fail",
            "counterexample": self.failure,
        }


def cocycle_check(
    J1: WitnessTuple,
    J2: WitnessTuple,
    J3: WitnessTuple,
    j: int,
    samples: int,
    seed: int,
    field: ScalarField,
    box: int = BOX,
) -> CocycleReport:
    """Cocycle, inverse and identity laws of b_{.,.}(j) on seeded triple-overlap points"""
    if not (J1.q == J2.q == J3.q and J1.m == J2.m == J3.m):
        raise RankMismatchError("chart labels for different data")
    report = CocycleReport((J1, J2, J3), j, samples, seed)
    datum = build_datum(J1.m, J1.q)
    forced = overlap_positions(J1, J2, J3)
    for index, rng in enumerate(sample_generators(seed, samples)):
        y = sample_point(datum, field, rng, forced, box)
        b12, b23, b13 = transition(J1, J2, j, y), transition(J2, J3, j, y), transition(J1, J3, j, y)
        laws = {
            "cocycle": b12 * b23 == b13,
            "inverse": b12 * transition(J2, J1, j, y) == field.one,
            "identity": transition(J1, J1, j, y) == field.one,
        }
        broken = [name for name, ok in laws.items() if not ok]
        if broken:
            report.failure = {"sample": index, "laws": broken, "point": point_to_json(y)}
            logger.warning(f"Cocycle laws {broken} fail for {J1},{J2},{J3} at sample {index}")
            break
    return report


def chart_map(J: WitnessTuple, x: CellPoint) -> ChartPoint:
    """h_J(x) = (x[r-1], [b(J(p-1))(x[r-1]) a_{k,r}]_{k in C_r})"""
    r, q = x.r, x.q
    if r == 1:
        if J.m != 0:
            raise RankMismatchError("stage 1 charts carry the empty label")
        base = None
        components = tuple(a for _, a in x.column(1))
    else:
        base = restrict(x)
        _check_label(J, base)
        components = tuple(b_value(J, d_index(k, r, q) - 1, base) * a for k, a in x.column(r))
    fiber = FiberVector(q, r, x.field, components)
    if fiber.is_zero():
        raise NotSemistableError(r)
    return ChartPoint(J, base, fiber)


def chart_inverse(J: WitnessTuple, base: Optional[CellPoint], fiber: FiberVector) -> CellPoint:
    """Column r entries a_{k,r} = c_k / b(J(p-1))(base)"""
    if fiber.is_zero():
        raise OutsideChartError("zero fiber vector")
    datum = build_datum(fiber.r, fiber.q)
    if fiber.r == 1:
        return CellPoint(datum, fiber.field, {(k, 1): c for k, c in zip(fiber.rows, fiber.components)})
    if base is None or (base.r, base.q) != (fiber.r - 1, fiber.q):
        raise RankMismatchError(f"base point does not sit below stage {fiber.r}")
    if base.field != fiber.field:
        raise FieldMismatchError("base and fiber over different fields")
    entries = dict(base.items())
    for k, c in zip(fiber.rows, fiber.components):
        entries[(k, fiber.r)] = c / b_value(J, d_index(k, fiber.r, fiber.q) - 1, base)
    return CellPoint(datum, fiber.field, entries)


@dataclass(frozen=True)
class BlockScaling:
    """g_{J1,J2}: block p scales the rows of J_{p,r} by b_{J1,J2}(p-1)"""
    q: int
    r: int
    field: ScalarField
    scalars: Tuple[Any, ...]

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        return block_sizes(self.r, self.q)

    @property
    def blocks(self) -> Tuple[Tuple[int, ...], ...]:
        return block_partition(self.r, self.q)

    def diagonal(self) -> List[Any]:
        scale = {}
        for block, scalar in zip(self.blocks, self.scalars):
            for k in block:
                scale[k] = scalar
        return [scale[k] for k in c_set_formula(self.r, self.q)]

    def matrix(self) -> DomainMatrix:
        size = self.r * (self.q - 1) + 1
        return DomainMatrix.diag(self.diagonal(), self.field.domain, (size, size))

    def apply(self, fiber: FiberVector) -> FiberVector:
        if (fiber.q, fiber.r) != (self.q, self.r):
            raise RankMismatchError("block scaling and fiber over different stages")
        column = DomainMatrix([[c] for c in fiber.components], (len(fiber.components), 1), self.field.domain)
        image = self.matrix() * column
        return FiberVector(self.q, self.r, self.field, tuple(row[0] for row in image.to_list()))

    def format(self) -> Dict[str, Any]:
        return {
            "scalars": [self.field.format(s) for s in self.scalars],
            "multiplicities": list(self.multiplicities),
        }


def transition_matrix(J1: WitnessTuple, J2: WitnessTuple, y: CellPoint) -> BlockScaling:
    r = y.r + 1
    scalars = tuple(transition(J1, J2, p - 1, y) for p in range(1, r + 1))
    return BlockScaling(y.q, r, y.field, scalars)


def glue(J1: WitnessTuple, point: ChartPoint) -> ChartPoint:
    """Express a chart point of chart point.label in chart J1"""
    if point.base is None:
        return ChartPoint(J1, None, point.fiber)
    g = transition_matrix(J1, point.label, point.base)
    return ChartPoint(J1, point.base, g.apply(point.fiber))


def same_chart_point(c1: ChartPoint, c2: ChartPoint) -> bool:
    """Equal in U(J) x P^{r(q-1)}: bases in one orbit of the smaller torus, fibers proportional"""
    if c1.label != c2.label:
        raise RankMismatchError("chart points from different charts")
    if (c1.base is None) != (c2.base is None):
        return False
    if c1.base is not None and not orbit_solve(c1.base, c2.base):
        return False
    return c1.fiber.projectively_equal(c2.fiber)


def same_quotient_point(J: WitnessTuple, x1: CellPoint, x2: CellPoint) -> bool:
    return same_chart_point(chart_map(J, x1), chart_map(J, x2))


def tower_dimensions(r: int, q: int) -> List[int]:
    """dim Y_0 = 0, dim Y_k = dim Y_{k-1} + k(q-1)"""
    if r < 1 or q < 2:
        raise DatumInvariantError(f"no tower for (r,q)=({r},{q}); need r >= 1 and q >= 2")
    dims = [0]
    for k in range(1, r + 1):
        dims.append(dims[-1] + k * (q - 1))
    return dims


def tower_dimensions_from_words(r: int, q: int) -> List[int]:
    """l(w_{k,kq+1}) - k: cell dimension minus torus rank"""
    return [0] + [len(build_datum(k, q).word) - k for k in range(1, r + 1)]


@dataclass(frozen=True)
class BottStage:
    """Stage r: P(E) over Y_{r-1} with E = L_0^q + L_1^{q-1} + ... + L_{r-1}^{q-1}, L_0 trivial"""
    r: int
    q: int

    @property
    def line_bundles(self) -> Dict[int, int]:
        """L_j -> multiplicity"""
        return {j: m for j, m in enumerate(block_sizes(self.r, self.q))}

    @property
    def rank(self) -> int:
        return sum(self.line_bundles.values())

    @property
    def fiber_dimension(self) -> int:
        return self.rank - 1

    def to_json(self) -> Dict[str, Any]:
        return {
            "stage": self.r,
            "rank": self.rank,
            "fiber_dimension": self.fiber_dimension,
            "line_bundles": [{"j": j, "multiplicity": m} for j, m in self.line_bundles.items()],
        }


def bott_stage(r: int, q: int) -> BottStage:
    if r < 1 or q < 2:
        raise DatumInvariantError(f"no Bott stage for (r,q)=({r},{q})")
    return BottStage(r, q)


def bott_tower(r: int, q: int) -> List[BottStage]:
    return [bott_stage(k, q) for k in range(1, r + 1)]


def chart_to_json(c: ChartPoint) -> Dict[str, Any]:
    return {
        "J": list(c.label.indices),
        "base": point_to_json(c.base) if c.base is not None else None,
        "fiber": c.fiber.format(),
        "r": c.fiber.r,
        "q": c.fiber.q,
        "field": c.fiber.field.name,
    }


def chart_from_json(doc: Mapping[str, Any]) -> ChartPoint:
    try:
        q, r = int(doc["q"]), int(doc["r"])
        field = ScalarField(doc.get("field", "rational"))
        label = WitnessTuple(q, tuple(int(i) for i in doc["J"]))
        base = point_from_json(doc["base"]) if doc.get("base") is not None else None
        fiber = FiberVector(q, r, field, tuple(field.parse(c) for c in doc["fiber"]))
    except SgkError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise MalformedInputError(f"malformed chart point document: {e}")
    return ChartPoint(label, base, fiber)


__all__ = [
    "FiberVector", "ChartPoint", "CocycleReport", "BlockScaling", "BottStage", "b_value",
    "transition", "overlap_positions", "cocycle_check", "chart_map", "chart_inverse",
    "transition_matrix", "glue", "same_chart_point", "same_quotient_point", "tower_dimensions",
    "tower_dimensions_from_words", "bott_stage", "bott_tower", "chart_to_json", "chart_from_json",
]
