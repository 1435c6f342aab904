"""
Verification suites: every identity the library relies on, checked exactly at
desk scale and reported as JSON records {suite, check, params, status, ...}.

Suites run concurrently on worker threads; records are sorted canonically
before emission so the report only depends on the configuration.
"""

import asyncio
import json
import logging
from dataclasses import dataclass
from datetime import datetime, timezone
from itertools import product
from math import comb
from typing import Any, Callable, Dict, IO, List, Optional, Sequence

import numpy as np

from .bundle_charts import (
    FiberVector, b_value, bott_stage, chart_inverse, chart_map, chart_to_json, cocycle_check,
    glue, same_chart_point, same_quotient_point, tower_dimensions, tower_dimensions_from_words,
    transition, transition_matrix,
)
from .config import SuiteConfig
from .fields import ScalarField, draw, draw_unit, sample_generators
from .git_engine import (
    TorusElement, hm_pairing_opposite, is_semistable, lambda_minimal_one_line, minimal_representative,
    minimality_floor_check, orbit_normal_form, orbit_solve, peak_hm_values, stabilizer_factors,
    torus_act,
)
from .invariant_sections import (
    assemble_invariant, evaluate, equivariance_holds, invariance_certificate, monomial_Mprime,
    monomial_Mr,
)
from .lattice_core import (
    apply, check_conventions, coweight_pair, fundamental_weight, inversion_roots, word_to_permutation,
)
from .peak_recursion import (
    WitnessTuple, beta_pair_mismatches, block_sizes, clear_caches, count_witness_tuples, d_index,
    d_index_closed_form, e_sequence, gamma_pair_expected, gamma_sum, partition_holds,
    peak_pairings, random_witness_tuple, witness_tuples,
)
from .schubert_cell import (
    CellPoint, build_datum, commutation_defects, point_to_json, restrict, sample_point,
)

logger = logging.getLogger(__name__)

SUITE_ORDER = ("lemmas", "orbits", "sections", "charts", "tower")


@dataclass
class CheckRecord:
    suite: str
    check: str
    params: Dict[str, Any]
    status: str                                  # "pass", "fail" or "skip"
    witness: Optional[Any] = None
    counterexample: Optional[Any] = None

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def sort_key(self):
        return (self.suite, self.check, json.dumps(self.params, sort_keys=True))

    def to_json(self) -> Dict[str, Any]:
        doc = {"suite": self.suite, "check": self.check, "params": self.params, "status": self.status}
        if self.witness is not None:
            doc["witness"] = self.witness
        if self.counterexample is not None:
            doc["counterexample"] = self.counterexample
        return doc


class SuiteRun:
    """Collects records for one suite and isolates failing checks"""

    def __init__(self, suite: str, cfg: SuiteConfig):
        self.suite = suite
        self.cfg = cfg
        self.field = cfg.scalar_field
        self.records: List[CheckRecord] = []

    def params(self, **extra) -> Dict[str, Any]:
        base = {"r": self.cfg.r, "q": self.cfg.q}
        base.update(extra)
        return base

    def rngs(self, key: Sequence[int], count: Optional[int] = None) -> List[np.random.Generator]:
        stream = (SUITE_ORDER.index(self.suite),) + tuple(key)
        return sample_generators(self.cfg.seed, count or self.cfg.samples, stream)

    def sampled_params(self, **extra) -> Dict[str, Any]:
        return self.params(samples=self.cfg.samples, seed=self.cfg.seed, field=self.field.name, **extra)

    def check(self, name: str, params: Dict[str, Any], fn: Callable[[], Any]):
        """fn returns (ok, witness, counterexample) or a bare bool"""
        try:
            outcome = fn()
        except Exception as e:
            logger.error(f"[{self.suite}] {name} raised: {e}", exc_info=True)
            outcome = (False, None, {"error": f"{type(e).__name__}: {e}"})
        if outcome is None:
            record = CheckRecord(self.suite, name, params, "skip")
        else:
            ok, witness, counterexample = outcome if isinstance(outcome, tuple) else (outcome, None, None)
            record = CheckRecord(self.suite, name, params, "pass" if ok else "fail", witness,
                                 None if ok else counterexample)
        if record.status == "fail":
            logger.warning(f"[{self.suite}] {name} FAILED {params}: {record.counterexample}")
        else:
            logger.info(f"[{self.suite}] {name} {record.status}")
        self.records.append(record)


def _grid(bound: int, q_min: int = 2):
    return [(r, q) for r in range(1, bound + 1) for q in range(q_min, bound + 1)]


def _first_failure(items, predicate):
    for item in items:
        if not predicate(item):
            return item
    return None


def _semistable_sample(datum, field: ScalarField, rng: np.random.Generator, box: int) -> CellPoint:
    J = random_witness_tuple(datum.q, datum.r, rng)
    return sample_point(datum, field, rng, J.positions(), box)


def _torus_sample(field: ScalarField, r: int, rng: np.random.Generator, box: int) -> TorusElement:
    return TorusElement(field, tuple(draw_unit(rng, field, box) for _ in range(r)))


def _tuples_for(datum, cfg: SuiteConfig, key: Sequence[int], limit: Optional[int] = None) -> List[WitnessTuple]:
    """All witness tuples when few enough, otherwise a seeded sample of them"""
    limit = limit or cfg.grid_bound("tuple_limit", 5000)
    if count_witness_tuples(datum.q, datum.r) <= limit:
        return list(witness_tuples(datum.q, datum.r))
    rng = sample_generators(cfg.seed, 1, key)[0]
    return [random_witness_tuple(datum.q, datum.r, rng) for _ in range(limit)]


# ---------------------------------------------------------------- lemmas

def lemma_suite(cfg: SuiteConfig) -> List[CheckRecord]:
    run = SuiteRun("lemmas", cfg)
    datum = build_datum(cfg.r, cfg.q)
    r, q, n = datum.r, datum.q, datum.n

    def conventions():
        check_conventions()
        return True, {"one_line": list(datum.one_line)}, None
    run.check("conventions", run.params(), conventions)

    def peak_pairing_values():
        chi = n * fundamental_weight(r, n)
        values = [coweight_pair(apply(datum.permutation, chi), i * q) for i in range(1, r + 1)]
        expected = [-(n - i) for i in range(1, r + 1)]
        return values == expected, [str(v) for v in values], {"expected": expected}
    run.check("peak_pairings", run.params(), peak_pairing_values)

    def peak_pairing_grid():
        bound = cfg.grid_bound("pairing_max", 6)
        for rr, qq in _grid(bound):
            d = build_datum(rr, qq)
            chi = d.n * fundamental_weight(rr, d.n)
            for i in range(1, rr + 1):
                if coweight_pair(apply(d.permutation, chi), i * qq) != -(d.n - i):
                    return False, None, {"r": rr, "q": qq, "i": i}
        return True, None, None
    run.check("peak_pairings_grid", {"max": cfg.grid_bound("pairing_max", 6)}, peak_pairing_grid)

    def hm_values():
        values = peak_hm_values(datum)
        chi = n * fundamental_weight(r, n)
        opposite = [hm_pairing_opposite(datum.permutation, chi, j * q) for j in range(1, r + 1)]
        ok = list(values) == [n - j for j in range(1, r + 1)] and opposite == [-(n - j) for j in range(1, r + 1)]
        return ok, {"hm": [str(v) for v in values], "opposite": [str(v) for v in opposite]}, None
    run.check("hm_positivity", run.params(), hm_values)

    def floor_grid():
        bound = cfg.grid_bound("floor_max", 12)
        bad = _first_failure(_grid(bound), lambda rq: minimality_floor_check(*rq))
        return bad is None, None, {"r": bad[0], "q": bad[1]} if bad else None
    run.check("floor_identity", {"max": cfg.grid_bound("floor_max", 12)}, floor_grid)

    def minimality():
        if comb(n, r) > cfg.grid_bound("subset_limit", 200000):
            return None
        for j in range(1, r + 1):
            found = minimal_representative(r, q, [j * q])
            if found != lambda_minimal_one_line(r, q, j):
                return False, None, {"peak": j * q, "found": list(found)}
        found = minimal_representative(r, q, [j * q for j in range(1, r + 1)])
        return found == datum.one_line, {"one_line": list(found)}, {"found": list(found)}
    run.check("minimal_representative", run.params(), minimality)

    def inversion_sets():
        bound = cfg.grid_bound("exhaustive_max", 4)
        for rr, qq in sorted(set(_grid(bound)) | {(r, q)}):
            d = build_datum(rr, qq)
            w = word_to_permutation(d.word)
            inversions = inversion_roots(w)
            size = sum(j * qq - j + 1 for j in range(1, rr + 1))
            if w.images[:rr] != tuple(j * qq + 1 for j in range(1, rr + 1)):
                return False, None, {"r": rr, "q": qq, "one_line": list(w.images[:rr])}
            if inversions != set(d.betas.values()) or len(inversions) != size:
                return False, None, {"r": rr, "q": qq, "size": len(inversions)}
        return True, {"dimension": datum.dimension}, None
    run.check("inversion_set", run.params(max=cfg.grid_bound("exhaustive_max", 4)), inversion_sets)

    def commutation():
        defects = commutation_defects(datum)
        return not defects, None, {"pairs": [list(map(list, pair)) for pair in defects[:5]]}
    run.check("commutation", run.params(), commutation)

    def partition():
        bound = max(cfg.grid_bound("partition_max", 5), r)
        for qq in range(2, max(bound, q) + 1):
            for j in range(1, bound + 1):
                if not partition_holds(j, qq):
                    return False, None, {"q": qq, "j": j}
                for i in build_datum(j, qq).c_set(j):
                    if d_index(i, j, qq) != d_index_closed_form(i, qq):
                        return False, None, {"q": qq, "j": j, "i": i}
        return True, None, None
    run.check("partition", {"max": cfg.grid_bound("partition_max", 5)}, partition)

    def e_sequences():
        bound = cfg.grid_bound("exhaustive_max", 4)
        checked = 0
        for rr, qq in _grid(bound):
            for J in witness_tuples(qq, rr):
                for j in range(1, rr + 1):
                    e_sequence(J, j)
                    checked += 1
        return True, {"sequences": checked}, None
    run.check("e_sequences", {"max": cfg.grid_bound("exhaustive_max", 4)}, e_sequences)

    def beta_pairings():
        bound = cfg.grid_bound("exhaustive_max", 4)
        for rr, qq in sorted(set(_grid(bound)) | {(r, q)}):
            mismatches = beta_pair_mismatches(build_datum(rr, qq))
            if mismatches:
                return False, None, {"r": rr, "q": qq, "entries": [[list(p), l] for p, l in mismatches[:5]]}
        table = {f"{i},{j}": [str(v) for v in peak_pairings(datum.betas[(i, j)], datum)] for i, j in datum.positions}
        return True, table, None
    run.check("beta_pairings", run.params(max=cfg.grid_bound("exhaustive_max", 4)), beta_pairings)

    def gamma_pairings():
        bound = cfg.grid_bound("tuple_max", 3)
        targets = [(rr, qq, None) for rr, qq in _grid(bound)] + [(r, q, _tuples_for(datum, cfg, (0, 1)))]
        for rr, qq, tuples in targets:
            d = build_datum(rr, qq)
            for J in tuples if tuples is not None else witness_tuples(qq, rr):
                for j in range(1, rr + 1):
                    if peak_pairings(gamma_sum(J, j, d), d) != gamma_pair_expected(j, rr):
                        return False, None, {"r": rr, "q": qq, "J": list(J.indices), "j": j}
        return True, {"tuples": count_witness_tuples(q, r)}, None
    run.check("gamma_pairings", run.params(max=cfg.grid_bound("tuple_max", 3)), gamma_pairings)

    def stabilizers():
        bound = cfg.grid_bound("tuple_max", 3)
        targets = [(rr, qq, None) for rr, qq in _grid(bound)] + [(r, q, _tuples_for(datum, cfg, (0, 2), cfg.samples))]
        swept = 0
        for rr, qq, tuples in targets:
            d = build_datum(rr, qq)
            for J in tuples if tuples is not None else witness_tuples(qq, rr):
                factors = stabilizer_factors(J, d)
                swept += 1
                if len(factors) != d.n - 1 or any(f != 1 for f in factors):
                    return False, None, {"r": rr, "q": qq, "J": list(J.indices), "factors": list(factors)}
        return True, {"tuples": swept}, None
    run.check("stabilizer_snf", run.params(max=cfg.grid_bound("tuple_max", 3)), stabilizers)

    def column_patterns():
        rng = run.rngs((3,), 1)[0]
        for pattern in product((False, True), repeat=r):
            forced = [(datum.c_set(j)[int(rng.integers(len(datum.c_set(j))))], j)
                      for j in range(1, r + 1) if pattern[j - 1]]
            p = sample_point(datum, run.field, rng, forced, cfg.box)
            p = p.replace({(i, j): run.field.zero for j in range(1, r + 1) if not pattern[j - 1]
                           for i in datum.c_set(j)})
            if bool(is_semistable(p)) != all(pattern):
                return False, None, {"pattern": list(pattern), "point": point_to_json(p)}
        return True, {"patterns": 2 ** r}, None
    run.check("column_patterns", run.sampled_params(), column_patterns)

    return run.records


# ---------------------------------------------------------------- orbits

def orbit_suite(cfg: SuiteConfig) -> List[CheckRecord]:
    run = SuiteRun("orbits", cfg)
    datum = build_datum(cfg.r, cfg.q)
    field, box, r = run.field, cfg.box, datum.r

    def free_action():
        for index, rng in enumerate(run.rngs((0,))):
            a = _semistable_sample(datum, field, rng, box)
            t = _torus_sample(field, r, rng, box)
            match = orbit_solve(a, torus_act(t, a))
            if not match or match.element != t:
                return False, None, {"sample": index, "point": point_to_json(a), "t": t.format()}
        return True, None, None
    run.check("free_action", run.sampled_params(), free_action)

    def self_orbit():
        for index, rng in enumerate(run.rngs((1,))):
            a = _semistable_sample(datum, field, rng, box)
            match = orbit_solve(a, a)
            if not match or match.element != TorusElement.identity(field, r):
                return False, None, {"sample": index}
        return True, None, None
    run.check("identity_orbit", run.sampled_params(), self_orbit)

    def broken_orbits():
        # rows 1 and 2 of column r share a torus character, so their ratio is an invariant
        pinned = [(1, r), (2, r)]
        for index, rng in enumerate(run.rngs((2,))):
            a = _semistable_sample(datum, field, rng, box).replace({pos: draw_unit(rng, field, box) for pos in pinned})
            b = torus_act(_torus_sample(field, r, rng, box), a)
            ratio_broken = b.replace({(2, r): b[(2, r)] * field(2)})
            pattern_broken = b.replace({(1, r): field.zero})
            m1, m2 = orbit_solve(a, ratio_broken), orbit_solve(a, pattern_broken)
            if m1 or m1.mismatch != "ratio" or m2 or m2.mismatch != "zero_pattern":
                return False, None, {"sample": index, "mismatches": [m1.mismatch, m2.mismatch]}
        return True, None, None
    run.check("orbit_rejection", run.sampled_params(), broken_orbits)

    def invariance():
        for index, rng in enumerate(run.rngs((3,))):
            p = sample_point(datum, field, rng, (), box)
            if rng.integers(2):
                j = int(rng.integers(1, r + 1))
                p = p.replace({(i, j): field.zero for i in datum.c_set(j)})
            moved = torus_act(_torus_sample(field, r, rng, box), p)
            if bool(is_semistable(p)) != bool(is_semistable(moved)):
                return False, None, {"sample": index, "point": point_to_json(p)}
            if any(field.is_zero(v) != field.is_zero(moved[pos]) for pos, v in p.items()):
                return False, None, {"sample": index, "zero_pattern": True}
        return True, None, None
    run.check("semistability_invariance", run.sampled_params(), invariance)

    def restriction():
        if r < 2:
            return None
        for index, rng in enumerate(run.rngs((4,))):
            p = _semistable_sample(datum, field, rng, box)
            if not is_semistable(restrict(p)):
                return False, None, {"sample": index, "point": point_to_json(p)}
        return True, None, None
    run.check("restriction", run.sampled_params(), restriction)

    def normal_forms():
        for index, rng in enumerate(run.rngs((5,))):
            a = _semistable_sample(datum, field, rng, box)
            b = torus_act(_torus_sample(field, r, rng, box), a)
            na, _ = orbit_normal_form(a)
            nb, _ = orbit_normal_form(b)
            report = is_semistable(na)
            if na != nb or any(na[(i, j)] != field.one for j, i in report.witnesses.items()):
                return False, None, {"sample": index, "point": point_to_json(a)}
        return True, None, None
    run.check("normal_form", run.sampled_params(), normal_forms)

    return run.records


# ---------------------------------------------------------------- sections

def section_suite(cfg: SuiteConfig) -> List[CheckRecord]:
    run = SuiteRun("sections", cfg)
    datum = build_datum(cfg.r, cfg.q)
    field, box, r, n = run.field, cfg.box, datum.r, datum.n
    tuples = _tuples_for(datum, cfg, (2, 99))

    def weights():
        for J in tuples:
            mr = monomial_Mr(J, datum)
            if mr.pairings() != tuple(-(n - r) for _ in range(r)) or mr.declared_degree != n - r:
                return False, None, {"J": list(J.indices), "monomial": "M_r"}
            for j in range(1, r):
                mp = monomial_Mprime(J, j, datum)
                if mp.pairings() != tuple(-c for c in gamma_pair_expected(j, r)):
                    return False, None, {"J": list(J.indices), "monomial": f"M'_{j}"}
                if mp.weight() != -gamma_sum(J, j, datum):
                    return False, None, {"J": list(J.indices), "gamma": j}
            m1 = assemble_invariant(J, datum)
            if not m1.columns_distinct() or m1.declared_degree != n - 1:
                return False, None, {"J": list(J.indices), "columns_distinct": m1.columns_distinct()}
        return True, {"tuples": len(tuples)}, None
    run.check("monomial_weights", run.params(), weights)

    def certificates():
        for J in tuples:
            certificate = invariance_certificate(J, datum)
            if not certificate.holds:
                return False, None, certificate.to_json()
        return True, invariance_certificate(tuples[0], datum).to_json(), None
    run.check("invariance_certificate", run.params(), certificates)

    def equivariance():
        for a, J in enumerate(tuples):
            m1 = assemble_invariant(J, datum)
            for index, rng in enumerate(run.rngs((0, a))):
                p = sample_point(datum, field, rng, J.positions(), box)
                t = _torus_sample(field, r, rng, box)
                if field.is_zero(evaluate(m1, p)):
                    return False, None, {"J": list(J.indices), "sample": index, "law": "nonvanishing"}
                if not equivariance_holds(m1, t, p):
                    return False, None, {"J": list(J.indices), "sample": index, "t": t.format()}
        return True, {"character": [n - j for j in range(1, r + 1)]}, None
    run.check("evaluation_equivariance", run.sampled_params(tuples=len(tuples)), equivariance)

    return run.records


# ---------------------------------------------------------------- charts

def chart_suite(cfg: SuiteConfig) -> List[CheckRecord]:
    run = SuiteRun("charts", cfg)
    datum = build_datum(cfg.r, cfg.q)
    field, box, r, q = run.field, cfg.box, datum.r, datum.q
    empty = WitnessTuple(q, ())

    if r == 1:
        def stage_one():
            for index, rng in enumerate(run.rngs((0,))):
                x = _semistable_sample(datum, field, rng, box)
                image = chart_map(empty, x)
                if list(image.fiber.components) != [a for _, a in x.column(1)]:
                    return False, None, {"sample": index}
                if chart_inverse(empty, None, image.fiber) != x:
                    return False, None, {"sample": index, "law": "inverse"}
            return True, {"fiber_dimension": q - 1}, None
        run.check("stage_one_fiber", run.sampled_params(), stage_one)
        return run.records

    base_datum = datum.smaller()

    def chart_sample(rng, *labels: WitnessTuple) -> CellPoint:
        forced = [pos for J in labels for pos in J.positions()]
        forced.append((datum.c_set(r)[int(rng.integers(len(datum.c_set(r))))], r))
        return sample_point(datum, field, rng, forced, box)

    def cocycles():
        rng = run.rngs((0,), 1)[0]
        triples = [tuple(random_witness_tuple(q, r - 1, rng) for _ in range(3)) for _ in range(cfg.triples)]
        checked = 0
        for a, (J1, J2, J3) in enumerate(triples):
            for j in range(r):
                seed = int(np.random.SeedSequence(cfg.seed, spawn_key=(3, 1, a, j)).generate_state(1)[0])
                report = cocycle_check(J1, J2, J3, j, cfg.samples, seed, field, box)
                checked += 1
                if not report.passed:
                    return False, None, report.to_json()
        return True, {"triples": len(triples), "checks": checked}, None
    run.check("cocycle", run.sampled_params(triples=cfg.triples), cocycles)

    def compatibility():
        for index, rng in enumerate(run.rngs((2,))):
            J1, J2 = random_witness_tuple(q, r - 1, rng), random_witness_tuple(q, r - 1, rng)
            x = chart_sample(rng, J1, J2)
            g = transition_matrix(J1, J2, restrict(x))
            if g.multiplicities != block_sizes(r, q) or g.scalars[0] != field.one:
                return False, None, {"sample": index, "blocks": g.format()}
            if g.apply(chart_map(J2, x).fiber) != chart_map(J1, x).fiber:
                return False, None, {"sample": index, "J1": list(J1.indices), "J2": list(J2.indices)}
            if glue(J1, chart_map(J2, x)) != chart_map(J1, x):
                return False, None, {"sample": index, "law": "glue"}
        sizes = block_sizes(r, q)
        return sum(sizes) == r * (q - 1) + 1, {"multiplicities": list(sizes)}, {"multiplicities": list(sizes)}
    run.check("transition_compatibility", run.sampled_params(), compatibility)

    def equivariance():
        for index, rng in enumerate(run.rngs((3,))):
            J1, J2 = random_witness_tuple(q, r - 1, rng), random_witness_tuple(q, r - 1, rng)
            y = sample_point(base_datum, field, rng, J1.positions() + J2.positions(), box)
            t = _torus_sample(field, r - 1, rng, box)
            ty = torus_act(t, y)
            for j in range(r):
                if b_value(J1, j, ty) != t.interval(1, j) * b_value(J1, j, y):
                    return False, None, {"sample": index, "j": j, "law": "b_equivariance"}
                if transition(J1, J2, j, ty) != transition(J1, J2, j, y):
                    return False, None, {"sample": index, "j": j, "law": "orbit_constancy"}
        return True, None, None
    run.check("b_equivariance", run.sampled_params(), equivariance)

    labels = _tuples_for(base_datum, cfg, (3, 6))

    def round_trips():
        for a, J in enumerate(labels):
            for index, rng in enumerate(run.rngs((4, a))):
                base = sample_point(base_datum, field, rng, J.positions(), box)
                components = [draw(rng, field, box=box) for _ in datum.c_set(r)]
                components[int(rng.integers(len(components)))] = draw_unit(rng, field, box)
                fiber = FiberVector(q, r, field, tuple(components))
                image = chart_map(J, chart_inverse(J, base, fiber))
                if image.base != base or not image.fiber.projectively_equal(fiber):
                    return False, None, {"sample": index, "J": list(J.indices), "law": "map_after_inverse"}
                x = chart_sample(rng, J)
                t = _torus_sample(field, r, rng, box)
                moved = chart_map(J, torus_act(t, x))
                recovered = chart_inverse(J, moved.base, moved.fiber)
                if not orbit_solve(recovered, x):
                    return False, None, {"sample": index, "J": list(J.indices), "law": "inverse_after_map"}
                if not same_chart_point(moved, chart_map(J, x)):
                    return False, None, {"sample": index, "law": "torus_invariance", "chart": chart_to_json(moved)}
        return True, {"charts": len(labels)}, None
    run.check("chart_round_trip", run.sampled_params(charts=len(labels)), round_trips)

    def separation():
        for a, J in enumerate(labels):
            for index, rng in enumerate(run.rngs((5, a))):
                x1 = chart_sample(rng, J).replace(
                    {(1, r): draw_unit(rng, field, box), (2, r): draw_unit(rng, field, box)}
                )
                same = torus_act(_torus_sample(field, r, rng, box), x1)
                near = same.replace({(2, r): same[(2, r)] * field(2)})
                other = chart_sample(rng, J)
                for x2 in (same, near, other):
                    if same_quotient_point(J, x1, x2) != bool(orbit_solve(x1, x2)):
                        return False, None, {"sample": index, "J": list(J.indices), "x1": point_to_json(x1)}
                if not same_quotient_point(J, x1, same) or same_quotient_point(J, x1, near):
                    return False, None, {"sample": index, "J": list(J.indices), "law": "constructed_pairs"}
        return True, {"charts": len(labels)}, None
    run.check("quotient_separation", run.sampled_params(charts=len(labels)), separation)

    return run.records


# ---------------------------------------------------------------- tower

def tower_suite(cfg: SuiteConfig) -> List[CheckRecord]:
    run = SuiteRun("tower", cfg)
    r, q = cfg.r, cfg.q

    def dimensions():
        dims = tower_dimensions(r, q)
        stages = [bott_stage(k, q) for k in range(1, r + 1)]
        ok = dims == tower_dimensions_from_words(r, q) and all(
            stage.fiber_dimension == dims[k] - dims[k - 1] == k * (q - 1)
            for k, stage in enumerate(stages, start=1)
        )
        return ok, {"dims": dims, "stages": [s.to_json() for s in stages]}, {"dims": dims}
    run.check("tower_dimensions", run.params(), dimensions)

    def grid():
        bound = cfg.grid_bound("pairing_max", 6)
        for rr, qq in _grid(bound):
            if tower_dimensions(rr, qq) != tower_dimensions_from_words(rr, qq):
                return False, None, {"r": rr, "q": qq}
            if bott_stage(rr, qq).rank != rr * (qq - 1) + 1:
                return False, None, {"r": rr, "q": qq, "rank": bott_stage(rr, qq).rank}
        return True, None, None
    run.check("tower_grid", {"max": cfg.grid_bound("pairing_max", 6)}, grid)

    return run.records


SUITES: Dict[str, Callable[[SuiteConfig], List[CheckRecord]]] = {
    "lemmas": lemma_suite,
    "orbits": orbit_suite,
    "sections": section_suite,
    "charts": chart_suite,
    "tower": tower_suite,
}


async def run_suites(cfg: SuiteConfig) -> List[CheckRecord]:
    names = SUITE_ORDER if cfg.suite == "all" else (cfg.suite,)
    logger.info(f"Running suites {', '.join(names)} for (r,q)=({cfg.r},{cfg.q}) over {cfg.field}")
    clear_caches()
    results = await asyncio.gather(*(asyncio.to_thread(SUITES[name], cfg) for name in names))
    records = [record for batch in results for record in batch]
    return sorted(records, key=CheckRecord.sort_key)


def verify(cfg: SuiteConfig) -> List[CheckRecord]:
    return asyncio.run(run_suites(cfg))


def summarize(records: Sequence[CheckRecord], cfg: SuiteConfig) -> Dict[str, Any]:
    failed = [f"{rec.suite}/{rec.check}" for rec in records if rec.status == "fail"]
    return {
        "summary": True,
        "params": cfg.params(),
        "suite": cfg.suite,
        "checks": len(records),
        "passed": sum(1 for rec in records if rec.status == "pass"),
        "skipped": sum(1 for rec in records if rec.status == "skip"),
        "failed": failed,
        "status": "pass" if not failed else "fail",
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


def write_report(records: Sequence[CheckRecord], summary: Dict[str, Any], stream: IO[str]):
    """JSON lines, one record per check, then the summary"""
    for record in records:
        stream.write(json.dumps(record.to_json(), sort_keys=True) + "\n")
    stream.write(json.dumps(summary, sort_keys=True) + "\n")


def log_report(records: Sequence[CheckRecord], summary: Dict[str, Any], path: str):
    try:
        with open(path, "w") as f:
            write_report(records, summary, f)
        logger.info(f"Verification report written to {path}")
    except OSError as e:
        logger.error(f"Failed to write report {path}: {e}")
        raise


__all__ = [
    "CheckRecord", "SUITES", "SUITE_ORDER", "lemma_suite", "orbit_suite", "section_suite",
    "chart_suite", "tower_suite", "run_suites", "verify", "summarize", "write_report", "log_report",
]
