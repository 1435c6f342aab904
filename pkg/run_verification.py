#!/usr/bin/env python3
"""
Command-line driver for the Schubert GIT kit
Run with: python run_verification.py verify --r 3 --q 3 --suite all

Exit codes: 0 all checks pass / point semistable, 1 a check fails / point unstable,
2 usage, configuration or input format error.
"""

import argparse
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional

# Add package directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from sgk.bundle_charts import bott_tower, tower_dimensions, tower_dimensions_from_words
from sgk.config import SUITES, build_suite_config, load_config
from sgk.errors import MalformedInputError, SgkError
from sgk.git_engine import is_semistable
from sgk.lattice_core import alpha_coefficients, check_conventions
from sgk.peak_recursion import beta_pair_table, block_partition, d_index
from sgk.schubert_cell import build_datum, matrix_to_json, point_from_json
from sgk.suites import log_report, summarize, verify, write_report

logger = logging.getLogger("sgk.cli")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def setup_logging(level: str, log_file: Optional[str] = None):
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def emit(doc: Any, out: Optional[str] = None):
    text = json.dumps(doc, indent=2, sort_keys=True)
    if out is None or out == "-":
        print(text)
    else:
        with open(out, "w") as f:
            f.write(text + "\n")
        logger.info(f"Wrote {out}")


def datum_document(r: int, q: int) -> Dict[str, Any]:
    """Word, one-line form, C_j, beta roots and the lambda_{lq} pairing table"""
    datum = build_datum(r, q)
    pairings = beta_pair_table(datum)
    return {
        "r": r,
        "q": q,
        "n": datum.n,
        "word": list(datum.word.letters),
        "one_line": list(datum.one_line),
        "permutation": list(datum.permutation.images),
        "dimension": datum.dimension,
        "C": {str(j): list(datum.c_set(j)) for j in range(1, r + 1)},
        "blocks": {str(j): [list(b) for b in block_partition(j, q)] for j in range(1, r + 1)},
        "betas": [
            {
                "i": i,
                "j": j,
                "d": d_index(i, j, q),
                "alpha": [str(c) for c in alpha_coefficients(datum.betas[(i, j)])],
                "peak_pairings": [str(c) for c in pairings[(i, j)]],
            }
            for i, j in datum.positions
        ],
    }


def cmd_gen(args) -> int:
    emit(datum_document(args.r, args.q), args.out)
    return EXIT_OK


def cmd_semistable(args) -> int:
    try:
        with open(args.point, "r") as f:
            doc = json.load(f)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise MalformedInputError(f"{args.point} is not valid JSON: {e}")
    point = point_from_json(doc)
    report = is_semistable(point)
    result = report.to_json()
    result["r"], result["q"], result["field"] = point.r, point.q, point.field.name
    result["matrix"] = matrix_to_json(point)
    emit(result)
    if report:
        logger.info(f"Point is semistable, witnesses {report.witnesses}")
        return EXIT_OK
    logger.info(f"Point is not semistable, column {report.failing_column} vanishes")
    return EXIT_FAIL


def cmd_verify(args) -> int:
    cfg = build_suite_config(
        args.r, args.q, suite=args.suite, samples=args.samples, seed=args.seed,
        field_spec=args.field, settings=load_config(args.config) if args.config else None,
    )
    records = verify(cfg)
    summary = summarize(records, cfg)
    if args.report:
        log_report(records, summary, args.report)
    else:
        write_report(records, summary, sys.stdout)
    logger.info(f"{summary['passed']} passed, {summary['skipped']} skipped, {len(summary['failed'])} failed")
    return EXIT_OK if summary["status"] == "pass" else EXIT_FAIL


def cmd_tower(args) -> int:
    dims = tower_dimensions(args.r, args.q)
    cross_check = tower_dimensions_from_words(args.r, args.q)
    emit({
        "r": args.r,
        "q": args.q,
        "dims": dims,
        "word_length_dims": cross_check,
        "stages": [stage.to_json() for stage in bott_tower(args.r, args.q)],
    })
    return EXIT_OK if dims == cross_check else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Minimal Schubert variety GIT quotient toolkit")
    parser.add_argument("--log-level", default="INFO", help="Logging level (DEBUG, INFO, WARNING)")
    parser.add_argument("--log-file", default=None, help="Also log to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="Dump the combinatorial datum of w_{r,rq+1}")
    gen.add_argument("--r", type=int, required=True)
    gen.add_argument("--q", type=int, required=True)
    gen.add_argument("--out", default="-", help="Output path (default stdout)")
    gen.set_defaults(handler=cmd_gen)

    semistable = sub.add_parser("semistable", help="Decide semistability of a cell point")
    semistable.add_argument("--point", required=True, help="CellPoint JSON file")
    semistable.set_defaults(handler=cmd_semistable)

    ver = sub.add_parser("verify", help="Run verification suites")
    ver.add_argument("--r", type=int, required=True)
    ver.add_argument("--q", type=int, required=True)
    ver.add_argument("--suite", choices=SUITES, default="all")
    ver.add_argument("--samples", type=int, default=None)
    ver.add_argument("--seed", type=int, default=None, help="Overridden by SGK_SEED")
    ver.add_argument("--field", default=None, help="rational (default) or fp:<prime>")
    ver.add_argument("--report", default=None, help="Write JSON-lines report here instead of stdout")
    ver.add_argument("--config", default=None, help="Alternative configuration file")
    ver.set_defaults(handler=cmd_verify)

    tower = sub.add_parser("tower", help="Bott tower dimensions")
    tower.add_argument("--r", type=int, required=True)
    tower.add_argument("--q", type=int, required=True)
    tower.set_defaults(handler=cmd_tower)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point with CLI arguments"""
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level, args.log_file)

    try:
        check_conventions()
        return args.handler(args)
    except SgkError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_USAGE
    except KeyboardInterrupt:
        logger.info("Interrupted")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
