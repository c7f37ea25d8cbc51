"""
Command line for the verification suites and the census.

Usage:
    python -m engines.verification.cli verify --gram lattices/a1_negative.json --suite table4
    python -m engines.verification.cli verify --gram lattices/d2_negative.json --suite cocycle-law \
        --out reports/cocycle.md --format md
    python -m engines.verification.cli census --gram lattices/hyperbolic.json --out reports/census.json

Exit status:
    0 — every check passed (census: every witness replayed)
    1 — a check failed or a witness did not replay
    2 — bad lattice, unsuitable lattice or unknown suite
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

from config import Config
from engines.algebra.lattice import LatticeError, load_lattice_file
from engines.verification.suites import (
    REPORT_FORMATS, SUITES, SuiteConfig, UnknownSuite, emit_report, enumerate_modules,
    replay_witnesses, run_suite,
)

logger = logging.getLogger(__name__)


def configure_logging(level: Optional[str] = None, log_file: Optional[str] = None) -> None:
    """Console plus file logging; an empty LOG_FILE disables the file handler."""
    level = level or Config.LOG_LEVEL
    log_file = Config.LOG_FILE if log_file is None else log_file
    handlers: List[logging.Handler] = [logging.StreamHandler()]
    if log_file:
        os.makedirs(os.path.dirname(log_file) or '.', exist_ok=True)
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='Exact verification of V_L⁺ Zhu-algebra computations')
    sub = parser.add_subparsers(dest='command', required=True)

    verify = sub.add_parser('verify', help='Run one verification suite')
    verify.add_argument('--gram', type=str, required=True, help='JSON lattice file: {"gram": [[...], ...]}')
    verify.add_argument('--suite', type=str, required=True, help=f"One of: {', '.join(SUITES)}")
    verify.add_argument('--cutoff', type=int, default=Config.VOA_DEFAULT_CUTOFF,
                        help='Weight cutoff of the O(V) membership search')
    verify.add_argument('--samples', type=int, default=Config.VOA_DEFAULT_SAMPLES)
    verify.add_argument('--seed', type=int, default=Config.VOA_DEFAULT_SEED)
    verify.add_argument('--out', type=str, default=None, help='Report path (stdout when omitted)')
    verify.add_argument('--format', type=str, default=Config.VOA_REPORT_FORMAT, choices=REPORT_FORMATS)

    census = sub.add_parser('census', help='List the twisted V_L⁺-modules with inequivalence witnesses')
    census.add_argument('--gram', type=str, required=True)
    census.add_argument('--out', type=str, default=None)
    return parser


def _verify(args: argparse.Namespace) -> int:
    config = SuiteConfig(
        suite=args.suite,
        gram_path=args.gram,
        cutoff=args.cutoff,
        samples=args.samples,
        seed=args.seed,
        partner_radius=Config.VOA_PARTNER_RADIUS,
        out=args.out,
        format=args.format,
    )
    report = run_suite(config)
    text = emit_report(report, config.format, config.out)
    if not config.out:
        sys.stdout.write(text)
    if not report.passed:
        logger.error(f"{report.suite}: {len(report.failed)} of {len(report.checks)} checks failed")
        return 1
    return 0


def _census(args: argparse.Namespace) -> int:
    lattice = load_lattice_file(args.gram)
    census = enumerate_modules(lattice, partner_radius=Config.VOA_PARTNER_RADIUS)
    replayed = replay_witnesses(census)
    payload = census.to_dict()
    payload['replayed'] = replayed
    text = json.dumps(payload, indent=2, ensure_ascii=False) + '\n'
    if args.out:
        target = Path(args.out)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding='utf-8')
        logger.info(f"Census written to {target}")
    else:
        sys.stdout.write(text)
    if not replayed:
        logger.error("Census witnesses did not replay")
        return 1
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging()
    try:
        if args.command == 'verify':
            return _verify(args)
        return _census(args)
    except (LatticeError, UnknownSuite) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 2


if __name__ == '__main__':
    sys.exit(main())
