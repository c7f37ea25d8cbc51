"""
Verification Engine
Replays the tables and identities of V_L⁺ as exact checks on top levels,
enumerates twisted modules and writes reports.

Usage:
    from engines.verification import SuiteConfig, run_suite, emit_report, enumerate_modules

    report = run_suite(SuiteConfig(suite='table4', gram_path='lattices/a1_negative.json'))
    emit_report(report, 'md', 'reports/table4.md')

    census = enumerate_modules(report.lattice)
"""

from engines.verification.suites import (
    SUITES, REPORT_FORMATS, UnknownSuite, UnsupportedLattice, SuiteConfig, Check, VerifyReport,
    SuiteRunner, Census, CensusEntry, Witness, run_suite, enumerate_modules, replay_witnesses,
    emit_report, report_markdown,
)
from engines.verification.tables import (
    SUSPECTED_TYPO, CONVENTION, DISCREPANCY, Relation, TABLE1, TABLE2, TABLE3, TABLE4,
    m1_relations, rank_one_positive, rank_one_negative, twist_commute_rules, h_shift_identities,
)

__all__ = [
    'SUITES', 'REPORT_FORMATS', 'UnknownSuite', 'UnsupportedLattice', 'SuiteConfig', 'Check',
    'VerifyReport', 'SuiteRunner', 'Census', 'CensusEntry', 'Witness', 'run_suite',
    'enumerate_modules', 'replay_witnesses', 'emit_report', 'report_markdown',
    'SUSPECTED_TYPO', 'CONVENTION', 'DISCREPANCY', 'Relation', 'TABLE1', 'TABLE2', 'TABLE3', 'TABLE4',
    'm1_relations', 'rank_one_positive', 'rank_one_negative', 'twist_commute_rules', 'h_shift_identities',
]
