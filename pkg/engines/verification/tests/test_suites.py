"""
Tests for the verification suites, the census and report output.
"""

import json

import pytest

from engines.algebra.lattice import load_lattice
from engines.verification.suites import (
    INCONCLUSIVE, SUITES, SuiteConfig, UnknownSuite, UnsupportedLattice, emit_report,
    enumerate_modules, replay_witnesses, run_suite,
)
from engines.verification.tables import DISCREPANCY


def _run(suite, gram, **kwargs):
    return run_suite(SuiteConfig(suite=suite, lattice=load_lattice(gram), **kwargs))


class TestSuiteCatalog:
    def test_thirteen_suites(self):
        assert len(SUITES) == 13
        assert 'cocycle-law' in SUITES

    def test_unknown_suite(self):
        with pytest.raises(UnknownSuite, match='tableX'):
            _run('tableX', [[2]])

    def test_unsuitable_lattice(self):
        with pytest.raises(UnsupportedLattice, match='table2'):
            _run('table2', [[2]])
        with pytest.raises(UnsupportedLattice):
            _run('table4', [[2]])
        with pytest.raises(UnsupportedLattice):
            _run('m1-relations', [[2]])

    def test_lattice_file(self, tmp_path):
        path = tmp_path / 'a1.json'
        path.write_text(json.dumps({'gram': [[-2]]}))
        report = run_suite(SuiteConfig(suite='rank1-neg', gram_path=str(path)))
        assert report.lattice.gram == ((-2,),)


class TestTableSuites:
    def test_table1_rank_one(self):
        report = _run('table1', [[2]])
        assert report.passed
        # ω, J, H on 2 + (1 + 5) + 2 top levels
        assert len(report.checks) == 3 * 10

    def test_table1_rank_two(self):
        report = _run('table1', [[2, 0], [0, 2]])
        assert report.passed
        assert any(c.id.startswith('table1/Lambda[0, 1]/') for c in report.checks)

    def test_table2(self):
        report = _run('table2', [[4]])
        assert report.passed
        flagged = {c.id: c.flag for c in report.flagged}
        assert flagged == {
            'table2/J/VLhalf+': 'suspected-typo',
            'table2/J/VLhalf-': 'suspected-typo',
        }

    def test_table3(self):
        report = _run('table3', [[2]])
        assert report.passed
        assert [c.id for c in report.flagged] == ['table3/E/VL-']

    def test_table4(self):
        report = _run('table4', [[-2]])
        assert report.passed
        flagged = [c for c in report.flagged]
        assert [c.id for c in flagged] == ['table4/E2/VL^(T2,+)']
        assert flagged[0].computed == '512'
        assert 'printed 2^{2k+1}' in flagged[0].expected

    def test_checks_sorted(self):
        report = _run('table4', [[-2]])
        ids = [c.id for c in report.checks]
        assert ids == sorted(ids)


class TestRelationSuites:
    def test_rank1_positive(self):
        assert _run('rank1-pos', [[2]]).passed

    def test_rank1_negative(self):
        report = _run('rank1-neg', [[-2]])
        assert report.passed
        coefficients = next(c for c in report.checks if c.id == 'rank1-neg/j-coefficients')
        assert coefficients.computed == '9/128, -3/4'

    def test_m1_relations(self):
        report = _run('m1-relations', [[2, 0], [0, 2]])
        assert report.passed
        assert report.flagged
        assert {c.flag for c in report.flagged} == {DISCREPANCY}
        assert all(c.id.startswith('m1-relations/1h-') for c in report.flagged)
        assert all('M(1,λ)' in c.expected for c in report.flagged)

    def test_twist_commute(self):
        assert _run('twist-commute', [[-2, 0], [0, -2]]).passed

    def test_h_shift(self):
        assert _run('h-shift', [[2, 0], [0, -2]]).passed

    def test_cocycle_law(self):
        report = _run('cocycle-law', [[-2]])
        assert report.passed
        assert any(c.id == 'cocycle-law/B2[(1)]' for c in report.checks)


class TestSampledSuites:
    def test_jacobi(self):
        report = _run('jacobi', [[2]], samples=8, max_weight=2)
        assert report.passed
        assert sum(1 for c in report.checks if c.id.startswith('jacobi/twisted-')) == 4

    def test_zhu_axioms(self):
        report = _run('zhu-axioms', [[2]], samples=4)
        assert report.passed
        assert len(report.checks) == 3 * 4
        assert sum(1 for c in report.checks if c.id.startswith('zhu-axioms/lattice-')) == 4

    def test_zhu_axioms_with_lattice_elements_negative(self):
        report = _run('zhu-axioms', [[-2]], samples=4)
        assert report.passed
        lattice_checks = [c for c in report.checks if c.id.startswith('zhu-axioms/lattice-000/')]
        assert len(lattice_checks) == 4
        # only the twisted tops VL^(T1,±), VL^(T2,±)
        star_check = next(c for c in lattice_checks if c.id.endswith('/star'))
        assert star_check.computed == 'holds on 4 top levels'

    def test_o_membership(self):
        report = _run('o-membership', [[2]], samples=20, cutoff=4)
        assert report.passed
        assert not [c for c in report.checks if c.flag == INCONCLUSIVE]
        assert sum(1 for c in report.checks if 'item6' in c.id) == 6
        # vacuum, e^α and e^{α/3}
        assert all(c.computed.endswith('o(x) = 0 on 3 top levels') for c in report.checks)

    def test_seed_fixes_report(self):
        first = emit_report(_run('jacobi', [[2]], samples=6, max_weight=2, seed=3), 'json')
        second = emit_report(_run('jacobi', [[2]], samples=6, max_weight=2, seed=3), 'json')
        assert first == second


class TestCensus:
    def test_rank_one_negative(self):
        census = enumerate_modules(load_lattice([[-2]]))
        assert [e.label for e in census.entries] == ['VL^(T1,+)', 'VL^(T1,-)', 'VL^(T2,+)', 'VL^(T2,-)']
        assert all(e.dimension == 1 for e in census.entries)
        assert len(census.witnesses) == 6
        assert replay_witnesses(census)

    def test_hyperbolic_plane(self):
        census = enumerate_modules(load_lattice([[0, 1], [1, 0]]))
        assert [e.dimension for e in census.entries] == [2, 4]
        assert replay_witnesses(census)

    def test_two_negative_roots(self):
        census = enumerate_modules(load_lattice([[-2, 0], [0, -2]]))
        assert len(census.entries) == 8
        assert len(census.witnesses) == 28
        assert replay_witnesses(census)

    def test_positive_rank_one_lists_table_columns(self):
        census = enumerate_modules(load_lattice([[4]]))
        labels = [e.label for e in census.entries]
        assert 'VLcoset(r=1)' in labels
        assert 'VLhalf-' in labels
        assert replay_witnesses(census)

    def test_positive_rank_two_unsupported(self):
        with pytest.raises(UnsupportedLattice):
            enumerate_modules(load_lattice([[2, 0], [0, 2]]))

    def test_to_dict(self):
        payload = enumerate_modules(load_lattice([[-2]])).to_dict()
        assert payload['gram'] == [[-2]]
        assert len(payload['modules']) == 4
        assert payload['witnesses'][0]['element'] == 'omega'


class TestReports:
    @pytest.fixture
    def report(self):
        return _run('table4', [[-2]])

    def test_json(self, report, tmp_path):
        path = tmp_path / 'out' / 'table4.json'
        text = emit_report(report, 'json', str(path))
        data = json.loads(path.read_text(encoding='utf-8'))
        assert text == path.read_text(encoding='utf-8')
        assert list(data) == ['suite', 'gram', 'lattice', 'seed', 'checks', 'pass']
        assert data['pass'] is True
        assert data['gram'] == [[-2]]
        assert 'elapsed' not in data
        assert data['checks'][0]['pass'] is True

    def test_flag_key_only_on_flagged_checks(self, report):
        data = json.loads(emit_report(report, 'json'))
        assert sum(1 for c in data['checks'] if 'flag' in c) == 1

    def test_markdown_row_per_check(self, report):
        text = emit_report(report, 'md')
        rows = [line for line in text.splitlines() if line.startswith('| table4/')]
        assert len(rows) == len(report.checks)

    def test_unknown_format(self, report):
        with pytest.raises(ValueError, match='format'):
            emit_report(report, 'xml')
