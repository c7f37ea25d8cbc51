"""
Tests for the voa command line.
"""
import os
import sys
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

import json

import pytest

from config import Config
from engines.verification.cli import build_parser, main


@pytest.fixture(autouse=True)
def no_log_file(monkeypatch):
    monkeypatch.setattr(Config, 'LOG_FILE', '')


def _gram_file(tmp_path, gram, name='lattice.json'):
    path = tmp_path / name
    path.write_text(json.dumps({'gram': gram}))
    return str(path)


class TestParser:
    def test_verify_defaults(self):
        args = build_parser().parse_args(['verify', '--gram', 'g.json', '--suite', 'table1'])
        assert args.cutoff == Config.VOA_DEFAULT_CUTOFF
        assert args.samples == Config.VOA_DEFAULT_SAMPLES
        assert args.seed == Config.VOA_DEFAULT_SEED
        assert args.out is None

    def test_rejects_unknown_format(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(['verify', '--gram', 'g.json', '--suite', 'table1', '--format', 'xml'])


class TestVerify:
    def test_table4_writes_passing_report(self, tmp_path):
        out = tmp_path / 'reports' / 'table4.json'
        code = main(['verify', '--gram', _gram_file(tmp_path, [[-2]]), '--suite', 'table4', '--out', str(out)])
        assert code == 0
        data = json.loads(out.read_text(encoding='utf-8'))
        assert data['suite'] == 'table4'
        assert data['pass'] is True

    def test_markdown_to_stdout(self, tmp_path, capsys):
        code = main(['verify', '--gram', _gram_file(tmp_path, [[-2]]), '--suite', 'table4', '--format', 'md'])
        assert code == 0
        assert '| table4/' in capsys.readouterr().out

    def test_unknown_suite(self, tmp_path):
        assert main(['verify', '--gram', _gram_file(tmp_path, [[-2]]), '--suite', 'table9']) == 2

    def test_odd_diagonal(self, tmp_path):
        assert main(['verify', '--gram', _gram_file(tmp_path, [[1]]), '--suite', 'table1']) == 2

    def test_unsuitable_lattice(self, tmp_path):
        assert main(['verify', '--gram', _gram_file(tmp_path, [[2]]), '--suite', 'table4']) == 2


class TestCensus:
    def test_rank_one_negative(self, tmp_path):
        out = tmp_path / 'census.json'
        code = main(['census', '--gram', _gram_file(tmp_path, [[-2]]), '--out', str(out)])
        assert code == 0
        data = json.loads(out.read_text(encoding='utf-8'))
        assert len(data['modules']) == 4
        assert data['replayed'] is True

    def test_positive_rank_two(self, tmp_path):
        assert main(['census', '--gram', _gram_file(tmp_path, [[2, 0], [0, 2]])]) == 2
