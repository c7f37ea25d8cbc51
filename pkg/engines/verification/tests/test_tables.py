"""
Tests for the table data and the relation catalogs.
"""

from fractions import Fraction

import pytest

from engines.algebra.lattice import load_lattice, orthonormal_basis
from engines.algebra.zhu import AlgebraContext
from engines.verification.tables import (
    CONVENTION, DISCREPANCY, SUSPECTED_TYPO, TABLE1, TABLE1_FAMILIES, TABLE1_LAMBDA, TABLE1_PAIRED,
    TABLE1_SINGLE, TABLE2, TABLE3, TABLE4, h_shift_identities, m1_relations,
    rank_one_negative, rank_one_positive, twist_commute_rules,
)


class TestTable1Data:
    def test_every_cell_present(self):
        for name in TABLE1_SINGLE + TABLE1_PAIRED:
            assert name in TABLE1_LAMBDA
            for family in TABLE1_FAMILIES:
                if family != 'M1lambda':
                    assert (name, family) in TABLE1

    def test_twisted_values(self):
        assert TABLE1[('J', 'M1theta+')].identity == Fraction(3, 128)
        assert TABLE1[('H', 'M1theta-')].unit == Fraction(-9, 8)
        assert TABLE1[('Et', 'M1theta-')].unit == 1

    def test_lambda_formulas(self):
        assert TABLE1_LAMBDA['omega'].value(Fraction(1, 2), 0) == Fraction(1, 8)
        assert TABLE1_LAMBDA['J'].value(Fraction(2), 0) == 14
        assert TABLE1_LAMBDA['Lambda'].value(3, Fraction(-1, 3)) == -1


class TestRankOneData:
    def test_flagged_cells(self):
        flagged = {key: entry.flag for table in (TABLE2, TABLE3, TABLE4)
                   for key, entry in table.items() if entry.flag}
        assert flagged == {
            ('J', 'VLhalf+'): SUSPECTED_TYPO,
            ('J', 'VLhalf-'): SUSPECTED_TYPO,
            ('E', 'VL-'): CONVENTION,
            ('E2', 'T2+'): SUSPECTED_TYPO,
        }

    def test_e2_on_t2_plus_compares_against_adjacent_column(self):
        entry = TABLE4[('E2', 'T2+')]
        assert entry.value(1, 0, 1) == [[8]]
        assert entry.expected(1) == [[512]]
        assert entry.expected(2) == TABLE4[('E2', 'T1+')].expected(2)

    def test_half_lattice_j_agrees_at_k_one(self):
        entry = TABLE2[('J', 'VLhalf+')]
        assert entry.value(1, 0, 1) == entry.expected(1)
        assert entry.expected(2) == [[Fraction(1, 2)]]
        assert entry.value(2, 0, 1) == [[3]]

    def test_convention_cell_matches_printed_for_minus_one(self):
        entry = TABLE3[('E', 'VL-')]
        assert entry.expected(1, eps=-1) == entry.value(1, 0, -1)
        assert entry.expected(1, eps=1) == [[0, -2], [-2, 0]]

    def test_split_twisted_values(self):
        assert TABLE2[('E', 'T1-')].expected(2) == [[-Fraction(7, 8)]]
        assert TABLE4[('E', 'T1-')].expected(1) == [[40]]


class TestRelationCatalogs:
    @pytest.fixture
    def ctx(self):
        return AlgebraContext(load_lattice([[2, 0], [0, 2]]))

    def test_m1_relation_ids(self, ctx):
        relations = list(m1_relations(ctx))
        ids = [r.id for r in relations]
        assert len(ids) == len(set(ids))
        assert {i.split('[')[0] for i in ids} == {
            '1a', '1b-u', '1b-t', '1c-ut', '1c-tu', '1d', '1e', '1f', '1g', '1h-l', '1h-r',
            '2a-lu', '2a-ru', '2a-lt', '2a-rt', '2b', '2c', '2d', '2e',
        }

    def test_only_omega_lambda_products_are_flagged(self, ctx):
        flagged = [r for r in m1_relations(ctx) if r.flag]
        assert flagged
        assert {r.flag for r in flagged} == {DISCREPANCY}
        assert {r.id.split('[')[0] for r in flagged} == {'1h-l', '1h-r'}
        assert all(r.on_lambda is not None for r in flagged)

    def test_omega_lambda_product_on_m1_lambda(self, ctx):
        relation = next(r for r in m1_relations(ctx) if r.id == '1h-l[0,0,1]')
        # x_a²x_bx_c/2 with a = b = 0, c = 1
        assert relation.on_lambda([Fraction(3, 2), Fraction(1, 3)]) == Fraction(9, 16)
        assert relation.on_lambda([Fraction(3, 2), 0]) == 0

    def test_rank_one_positive(self):
        assert [r.id for r in rank_one_positive(AlgebraContext(load_lattice([[2]])), 1)] == ['ha2']
        assert [r.id for r in rank_one_positive(AlgebraContext(load_lattice([[4]])), 2)] == ['hak']

    def test_rank_one_negative(self):
        relations = rank_one_negative(AlgebraContext(load_lattice([[-4]])), 2)
        assert [r.id for r in relations] == ['quadratic', 'e2alpha', 'inverse', 'j-linear']

    def test_twist_commute_rule_count(self):
        lattice = load_lattice([[-2, 0], [0, -2]])
        ctx = AlgebraContext(lattice)
        alpha = lattice.basis_vector(0)
        frame = orthonormal_basis(lattice, preferred=[alpha])
        ids = [r.id for r in twist_commute_rules(ctx, alpha, frame)]
        assert len(ids) == 6
        assert sum(1 for i in ids if i.startswith('item4')) == 2

    def test_h_shift_identities(self):
        lattice = load_lattice([[-2, 0, 0], [0, -2, 0], [0, 0, -2]])
        ctx = AlgebraContext(lattice)
        alpha = lattice.basis_vector(0)
        frame = orthonormal_basis(lattice, preferred=[alpha])
        assert len(list(h_shift_identities(ctx, alpha, frame))) == 2
