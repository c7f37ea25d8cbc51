"""
Tests for the cocycle, the quotient group L̂/K and its irreducible modules.
"""

import itertools
from fractions import Fraction

import pytest

from engines.algebra import linalg
from engines.algebra.group_ext import (
    Cocycle, NonIntegralVector, build_quotient_group, central_characters, epsilon, irreducible_module,
)
from engines.algebra.lattice import load_lattice


def _vectors(rank, radius=2):
    return list(itertools.product(range(-radius, radius + 1), repeat=rank))


class TestCocycle:
    def test_commutator_law(self):
        lattice = load_lattice([[2, 1], [1, 2]])
        eps = Cocycle.for_lattice(lattice)
        for a in _vectors(2, 1):
            for b in _vectors(2, 1):
                assert eps(a, b) * eps(b, a) == (-1) ** int(lattice.pair(a, b))

    def test_bimultiplicative(self):
        lattice = load_lattice([[0, 1], [1, 0]])
        eps = Cocycle.for_lattice(lattice)
        for a, b, c in itertools.product(_vectors(2, 1), repeat=3):
            ab = tuple(x + y for x, y in zip(a, b))
            assert epsilon(eps, ab, c) == epsilon(eps, a, c) * epsilon(eps, b, c)

    def test_non_integral_rejected(self):
        eps = Cocycle.for_lattice(load_lattice([[-2]]))
        with pytest.raises(NonIntegralVector):
            epsilon(eps, (Fraction(1, 2),), (1,))


class TestQuotientGroup:
    def test_order_and_kappa(self):
        group = build_quotient_group(load_lattice([[-2, 0], [0, -2]]))
        assert group.order == 8
        assert group.multiply(group.kappa, group.kappa) == group.identity
        assert group.is_abelian()

    def test_hyperbolic_group_is_nonabelian(self):
        group = build_quotient_group(load_lattice([[0, 1], [1, 0]]))
        assert group.order == 8
        assert not group.is_abelian()
        assert group.radical() == [(0, 0)]

    def test_inverse(self):
        group = build_quotient_group(load_lattice([[2, 1], [1, 2]]))
        for g in group.elements:
            assert group.multiply(g, group.inverse(g)) == group.identity

    def test_table_matches_multiply(self):
        group = build_quotient_group(load_lattice([[-2]]))
        for i, g in enumerate(group.elements):
            for j, h in enumerate(group.elements):
                assert group.elements[group.table[i, j]] == group.multiply(g, h)


class TestCentralCharacters:
    @pytest.mark.parametrize('gram, count, dim', [
        ([[-2]], 2, 1),
        ([[0, 1], [1, 0]], 1, 2),
        ([[-2, 0], [0, -2]], 4, 1),
    ])
    def test_counts_and_dimensions(self, gram, count, dim):
        chars = central_characters(build_quotient_group(load_lattice(gram)))
        assert len(chars) == count
        assert all(chi.dimension == dim for chi in chars)

    def test_labels(self):
        chars = central_characters(build_quotient_group(load_lattice([[-2]])))
        assert [chi.label for chi in chars] == ['T1', 'T2']
        assert chars[0].to_dict()['values'] == ['1']


class TestIrreducibleModule:
    @pytest.mark.parametrize('gram', [
        [[-2]], [[0, 1], [1, 0]], [[-2, 0], [0, -2]], [[2, 0], [0, -2]], [[2, 1], [1, 2]],
    ])
    def test_module_axioms(self, gram):
        group = build_quotient_group(load_lattice(gram))
        for chi in central_characters(group):
            rep = irreducible_module(group, chi)
            assert rep.dimension == chi.dimension
            assert rep.satisfies_table()
            assert rep.kappa_is_minus_identity()
            assert rep.is_irreducible()

    def test_lattice_matrix_respects_k(self):
        lattice = load_lattice([[0, 1], [1, 0]])
        group = build_quotient_group(lattice)
        rep = irreducible_module(group, central_characters(group)[0])
        # e_{2γ} ∈ K acts trivially
        assert linalg.equal(rep.lattice_matrix((2, 0)), linalg.identity(2))
        assert linalg.equal(rep.lattice_matrix((1, 2)), rep.lattice_matrix((1, 0)))

    def test_to_dict(self):
        group = build_quotient_group(load_lattice([[-2]]))
        rep = irreducible_module(group, central_characters(group)[1])
        d = rep.to_dict()
        assert d['label'] == 'T2'
        assert d['dimension'] == 1
        assert d['generators'] == [[['-1']]]
