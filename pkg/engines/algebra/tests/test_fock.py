"""
Tests for Fock-space elements, the involution θ and top levels.
"""

from fractions import Fraction

import pytest

from engines.algebra.fock import (
    TWISTED, UNTWISTED, FockElement, FockMonomial, InhomogeneousElement, ModeParityError,
    ModuleSpec, SectorMismatch, TopLevel, UnknownModule, grade, homogeneous_components,
    mode_action, project_eigen, theta, top_level_basis,
)
from engines.algebra.lattice import LVector, load_lattice
from engines.algebra.scalars import sqrt


@pytest.fixture
def a1():
    return load_lattice([[2]])


class TestFockElement:
    def test_commutator_on_vacuum(self, a1):
        alpha = a1.basis_vector(0)
        x = FockElement.vacuum(a1).create(alpha, 1)
        assert mode_action(alpha, 1, x) == FockElement.vacuum(a1) * 2

    def test_zero_mode_reads_momentum(self, a1):
        alpha = a1.basis_vector(0)
        x = FockElement.ground(a1, alpha)
        assert x.act(alpha, 0) == x * 2

    def test_annihilates_vacuum(self, a1):
        alpha = a1.basis_vector(0)
        assert mode_action(alpha, 2, FockElement.vacuum(a1)).is_zero

    def test_repeated_modes(self, a1):
        alpha = a1.basis_vector(0)
        x = FockElement.vacuum(a1).create(alpha, 1).create(alpha, 1)
        # α(1)α(−1)²𝟏 = 2·2·α(−1)𝟏
        assert mode_action(alpha, 1, x) == FockElement.vacuum(a1).create(alpha, 1) * 4

    def test_sector_mismatch(self, a1):
        with pytest.raises(SectorMismatch):
            FockElement.vacuum(a1) + FockElement.twisted_ground(a1)

    def test_parity_of_twisted_modes(self, a1):
        alpha = a1.basis_vector(0)
        t = FockElement.twisted_ground(a1)
        with pytest.raises(ModeParityError):
            mode_action(alpha, -1, t)
        x = t.create(alpha, Fraction(1, 2))
        assert mode_action(alpha, Fraction(1, 2), x) == t * Fraction(1)

    def test_untwisted_rejects_half_modes(self, a1):
        with pytest.raises(ModeParityError):
            mode_action(a1.basis_vector(0), Fraction(1, 2), FockElement.vacuum(a1))


class TestGrading:
    def test_weight_of_lattice_vector(self, a1):
        alpha = a1.basis_vector(0)
        x = FockElement.ground(a1, alpha).create(alpha, 1)
        assert grade(x) == 2

    def test_twisted_ground_weight(self):
        lattice = load_lattice([[-2, 0], [0, -2]])
        assert grade(FockElement.twisted_ground(lattice)) == Fraction(2, 16)

    def test_inhomogeneous(self, a1):
        alpha = a1.basis_vector(0)
        x = FockElement.vacuum(a1) + FockElement.vacuum(a1).create(alpha, 1)
        with pytest.raises(InhomogeneousElement):
            grade(x)
        parts = homogeneous_components(x)
        assert sorted(parts) == [0, 1]


class TestTheta:
    def test_theta_on_monomial(self, a1):
        alpha = a1.basis_vector(0)
        x = FockElement.ground(a1, alpha).create(alpha, 1)
        expected = -FockElement.ground(a1, -alpha).create(alpha, 1)
        assert theta(x) == expected
        assert theta(theta(x)) == x

    def test_projection(self, a1):
        alpha = a1.basis_vector(0)
        x = FockElement.ground(a1, alpha)
        plus = project_eigen(x, 1)
        minus = project_eigen(x, -1)
        assert plus + minus == x
        assert theta(plus) == plus
        assert theta(minus) == -minus


class TestTopLevel:
    def test_m1_minus_coordinates(self, a1):
        top = TopLevel(ModuleSpec('M1-', a1))
        alpha = a1.basis_vector(0)
        x = FockElement.vacuum(a1).create(alpha, 1)
        assert top.coordinates(x) == [sqrt(2)]

    def test_leaving_the_top_level(self, a1):
        top = TopLevel(ModuleSpec('M1+', a1))
        alpha = a1.basis_vector(0)
        with pytest.raises(ValueError, match="leaves"):
            top.coordinates(FockElement.vacuum(a1).create(alpha, 1))

    def test_vl_minus_has_f_alpha_for_norm_two(self, a1):
        basis = top_level_basis(ModuleSpec('VL-', a1))
        assert len(basis) == 2

    def test_coset_top(self):
        lattice = load_lattice([[4]])
        (x,) = top_level_basis(ModuleSpec('VLcoset', lattice, residue=1))
        assert x == FockElement.ground(lattice, LVector.of(Fraction(1, 4)))

    def test_half_module(self, a1):
        (x,) = top_level_basis(ModuleSpec('VLhalf-', a1))
        half = LVector.of(Fraction(1, 2))
        assert x == FockElement.ground(a1, half) - FockElement.ground(a1, -half)

    def test_twisted_minus_top(self):
        lattice = load_lattice([[-2, 0], [0, -2]])
        top = TopLevel(ModuleSpec('M1theta-', lattice))
        assert top.dimension == 2
        assert top.sector == TWISTED

    def test_unknown_family(self, a1):
        with pytest.raises(UnknownModule):
            top_level_basis(ModuleSpec('VLZ', a1))
        with pytest.raises(UnknownModule):
            top_level_basis(ModuleSpec('VLT+', a1))

    def test_labels(self, a1):
        assert ModuleSpec('VLT-', a1, character=1).label == 'VL^(T2,-)'
        assert ModuleSpec('M1+', a1).label == 'M1+'
        assert TopLevel(ModuleSpec('M1+', a1)).sector == UNTWISTED


class TestMonomial:
    def test_with_mode_sorts(self):
        mono = FockMonomial(((1, 0),), (Fraction(0),))
        assert mono.with_mode(3, 0).modes == ((3, 0), (1, 0))
        assert mono.with_mode(3, 0).degree == 4
