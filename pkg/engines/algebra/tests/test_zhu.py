"""
Tests for ∗, ∘, named elements, zero-mode matrices and O(V) membership.
"""

import gc
from fractions import Fraction

import pytest

from engines.algebra import linalg
from engines.algebra.fock import FockElement, ModuleSpec, TopLevel
from engines.algebra.group_ext import build_quotient_group, central_characters, irreducible_module
from engines.algebra.lattice import LVector, load_lattice
from engines.algebra.vertex import VertexEngine, conformal_vector
from engines.algebra.zhu import (
    AlgebraContext, CutoffTooLow, IsotropicVector, ZhuExpr, circ, heisenberg_monomials,
    o_span_membership, star, zhu_item3_element,
)


@pytest.fixture
def a1():
    return load_lattice([[2]])


def _twisted_top(lattice, family, index=0):
    group = build_quotient_group(lattice)
    rep = irreducible_module(group, central_characters(group)[index])
    return TopLevel(ModuleSpec(family, lattice, character=index), rep)


class TestProducts:
    def test_vacuum_is_left_identity(self, a1):
        engine = VertexEngine(a1)
        alpha = a1.basis_vector(0)
        v = FockElement.ground(a1, alpha).create(alpha, 1)
        assert star(engine, FockElement.vacuum(a1), v) == v

    def test_circ_of_heisenberg_vector(self, a1):
        engine = VertexEngine(a1)
        alpha = a1.basis_vector(0)
        vac = FockElement.vacuum(a1)
        expected = vac.create(alpha, 2) + vac.create(alpha, 1)
        assert circ(engine, vac.create(alpha, 1), vac) == expected

    def test_vacuum_circ_is_zero(self, a1):
        engine = VertexEngine(a1)
        v = FockElement.vacuum(a1).create(a1.basis_vector(0), 3)
        assert circ(engine, FockElement.vacuum(a1), v).is_zero

    def test_omega_circ_vacuum(self, a1):
        engine = VertexEngine(a1)
        alpha = a1.basis_vector(0)
        omega = conformal_vector(a1)
        derivative = FockElement.vacuum(a1).create(alpha, 1).create(alpha, 2) * Fraction(1, 2)
        assert circ(engine, omega, FockElement.vacuum(a1)) == derivative + omega * 2

    def test_item3_with_n_zero_is_circ(self, a1):
        engine = VertexEngine(a1)
        alpha = a1.basis_vector(0)
        vac = FockElement.vacuum(a1)
        u, v = vac.create(alpha, 1), vac.create(alpha, 2)
        assert zhu_item3_element(engine, u, v, 0) == circ(engine, u, v)


class TestNamedElements:
    def test_j_expansion(self, a1):
        ctx = AlgebraContext(a1)
        (h,) = ctx.frame
        vac = FockElement.vacuum(a1)
        expected = (
            vac.create(h, 1).create(h, 1).create(h, 1).create(h, 1)
            - vac.create(h, 1).create(h, 3) * 2
            + vac.create(h, 2).create(h, 2) * Fraction(3, 2)
        )
        assert ctx.to_vector(ctx.named_element('J', 0)) == expected

    def test_b_alpha_negative(self):
        lattice = load_lattice([[-2]])
        ctx = AlgebraContext(lattice)
        alpha = lattice.basis_vector(0)
        b = ctx.named_element('B', alpha)
        assert ctx.to_vector(b) == ctx.E(alpha) * Fraction(1, 8)

    def test_b_zero_is_vacuum(self):
        lattice = load_lattice([[-2]])
        ctx = AlgebraContext(lattice)
        assert ctx.to_vector(ctx.named_element('B', (0,))) == FockElement.vacuum(lattice)

    def test_isotropic_btilde_rejected(self):
        lattice = load_lattice([[0, 1], [1, 0]])
        ctx = AlgebraContext(lattice)
        with pytest.raises(IsotropicVector):
            ctx.named_element('Btilde', (1, 0))
        with pytest.raises(IsotropicVector):
            ctx.named_element('Btilde_isotropic', (1, 1))

    def test_unknown_name(self, a1):
        with pytest.raises(KeyError):
            AlgebraContext(a1).named_element('Q', 0)

    def test_memoised(self, a1):
        ctx = AlgebraContext(a1)
        assert ctx.named_element('omega', 0) is ctx.named_element('omega', 0)


class TestActionMatrices:
    def test_constant_acts_as_scalar(self, a1):
        ctx = AlgebraContext(a1)
        top = TopLevel(ModuleSpec('M1-', a1))
        m = ctx.o_action_matrix(ZhuExpr.of(3), top)
        assert linalg.equal(m, linalg.scale(linalg.identity(1), 3))
        assert linalg.equal(ctx.o_action_matrix(FockElement.vacuum(a1), top), linalg.identity(1))

    def test_omega_on_twisted_tops(self):
        lattice = load_lattice([[-2, 0], [0, -2]])
        ctx = AlgebraContext(lattice)
        plus = TopLevel(ModuleSpec('M1theta+', lattice))
        minus = TopLevel(ModuleSpec('M1theta-', lattice))
        omega0 = ctx.named_element('omega', 0)
        assert linalg.equal(ctx.o_action_matrix(omega0, plus), linalg.as_matrix([[Fraction(1, 16)]]))
        assert linalg.equal(
            ctx.o_action_matrix(omega0, minus),
            linalg.as_matrix([[Fraction(9, 16), 0], [0, Fraction(1, 16)]]),
        )

    def test_h_on_twisted_minus(self):
        lattice = load_lattice([[-2, 0], [0, -2]])
        ctx = AlgebraContext(lattice)
        minus = TopLevel(ModuleSpec('M1theta-', lattice))
        expected = linalg.as_matrix([[Fraction(9, 128) - Fraction(9, 8), 0], [0, Fraction(9, 128)]])
        assert linalg.equal(ctx.o_action_matrix(ctx.named_element('H', 0), minus), expected)

    def test_et_is_matrix_unit(self):
        lattice = load_lattice([[-2, 0], [0, -2]])
        ctx = AlgebraContext(lattice)
        minus = TopLevel(ModuleSpec('M1theta-', lattice))
        expected = linalg.as_matrix([[0, 1], [0, 0]])
        assert linalg.equal(ctx.o_action_matrix(ctx.named_element('Et', 0, 1), minus), expected)

    def test_rank_one_et_projection(self):
        lattice = load_lattice([[-2]])
        ctx = AlgebraContext(lattice)
        et = ctx.named_element('Et', 0, 0)
        plus = TopLevel(ModuleSpec('M1theta+', lattice))
        minus = TopLevel(ModuleSpec('M1theta-', lattice))
        assert linalg.is_zero(ctx.o_action_matrix(et, plus))
        assert linalg.equal(ctx.o_action_matrix(et, minus), linalg.identity(1))

    def test_e_alpha_on_t1_plus(self):
        lattice = load_lattice([[-2]])
        ctx = AlgebraContext(lattice)
        top = _twisted_top(lattice, 'VLT+')
        alpha = lattice.basis_vector(0)
        assert linalg.equal(ctx.o_action_matrix(ctx.named_element('E', alpha), top), linalg.as_matrix([[8]]))
        assert linalg.equal(ctx.o_action_matrix(ctx.named_element('B', alpha), top), linalg.identity(1))

    def test_star_is_matrix_product(self):
        lattice = load_lattice([[-2]])
        ctx = AlgebraContext(lattice)
        minus = TopLevel(ModuleSpec('M1theta-', lattice))
        omega = ctx.named_element('omega', 0)
        expanded = ctx.star(ctx.to_vector(omega), ctx.to_vector(omega))
        assert linalg.equal(ctx.o_action_matrix(expanded, minus), ctx.o_action_matrix(omega * omega, minus))
        assert linalg.equal(ctx.o_action_matrix(expanded, minus), linalg.as_matrix([[Fraction(81, 256)]]))

    def test_cache_survives_discarded_tops(self, a1):
        ctx = AlgebraContext(a1)
        omega = ctx.named_element('omega', 0)
        for _ in range(50):
            plus = TopLevel(ModuleSpec('M1+', a1))
            assert linalg.is_zero(ctx.o_action_matrix(omega, plus))
            del plus
            gc.collect()
            minus = TopLevel(ModuleSpec('M1-', a1))
            assert linalg.equal(ctx.o_action_matrix(omega, minus), linalg.identity(1))
            del minus
            gc.collect()


class TestEngines:
    def test_one_engine_per_rep(self):
        lattice = load_lattice([[-2]])
        group = build_quotient_group(lattice)
        reps = [irreducible_module(group, chi) for chi in central_characters(group)]
        ctx = AlgebraContext(lattice)
        assert ctx.engine() is ctx.engine()
        assert ctx.engine(reps[0]) is ctx.engine(reps[0])
        assert ctx.engine(reps[0]) is not ctx.engine(reps[1])
        assert ctx.engine(reps[0]) is not ctx.engine()

    def test_rebuilt_rep_gets_new_engine(self):
        lattice = load_lattice([[-2]])
        group = build_quotient_group(lattice)
        chi = central_characters(group)[0]
        ctx = AlgebraContext(lattice)
        first = ctx.engine(irreducible_module(group, chi))
        gc.collect()
        rep = irreducible_module(group, chi)
        assert ctx.engine(rep).rep is rep
        assert first.rep is not rep


class TestMembership:
    def test_monomial_enumeration(self, a1):
        assert len(heisenberg_monomials(a1, 4)) == 5
        assert len(heisenberg_monomials(load_lattice([[2, 1], [1, 2]]), 2)) == 5

    def test_circ_is_found(self, a1):
        engine = VertexEngine(a1)
        vac = FockElement.vacuum(a1)
        x = circ(engine, vac.create(a1.basis_vector(0), 1), vac)
        cert = o_span_membership(engine, x, cutoff=4)
        assert cert.found
        assert cert.verify(engine)

    def test_zero_is_found(self, a1):
        cert = o_span_membership(VertexEngine(a1), FockElement.zero(a1), cutoff=2)
        assert cert.found
        assert cert.terms == []
        assert cert.to_dict()['verdict'] == 'Found'

    def test_l_minus_one_plus_l_zero(self, a1):
        engine = VertexEngine(a1)
        omega = conformal_vector(a1)
        v = FockElement.vacuum(a1).create(a1.basis_vector(0), 1)
        x = engine.untwisted_mode(omega, 0, v) + engine.untwisted_mode(omega, 1, v)
        cert = o_span_membership(engine, x, cutoff=4)
        assert cert.found
        assert cert.verify(engine)

    def test_cutoff_too_low(self, a1):
        engine = VertexEngine(a1)
        x = FockElement.vacuum(a1).create(a1.basis_vector(0), 3)
        with pytest.raises(CutoffTooLow):
            o_span_membership(engine, x, cutoff=2)

    def test_vacuum_is_inconclusive(self, a1):
        cert = o_span_membership(VertexEngine(a1), FockElement.vacuum(a1), cutoff=3)
        assert not cert.found
        assert cert.to_dict()['verdict'] == 'Inconclusive'

    def test_found_elements_vanish_on_heisenberg_tops(self, a1):
        ctx = AlgebraContext(a1)
        engine = ctx.engine()
        alpha = a1.basis_vector(0)
        vac = FockElement.vacuum(a1)
        omega = conformal_vector(a1)
        v = vac.create(alpha, 1)
        tops = [TopLevel(ModuleSpec('M1+', a1))]
        tops += [TopLevel(ModuleSpec('M1lambda', a1, weight_vector=lam))
                 for lam in (LVector.of(Fraction(1, 3)), alpha)]
        for x in (circ(engine, v, vac), engine.untwisted_mode(omega, 0, v) + engine.untwisted_mode(omega, 1, v)):
            assert o_span_membership(engine, x, cutoff=4).found
            for top in tops:
                assert linalg.is_zero(ctx.o_action_matrix(x, top))

    def test_heisenberg_vector_alone_does_not_vanish(self, a1):
        ctx = AlgebraContext(a1)
        top = TopLevel(ModuleSpec('M1lambda', a1, weight_vector=a1.basis_vector(0)))
        v = FockElement.vacuum(a1).create(a1.basis_vector(0), 1)
        assert linalg.equal(ctx.o_action_matrix(v, top), linalg.as_matrix([[2]]))
