"""
Algebra Engine
Exact arithmetic, lattices, the group L̂/K, Fock spaces, vertex operators
and Zhu-algebra zero-mode actions.

Usage:
    from engines.algebra import load_lattice, AlgebraContext, ModuleSpec, TopLevel

    lattice = load_lattice([[-2]])
    ctx     = AlgebraContext(lattice)
    top     = TopLevel(ModuleSpec('M1theta+', lattice))
    matrix  = ctx.o_action_matrix(ctx.named_element('omega', 0), top)
"""

from engines.algebra.scalars import Scalar, ScalarDivisionError, sqrt
from engines.algebra.lattice import (
    LatticeData, LVector, LatticeError, OddDiagonal, Degenerate, NotSymmetric,
    DimensionMismatch, NoPartner, load_lattice, load_lattice_file, pairing,
    orthonormal_basis, signature, find_negative_partner, isotropic_split,
)
from engines.algebra.group_ext import (
    Cocycle, QuotientGroup, CentralCharacter, GroupRep, NonIntegralVector,
    build_quotient_group, central_characters, irreducible_module, epsilon,
)
from engines.algebra.fock import (
    FockMonomial, FockElement, ModuleSpec, TopLevel, SectorMismatch, ModeParityError,
    InhomogeneousElement, UnknownModule, mode_action, theta, grade, project_eigen,
    homogeneous_components, top_level_basis,
)
from engines.algebra.vertex import DeltaOperator, VertexEngine, CommutatorReport, conformal_vector
from engines.algebra.zhu import (
    ZhuExpr, AlgebraContext, MembershipCertificate, CutoffTooLow, IsotropicVector,
    star, circ, o_span_membership,
)

__all__ = [
    'Scalar', 'ScalarDivisionError', 'sqrt',
    'LatticeData', 'LVector', 'LatticeError', 'OddDiagonal', 'Degenerate', 'NotSymmetric',
    'DimensionMismatch', 'NoPartner', 'load_lattice', 'load_lattice_file', 'pairing',
    'orthonormal_basis', 'signature', 'find_negative_partner', 'isotropic_split',
    'Cocycle', 'QuotientGroup', 'CentralCharacter', 'GroupRep', 'NonIntegralVector',
    'build_quotient_group', 'central_characters', 'irreducible_module', 'epsilon',
    'FockMonomial', 'FockElement', 'ModuleSpec', 'TopLevel', 'SectorMismatch', 'ModeParityError',
    'InhomogeneousElement', 'UnknownModule', 'mode_action', 'theta', 'grade', 'project_eigen',
    'homogeneous_components', 'top_level_basis',
    'DeltaOperator', 'VertexEngine', 'CommutatorReport', 'conformal_vector',
    'ZhuExpr', 'AlgebraContext', 'MembershipCertificate', 'CutoffTooLow', 'IsotropicVector',
    'star', 'circ', 'o_span_membership',
]
