"""
Group Extension — the cocycle ε, the finite quotient L̂/K and its modules T_χ.

L̂ is the central extension of L by <κ> with e_α e_β = ε(α,β) e_{α+β}.
θ(e_α) = e_{−α} gives K = {(1, 2γ)}, so L̂/K has elements (sign, α mod 2)
and order 2^{d+1}. T_χ is induced from a character of a maximal abelian
subgroup that extends the central character χ.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from engines.algebra import linalg
from engines.algebra.lattice import LatticeData, LVector, Vectorish, _coords
from engines.algebra.scalars import Scalar

logger = logging.getLogger(__name__)

I_UNIT = Scalar.radical(-1)

Bits = Tuple[int, ...]


class NonIntegralVector(ValueError):
    """A cocycle or group operation was given a vector outside L."""


def _integral(v: Vectorish) -> Tuple[int, ...]:
    coords = _coords(v)
    out = []
    for c in coords:
        if getattr(c, 'denominator', 1) != 1:
            raise NonIntegralVector(f"{tuple(str(x) for x in coords)} is not in L")
        out.append(int(c))
    return tuple(out)


# ── Cocycle ───────────────────────────────────────────────────────

@dataclass(frozen=True)
class Cocycle:
    """
    Bimultiplicative ε with ε(α_i, α_j) = (−1)^<α_i,α_j> for i > j, 1 for i ≤ j.
    """
    basis_matrix: Tuple[Tuple[int, ...], ...]

    @classmethod
    def for_lattice(cls, lattice: LatticeData) -> 'Cocycle':
        d = lattice.rank
        rows = tuple(
            tuple((-1) ** (lattice.gram[i][j] % 2) if i > j else 1 for j in range(d))
            for i in range(d)
        )
        return cls(rows)

    @property
    def rank(self) -> int:
        return len(self.basis_matrix)

    def __call__(self, alpha: Vectorish, beta: Vectorish) -> int:
        return epsilon(self, alpha, beta)


def epsilon(cocycle: Cocycle, alpha: Vectorish, beta: Vectorish) -> int:
    """ε(α, β) ∈ {±1} for α, β ∈ L."""
    a, b = _integral(alpha), _integral(beta)
    exponent = 0
    for i, ai in enumerate(a):
        if ai % 2 == 0:
            continue
        for j, bj in enumerate(b):
            if bj % 2 and cocycle.basis_matrix[i][j] == -1:
                exponent += 1
    return -1 if exponent % 2 else 1


# ── Quotient group ────────────────────────────────────────────────

class GroupElement(NamedTuple):
    sign: int
    bits: Bits

    def __str__(self):
        return f"({'+' if self.sign > 0 else '-'}, {''.join(str(b) for b in self.bits)})"


def _add_bits(a: Bits, b: Bits) -> Bits:
    return tuple((x + y) % 2 for x, y in zip(a, b))


@dataclass
class QuotientGroup:
    """
    L̂/K with elements (sign, ᾱ ∈ L/2L) and an explicit multiplication table.
    """
    lattice: LatticeData
    cocycle: Cocycle
    elements: List[GroupElement] = field(default_factory=list)
    table: Optional[np.ndarray] = None

    def __post_init__(self):
        self._index: Dict[GroupElement, int] = {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def identity(self) -> GroupElement:
        return GroupElement(1, tuple(0 for _ in range(self.rank)))

    @property
    def kappa(self) -> GroupElement:
        return GroupElement(-1, tuple(0 for _ in range(self.rank)))

    def index(self, g: GroupElement) -> int:
        return self._index[g]

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        s = g.sign * h.sign * epsilon(self.cocycle, g.bits, h.bits)
        return GroupElement(s, _add_bits(g.bits, h.bits))

    def inverse(self, g: GroupElement) -> GroupElement:
        # (s, a)(s ε(a,a), a) = (ε(a,a)², 0)
        return GroupElement(g.sign * epsilon(self.cocycle, g.bits, g.bits), g.bits)

    def element_of(self, alpha: Vectorish, sign: int = 1) -> GroupElement:
        """Image of ±e_α."""
        return GroupElement(sign, tuple(c % 2 for c in _integral(alpha)))

    def generator(self, i: int) -> GroupElement:
        return GroupElement(1, tuple(int(i == j) for j in range(self.rank)))

    def commutator_form(self, a: Bits, b: Bits) -> int:
        """<a, b> mod 2."""
        total = 0
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        total += self.lattice.gram[i][j]
        return total % 2

    def radical(self) -> List[Bits]:
        """Radical of the commutator form on L/2L."""
        d = self.rank
        return [
            bits for bits in itertools.product((0, 1), repeat=d)
            if all(self.commutator_form(bits, self.generator(i).bits) == 0 for i in range(d))
        ]

    def center(self) -> List[GroupElement]:
        return [g for g in self.elements if g.bits in set(self.radical())]

    def is_abelian(self) -> bool:
        return all(
            self.multiply(g, h) == self.multiply(h, g)
            for g in self.elements for h in self.elements
        )


def build_quotient_group(lattice: LatticeData, cocycle: Optional[Cocycle] = None) -> QuotientGroup:
    """
    Enumerate L̂/K and its multiplication table.

    K is generated by e_α^{-1}θ(e_α) = (1, −2α) over the lattice basis, so the
    cosets are labelled by (sign, α mod 2).
    """
    cocycle = cocycle or Cocycle.for_lattice(lattice)
    d = lattice.rank
    elements = [
        GroupElement(s, bits)
        for bits in itertools.product((0, 1), repeat=d)
        for s in (1, -1)
    ]
    group = QuotientGroup(lattice=lattice, cocycle=cocycle, elements=elements)
    table = np.zeros((len(elements), len(elements)), dtype=np.int64)
    for i, g in enumerate(elements):
        for j, h in enumerate(elements):
            table[i, j] = group.index(group.multiply(g, h))
    group.table = table
    logger.debug(f"Quotient group of order {group.order} for rank {d} lattice")
    return group


# ── Central characters ────────────────────────────────────────────

def _span(basis: Sequence[Bits], d: int) -> List[Bits]:
    out = []
    for coeffs in itertools.product((0, 1), repeat=len(basis)):
        v = tuple(0 for _ in range(d))
        for c, b in zip(coeffs, basis):
            if c:
                v = _add_bits(v, b)
        out.append(v)
    return out


def _echelon_basis(vectors: Sequence[Bits], d: int) -> List[Bits]:
    """Greedy basis over GF(2), scanning vectors in the given order."""
    basis: List[Bits] = []
    spanned = {tuple(0 for _ in range(d))}
    for v in vectors:
        if v not in spanned:
            basis.append(v)
            spanned = set(_span(basis, d))
    return basis


def _principal_root(square: int) -> Scalar:
    return Scalar(1) if square == 1 else I_UNIT


@dataclass(frozen=True)
class CentralCharacter:
    """Character of the center of L̂/K with κ ↦ −1, fixed by its values on (1, r_j)."""
    index: int
    radical_basis: Tuple[Bits, ...]
    values: Tuple[Scalar, ...]
    dimension: int

    @property
    def label(self) -> str:
        return f"T{self.index + 1}"

    def to_dict(self) -> dict:
        return {
            'label': self.label,
            'radical_basis': [list(b) for b in self.radical_basis],
            'values': [str(v) for v in self.values],
            'dimension': self.dimension,
        }


def _decompose(group: QuotientGroup, g: GroupElement, basis: Sequence[Bits], values: Sequence[Scalar]) -> Optional[Scalar]:
    """Value of the character fixed by `values` on (1, basis_j) and κ ↦ −1; None if g ∉ subgroup."""
    d = group.rank
    for coeffs in itertools.product((0, 1), repeat=len(basis)):
        prod = group.identity
        value = Scalar(1)
        for c, b, v in zip(coeffs, basis, values):
            if c:
                prod = group.multiply(prod, GroupElement(1, b))
                value = value * v
        if prod.bits == g.bits:
            return value if prod.sign == g.sign else -value
    return None


def central_characters(group: QuotientGroup) -> List[CentralCharacter]:
    """
    All characters χ of the center with χ(κ) = −1, each with the dimension of T_χ.

    χ(1, r)² = ε(r, r), so each radical basis vector takes ±1 or ±i. The
    character sending every basis vector to its principal root comes first.
    """
    d = group.rank
    radical_basis = tuple(_echelon_basis(group.radical(), d))
    k = len(radical_basis)
    dim = 2 ** ((d - k) // 2)
    choices = []
    for r in radical_basis:
        root = _principal_root(epsilon(group.cocycle, r, r))
        choices.append((root, -root))
    chars = [
        CentralCharacter(index=i, radical_basis=radical_basis, values=tuple(vals), dimension=dim)
        for i, vals in enumerate(itertools.product(*choices))
    ]
    logger.debug(f"{len(chars)} central characters, irreducible dimension {dim}")
    return chars


# ── Irreducible modules ───────────────────────────────────────────

@dataclass
class GroupRep:
    """
    Irreducible L̂/K-module T_χ, induced from a maximal abelian subgroup.

    Responsibilities:
        - Matrices over Scalar for every group element, on the coset basis t_1..t_n
        - Generator matrices for ē_{α_i}
        - Self-checks: multiplication table, κ ↦ −I, irreducibility
    """
    group: QuotientGroup
    character: CentralCharacter
    isotropic_basis: Tuple[Bits, ...]
    isotropic_values: Tuple[Scalar, ...]
    coset_reps: Tuple[Bits, ...]

    @property
    def dimension(self) -> int:
        return len(self.coset_reps)

    @property
    def label(self) -> str:
        return self.character.label

    def _psi(self, h: GroupElement) -> Optional[Scalar]:
        return _decompose(self.group, h, self.isotropic_basis, self.isotropic_values)

    def element_matrix(self, g: GroupElement) -> np.ndarray:
        n = self.dimension
        m = linalg.zeros(n, n)
        for x_idx, x in enumerate(self.coset_reps):
            gx = self.group.multiply(g, GroupElement(1, x))
            for y_idx, y in enumerate(self.coset_reps):
                h = self.group.multiply(self.group.inverse(GroupElement(1, y)), gx)
                value = self._psi(h)
                if value is not None:
                    m[y_idx, x_idx] = value
                    break
        return m

    def lattice_matrix(self, alpha: Vectorish) -> np.ndarray:
        """Matrix of ē_α for any α ∈ L."""
        return self.element_matrix(self.group.element_of(alpha))

    @property
    def matrices(self) -> List[np.ndarray]:
        return [self.element_matrix(self.group.generator(i)) for i in range(self.group.rank)]

    def satisfies_table(self) -> bool:
        mats = {g: self.element_matrix(g) for g in self.group.elements}
        for g in self.group.elements:
            for h in self.group.elements:
                if not linalg.equal(linalg.matmul(mats[g], mats[h]), mats[self.group.multiply(g, h)]):
                    return False
        return True

    def kappa_is_minus_identity(self) -> bool:
        return linalg.equal(self.element_matrix(self.group.kappa), linalg.scale(linalg.identity(self.dimension), -1))

    def is_irreducible(self) -> bool:
        """Commutant of the generator matrices is one-dimensional."""
        n = self.dimension
        rows = []
        for mat in self.matrices:
            # X M − M X = 0, unknowns X[p, q] flattened row-major
            for i in range(n):
                for j in range(n):
                    row = [Scalar(0)] * (n * n)
                    for k in range(n):
                        row[i * n + k] = row[i * n + k] + mat[k, j]
                        row[k * n + j] = row[k * n + j] - mat[i, k]
                    rows.append(row)
        if not rows:
            return True
        return len(linalg.nullspace(linalg.as_matrix(rows))) == 1

    def to_dict(self) -> dict:
        return {
            'label': self.label,
            'dimension': self.dimension,
            'generators': [[[str(x) for x in row] for row in m] for m in self.matrices],
        }


def irreducible_module(group: QuotientGroup, chi: CentralCharacter) -> GroupRep:
    """
    T_χ by induction from H = {(s, a) : a ∈ A}, A ⊇ radical maximal isotropic.

    A is grown greedily from the radical basis through L/2L in lexicographic
    order; the extension of χ to H sends each added generator to the
    principal square root of ε(a, a).
    """
    d = group.rank
    basis = list(chi.radical_basis)
    values = list(chi.values)
    for v in itertools.product((0, 1), repeat=d):
        if v in set(_span(basis, d)):
            continue
        if all(group.commutator_form(v, a) == 0 for a in basis):
            basis.append(v)
            values.append(_principal_root(epsilon(group.cocycle, v, v)))
    isotropic = set(_span(basis, d))

    complement: List[Bits] = []
    covered = set(isotropic)
    for v in itertools.product((0, 1), repeat=d):
        if v not in covered:
            complement.append(v)
            covered = {_add_bits(a, c) for a in isotropic for c in _span(complement, d)}
    reps = tuple(_span(complement, d))
    logger.debug(f"{chi.label}: isotropic basis {basis}, {len(reps)} coset representatives")
    return GroupRep(
        group=group,
        character=chi,
        isotropic_basis=tuple(basis),
        isotropic_values=tuple(values),
        coset_reps=reps,
    )
