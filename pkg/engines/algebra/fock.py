"""
Fock Spaces — graded Heisenberg modules, untwisted and θ-twisted.

Untwisted monomials are α_{i1}(−n1)…α_{ik}(−nk)e^μ with integer modes and μ ∈ L_Q;
twisted monomials are α_{i1}(−n1)…α_{ik}(−nk)t_j with half-odd modes and t_j a
basis vector of T. Modes are stored against the lattice basis, so
[α_i(m), α_j(n)] = m·<α_i,α_j>·δ_{m+n,0}.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from engines.algebra import linalg
from engines.algebra.group_ext import Cocycle, epsilon
from engines.algebra.lattice import HVector, LatticeData, LVector, Vectorish, _coords, orthonormal_basis, pairing
from engines.algebra.scalars import Scalar, sqrt

logger = logging.getLogger(__name__)

UNTWISTED = 'untwisted'
TWISTED = 'twisted'

Mode = Union[int, Fraction]


# ── Errors ────────────────────────────────────────────────────────

class SectorMismatch(ValueError):
    pass


class ModeParityError(ValueError):
    pass


class InhomogeneousElement(ValueError):
    pass


class UnknownModule(ValueError):
    pass


# ── Monomials ─────────────────────────────────────────────────────

class FockMonomial(NamedTuple):
    """Normal-ordered creation monomial: modes sorted nonincreasing, then the ground label."""
    modes: Tuple[Tuple[Mode, int], ...]
    tail: Union[Tuple[Fraction, ...], int]

    @property
    def twisted(self) -> bool:
        return isinstance(self.tail, int)

    @property
    def degree(self) -> Fraction:
        return Fraction(sum((n for n, _ in self.modes), 0))

    def with_mode(self, n: Mode, i: int) -> 'FockMonomial':
        return FockMonomial(tuple(sorted(self.modes + ((n, i),), reverse=True)), self.tail)

    def with_modes(self, extra: Iterable[Tuple[Mode, int]]) -> 'FockMonomial':
        extra = tuple(extra)
        if not extra:
            return self
        return FockMonomial(tuple(sorted(self.modes + extra, reverse=True)), self.tail)

    def without(self, position: int) -> 'FockMonomial':
        return FockMonomial(self.modes[:position] + self.modes[position + 1:], self.tail)


def normalize_mode(n, sector: str) -> Mode:
    """Integer modes untwisted, half-odd modes twisted."""
    n = Fraction(n)
    if sector == UNTWISTED:
        if n.denominator != 1:
            raise ModeParityError(f"untwisted sector needs integer modes, got {n}")
        return int(n)
    if n.denominator != 2:
        raise ModeParityError(f"twisted sector needs half-odd modes, got {n}")
    return n


def monomial_weight(lattice: LatticeData, mono: FockMonomial) -> Fraction:
    if mono.twisted:
        return mono.degree + Fraction(lattice.rank, 16)
    return mono.degree + pairing(lattice, mono.tail, mono.tail) / 2


def basis_mode(lattice: LatticeData, i: int, n: Mode, mono: FockMonomial) -> List[Tuple[Fraction, FockMonomial]]:
    """α_i(n) on a monomial, as (coefficient, monomial) pairs."""
    if n < 0:
        return [(Fraction(1), mono.with_mode(-n, i))]
    if n == 0:
        if mono.twisted:
            raise ModeParityError("no zero mode in the twisted sector")
        value = Fraction(0)
        for j, mu in enumerate(mono.tail):
            if mu:
                value += lattice.gram[i][j] * mu
        return [(value, mono)] if value else []
    out = []
    seen = set()
    for pos, (k, j) in enumerate(mono.modes):
        if k != n or (k, j) in seen:
            continue
        g = lattice.gram[i][j]
        if not g:
            continue
        seen.add((k, j))
        multiplicity = sum(1 for x in mono.modes if x == (k, j))
        out.append((Fraction(n * g * multiplicity), mono.without(pos)))
    return out


# ── Elements ──────────────────────────────────────────────────────

class FockElement:
    """
    Finite linear combination of FockMonomials over Scalar, tagged with a sector.
    """

    __slots__ = ('lattice', 'sector', 'terms')

    def __init__(self, lattice: LatticeData, sector: str = UNTWISTED,
                 terms: Optional[Dict[FockMonomial, Scalar]] = None):
        self.lattice = lattice
        self.sector = sector
        self.terms: Dict[FockMonomial, Scalar] = {}
        for mono, c in (terms or {}).items():
            c = Scalar(c)
            if c:
                if mono.twisted != (sector == TWISTED):
                    raise SectorMismatch(f"monomial {mono} does not belong to the {sector} sector")
                self.terms[mono] = c

    # ── Constructors ──

    @classmethod
    def zero(cls, lattice: LatticeData, sector: str = UNTWISTED) -> 'FockElement':
        return cls(lattice, sector)

    @classmethod
    def ground(cls, lattice: LatticeData, mu: Optional[Vectorish] = None, coeff=1) -> 'FockElement':
        """e^μ (the vacuum 𝟏 when μ is omitted)."""
        tail = tuple(Fraction(c) for c in _coords(mu)) if mu is not None else tuple(Fraction(0) for _ in range(lattice.rank))
        if len(tail) != lattice.rank:
            raise SectorMismatch(f"ground vector of length {len(tail)} for rank {lattice.rank}")
        return cls(lattice, UNTWISTED, {FockMonomial((), tail): coeff})

    @classmethod
    def vacuum(cls, lattice: LatticeData) -> 'FockElement':
        return cls.ground(lattice)

    @classmethod
    def twisted_ground(cls, lattice: LatticeData, j: int = 0, coeff=1) -> 'FockElement':
        """t_j in M(1)(θ)⊗T."""
        return cls(lattice, TWISTED, {FockMonomial((), int(j)): coeff})

    # ── Arithmetic ──

    def _check(self, other: 'FockElement') -> None:
        if other.sector != self.sector:
            raise SectorMismatch(f"cannot combine {self.sector} and {other.sector} elements")

    def __add__(self, other: 'FockElement') -> 'FockElement':
        self._check(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms.get(mono, Scalar(0)) + c
        return FockElement(self.lattice, self.sector, terms)

    def __sub__(self, other: 'FockElement') -> 'FockElement':
        return self + (-other)

    def __neg__(self) -> 'FockElement':
        return FockElement(self.lattice, self.sector, {m: -c for m, c in self.terms.items()})

    def __mul__(self, c) -> 'FockElement':
        if isinstance(c, FockElement):
            return NotImplemented
        return FockElement(self.lattice, self.sector, {m: v * c for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c) -> 'FockElement':
        return self * (Scalar(1) / Scalar(c))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockElement):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.sector == other.sector and self.terms == other.terms

    def __hash__(self):
        return hash((self.sector, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def coefficient(self, mono: FockMonomial) -> Scalar:
        return self.terms.get(mono, Scalar(0))

    # ── Convenience ──

    def act(self, h: Vectorish, n) -> 'FockElement':
        """h(n)·self."""
        return mode_action(h, n, self)

    def create(self, h: Vectorish, k: int) -> 'FockElement':
        """h(−k)·self with k > 0 (k may be half-odd in the twisted sector)."""
        return mode_action(h, -Fraction(k), self)

    def __repr__(self):
        return f"FockElement({self})"

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for mono, c in sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0])):
            modes = ''.join(f"a{i + 1}(-{n})" for n, i in mono.modes)
            if mono.twisted:
                ground = f"t{mono.tail + 1}"
            elif any(mono.tail):
                ground = 'e^(' + ','.join(str(x) for x in mono.tail) + ')'
            else:
                ground = '1'
            parts.append(f"({c}){modes}{ground}")
        return ' + '.join(parts)


def _sort_key(mono: FockMonomial):
    tail = (mono.tail,) if mono.twisted else tuple(mono.tail)
    return (mono.degree, tuple((Fraction(n), i) for n, i in mono.modes), tail)


def element_from_terms(lattice: LatticeData, sector: str, acc: Dict[FockMonomial, Scalar]) -> FockElement:
    return FockElement(lattice, sector, acc)


# ── Operations ────────────────────────────────────────────────────

def mode_action(h: Vectorish, n, x: FockElement) -> FockElement:
    """
    h(n)·x for h ∈ 𝔥 given in lattice coordinates.

    Raises:
        ModeParityError if n does not fit the sector of x.
    """
    n = normalize_mode(n, x.sector)
    coords = _coords(h)
    if len(coords) != x.lattice.rank:
        raise SectorMismatch(f"vector of length {len(coords)} for rank {x.lattice.rank}")
    acc: Dict[FockMonomial, Scalar] = {}
    for i, hi in enumerate(coords):
        if not hi:
            continue
        for mono, c in x.terms.items():
            for f, new in basis_mode(x.lattice, i, n, mono):
                acc[new] = acc.get(new, Scalar(0)) + c * f * hi
    return FockElement(x.lattice, x.sector, acc)


def theta(x: FockElement) -> FockElement:
    """(−1)^k on k-mode monomials; e^μ ↦ e^{−μ}, t ↦ t."""
    acc: Dict[FockMonomial, Scalar] = {}
    for mono, c in x.terms.items():
        sign = -1 if len(mono.modes) % 2 else 1
        tail = mono.tail if mono.twisted else tuple(-m for m in mono.tail)
        new = FockMonomial(mono.modes, tail)
        acc[new] = acc.get(new, Scalar(0)) + c * sign
    return FockElement(x.lattice, x.sector, acc)


def homogeneous_components(x: FockElement) -> Dict[Fraction, FockElement]:
    """Split x by L(0)-weight."""
    parts: Dict[Fraction, Dict[FockMonomial, Scalar]] = {}
    for mono, c in x.terms.items():
        parts.setdefault(monomial_weight(x.lattice, mono), {})[mono] = c
    return {w: FockElement(x.lattice, x.sector, t) for w, t in sorted(parts.items())}


def grade(x: FockElement) -> Fraction:
    """
    L(0)-eigenvalue of a homogeneous element.

    Raises:
        InhomogeneousElement for zero or mixed-weight input.
    """
    weights = {monomial_weight(x.lattice, mono) for mono in x.terms}
    if len(weights) != 1:
        raise InhomogeneousElement(f"element has weights {sorted(weights)}")
    return weights.pop()


def heisenberg_degree(x: FockElement) -> Fraction:
    return max((mono.degree for mono in x.terms), default=Fraction(0))


def project_eigen(x: FockElement, sign: int) -> FockElement:
    """(x ± θx)/2."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be ±1, got {sign}")
    return (x + theta(x) * sign) * Fraction(1, 2)


def creation_monomial(lattice: LatticeData, factors: Sequence[Tuple[Vectorish, Mode]],
                      ground: Optional[FockElement] = None) -> FockElement:
    """h_1(−k_1)…h_r(−k_r)·ground (vacuum by default)."""
    x = ground if ground is not None else FockElement.vacuum(lattice)
    for h, k in reversed(list(factors)):
        x = x.create(h, k)
    return x


# ── Module descriptors and top levels ─────────────────────────────

FAMILIES = (
    'M1+', 'M1-', 'M1lambda', 'M1theta+', 'M1theta-',
    'VL+', 'VL-', 'VLcoset', 'VLhalf+', 'VLhalf-', 'VLT+', 'VLT-',
)


@dataclass(frozen=True)
class ModuleSpec:
    """
    Names an irreducible module by family and parameters.

    Families:
        M1+ / M1-            top {𝟏} / {h_c(−1)𝟏}
        M1lambda             top {e^λ}
        M1theta+ / M1theta-  top {𝟏} / {h_c(−½)𝟏} in M(1)(θ)
        VL+ / VL-            top {𝟏} / {h_c(−1)𝟏} (plus F^α when <α,α> = 2 in rank one)
        VLcoset              top {e^{rα/2k}} (rank one, <α,α> = 2k)
        VLhalf+ / VLhalf-    top {e^{α/2} ± c·e^{−α/2}}, c² = ε(α,α)
        VLT+ / VLT-          top {t_j} / {h_c(−½)t_j} for T = T_χ
    """
    family: str
    lattice: LatticeData
    weight_vector: Optional[LVector] = None
    residue: int = 0
    character: int = 0
    frame: Optional[Tuple[HVector, ...]] = None

    @property
    def twisted(self) -> bool:
        return self.family in ('M1theta+', 'M1theta-', 'VLT+', 'VLT-')

    @property
    def label(self) -> str:
        if self.family == 'M1lambda':
            return f"M1lambda{self.weight_vector}"
        if self.family == 'VLcoset':
            return f"VLcoset(r={self.residue})"
        if self.family in ('VLT+', 'VLT-'):
            return f"VL^(T{self.character + 1},{self.family[-1]})"
        return self.family

    def frame_vectors(self) -> Tuple[HVector, ...]:
        return self.frame if self.frame is not None else tuple(orthonormal_basis(self.lattice))


def _rank_one_alpha(spec: ModuleSpec) -> LVector:
    if spec.lattice.rank != 1:
        raise UnknownModule(f"{spec.family} is only defined for rank one lattices")
    return spec.lattice.basis_vector(0)


def top_level_basis(spec: ModuleSpec, rep=None) -> List[FockElement]:
    """
    Degree-0 basis of the module named by `spec`, ordered as in the table headers.

    Twisted VL families need the T_χ dimension, taken from `rep` when given.

    Raises:
        UnknownModule for an unrecognised family.
    """
    lattice = spec.lattice
    family = spec.family
    if family not in FAMILIES:
        raise UnknownModule(f"Unknown module family: {family}")
    frame = spec.frame_vectors()
    vac = FockElement.vacuum(lattice)

    if family in ('M1+', 'VL+'):
        return [vac]
    if family in ('M1-', 'VL-'):
        basis = [vac.create(h, 1) for h in frame]
        if family == 'VL-' and lattice.rank == 1 and lattice.gram[0][0] == 2:
            alpha = lattice.basis_vector(0)
            basis.append(FockElement.ground(lattice, alpha) - FockElement.ground(lattice, -alpha))
        return basis
    if family == 'M1lambda':
        if spec.weight_vector is None:
            raise UnknownModule("M1lambda needs a weight vector")
        return [FockElement.ground(lattice, spec.weight_vector)]
    if family == 'VLcoset':
        alpha = _rank_one_alpha(spec)
        k = lattice.gram[0][0] // 2
        return [FockElement.ground(lattice, alpha * Fraction(spec.residue, 2 * k))]
    if family in ('VLhalf+', 'VLhalf-'):
        alpha = _rank_one_alpha(spec)
        c = sqrt(epsilon(Cocycle.for_lattice(lattice), alpha, alpha))
        sign = 1 if family == 'VLhalf+' else -1
        half = alpha * Fraction(1, 2)
        return [FockElement.ground(lattice, half) + FockElement.ground(lattice, -half) * (c * sign)]

    dim_t = 1 if family.startswith('M1') else (rep.dimension if rep is not None else None)
    if dim_t is None:
        raise UnknownModule(f"{family} needs the T_χ module")
    grounds = [FockElement.twisted_ground(lattice, j) for j in range(dim_t)]
    if family in ('M1theta+', 'VLT+'):
        return grounds
    return [t.create(h, Fraction(1, 2)) for h in frame for t in grounds]


class TopLevel:
    """
    Top level M(0) of a module: basis, coordinates and the T_χ module when twisted.

    Responsibilities:
        - Hold the degree-0 basis from top_level_basis
        - Express degree-0 vectors in that basis (exactly)
    """

    def __init__(self, spec: ModuleSpec, rep=None):
        self.spec = spec
        self.rep = rep
        self.basis = top_level_basis(spec, rep)
        self._monomials: List[FockMonomial] = sorted(
            {m for b in self.basis for m in b.terms}, key=_sort_key
        )
        self._matrix = linalg.as_matrix([
            [b.coefficient(m) for b in self.basis] for m in self._monomials
        ])

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def label(self) -> str:
        return self.spec.label

    @property
    def sector(self) -> str:
        return TWISTED if self.spec.twisted else UNTWISTED

    def coordinates(self, x: FockElement) -> List[Scalar]:
        """
        Coordinates of x in the top-level basis.

        Raises:
            ValueError if x leaves the span of the basis.
        """
        if x.is_zero:
            return [Scalar(0)] * self.dimension
        extra = [m for m in x.terms if m not in set(self._monomials)]
        if extra:
            raise ValueError(f"{x} leaves the top level of {self.label}")
        solution = linalg.solve(self._matrix, [x.coefficient(m) for m in self._monomials])
        if solution is None:
            raise ValueError(f"{x} leaves the top level of {self.label}")
        return list(solution)
