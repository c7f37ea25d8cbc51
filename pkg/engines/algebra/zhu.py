"""
Zhu Algebra — the products ∗ and ∘, named elements of V_L⁺ and their
zero-mode action on top levels.

A(V) itself is never materialised. Relations "mod O(V)" are checked as
operator identities on top levels, and where a direct certificate is wanted
the membership solver looks for an explicit combination of u∘v's.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from engines.algebra import linalg
from engines.algebra.fock import (
    FockElement, FockMonomial, TopLevel, creation_monomial,
    homogeneous_components, monomial_weight, theta,
)
from engines.algebra.group_ext import GroupRep
from engines.algebra.lattice import (
    HVector, LatticeData, LVector, Vectorish, _coords, isotropic_split, orthonormal_basis, pairing,
)
from engines.algebra.scalars import Scalar
from engines.algebra.vertex import VertexEngine, binomial

logger = logging.getLogger(__name__)


# ── Errors ────────────────────────────────────────────────────────

class CutoffTooLow(ValueError):
    pass


class IsotropicVector(ValueError):
    pass


# ── ∗-expressions ─────────────────────────────────────────────────

class ZhuExpr:
    """
    Element of A(V) kept symbolic: a vector, a scalar c·𝟏, a linear
    combination, or a ∗-product. o(·) of a product is the matrix product.
    """

    VEC = 'vec'
    CONST = 'const'
    LIN = 'lin'
    STAR = 'star'

    __slots__ = ('kind', 'vector', 'value', 'parts', 'key')

    def __init__(self, kind: str, vector: Optional[FockElement] = None, value: Optional[Scalar] = None,
                 parts: Tuple = (), key: Optional[tuple] = None):
        self.kind = kind
        self.vector = vector
        self.value = value
        self.parts = parts
        self.key = key

    @classmethod
    def of(cls, x, key: Optional[tuple] = None) -> 'ZhuExpr':
        if isinstance(x, ZhuExpr):
            return x
        if isinstance(x, FockElement):
            return cls(cls.VEC, vector=x, key=key)
        return cls(cls.CONST, value=Scalar(x), key=key)

    def keyed(self, key: tuple) -> 'ZhuExpr':
        return ZhuExpr(self.kind, self.vector, self.value, self.parts, key)

    def __add__(self, other) -> 'ZhuExpr':
        return ZhuExpr(self.LIN, parts=((Scalar(1), self), (Scalar(1), ZhuExpr.of(other))))

    __radd__ = __add__

    def __sub__(self, other) -> 'ZhuExpr':
        return ZhuExpr(self.LIN, parts=((Scalar(1), self), (Scalar(-1), ZhuExpr.of(other))))

    def __rsub__(self, other) -> 'ZhuExpr':
        return ZhuExpr(self.LIN, parts=((Scalar(1), ZhuExpr.of(other)), (Scalar(-1), self)))

    def __neg__(self) -> 'ZhuExpr':
        return ZhuExpr(self.LIN, parts=((Scalar(-1), self),))

    def __mul__(self, other) -> 'ZhuExpr':
        if isinstance(other, (ZhuExpr, FockElement)):
            return ZhuExpr(self.STAR, parts=(self, ZhuExpr.of(other)))
        return ZhuExpr(self.LIN, parts=((Scalar(other), self),))

    def __rmul__(self, other) -> 'ZhuExpr':
        if isinstance(other, FockElement):
            return ZhuExpr(self.STAR, parts=(ZhuExpr.of(other), self))
        return ZhuExpr(self.LIN, parts=((Scalar(other), self),))

    def __str__(self):
        if self.key is not None:
            return f"{self.key[0]}{list(self.key[1:])}"
        if self.kind == self.VEC:
            return str(self.vector)
        if self.kind == self.CONST:
            return str(self.value)
        if self.kind == self.STAR:
            return f"({self.parts[0]})*({self.parts[1]})"
        return ' + '.join(f"({c})[{e}]" for c, e in self.parts)

    __repr__ = __str__


ZhuLike = Union[ZhuExpr, FockElement]


# ── Bilinear products ─────────────────────────────────────────────

def _residue_sum(engine: VertexEngine, u: FockElement, v: FockElement, shift: int, weight_offset: int) -> FockElement:
    """Σ_k C(wt u + weight_offset, k)·u_{k+shift}v over homogeneous parts of u."""
    total = FockElement.zero(u.lattice, v.sector)
    if u.is_zero or v.is_zero:
        return total
    for wt, part in homogeneous_components(u).items():
        top = engine.truncation_bound(part, v)
        for k in range(0, top - shift + 1):
            c = binomial(wt + weight_offset, k)
            if not c:
                continue
            term = engine.untwisted_mode(part, k + shift, v)
            if term:
                total = total + term * c
    return total


def star(engine: VertexEngine, u: FockElement, v: FockElement) -> FockElement:
    """u∗v = Res_z (1+z)^{wt u} z^{−1} Y(u,z)v."""
    return _residue_sum(engine, u, v, shift=-1, weight_offset=0)


def circ(engine: VertexEngine, u: FockElement, v: FockElement) -> FockElement:
    """u∘v = Res_z (1+z)^{wt u} z^{−2} Y(u,z)v."""
    return _residue_sum(engine, u, v, shift=-2, weight_offset=0)


def zhu_item3_element(engine: VertexEngine, u: FockElement, v: FockElement, n: int) -> FockElement:
    """Res_z (1+z)^{wt u} z^{−2−n} Y(u,z)v, which lies in O(V) for n ≥ 0."""
    return _residue_sum(engine, u, v, shift=-2 - n, weight_offset=0)


def zhu_item4_element(engine: VertexEngine, u: FockElement, v: FockElement) -> FockElement:
    """u∗v − Res_z (1+z)^{wt v − 1} z^{−1} Y(v,z)u."""
    return star(engine, u, v) - _residue_sum(engine, v, u, shift=-1, weight_offset=-1)


def zhu_item5_element(engine: VertexEngine, u: FockElement, v: FockElement) -> FockElement:
    """u∗v − v∗u − Res_z (1+z)^{wt u − 1} Y(u,z)v."""
    return star(engine, u, v) - star(engine, v, u) - _residue_sum(engine, u, v, shift=0, weight_offset=-1)


# ── Context ───────────────────────────────────────────────────────

class AlgebraContext:
    """
    Everything needed to evaluate named elements and their zero modes for one lattice.

    Responsibilities:
        - Build the named elements against an orthonormal frame
        - Keep one VertexEngine per T_χ module
        - Cache o-action matrices of keyed expressions per top level
    """

    def __init__(self, lattice: LatticeData, partner_radius: int = 10):
        self.lattice = lattice
        self.partner_radius = partner_radius
        self.frame: Tuple[HVector, ...] = tuple(orthonormal_basis(lattice))
        # entries hold their rep / top so an id is never reused while cached
        self._engines: Dict[Optional[int], Tuple[Optional[GroupRep], VertexEngine]] = {}
        self._matrices: Dict[tuple, Tuple[TopLevel, np.ndarray]] = {}
        self._named: Dict[tuple, ZhuExpr] = {}

    # ── engines ──

    def engine(self, rep: Optional[GroupRep] = None) -> VertexEngine:
        key = id(rep) if rep is not None else None
        hit = self._engines.get(key)
        if hit is not None and hit[0] is rep:
            return hit[1]
        eng = VertexEngine(self.lattice, rep)
        self._engines[key] = (rep, eng)
        return eng

    @property
    def vacuum(self) -> FockElement:
        return FockElement.vacuum(self.lattice)

    def star(self, u: FockElement, v: FockElement) -> FockElement:
        return star(self.engine(), u, v)

    def circ(self, u: FockElement, v: FockElement) -> FockElement:
        return circ(self.engine(), u, v)

    def to_vector(self, expr: ZhuLike) -> FockElement:
        """Expand a ∗-expression into an element of V."""
        expr = ZhuExpr.of(expr)
        if expr.kind == ZhuExpr.VEC:
            return expr.vector
        if expr.kind == ZhuExpr.CONST:
            return self.vacuum * expr.value
        if expr.kind == ZhuExpr.STAR:
            return self.star(self.to_vector(expr.parts[0]), self.to_vector(expr.parts[1]))
        total = FockElement.zero(self.lattice)
        for c, part in expr.parts:
            total = total + self.to_vector(part) * c
        return total

    # ── named elements ──

    def _frame(self, frame: Optional[Sequence[HVector]]) -> Tuple[HVector, ...]:
        return tuple(frame) if frame is not None else self.frame

    def _tag(self, frame) -> tuple:
        if frame is None:
            return ()
        return ('frame', tuple(tuple(str(c) for c in h) for h in frame))

    def S(self, a: int, b: int, m: int, n: int, frame=None) -> FockElement:
        """S_ab(m,n) = h_a(−m)h_b(−n)𝟏."""
        h = self._frame(frame)
        return creation_monomial(self.lattice, [(h[a], m), (h[b], n)])

    def omega(self, a: int, frame=None) -> FockElement:
        return self.S(a, a, 1, 1, frame) * Fraction(1, 2)

    def J(self, a: int, frame=None) -> FockElement:
        h = self._frame(frame)[a]
        quartic = creation_monomial(self.lattice, [(h, 1)] * 4)
        return quartic - self.S(a, a, 3, 1, frame) * 2 + self.S(a, a, 2, 2, frame) * Fraction(3, 2)

    def H(self, a: int, frame=None) -> ZhuExpr:
        """H_a = J_a + ω_a − 4ω_a∗ω_a."""
        w = self.omega(a, frame)
        return ZhuExpr.of(self.J(a, frame) + w - self.star(w, w) * 4, key=('H', a) + self._tag(frame))

    def _s_combination(self, a: int, b: int, coeffs: Sequence[int], frame=None) -> FockElement:
        total = FockElement.zero(self.lattice)
        for n, c in zip((2, 3, 4, 5), coeffs):
            total = total + self.S(a, b, 1, n, frame) * c
        return total

    def Eu(self, a: int, b: int, frame=None) -> ZhuExpr:
        if a != b:
            return ZhuExpr.of(self._s_combination(a, b, (5, 25, 36, 16), frame), key=('Eu', a, b) + self._tag(frame))
        c = self._other_index(a)
        return (self.Eu(a, c, frame) * self.Eu(c, a, frame)).keyed(('Eu', a, a) + self._tag(frame))

    def Et(self, a: int, b: int, frame=None) -> ZhuExpr:
        if a != b:
            return ZhuExpr.of(self._s_combination(a, b, (3, 14, 19, 8), frame) * -16, key=('Et', a, b) + self._tag(frame))
        if self.lattice.rank == 1:
            # acts as the projection onto h(−½)T on twisted top levels
            return (ZhuExpr.of(self.omega(a, frame)) * 2 - Fraction(1, 8)).keyed(('Et', a, a) + self._tag(frame))
        c = self._other_index(a)
        return (self.Et(a, c, frame) * self.Et(c, a, frame)).keyed(('Et', a, a) + self._tag(frame))

    def Lambda(self, a: int, b: int, frame=None) -> ZhuExpr:
        return ZhuExpr.of(self._s_combination(a, b, (45, 190, 240, 96), frame), key=('Lambda', a, b) + self._tag(frame))

    def _other_index(self, a: int) -> int:
        for c in range(self.lattice.rank):
            if c != a:
                return c
        raise IndexError("diagonal E-elements need rank ≥ 2")

    def E(self, alpha: Vectorish) -> FockElement:
        """E^α = e^α + e^{−α}."""
        alpha = LVector.of(*_coords(alpha))
        return FockElement.ground(self.lattice, alpha) + FockElement.ground(self.lattice, -alpha)

    def F(self, alpha: Vectorish) -> FockElement:
        """F^α = e^α − e^{−α}."""
        alpha = LVector.of(*_coords(alpha))
        return FockElement.ground(self.lattice, alpha) - FockElement.ground(self.lattice, -alpha)

    def B(self, alpha: Vectorish) -> ZhuExpr:
        """B_α = 2^{<α,α>−1}E^α, B_0 = 𝟏."""
        alpha = LVector.of(*_coords(alpha))
        if alpha.is_zero:
            return ZhuExpr.of(self.vacuum, key=('B', str(alpha)))
        a = int(pairing(self.lattice, alpha, alpha))
        return ZhuExpr.of(self.E(alpha) * Fraction(2) ** (a - 1), key=('B', str(alpha)))

    def Btilde(self, alpha: Vectorish) -> ZhuExpr:
        """
        B̃_α = 2^{a−1}(E^α − (2a/(2a−1))E^t_11∗E^α), a = <α,α>, frame with h_1 ∈ Cα.

        Raises:
            IsotropicVector for a = 0 with α ≠ 0 (use Btilde_isotropic).
        """
        alpha = LVector.of(*_coords(alpha))
        if alpha.is_zero:
            return ZhuExpr.of(self.vacuum, key=('Btilde', str(alpha)))
        a = int(pairing(self.lattice, alpha, alpha))
        if a == 0:
            raise IsotropicVector(f"{alpha} is isotropic")
        frame = tuple(orthonormal_basis(self.lattice, preferred=[alpha]))
        e = ZhuExpr.of(self.E(alpha))
        p1 = self.Et(0, 0, frame)
        expr = (e - p1 * e * Fraction(2 * a, 2 * a - 1)) * (Fraction(2) ** (a - 1))
        return expr.keyed(('Btilde', str(alpha)))

    def Btilde_isotropic(self, alpha: Vectorish) -> ZhuExpr:
        """
        Isotropic B̃_α, acting on h(−½)⊗T as I⊗ρ(e_α).

        α = γ + β with <γ,β> = 0, g = <γ,γ> > 0, b = <β,β> < 0, in a frame with
        h_1 ∈ Cγ and h_2 ∈ Cβ.
        """
        alpha = LVector.of(*_coords(alpha))
        if pairing(self.lattice, alpha, alpha) != 0 or alpha.is_zero:
            raise IsotropicVector(f"{alpha} is not a nonzero isotropic vector")
        gamma, beta = isotropic_split(self.lattice, alpha, radius=self.partner_radius)
        g = pairing(self.lattice, gamma, gamma)
        b = pairing(self.lattice, beta, beta)
        frame = tuple(orthonormal_basis(self.lattice, preferred=[gamma, beta]))
        e = ZhuExpr.of(self.E(alpha))
        p1, p2 = self.Et(0, 0, frame), self.Et(1, 1, frame)
        expr = (
            e * Fraction(1, 2)
            + p1 * e * p1 * (g / (1 - 2 * g))
            - p1 * e * p2 * Fraction(1, 2)
            + p2 * e * p2 * (b / (1 - 2 * b))
            - p2 * e * p1 * Fraction(1, 2)
        )
        return expr.keyed(('Btilde_iso', str(alpha)))

    def Btilde_any(self, alpha: Vectorish) -> ZhuExpr:
        alpha = LVector.of(*_coords(alpha))
        if not alpha.is_zero and pairing(self.lattice, alpha, alpha) == 0:
            return self.Btilde_isotropic(alpha)
        return self.Btilde(alpha)

    def named_element(self, name: str, *params) -> ZhuExpr:
        """
        Look up a named element by name, memoised.

        Names: omega, J, H, S, Eu, Et, Lambda (frame indices, 0-based), and
        E, F, B, Btilde, Btilde_isotropic (lattice vectors).
        """
        key = (name,) + tuple(p if isinstance(p, int) else str(LVector.of(*_coords(p))) for p in params)
        hit = self._named.get(key)
        if hit is not None:
            return hit
        builders = {
            'omega': lambda a: ZhuExpr.of(self.omega(a)),
            'J': lambda a: ZhuExpr.of(self.J(a)),
            'H': self.H,
            'S': lambda a, b, m, n: ZhuExpr.of(self.S(a, b, m, n)),
            'Eu': self.Eu,
            'Et': self.Et,
            'Lambda': self.Lambda,
            'E': lambda alpha: ZhuExpr.of(self.E(alpha)),
            'F': lambda alpha: ZhuExpr.of(self.F(alpha)),
            'B': self.B,
            'Btilde': self.Btilde,
            'Btilde_isotropic': self.Btilde_isotropic,
        }
        if name not in builders:
            raise KeyError(f"Unknown named element: {name}")
        expr = builders[name](*params).keyed(key)
        self._named[key] = expr
        return expr

    # ── zero-mode action ──

    def o_action_matrix(self, expr: ZhuLike, top: TopLevel) -> np.ndarray:
        """Matrix of o(expr) on top.basis; o(u∗v) = o(u)o(v)."""
        expr = ZhuExpr.of(expr)
        cache_key = (expr.key, id(top)) if expr.key is not None else None
        if cache_key is not None:
            hit = self._matrices.get(cache_key)
            if hit is not None and hit[0] is top:
                return hit[1]
        n = top.dimension
        if expr.kind == ZhuExpr.CONST:
            result = linalg.scale(linalg.identity(n), expr.value)
        elif expr.kind == ZhuExpr.LIN:
            result = linalg.zeros(n, n)
            for c, part in expr.parts:
                result = result + linalg.scale(self.o_action_matrix(part, top), c)
        elif expr.kind == ZhuExpr.STAR:
            result = linalg.matmul(self.o_action_matrix(expr.parts[0], top),
                                   self.o_action_matrix(expr.parts[1], top))
        else:
            engine = self.engine(top.rep)
            columns = []
            for b in top.basis:
                image = FockElement.zero(self.lattice, top.sector)
                for _, part in homogeneous_components(expr.vector).items():
                    image = image + engine.zero_mode(part, b)
                columns.append(top.coordinates(image))
            result = linalg.as_matrix([[columns[j][i] for j in range(n)] for i in range(n)])
        if cache_key is not None:
            self._matrices[cache_key] = (top, result)
        return result

    def o_trace(self, expr: ZhuLike, top: TopLevel) -> Scalar:
        return linalg.trace(self.o_action_matrix(expr, top))


# ── O(V) membership ───────────────────────────────────────────────

def heisenberg_monomials(lattice: LatticeData, degree: int) -> List[FockMonomial]:
    """All α_{i1}(−n1)…α_{ik}(−nk)𝟏 with Σn = degree, modes nonincreasing."""
    zero_tail = tuple(Fraction(0) for _ in range(lattice.rank))
    out: List[FockMonomial] = []

    def grow(remaining: int, prefix: Tuple, ceiling: Tuple[int, int]):
        if remaining == 0:
            out.append(FockMonomial(prefix, zero_tail))
            return
        for n in range(min(remaining, ceiling[0]), 0, -1):
            for i in range(lattice.rank - 1, -1, -1):
                if (n, i) <= ceiling:
                    grow(remaining - n, prefix + ((n, i),), (n, i))

    grow(degree, (), (degree, lattice.rank - 1))
    return out


@dataclass
class MembershipCertificate:
    """
    Result of an O(V) membership search.

    Found: target = Σ c·(u∘v) over `terms`. Inconclusive: nothing found
    below `cutoff`, which says nothing about non-membership.
    """
    target: FockElement
    cutoff: int
    terms: List[Tuple[FockElement, FockElement, Scalar]] = field(default_factory=list)
    verdict: str = 'Inconclusive'
    generators_tried: int = 0

    @property
    def found(self) -> bool:
        return self.verdict == 'Found'

    def verify(self, engine: VertexEngine) -> bool:
        if not self.found:
            return False
        total = FockElement.zero(self.target.lattice)
        for u, v, c in self.terms:
            total = total + circ(engine, u, v) * c
        return total == self.target

    def to_dict(self) -> dict:
        return {
            'verdict': self.verdict,
            'cutoff': self.cutoff,
            'target': str(self.target),
            'generators_tried': self.generators_tried,
            'terms': [
                {'u': str(u), 'v': str(v), 'coefficient': str(c)}
                for u, v, c in self.terms
            ],
        }


def _max_weight(x: FockElement) -> Fraction:
    return max(monomial_weight(x.lattice, m) for m in x.terms)


def o_span_membership(engine: VertexEngine, x: FockElement, cutoff: int = 8) -> MembershipCertificate:
    """
    Search for x = Σ c_i·(u_i ∘ v_i) with u_i, v_i Heisenberg monomials.

    Generators are u∘v with u ≠ 𝟏 and wt u + wt v + 1 ≤ cutoff, ordered
    graded-lexicographically; when x is a θ-eigenvector only generators of the
    same θ-parity are used.

    Raises:
        CutoffTooLow if x has a component of weight above cutoff.
    """
    lattice = engine.lattice
    if x.is_zero:
        return MembershipCertificate(target=x, cutoff=cutoff, verdict='Found')
    if _max_weight(x) > cutoff:
        raise CutoffTooLow(f"target weight {_max_weight(x)} exceeds cutoff {cutoff}")

    parity = None
    if (x - theta(x)).is_zero:
        parity = 0
    elif (x + theta(x)).is_zero:
        parity = 1

    by_degree = {d: heisenberg_monomials(lattice, d) for d in range(cutoff)}
    pairs: List[Tuple[FockMonomial, FockMonomial]] = []
    for total in range(1, cutoff):
        for du in range(1, total + 1):
            for u in by_degree[du]:
                for v in by_degree[total - du]:
                    if parity is not None and (len(u.modes) + len(v.modes)) % 2 != parity:
                        continue
                    pairs.append((u, v))

    generators: List[Tuple[FockElement, FockElement, FockElement]] = []
    for u, v in pairs:
        ue = FockElement(lattice, terms={u: 1})
        ve = FockElement(lattice, terms={v: 1})
        g = circ(engine, ue, ve)
        if g:
            generators.append((ue, ve, g))

    rows = sorted({m for _, _, g in generators for m in g.terms} | set(x.terms),
                  key=lambda m: (monomial_weight(lattice, m), m.modes))
    matrix = linalg.as_matrix([[g.coefficient(m) for _, _, g in generators] for m in rows])
    logger.debug(f"O(V) membership: {len(rows)} rows x {len(generators)} generators at cutoff {cutoff}")
    solution = linalg.solve(matrix, [x.coefficient(m) for m in rows]) if generators else None

    cert = MembershipCertificate(target=x, cutoff=cutoff, generators_tried=len(generators))
    if solution is None:
        logger.warning(f"O(V) membership inconclusive at cutoff {cutoff} for {x}")
        return cert
    cert.terms = [(u, v, c) for (u, v, _), c in zip(generators, solution) if c]
    cert.verdict = 'Found'
    return cert
