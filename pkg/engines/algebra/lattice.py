"""
Lattice — even nondegenerate lattices given by integer Gram matrices.
Pairings, signatures, orthonormal bases over the scalar field and
small-vector search for negative partners of isotropic vectors.
"""

import itertools
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Matrix

from engines.algebra.scalars import Scalar, sqrt

logger = logging.getLogger(__name__)

HVector = Tuple[Scalar, ...]   # vector of 𝔥 in lattice coordinates


# ── Errors ────────────────────────────────────────────────────────

class LatticeError(ValueError):
    """Base class for lattice validation and search failures."""


class OddDiagonal(LatticeError):
    pass


class Degenerate(LatticeError):
    pass


class NotSymmetric(LatticeError):
    pass


class DimensionMismatch(LatticeError):
    pass


class NoPartner(LatticeError):
    pass


# ── Vectors ───────────────────────────────────────────────────────

@dataclass(frozen=True)
class LVector:
    """Vector of L_Q in lattice-basis coordinates (integral ⇔ in L)."""
    coords: Tuple[Fraction, ...]

    @classmethod
    def of(cls, *coords) -> 'LVector':
        if len(coords) == 1 and isinstance(coords[0], (list, tuple)):
            coords = tuple(coords[0])
        return cls(tuple(Fraction(c) for c in coords))

    @classmethod
    def zero(cls, rank: int) -> 'LVector':
        return cls(tuple(Fraction(0) for _ in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other: 'LVector') -> None:
        if len(other.coords) != len(self.coords):
            raise DimensionMismatch(f"rank {len(self.coords)} vs {len(other.coords)}")

    def __add__(self, other: 'LVector') -> 'LVector':
        self._check(other)
        return LVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: 'LVector') -> 'LVector':
        self._check(other)
        return LVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> 'LVector':
        return LVector(tuple(-a for a in self.coords))

    def __mul__(self, c) -> 'LVector':
        c = Fraction(c)
        return LVector(tuple(a * c for a in self.coords))

    __rmul__ = __mul__

    def as_scalars(self) -> HVector:
        return tuple(Scalar(c) for c in self.coords)

    def __str__(self):
        return '(' + ', '.join(str(c) for c in self.coords) + ')'


Vectorish = Union[LVector, Sequence]


def _coords(v: Vectorish) -> Tuple:
    return v.coords if isinstance(v, LVector) else tuple(v)


# ── Lattice ───────────────────────────────────────────────────────

@dataclass(frozen=True)
class LatticeData:
    """Validated even nondegenerate lattice."""
    rank: int
    gram: Tuple[Tuple[int, ...], ...]
    signature: Tuple[int, int] = (0, 0)
    radical_set: Tuple[int, ...] = field(default=())

    @property
    def gram_matrix(self) -> np.ndarray:
        return np.array(self.gram, dtype=np.int64)

    @property
    def gram_inverse(self) -> Tuple[Tuple[Fraction, ...], ...]:
        inv = Matrix(self.gram).inv()
        return tuple(tuple(Fraction(int(x.p), int(x.q)) for x in inv.row(i)) for i in range(self.rank))

    @property
    def is_negative_definite(self) -> bool:
        return self.signature[0] == 0

    @property
    def is_positive_definite(self) -> bool:
        return self.signature[1] == 0

    def basis_vector(self, i: int) -> LVector:
        return LVector(tuple(Fraction(int(i == j)) for j in range(self.rank)))

    def basis(self) -> List[LVector]:
        return [self.basis_vector(i) for i in range(self.rank)]

    def vector(self, *coords) -> LVector:
        v = LVector.of(*coords)
        if v.rank != self.rank:
            raise DimensionMismatch(f"expected {self.rank} coordinates, got {v.rank}")
        return v

    def pair(self, u: Vectorish, v: Vectorish):
        """Bilinear form; rational in, Fraction out, Scalar coordinates give a Scalar."""
        return pairing(self, u, v)

    def norm(self, u: Vectorish):
        return pairing(self, u, u)

    def to_dict(self) -> dict:
        return {
            'rank': self.rank,
            'gram': [list(r) for r in self.gram],
            'signature': list(self.signature),
        }


def _validate_gram(gram) -> Tuple[Tuple[int, ...], ...]:
    rows = [list(r) for r in gram]
    d = len(rows)
    if d == 0 or any(len(r) != d for r in rows):
        raise DimensionMismatch("Gram matrix must be square and nonempty")
    out = []
    for r in rows:
        line = []
        for x in r:
            if Fraction(x).denominator != 1:
                raise LatticeError(f"Gram entry {x} is not an integer")
            line.append(int(x))
        out.append(tuple(line))
    for i in range(d):
        for j in range(d):
            if out[i][j] != out[j][i]:
                raise NotSymmetric(f"gram[{i}][{j}]={out[i][j]} but gram[{j}][{i}]={out[j][i]}")
    for i in range(d):
        if out[i][i] % 2:
            raise OddDiagonal(f"<a{i + 1},a{i + 1}> = {out[i][i]} is odd")
    if Matrix(out).det() == 0:
        raise Degenerate("Gram determinant is zero")
    return tuple(out)


def load_lattice(gram) -> LatticeData:
    """
    Validate an integer Gram matrix and build LatticeData.

    Raises:
        OddDiagonal, Degenerate, NotSymmetric, DimensionMismatch
    """
    g = _validate_gram(gram)
    provisional = LatticeData(rank=len(g), gram=g)
    _, norms = _orthogonal_basis(provisional)
    sig = (sum(1 for q in norms if q > 0), sum(1 for q in norms if q < 0))
    lattice = LatticeData(rank=len(g), gram=g, signature=sig)
    radicals = set()
    for h in orthonormal_basis(lattice):
        for c in h:
            radicals.update(label for label in c.radicals() if label != 1)
    lattice = LatticeData(rank=len(g), gram=g, signature=sig, radical_set=tuple(sorted(radicals)))
    logger.debug(f"Loaded lattice rank={lattice.rank} signature={sig} radicals={lattice.radical_set}")
    return lattice


def load_lattice_file(path: Union[str, Path]) -> LatticeData:
    """Load {"gram": [[...], ...]} from a JSON file."""
    with open(path, 'r') as f:
        data = json.load(f)
    if not isinstance(data, dict) or 'gram' not in data:
        raise LatticeError(f"{path}: expected an object with a 'gram' key")
    return load_lattice(data['gram'])


def pairing(lattice: LatticeData, u: Vectorish, v: Vectorish):
    """Exact value of <u, v> = uᵀ·G·v."""
    u, v = _coords(u), _coords(v)
    if len(u) != lattice.rank or len(v) != lattice.rank:
        raise DimensionMismatch(f"rank {lattice.rank} lattice, vectors of length {len(u)} and {len(v)}")
    total = 0
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            g = lattice.gram[i][j]
            if g and vj:
                total = ui * vj * g + total
    if isinstance(total, int):
        return Fraction(total)
    return total


def _orthogonal_basis(lattice: LatticeData, preferred: Sequence[Vectorish] = ()) -> Tuple[List[Tuple[Fraction, ...]], List[Fraction]]:
    """Rational Gram–Schmidt; preferred directions are taken first when anisotropic."""
    d = lattice.rank
    candidates = [tuple(Fraction(c) for c in _coords(p)) for p in preferred]
    candidates += [tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)]
    ortho: List[Tuple[Fraction, ...]] = []
    norms: List[Fraction] = []

    def residual(c):
        r = list(c)
        for w, q in zip(ortho, norms):
            coef = pairing(lattice, c, w) / q
            if coef:
                r = [a - coef * b for a, b in zip(r, w)]
        return tuple(r)

    while len(ortho) < d:
        residuals = [r for r in (residual(c) for c in candidates) if any(r)]
        chosen = next((r for r in residuals if pairing(lattice, r, r) != 0), None)
        if chosen is None:
            for r1, r2 in itertools.combinations(residuals, 2):
                if pairing(lattice, r1, r2) != 0:
                    chosen = tuple(a + b for a, b in zip(r1, r2))
                    break
        if chosen is None:
            raise Degenerate("orthogonal complement is totally isotropic")
        ortho.append(chosen)
        norms.append(pairing(lattice, chosen, chosen))
    return ortho, norms


def orthonormal_basis(lattice: LatticeData, preferred: Sequence[Vectorish] = ()) -> List[HVector]:
    """
    Vectors h_1..h_d with <h_a, h_b> = δ_ab over the scalar field.

    Args:
        lattice: validated lattice
        preferred: directions to place first; h_1 ∈ C·preferred[0] when that
            vector is anisotropic, h_2 ∈ C·preferred[1] when it is also
            orthogonal to preferred[0], and so on.
    """
    ortho, norms = _orthogonal_basis(lattice, preferred)
    basis = []
    for w, q in zip(ortho, norms):
        inv_root = sqrt(q).inverse()
        basis.append(tuple(inv_root * c for c in w))
    return basis


def signature(lattice: LatticeData) -> Tuple[int, int]:
    """Sylvester signature (positive count, negative count)."""
    _, norms = _orthogonal_basis(lattice)
    return sum(1 for q in norms if q > 0), sum(1 for q in norms if q < 0)


def find_negative_partner(lattice: LatticeData, alpha: Vectorish, radius: int = 10) -> LVector:
    """
    β ∈ L with <β,β> < 0 and <α,β> < 0, searched over coordinate balls of growing radius.

    Ties go to the lexicographically least coordinate tuple of the smallest radius.

    Raises:
        NoPartner if L is positive definite or nothing is found within `radius`.
    """
    if lattice.is_positive_definite:
        raise NoPartner("positive definite lattice has no negative-norm vectors")
    alpha = tuple(Fraction(c) for c in _coords(alpha))
    for r in range(1, radius + 1):
        for coords in itertools.product(range(-r, r + 1), repeat=lattice.rank):
            if max(abs(c) for c in coords) != r:
                continue
            if pairing(lattice, coords, coords) < 0 and pairing(lattice, alpha, coords) < 0:
                logger.debug(f"Negative partner of {alpha}: {coords} (radius {r})")
                return LVector.of(*coords)
    raise NoPartner(f"no negative partner for {alpha} within radius {radius}")


def isotropic_split(lattice: LatticeData, alpha: Vectorish, radius: int = 10) -> Tuple[LVector, LVector]:
    """
    Split an isotropic α as γ + β with <γ,β> = 0, <γ,γ> > 0 and <β,β> < 0.

    β is the projection of α onto the negative partner of α.
    """
    alpha = LVector.of(*_coords(alpha))
    if pairing(lattice, alpha, alpha) != 0:
        raise LatticeError(f"{alpha} is not isotropic")
    partner = find_negative_partner(lattice, alpha, radius=radius)
    p = pairing(lattice, alpha, partner)
    q = pairing(lattice, partner, partner)
    beta = partner * (p / q)
    gamma = alpha - beta
    return gamma, beta
