"""
Vertex Engine — modes of Y(v,z) on untwisted modules and Y_M(v,z) on θ-twisted ones.

Modes are computed by structural recursion on v: peel the leftmost creation
operator α_i(−k) of a monomial and convolve the modes of ∂^{(k−1)}α_i(z)
against the modes of the remaining vector. Only finitely many terms hit a
fixed w, so everything is exact. The twisted field is Y_M(v,z) = W(e^{Δ_z}v, z).
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
from sympy import Poly, Rational, expand, log, series, sqrt as sym_sqrt, symbols

from engines.algebra.fock import (
    TWISTED, UNTWISTED, FockElement, FockMonomial, ModeParityError, SectorMismatch,
    basis_mode, grade, heisenberg_degree, mode_action, project_eigen, theta,
)
from engines.algebra.group_ext import Cocycle, GroupRep, epsilon
from engines.algebra.lattice import LatticeData, pairing
from engines.algebra.scalars import Scalar

logger = logging.getLogger(__name__)

Terms = Dict[FockMonomial, Scalar]


def binomial(x, k: int) -> Fraction:
    """C(x, k) by falling factorial; x may be any rational."""
    if k < 0:
        return Fraction(0)
    x = Fraction(x)
    num = Fraction(1)
    for j in range(k):
        num *= x - j
    return num / math.factorial(k)


def _add(acc: Terms, mono: FockMonomial, value) -> None:
    acc[mono] = acc.get(mono, Scalar(0)) + value


def _prune(acc: Terms) -> Terms:
    return {m: c for m, c in acc.items() if c}


def _positive_modes(top: Fraction, twisted: bool) -> Iterator:
    """1, 2, … (or ½, 3/2, …) up to and including top."""
    if twisted:
        m = Fraction(1, 2)
        while m <= top:
            yield m
            m += 1
    else:
        for m in range(1, math.floor(top) + 1):
            yield m


# ── Δ operator ────────────────────────────────────────────────────

@lru_cache(maxsize=None)
def _delta_table(order: int) -> Dict[Tuple[int, int], Fraction]:
    x, y, t = symbols('x y t')
    expr = -log((sym_sqrt(1 + t * x) + sym_sqrt(1 + t * y)) / 2)
    truncated = expand(series(expr, t, 0, order + 1).removeO())
    table: Dict[Tuple[int, int], Fraction] = {}
    if truncated == 0:
        return table
    for (_, m, n), coeff in Poly(truncated, t, x, y).terms():
        coeff = Rational(coeff)
        if coeff != 0:
            table[(m, n)] = Fraction(int(coeff.p), int(coeff.q))
    return table


class DeltaOperator:
    """
    Δ_z = Σ c_mn Σ_ab h_a(m)h_a(n) z^{−m−n} over (m,n) ≠ (0,0).

    c_mn are the Taylor coefficients of −log((√(1+x) + √(1+y))/2); the table
    grows on demand.
    """

    def __init__(self, order: int = 6):
        self.order = 0
        self.coefficients: Dict[Tuple[int, int], Fraction] = {}
        self.ensure(order)

    def ensure(self, order: int) -> None:
        if order <= self.order:
            return
        self.coefficients = _delta_table(order)
        self.order = order
        logger.debug(f"Δ coefficient table extended to order {order}")

    def coefficient(self, m: int, n: int) -> Fraction:
        self.ensure(m + n)
        return self.coefficients.get((m, n), Fraction(0))

    def terms(self, max_total: int) -> List[Tuple[int, int, Fraction]]:
        self.ensure(max_total)
        return [
            (m, n, c) for (m, n), c in sorted(self.coefficients.items())
            if 0 < m + n <= max_total and c
        ]


# ── Reports ───────────────────────────────────────────────────────

@dataclass
class CommutatorReport:
    """Both sides of a commutator-formula instance."""
    lhs: FockElement
    rhs: FockElement
    label: str = ''

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {
            'label': self.label,
            'lhs': str(self.lhs),
            'rhs': str(self.rhs),
            'pass': self.passed,
        }


# ── Engine ────────────────────────────────────────────────────────

class VertexEngine:
    """
    Exact mode evaluation for one lattice (and, for the twisted sector, one T_χ).

    Responsibilities:
        - v_n w on untwisted modules V_{L+λ} and M(1,λ)
        - Y_M(v,z) modes on M(1)(θ)⊗T, including e^{Δ_z} and the 2^{−<β,β>} normalisation
        - Zero modes, commutator-formula and Virasoro checks

    Results are memoised per (monomial, mode, monomial); the engine is not
    meant to be shared across threads while it is filling its cache.
    """

    def __init__(self, lattice: LatticeData, rep: Optional[GroupRep] = None):
        self.lattice = lattice
        self.rep = rep
        self.cocycle = Cocycle.for_lattice(lattice)
        self.delta = DeltaOperator()
        self._gram_inverse = lattice.gram_inverse
        self._cache: Dict[tuple, Terms] = {}
        self._schur_cache: Dict[tuple, Dict[tuple, Fraction]] = {}
        self._rho_cache: Dict[tuple, np.ndarray] = {}

    @property
    def cache_size(self) -> int:
        return len(self._cache)

    # ── helpers ──

    def _pair_tail(self, beta, mu) -> Fraction:
        return pairing(self.lattice, beta, mu)

    def _pair_direction(self, beta, j: int) -> Fraction:
        """<β, α_j>."""
        total = Fraction(0)
        for i, b in enumerate(beta):
            if b:
                total += b * self.lattice.gram[i][j]
        return total

    def _bound(self, u: FockMonomial, w: FockMonomial, twisted: bool) -> Fraction:
        """u_p w = 0 for p above this value."""
        beta = u.tail
        if twisted:
            return u.degree + self._pair_tail(beta, beta) / 2 + w.degree - 1
        return u.degree + w.degree - 1 - self._pair_tail(beta, w.tail)

    def _annihilators(self, i: int, w: FockMonomial, twisted: bool) -> List:
        modes = sorted({k for k, j in w.modes if self.lattice.gram[i][j]})
        if not twisted:
            modes = [0] + modes
        return modes

    def _expand_plus(self, beta, modes) -> List[Tuple[Fraction, Fraction, tuple]]:
        """E^+ applied to a creation product: terms (z^{−q} power, coefficient, surviving modes)."""
        terms = [(Fraction(0), Fraction(1), ())]
        for k, j in modes:
            pb = self._pair_direction(beta, j)
            nxt = []
            for q, c, rem in terms:
                nxt.append((q, c, rem + ((k, j),)))
                if pb:
                    nxt.append((q + k, -c * pb, rem))
            terms = nxt
        return terms

    def _schur(self, beta, p, twisted: bool) -> Dict[tuple, Fraction]:
        """Coefficient of z^p in exp(Σ β(−s)/s z^s), s over positive (half-odd when twisted) modes."""
        key = (beta, p, twisted)
        hit = self._schur_cache.get(key)
        if hit is not None:
            return hit
        if p == 0:
            result = {(): Fraction(1)}
        else:
            acc: Dict[tuple, Fraction] = {}
            for s in _positive_modes(Fraction(p), twisted):
                for modes, c in self._schur(beta, p - s, twisted).items():
                    for j, bj in enumerate(beta):
                        if bj:
                            new = tuple(sorted(modes + ((s, j),), reverse=True))
                            acc[new] = acc.get(new, Fraction(0)) + c * bj
            result = {m: c / p for m, c in acc.items() if c}
        self._schur_cache[key] = result
        return result

    def _rho(self, beta) -> np.ndarray:
        key = tuple(beta)
        hit = self._rho_cache.get(key)
        if hit is None:
            if self.rep is None:
                raise SectorMismatch("lattice vectors need a T_χ module in the twisted sector")
            hit = self.rep.lattice_matrix(beta)
            self._rho_cache[key] = hit
        return hit

    # ── base cases ──

    def _untwisted_base(self, beta, n: int, w: FockMonomial) -> Terms:
        """(e^β)_n on P·e^μ."""
        mu = w.tail
        s = self._pair_tail(beta, mu)
        if s.denominator != 1:
            raise SectorMismatch(f"<β,μ> = {s} is not an integer")
        floor_mu = tuple(math.floor(m) for m in mu)
        sign = epsilon(self.cocycle, beta, floor_mu)
        new_tail = tuple(b + m for b, m in zip(beta, mu))
        acc: Terms = {}
        for q, c, rem in self._expand_plus(beta, w.modes):
            p = q - n - 1 - s
            if p < 0:
                continue
            for smodes, sc in self._schur(beta, int(p), False).items():
                mono = FockMonomial(tuple(sorted(rem + smodes, reverse=True)), new_tail)
                _add(acc, mono, Scalar(sign * c * sc))
        return acc

    def _twisted_base(self, beta, n: Fraction, w: FockMonomial) -> Terms:
        """W(e^β)_n on P·t_j: 2^{−<β,β>} z^{−<β,β>/2} E^− E^+ ρ(e_β)."""
        a = self._pair_tail(beta, beta)
        factor = Fraction(2) ** int(-a)
        if any(beta):
            rho = self._rho(beta)
            column = [(i, rho[i, w.tail]) for i in range(rho.shape[0]) if rho[i, w.tail]]
        else:
            column = [(w.tail, Scalar(1))]
        acc: Terms = {}
        for q, c, rem in self._expand_plus(beta, w.modes):
            p = q - n - 1 + a / 2
            if p < 0 or (2 * p).denominator != 1:
                continue
            for smodes, sc in self._schur(beta, p, True).items():
                modes = tuple(sorted(rem + smodes, reverse=True))
                for i, r in column:
                    _add(acc, FockMonomial(modes, i), r * (factor * c * sc))
        return acc

    # ── recursion ──

    def _mode(self, u: FockMonomial, n, w: FockMonomial, twisted: bool) -> Terms:
        key = (u, n, w, twisted)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if not u.modes:
            beta = u.tail
            result = self._twisted_base(beta, n, w) if twisted else self._untwisted_base(beta, n, w)
        else:
            k, i = u.modes[0]
            rest = FockMonomial(u.modes[1:], u.tail)
            acc: Terms = {}
            top = self._bound(rest, w, twisted) - n + k
            for m in _positive_modes(top, twisted):
                c = binomial(m - 1, k - 1)
                if not c:
                    continue
                for mono, coeff in self._mode(rest, n + m - k, w, twisted).items():
                    _add(acc, mono.with_mode(m, i), coeff * c)
            for m in self._annihilators(i, w, twisted):
                c = binomial(-m - 1, k - 1)
                if not c:
                    continue
                for f, w2 in basis_mode(self.lattice, i, m, w):
                    for mono, coeff in self._mode(rest, n - m - k, w2, twisted).items():
                        _add(acc, mono, coeff * (c * f))
            result = acc
        result = _prune(result)
        self._cache[key] = result
        return result

    def _apply(self, v: FockElement, n, w: FockElement, twisted: bool) -> FockElement:
        acc: Terms = {}
        for u, cu in v.items():
            for x, cx in w.items():
                for mono, c in self._mode(u, n, x, twisted).items():
                    _add(acc, mono, cu * cx * c)
        return FockElement(self.lattice, w.sector, acc)

    # ── public API ──

    def untwisted_mode(self, v: FockElement, n, w: FockElement) -> FockElement:
        """Coefficient of z^{−n−1} in Y(v,z)w."""
        if v.sector != UNTWISTED or w.sector != UNTWISTED:
            raise SectorMismatch("untwisted_mode needs untwisted v and w")
        n = Fraction(n)
        if n.denominator != 1:
            raise ModeParityError(f"untwisted modes are integers, got {n}")
        return self._apply(v, int(n), w, False)

    def w_mode(self, v: FockElement, n, w: FockElement) -> FockElement:
        """Coefficient of z^{−n−1} in W(v,z)w (no Δ-correction)."""
        if v.sector != UNTWISTED or w.sector != TWISTED:
            raise SectorMismatch("twisted modes need v ∈ V_L and w in the twisted sector")
        return self._apply(v, Fraction(n), w, True)

    def delta_correction(self, v: FockElement) -> Dict[int, FockElement]:
        """
        e^{Δ_z}v as {p: v_p} with e^{Δ_z}v = Σ_p z^{−p} v_p.

        Δ lowers the Heisenberg degree by m + n ≥ 1, so the series stops.
        """
        if v.sector != UNTWISTED:
            raise SectorMismatch("Δ acts on V_L")
        d = self.lattice.rank
        series_terms: Dict[int, FockElement] = {0: v}
        current: Dict[int, FockElement] = {0: v}
        power = 0
        while current:
            power += 1
            nxt: Dict[int, FockElement] = {}
            for p, x in current.items():
                deg = int(heisenberg_degree(x))
                if deg == 0:
                    continue
                for m, n, c in self.delta.terms(deg):
                    y = FockElement.zero(self.lattice)
                    for b in range(d):
                        inner = mode_action(self.lattice.basis_vector(b), n, x)
                        if inner.is_zero:
                            continue
                        for a in range(d):
                            g = self._gram_inverse[a][b]
                            if g:
                                y = y + mode_action(self.lattice.basis_vector(a), m, inner) * g
                    if y:
                        key = p + m + n
                        term = y * (c / power)
                        nxt[key] = nxt[key] + term if key in nxt else term
            nxt = {p: x for p, x in nxt.items() if x}
            for p, x in nxt.items():
                series_terms[p] = series_terms[p] + x if p in series_terms else x
            current = nxt
        return {p: x for p, x in sorted(series_terms.items()) if x}

    def twisted_mode(self, v: FockElement, n, w: FockElement) -> FockElement:
        """
        Coefficient of z^{−n−1} in Y_M(v,z)w = W(e^{Δ_z}v, z)w.

        Raises:
            ModeParityError when n ∉ ½Z, or n does not match the θ-eigenvalue of v.
        """
        n = Fraction(n)
        if (2 * n).denominator != 1:
            raise ModeParityError(f"twisted modes live in ½Z, got {n}")
        if not v.is_zero:
            even = (v - theta(v)).is_zero
            odd = (v + theta(v)).is_zero
            if even and n.denominator != 1:
                raise ModeParityError(f"θ-fixed vector needs an integer mode, got {n}")
            if odd and n.denominator == 1:
                raise ModeParityError(f"θ-odd vector needs a half-odd mode, got {n}")
        result = FockElement.zero(self.lattice, TWISTED)
        for p, vp in self.delta_correction(v).items():
            result = result + self.w_mode(vp, n - p, w)
        return result

    def mode(self, v: FockElement, n, w: FockElement) -> FockElement:
        """Dispatch on the sector of w."""
        if w.sector == TWISTED:
            return self.twisted_mode(v, n, w)
        return self.untwisted_mode(v, n, w)

    def zero_mode(self, v: FockElement, w: FockElement) -> FockElement:
        """
        o(v)w = v_{wt v − 1}w for homogeneous v.

        On the twisted sector the θ-odd part of v has no integer modes and
        contributes nothing.
        """
        if w.sector == TWISTED:
            v = project_eigen(v, 1)
        if v.is_zero or w.is_zero:
            return FockElement.zero(self.lattice, w.sector)
        return self.mode(v, grade(v) - 1, w)

    def truncation_bound(self, u: FockElement, v: FockElement) -> int:
        """Largest i with u_i v possibly nonzero (untwisted)."""
        bounds = [self._bound(a, b, False) for a in u.terms for b in v.terms]
        return math.floor(max(bounds)) if bounds else -1

    def commutator_check(self, u: FockElement, v: FockElement, m, n, w: FockElement) -> CommutatorReport:
        """[u_m, v_n]w against Σ_i C(m,i)(u_i v)_{m+n−i}w."""
        lhs = self.mode(u, m, self.mode(v, n, w)) - self.mode(v, n, self.mode(u, m, w))
        rhs = FockElement.zero(self.lattice, w.sector)
        for i in range(self.truncation_bound(u, v) + 1):
            c = binomial(m, i)
            if not c:
                continue
            uv = self.untwisted_mode(u, i, v)
            if uv:
                rhs = rhs + self.mode(uv, Fraction(m) + Fraction(n) - i, w) * c
        return CommutatorReport(lhs=lhs, rhs=rhs, label=f"[u_{m}, v_{n}]")

    def virasoro_check(self, m: int, n: int, w: FockElement) -> CommutatorReport:
        """[L(m), L(n)]w = (m−n)L(m+n)w + δ_{m+n,0}(m³−m)/12·d·w."""
        omega = conformal_vector(self.lattice)
        L = lambda k, x: self.mode(omega, k + 1, x)
        lhs = L(m, L(n, w)) - L(n, L(m, w))
        rhs = L(m + n, w) * (m - n)
        if m + n == 0:
            rhs = rhs + w * Fraction((m ** 3 - m) * self.lattice.rank, 12)
        return CommutatorReport(lhs=lhs, rhs=rhs, label=f"[L({m}), L({n})]")


def conformal_vector(lattice: LatticeData) -> FockElement:
    """ω = ½ Σ_ab G^{−1}_ab α_a(−1)α_b(−1)𝟏."""
    ginv = lattice.gram_inverse
    vac = FockElement.vacuum(lattice)
    omega = FockElement.zero(lattice)
    for a in range(lattice.rank):
        for b in range(lattice.rank):
            if ginv[a][b]:
                x = vac.create(lattice.basis_vector(b), 1).create(lattice.basis_vector(a), 1)
                omega = omega + x * (ginv[a][b] / 2)
    return omega
