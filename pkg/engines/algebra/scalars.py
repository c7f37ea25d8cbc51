"""
Scalars — exact arithmetic in multi-quadratic fields Q(√d1, ..., √dm).
A Scalar is a finite sum of rational multiples of square roots of square-free
integers. Negative radicands use the embedding √d = i·√|d|.
"""

import logging
import numbers
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Union

from sympy import factorint

logger = logging.getLogger(__name__)

Number = Union[int, Fraction, 'Scalar']


class ScalarDivisionError(ZeroDivisionError):
    """Raised when dividing by the zero Scalar."""


def _radical_product(a: int, b: int):
    """√a·√b = coeff·√label for square-free a, b."""
    g = gcd(abs(a), abs(b))
    m = abs(a) * abs(b) // (g * g)
    if a < 0 and b < 0:
        return -g, m
    if a < 0 or b < 0:
        return g, -m
    return g, m


def _prime_support(label: int) -> List[int]:
    primes = sorted(factorint(abs(label)).keys()) if abs(label) > 1 else []
    if label < 0:
        primes.append(-1)
    return primes


class Scalar:
    """
    Element of a multi-quadratic extension of the rationals.

    Stored as {radical label: rational coefficient}; label 1 is the rational
    part and label -1 is i. Zero is the empty mapping, so equality is
    structural.
    """

    __slots__ = ('_terms', '_hash')

    def __init__(self, value: Number = 0):
        if isinstance(value, Scalar):
            self._terms = value._terms
        elif isinstance(value, (int, Fraction)):
            self._terms = {1: Fraction(value)} if value else {}
        elif isinstance(value, numbers.Integral):
            self._terms = {1: Fraction(int(value))} if value else {}
        else:
            raise TypeError(f"Cannot build a Scalar from {type(value).__name__}")
        self._hash = None

    @classmethod
    def _from_terms(cls, terms: Dict[int, Fraction]) -> 'Scalar':
        s = cls.__new__(cls)
        s._terms = {k: v for k, v in terms.items() if v}
        s._hash = None
        return s

    @classmethod
    def radical(cls, label: int, coeff: Number = 1) -> 'Scalar':
        """coeff·√label for a square-free label."""
        return cls(coeff) * cls._from_terms({label: Fraction(1)})

    # ── Inspection ────────────────────────────────────────────────

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    @property
    def is_rational(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 1 in self._terms)

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self._terms.get(1, Fraction(0))

    def radicals(self) -> List[int]:
        return sorted(self._terms)

    def generators(self) -> List[int]:
        """Primes (and -1 for i) whose square roots occur in this Scalar."""
        gens = set()
        for label in self._terms:
            gens.update(_prime_support(label))
        return sorted(gens, key=lambda p: (p < 0, p))

    # ── Conjugation ───────────────────────────────────────────────

    def conjugate(self, p: int) -> 'Scalar':
        """Field automorphism √p ↦ −√p (p = -1 flips i, i.e. complex conjugation)."""
        if p == -1:
            return Scalar._from_terms({k: (-v if k < 0 else v) for k, v in self._terms.items()})
        return Scalar._from_terms({k: (-v if k % p == 0 else v) for k, v in self._terms.items()})

    def inverse(self) -> 'Scalar':
        if not self._terms:
            raise ScalarDivisionError("division by zero Scalar")
        if self.is_rational:
            return Scalar._from_terms({1: 1 / self._terms[1]})
        numerator = Scalar(1)
        norm = self
        for p in self.generators():
            conj = norm.conjugate(p)
            numerator = numerator * conj
            norm = norm * conj
        return numerator * (1 / norm.to_fraction())

    # ── Arithmetic ────────────────────────────────────────────────

    @staticmethod
    def _coerce(other) -> 'Scalar':
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction, numbers.Integral)):
            return Scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for k, v in other._terms.items():
            terms[k] = terms.get(k, 0) + v
        return Scalar._from_terms(terms)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._from_terms({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar._from_terms({k: v * other for k, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_rational:
            return self * other._terms.get(1, 0)
        if self.is_rational:
            return other * self._terms.get(1, 0)
        terms: Dict[int, Fraction] = {}
        for a, x in self._terms.items():
            for b, y in other._terms.items():
                c, label = _radical_product(a, b)
                terms[label] = terms.get(label, 0) + c * x * y
        return Scalar._from_terms(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ScalarDivisionError("division by zero")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = Scalar(1)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    # ── Comparison ────────────────────────────────────────────────

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if self.is_rational:
                self._hash = hash(self._terms.get(1, Fraction(0)))
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # ── Display ───────────────────────────────────────────────────

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if not self._terms:
            return '0'
        parts = []
        for label in sorted(self._terms, key=lambda k: (abs(k), k)):
            coeff = self._terms[label]
            if label == 1:
                parts.append(str(coeff))
                continue
            root = 'i' if label == -1 else (f"i√{-label}" if label < 0 else f"√{label}")
            if coeff == 1:
                parts.append(root)
            elif coeff == -1:
                parts.append(f"-{root}")
            elif coeff.denominator == 1:
                parts.append(f"{coeff}{root}")
            else:
                parts.append(f"({coeff}){root}")
        return '+'.join(parts).replace('+-', '-')


ZERO = Scalar(0)
ONE = Scalar(1)


def sqrt(n: Union[int, Fraction]) -> Scalar:
    """
    Square root c·√m with m square-free, n = c²m.

    Rationals are accepted too: √(p/q) = √(pq)/q.
    """
    n = Fraction(n)
    if n == 0:
        raise ValueError("sqrt(0) is not a unit of the field")
    if n.denominator != 1:
        return sqrt(n.numerator * n.denominator) / n.denominator
    value = int(n)
    coeff, label = 1, 1
    for p, e in factorint(abs(value)).items():
        coeff *= p ** (e // 2)
        if e % 2:
            label *= p
    if value < 0:
        label = -label
    return Scalar.radical(label, coeff)


def arith(op: str, a: Number, b: Number) -> Scalar:
    """Dispatch one of add/sub/mul/div on two field elements."""
    a, b = Scalar(a), Scalar(b)
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'mul':
        return a * b
    if op == 'div':
        return a / b
    raise ValueError(f"Unknown scalar operation: {op}")


def scalar_sum(values: Iterable[Number]) -> Scalar:
    total = Scalar(0)
    for v in values:
        total = total + v
    return total
