"""
Tests for the Scalar field and exact linear algebra.
"""

from fractions import Fraction

import pytest

from engines.algebra import linalg
from engines.algebra.scalars import Scalar, ScalarDivisionError, arith, scalar_sum, sqrt


class TestScalarArithmetic:
    def test_rational_sum(self):
        assert Scalar(Fraction(1, 2)) + Scalar(Fraction(1, 3)) == Fraction(5, 6)
        assert str(arith('add', Fraction(1, 2), Fraction(1, 3))) == '5/6'

    def test_sqrt_squares(self):
        assert sqrt(2) * sqrt(2) == 2
        assert sqrt(-1) * sqrt(-1) == -1
        assert sqrt(8) == Scalar.radical(2, 2)

    def test_inverse_of_root(self):
        assert sqrt(2).inverse() == Scalar.radical(2, Fraction(1, 2))
        assert (sqrt(2) + 1) * (sqrt(2) + 1).inverse() == 1

    def test_mixed_radicals(self):
        x = sqrt(2) + sqrt(3)
        assert x * x == 5 + Scalar.radical(6, 2)
        assert x / x == 1

    def test_sqrt_of_fraction(self):
        assert sqrt(Fraction(1, 2)) * sqrt(Fraction(1, 2)) == Fraction(1, 2)

    def test_division_by_zero(self):
        with pytest.raises(ScalarDivisionError):
            Scalar(1) / Scalar(0)
        with pytest.raises(ZeroDivisionError):
            Scalar(0).inverse()

    def test_sqrt_zero_rejected(self):
        with pytest.raises(ValueError, match="sqrt"):
            sqrt(0)

    def test_conjugation(self):
        x = 3 + sqrt(2)
        assert x.conjugate(2) == 3 - sqrt(2)
        assert (Scalar(1) + sqrt(-1)).conjugate(-1) == 1 - sqrt(-1)

    def test_to_fraction(self):
        assert Scalar(7).to_fraction() == 7
        with pytest.raises(ValueError):
            sqrt(5).to_fraction()

    def test_string_forms(self):
        assert str(sqrt(-1)) == 'i'
        assert str(sqrt(2)) == '√2'
        assert str(sqrt(-2)) == 'i√2'
        assert str(Scalar(0)) == '0'

    def test_hash_matches_rationals(self):
        assert hash(Scalar(Fraction(3, 4))) == hash(Fraction(3, 4))
        assert len({Scalar(2), Scalar(Fraction(4, 2))}) == 1

    def test_scalar_sum(self):
        assert scalar_sum([1, Fraction(1, 2), sqrt(2), -sqrt(2)]) == Fraction(3, 2)

    def test_unknown_op(self):
        with pytest.raises(ValueError, match="Unknown"):
            arith('pow', 1, 2)


class TestLinalg:
    def test_solve_and_inverse(self):
        a = linalg.as_matrix([[2, 1], [1, 1]])
        x = linalg.solve(a, [3, 2])
        assert list(x) == [1, 1]
        inv = linalg.inverse(a)
        assert linalg.equal(linalg.matmul(a, inv), linalg.identity(2))

    def test_inconsistent_system(self):
        a = linalg.as_matrix([[1, 1], [2, 2]])
        assert linalg.solve(a, [1, 3]) is None

    def test_nullspace_and_rank(self):
        a = linalg.as_matrix([[1, 2, 3], [2, 4, 6]])
        assert linalg.rank(a) == 1
        kernel = linalg.nullspace(a)
        assert len(kernel) == 2
        for v in kernel:
            assert all(sum((a[i, j] * v[j] for j in range(3)), Scalar(0)) == 0 for i in range(2))

    def test_irrational_entries(self):
        a = linalg.as_matrix([[sqrt(2), 0], [0, sqrt(3)]])
        assert linalg.trace(linalg.inverse(a)) == sqrt(2) / 2 + sqrt(3) / 3

    def test_singular_inverse(self):
        with pytest.raises(ValueError, match="singular"):
            linalg.inverse(linalg.as_matrix([[1, 2], [2, 4]]))
