"""
Tests for truncated q-series arithmetic
"""
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add python directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent / "python"))

from kernel.base import NonUnitConstantTerm, ZeroConstantTerm
from kernel.arithfun import euler_product, partition_count
from kernel.modforms import delta_eta
from kernel.qseries import QSeries, monomial, qs_inv, qs_nth_root, qs_pow, qs_substitute_qpow


class TestConstruction:
    """Truncation bookkeeping"""

    def test_short_coefficient_list_is_padded(self):
        series = QSeries([1, 2], 4)
        assert series.trunc == 4
        assert list(series.coeffs) == [1, 2, 0, 0, 0]

    def test_long_coefficient_list_is_cut(self):
        series = QSeries([1, 2, 3, 4], 1)
        assert list(series.coeffs) == [1, 2]

    def test_coefficients_are_fractions(self):
        assert all(isinstance(c, Fraction) for c in QSeries([1, Fraction(1, 2)], 3))

    def test_index_beyond_truncation_raises(self):
        with pytest.raises(IndexError):
            QSeries([1], 3)[4]

    def test_from_terms_drops_high_exponents(self):
        series = QSeries.from_terms({0: 1, 3: 5, 10: 7}, 5)
        assert series.support() == [0, 3]

    def test_negative_truncation_rejected(self):
        with pytest.raises(ValueError):
            QSeries([], -1)


class TestRingOperations:
    """Addition, multiplication and equality up to the common truncation"""

    def test_binomial_square(self):
        one_plus_q = QSeries([1, 1], 6)
        assert list(one_plus_q * one_plus_q) == [1, 2, 1, 0, 0, 0, 0]

    def test_rational_coefficients(self):
        product = QSeries([1, Fraction(1, 2)], 4) * QSeries([1, Fraction(-1, 2)], 4)
        assert list(product) == [1, 0, Fraction(-1, 4), 0, 0]

    def test_mixed_truncation_takes_minimum(self):
        total = QSeries([1, 1, 1, 1], 3) + QSeries([1, 1], 1)
        assert total.trunc == 1
        assert (QSeries([1, 1, 1, 1], 3) * QSeries([1, 1], 1)).trunc == 1

    def test_scalar_operations(self):
        series = QSeries([2, 4], 1)
        assert list(series * 3) == [6, 12]
        assert list(series / 2) == [1, 2]
        assert list(1 - series) == [-1, -4]

    def test_equality_with_scalar(self):
        assert QSeries([5], 3) == 5
        assert QSeries([5, 1], 3) != 5

    def test_commutative_product(self):
        a = QSeries([1, -3, Fraction(2, 7), 0, 9], 4)
        b = QSeries([Fraction(1, 3), 0, 0, 5, -1], 4)
        assert a * b == b * a


class TestInverseAndPowers:
    """Inverses, integer powers and roots"""

    def test_geometric_series(self):
        inverse = QSeries([1, -1], 10).inverse()
        assert list(inverse) == [1] * 11

    def test_non_unit_constant_term(self):
        inverse = qs_inv(QSeries([2, 1], 3))
        assert list(inverse) == [Fraction(1, 2), Fraction(-1, 4), Fraction(1, 8), Fraction(-1, 16)]

    def test_inverse_times_series_is_one(self):
        series = QSeries([3, -1, Fraction(5, 2), 0, 7, 1], 5)
        assert series * series.inverse() == QSeries.one(5)

    def test_zero_constant_term_cannot_be_inverted(self):
        with pytest.raises(ZeroConstantTerm):
            qs_inv(QSeries([0, 1], 3))

    def test_negative_power(self):
        # (1 - q)^-2 = sum (n + 1) q^n
        assert list(qs_pow(QSeries([1, -1], 6), -2)) == [n + 1 for n in range(7)]

    def test_power_zero_is_one(self):
        assert qs_pow(QSeries([0, 1], 4), 0) == QSeries.one(4)

    def test_dense_and_sparse_powers_agree(self):
        dense = QSeries([1, 1, 1, 1, 1, 1, 1, 1], 7)
        expected = dense * dense * dense * dense * dense
        assert qs_pow(dense, 5) == expected

    def test_square_root(self):
        square = QSeries([1, 2, 1], 8)
        assert list(qs_nth_root(square, 2)) == [1, 1, 0, 0, 0, 0, 0, 0, 0]

    def test_cube_root_roundtrip(self):
        series = QSeries([1, Fraction(1, 3), -2, 0, 5], 4)
        assert qs_pow(qs_nth_root(series, 3), 3) == series

    def test_root_needs_unit_constant_term(self):
        with pytest.raises(NonUnitConstantTerm):
            qs_nth_root(QSeries([2, 1], 3), 2)


    def test_partitions_from_delta_root(self):
        # (Delta/q)^(1/24) is the Euler product; its inverse counts partitions
        euler = qs_nth_root(delta_eta(41).divide_by_q(), 24)
        assert euler == euler_product(40)
        partitions = qs_inv(euler)
        assert [c.numerator for c in partitions] == [partition_count(n) for n in range(41)]


def _random_series(rng: random.Random, trunc: int, unit: bool = False) -> QSeries:
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(trunc + 1)]
    if unit or coeffs[0] == 0:
        coeffs[0] = Fraction(rng.choice([-3, -1, 1, 2, 7]), rng.randint(1, 4))
    return QSeries(coeffs, trunc)


class TestRingAxioms:
    """Randomized checks over Q[[q]] / (q^(N+1))"""

    @pytest.fixture
    def rng(self):
        return random.Random(2024)

    def test_associativity(self, rng):
        for _ in range(30):
            a, b, c = (_random_series(rng, 8) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert (a + b) + c == a + (b + c)

    def test_distributivity(self, rng):
        for _ in range(30):
            a, b, c = (_random_series(rng, 8) for _ in range(3))
            assert a * (b + c) == a * b + a * c

    def test_inverse(self, rng):
        for _ in range(30):
            a = _random_series(rng, 10, unit=True)
            assert a * qs_inv(a) == 1
            assert qs_inv(qs_inv(a)) == a

    def test_truncation_consistency(self, rng):
        for _ in range(30):
            a, b = _random_series(rng, 12, unit=True), _random_series(rng, 12)
            assert (a * b).truncate(5) == a.truncate(5) * b.truncate(5)
            assert qs_inv(a).truncate(5) == qs_inv(a.truncate(5))
            assert (a + b).truncate(5).trunc == 5


class TestStructuredOperations:
    """Binomial factors, substitution and shifts"""

    def test_mul_and_div_binomial_cancel(self):
        series = QSeries([1, 2, 3, 4, 5, 6], 5)
        assert series.mul_binomial(Fraction(-2, 3), 2).div_binomial(Fraction(-2, 3), 2) == series

    def test_mul_binomial_matches_product(self):
        series = QSeries([1, 2, 3, 4, 5, 6], 5)
        assert series.mul_binomial(-1, 3) == series * QSeries.from_terms({0: 1, 3: -1}, 5)

    def test_substitute_qpow(self):
        substituted = qs_substitute_qpow(QSeries([1, 1, 1, 1], 3), 2)
        assert list(substituted) == [1, 0, 1, 0]
        assert substituted.trunc == 3

    def test_shift_keeps_truncation(self):
        shifted = QSeries([1, 2, 3], 2).shift(1)
        assert list(shifted) == [0, 1, 2]

    def test_divide_by_q_lowers_truncation(self):
        divided = monomial(2, 5, 7).divide_by_q(2)
        assert divided.trunc == 3
        assert list(divided) == [7, 0, 0, 0]

    def test_divide_by_q_needs_vanishing_terms(self):
        with pytest.raises(ValueError):
            QSeries([1, 1], 3).divide_by_q()


class TestPresentation:
    """Text and JSON output"""

    def test_text(self):
        assert QSeries([1, -24, 0, 3], 3).to_text() == "1 - 24*q + 3*q^3 + O(q^4)"

    def test_text_negative_leading_term(self):
        assert QSeries([-1, 1], 1).to_text() == "-1 + q + O(q^2)"

    def test_text_zero_series(self):
        assert QSeries.zero(3).to_text() == "O(q^4)"

    def test_json_uses_exact_strings(self):
        data = QSeries([1, Fraction(65520, 691)], 1).to_json()
        assert data == {"trunc": 1, "coeffs": ["1", "65520/691"]}
        assert QSeries.from_json(data) == QSeries([1, Fraction(65520, 691)], 1)
