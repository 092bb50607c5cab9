"""
Tests for Bernoulli numbers, Eisenstein series, Delta, j and Hecke operators
"""
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "python"))

from kernel.base import DenominatorNotPUnit, InvalidPrime, InvalidWeight, NotInSpace, PreconditionViolated
from kernel.modforms import (
    basis_series,
    bernoulli,
    bernoulli_numbers,
    bernoulli_poly,
    check_eisenstein_congruence,
    cusp_isomorphism_check,
    decompose_in_basis,
    delta_eisenstein,
    delta_eta,
    dim_Mk,
    dim_Sk,
    eisenstein_E,
    eisenstein_Gfrak,
    eisenstein_Gstar,
    hecke_operator,
    j_invariant_times_q,
    monomial_basis,
    ramanujan_691_decomposition,
    ramanujan_quotient_series,
    zeta_neg,
    zeta_nonpositive,
)
from kernel.qseries import monomial


class TestBernoulli:
    """Bernoulli numbers with B_1 = -1/2 and the zeta values they give"""

    def test_table(self):
        table = bernoulli_numbers(18)
        assert table[0] == 1
        assert table[1] == Fraction(-1, 2)
        assert table[2] == Fraction(1, 6)
        assert table[4] == Fraction(-1, 30)
        assert table[12] == Fraction(-691, 2730)
        assert table[14] == Fraction(7, 6)
        assert table[16] == Fraction(-3617, 510)
        assert table[18] == Fraction(43867, 798)

    def test_odd_entries_vanish(self):
        table = bernoulli_numbers(40)
        assert all(table[k] == 0 for k in range(3, 41, 2))

    def test_table_bounds(self):
        with pytest.raises(IndexError):
            bernoulli_numbers(4)[5]

    def test_signs_alternate(self):
        for k in range(2, 60, 2):
            expected = 1 if (k // 2) % 2 else -1
            assert (bernoulli(k) > 0) == (expected > 0), f"B_{k} has the wrong sign"

    def test_polynomial(self):
        assert bernoulli_poly(1, Fraction(1)) == Fraction(1, 2)
        assert bernoulli_poly(6, 0) == bernoulli(6)
        assert (bernoulli_poly(4, 10) - bernoulli(4)) / 4 == 2025

    def test_zeta_values(self):
        assert zeta_nonpositive(0) == Fraction(-1, 2)
        assert zeta_neg(1) == Fraction(-1, 12)
        assert zeta_neg(2) == 0
        assert zeta_neg(11) == Fraction(691, 32760)


class TestEisenstein:
    """The three normalizations of the Eisenstein series"""

    def test_leading_coefficients(self):
        assert eisenstein_E(4, 3)[1] == 240
        assert eisenstein_E(6, 3)[1] == -504
        assert eisenstein_E(12, 3)[1] == Fraction(65520, 691)

    def test_gfrak(self):
        g12 = eisenstein_Gfrak(12, 5)
        assert g12[0] == Fraction(691, 65520)
        assert g12[1] == 1
        assert eisenstein_Gfrak(4, 5)[5] == 126

    def test_gstar(self):
        g = eisenstein_Gstar(4, 5, 20)
        assert g[0] == Fraction(-31, 60)
        assert g[5] == 1
        assert g[10] == 9
        assert g[7] == 1 + 7**3

    def test_weight_validation(self):
        for k in (2, 3, -4):
            with pytest.raises(InvalidWeight):
                eisenstein_E(k, 5)

    def test_prime_validation(self):
        with pytest.raises(InvalidPrime):
            eisenstein_Gstar(4, 2, 5)
        with pytest.raises(InvalidPrime):
            eisenstein_Gstar(4, 9, 5)

    def test_products(self):
        e4, e6 = eisenstein_E(4, 60), eisenstein_E(6, 60)
        assert e4 * e4 == eisenstein_E(8, 60)
        assert e4 * e6 == eisenstein_E(10, 60)


class TestDelta:
    """The discriminant by its two constructions, and q*j"""

    def test_first_coefficients(self, delta_coefficients):
        delta = delta_eta(19)
        assert delta[0] == 0
        assert [delta[n] for n in range(1, 20)] == delta_coefficients

    def test_constructions_agree(self):
        reference = delta_eta(100)
        assert delta_eta(100, "product") == reference
        assert delta_eisenstein(100) == reference

    def test_unknown_construction(self):
        with pytest.raises(ValueError):
            delta_eta(10, "sieve")

    def test_j(self):
        qj = j_invariant_times_q(3)
        assert list(qj)[:3] == [1, 744, 196884]

    def test_quotient_series(self):
        quotient = ramanujan_quotient_series(200)
        assert quotient.is_integral()
        assert quotient[7] == -2861568
        assert quotient[19] == -168582124800


class TestSpaces:
    """Dimensions, the monomial basis and exact decomposition"""

    def test_dimensions(self):
        assert dim_Mk(0) == 1
        assert dim_Mk(2) == 0
        assert dim_Mk(12) == 2
        assert dim_Mk(14) == 1
        assert dim_Sk(12) == 1
        assert dim_Sk(24) == 2
        assert dim_Mk(7) == 0

    def test_monomial_basis(self):
        assert monomial_basis(12) == [(3, 0), (0, 2)]
        assert monomial_basis(2) == []
        for k in range(0, 201, 2):
            assert len(monomial_basis(k)) == dim_Mk(k), f"basis size differs at k={k}"

    def test_cusp_isomorphism(self):
        assert cusp_isomorphism_check(200).passed

    def test_decompose_delta(self):
        assert decompose_in_basis(delta_eta(30), 12) == [Fraction(1, 1728), Fraction(-1, 1728)]

    def test_decompose_round_trip(self):
        x = decompose_in_basis(eisenstein_E(16, 40), 16)
        combination = sum(
            (series.scale(c) for c, series in zip(x, basis_series(16, 40))),
            eisenstein_E(16, 40).scale(0),
        )
        assert combination == eisenstein_E(16, 40)

    def test_not_in_space(self):
        e4 = eisenstein_E(4, 30)
        with pytest.raises(NotInSpace):
            decompose_in_basis(e4 * e4 * e4 + monomial(5, 30), 12)
        with pytest.raises(NotInSpace):
            decompose_in_basis(e4, 2)

    def test_too_few_coefficients(self):
        with pytest.raises(PreconditionViolated):
            decompose_in_basis(eisenstein_E(24, 1), 24)


class TestHecke:
    """T_p acts by eigenvalues on Delta and the Eisenstein series"""

    def test_delta_eigenform(self):
        assert hecke_operator(delta_eta(60), 2, 12) == delta_eta(30).scale(-24)
        assert hecke_operator(delta_eta(60), 3, 12) == delta_eta(20).scale(252)

    def test_eisenstein_eigenform(self):
        assert hecke_operator(eisenstein_Gfrak(4, 60), 2, 4) == eisenstein_Gfrak(4, 30).scale(9)

    def test_needs_prime(self):
        with pytest.raises(InvalidPrime):
            hecke_operator(delta_eta(20), 4, 12)


class TestCongruences:
    """The 691 decomposition and congruences between Eisenstein series"""

    def test_691_decomposition(self):
        outcome = ramanujan_691_decomposition(30)
        assert outcome["alpha"] == Fraction(-762048, 691)
        assert outcome["numeratorModulo691"] == 125
        assert outcome["expectedModulo691"] == 125
        assert outcome["impliesCongruence"]
        assert outcome["identityVerified"]

    def test_unregularized_variant(self):
        report = check_eisenstein_congruence(5, 6, 26, 2, 60)
        assert report.passed
        assert report.min_valuation >= 2
        assert report.bound == 2

    def test_regularized_variant(self):
        report = check_eisenstein_congruence(5, 4, 24, 2, 60, c=2)
        assert report.passed
        assert report.details["variant"] == "b"

    def test_equal_weights_give_infinite_valuation(self):
        report = check_eisenstein_congruence(7, 4, 4, 3, 20)
        assert report.min_valuation is None
        assert report.to_dict()["minValuation"] == "inf"

    def test_denominator_divisible_by_p(self):
        with pytest.raises(DenominatorNotPUnit):
            check_eisenstein_congruence(5, 4, 24, 2, 20)

    def test_weights_not_congruent(self):
        with pytest.raises(PreconditionViolated):
            check_eisenstein_congruence(5, 6, 8, 1, 20)

    def test_bad_regularizer(self):
        with pytest.raises(PreconditionViolated):
            check_eisenstein_congruence(5, 4, 24, 2, 20, c=10)
