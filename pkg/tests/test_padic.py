"""
Tests for p-adic integers, power sums, regularized zeta values and Kummer congruences
"""
import random
import sys
from fractions import Fraction
from math import inf
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "python"))

from kernel.base import (
    DenominatorDivisibleByP,
    HypothesisFails,
    InvalidPrime,
    MixedContext,
    NegativeValuation,
    NonPIntegral,
    NonUnit,
    PreconditionViolated,
)
from kernel.padic import (
    IntPolynomial,
    PadicInt,
    bernoulli_padic_limit_check,
    kubota_leopoldt_congruence,
    kubota_leopoldt_rational,
    kubota_leopoldt_value,
    kummer_check,
    kummer_continuity,
    mazur_integrate_poly,
    mazur_moment,
    mellin_at_power,
    padic_from_fraction,
    padic_add,
    padic_from_rational,
    padic_inv,
    padic_mul,
    padic_neg,
    padic_pow,
    padic_sub,
    padic_valuation,
    power_sum,
    power_sum_closed,
    power_sum_star,
    riemann_sum_check,
    zeta_reg,
    zeta_reg_riemann_sum,
)


class TestPadicInt:
    """Z/p^N arithmetic with an explicit context"""

    def test_from_rational(self):
        assert padic_from_rational(1, 2, 5, 3).residue == 63
        assert padic_from_rational(0, 1, 5, 2).residue == 0
        assert padic_from_rational(-1, 12, 5, 2).residue == 2

    def test_reduced_before_checking(self):
        # 5/5 is 1, but the raw denominator still carries p
        with pytest.raises(DenominatorDivisibleByP) as excinfo:
            padic_from_rational(5, 5, 5, 2)
        assert not isinstance(excinfo.value, NegativeValuation)

    def test_negative_valuation(self):
        with pytest.raises(NegativeValuation):
            padic_from_rational(1, 5, 5, 2)

    def test_inverse(self):
        a = PadicInt(5, 2, 7)
        assert (a * a.inverse()).residue == 1
        assert a.inverse().residue == 18

    def test_prime_required(self):
        with pytest.raises(InvalidPrime):
            PadicInt(4, 2, 1)

    def test_named_operations(self):
        a, b = PadicInt(7, 2, 10), PadicInt(7, 2, 45)
        assert padic_add(a, b) == PadicInt(7, 2, 55)
        assert padic_sub(a, b) == PadicInt(7, 2, -35)
        assert padic_neg(a).residue == 39
        assert padic_mul(a, b).residue == 450 % 49
        assert padic_mul(a, padic_inv(a)).residue == 1
        assert padic_pow(a, 3) == a * a * a
        assert padic_pow(a, -2) == padic_inv(a * a)

    def test_non_unit(self):
        with pytest.raises(NonUnit):
            PadicInt(5, 2, 10).inverse()

    def test_mixed_context(self):
        with pytest.raises(MixedContext):
            PadicInt(5, 2, 1) + PadicInt(5, 3, 1)
        with pytest.raises(MixedContext):
            PadicInt(5, 2, 1) * PadicInt(7, 2, 1)

    def test_valuation(self):
        assert PadicInt(5, 3, 50).valuation == 2
        assert PadicInt(5, 3, 0).valuation == 3
        assert padic_valuation(0, 5) == inf
        assert padic_valuation(Fraction(1, 25), 5) == -2

    def test_ring_axioms(self):
        rng = random.Random(7)
        for _ in range(100):
            a, b, c = (PadicInt(7, 3, rng.randrange(343)) for _ in range(3))
            assert (a + b) * c == a * c + b * c
            assert a - a == PadicInt(7, 3, 0)
            assert -(-a) == a

    def test_powers(self):
        a = PadicInt(5, 3, 2)
        assert (a**10).residue == 1024 % 125
        assert a**-1 == a.inverse()

    def test_dict_round_trip(self):
        a = padic_from_fraction(Fraction(1, 3), 5, 4)
        assert PadicInt.from_dict(a.to_dict()) == a


class TestIntPolynomial:
    """Parsing and evaluation of integer polynomials"""

    def test_degree_limit_checked_before_expansion(self):
        with pytest.raises(PreconditionViolated):
            IntPolynomial.parse("x^1000000000", max_degree=100)
        with pytest.raises(PreconditionViolated):
            IntPolynomial.parse("(x + 1)^60 * x^50", max_degree=100)
        assert IntPolynomial.parse("x^100 - 1", max_degree=100).degree == 100

    def test_huge_constant_power_rejected(self):
        with pytest.raises(PreconditionViolated):
            IntPolynomial.parse("10^1000000 * x")
        with pytest.raises(PreconditionViolated):
            IntPolynomial.parse("(2^10)^10 * x")

    def test_powers_of_sums(self):
        assert IntPolynomial.parse("(x + 1)^3").coefficients == (1, 3, 3, 1)
        assert IntPolynomial.parse("2^3 * x").coefficients == (0, 8)

    def test_parse(self):
        h = IntPolynomial.parse("x^2 - x^22")
        assert h.terms() == [(2, 1), (22, -1)]
        assert h.degree == 22

    def test_parse_rejects_rationals(self):
        with pytest.raises(PreconditionViolated):
            IntPolynomial.parse("x/2")

    def test_parse_rejects_garbage(self):
        with pytest.raises(PreconditionViolated):
            IntPolynomial.parse("x^^")

    def test_trailing_zeros_trimmed(self):
        assert IntPolynomial((1, 0, 0)).degree == 0
        assert IntPolynomial(()).is_zero()

    def test_evaluate(self):
        h = IntPolynomial.parse("3*x^2 + 1")
        assert h.evaluate(4) == 49
        assert h.evaluate(4, 10) == 9

    def test_addition(self):
        total = IntPolynomial.parse("x + 1") + IntPolynomial.parse("x^3 - 1")
        assert total.terms() == [(1, 1), (3, 1)]


class TestPowerSums:
    """Direct and closed forms of sum n^k"""

    def test_values(self):
        assert power_sum(3, 10) == 2025
        assert power_sum(0, 7) == 6
        assert power_sum(1, 1) == 0

    def test_methods_agree(self):
        for k in range(11):
            for M in range(1, 201, 7):
                direct = sum(n**k for n in range(1, M))
                assert power_sum_closed(k, M) == direct, f"S_{k}({M})"
                assert power_sum(k, M) == direct

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_star_sweep(self, p):
        for N in range(1, 4):
            for k in range(9):
                direct = sum(n**k for n in range(1, p**N) if n % p)
                assert power_sum_star(k, p, N) == direct, f"S*_{k}({p}^{N})"

    def test_star(self):
        assert power_sum_star(2, 3, 2) == 159
        assert power_sum_star(0, 5, 2) == 20

    def test_limit_towards_bernoulli(self):
        report = bernoulli_padic_limit_check(1, 5, 4)
        assert report.passed
        report = bernoulli_padic_limit_check(4, 7, 4)
        assert report.passed
        assert report.details["monotone"]
        assert report.valuations == {1: 2, 2: 4, 3: 6, 4: 8}

    def test_limit_degenerate(self):
        with pytest.raises(NonPIntegral):
            bernoulli_padic_limit_check(0, 5, 3)
        with pytest.raises(NonPIntegral):
            bernoulli_padic_limit_check(4, 5, 3)


class TestRegularizedZeta:
    """(1 - c^{k+1})(1 - p^k) zeta(-k) and the Kummer congruences"""

    def test_value(self):
        assert zeta_reg(2, 5, 1) == -1
        assert zeta_reg(2, 5, 0) == 0

    def test_regularizer_validation(self):
        with pytest.raises(PreconditionViolated):
            zeta_reg(5, 5, 1)
        with pytest.raises(PreconditionViolated):
            zeta_reg(1, 5, 1)

    @pytest.mark.parametrize("c,p", [(2, 3), (2, 5), (3, 5), (2, 7), (3, 7)])
    def test_p_integral(self, c, p):
        for k in range(21):
            assert Fraction(zeta_reg(c, p, k)).denominator % p != 0

    def test_kummer(self):
        report = kummer_check(IntPolynomial.parse("x^2 - x^22"), 5, 2, 2)
        assert report.passed
        assert report.details["hypothesis"] == "pass"

    def test_kummer_zero_polynomial(self):
        report = kummer_check(IntPolynomial(()), 7, 2, 3)
        assert report.passed
        assert report.min_valuation is None

    def test_kummer_hypothesis_fails(self):
        with pytest.raises(HypothesisFails):
            kummer_check(IntPolynomial.parse("x"), 5, 1, 2)

    @pytest.mark.parametrize("p,N", [(p, N) for p in (3, 5, 7) for N in (1, 2, 3)])
    def test_kummer_random(self, p, N):
        rng = random.Random(p * 100 + N)
        period = (p - 1) * p ** (N - 1)
        regularizers = [c for c in (2, 3) if c % p]
        for _ in range(100):
            h = IntPolynomial(())
            for _ in range(rng.randint(1, 3)):
                k = rng.randint(0, 12)
                k2 = k + period * rng.randint(1, 2)
                alpha = rng.choice([-5, -3, -2, -1, 1, 2, 3, 5])
                h = h + IntPolynomial.monomial(k, alpha) + IntPolynomial.monomial(k2, -alpha)
            c = rng.choice(regularizers)
            assert kummer_check(h, p, N, c).passed, f"{h.to_text()} fails mod {p}^{N} with c = {c}"

    def test_continuity(self):
        assert kummer_continuity(1, 5, 5, 1, 2).passed
        assert kummer_continuity(3, 45, 7, 2, 2).passed

    def test_continuity_needs_congruent_exponents(self):
        with pytest.raises(PreconditionViolated):
            kummer_continuity(1, 4, 5, 1, 2)

    def test_riemann_sum(self):
        assert riemann_sum_check(2, 5, 1, 4).passed
        assert riemann_sum_check(3, 7, 2, 3).passed

    def test_riemann_sum_closed_form(self):
        # sum t_n n_c = (c^2 - 1) S*_2(p^M) / (2 p^M) exactly modulo p^M
        s = power_sum_star(2, 5, 3)
        expected = padic_from_fraction(Fraction((2**2 - 1) * s, 2 * 125), 5, 3)
        assert zeta_reg_riemann_sum(2, 5, 1, 3) == expected


class TestMeasure:
    """Moments of the regularized measure"""

    def test_total_mass(self):
        assert mazur_moment(0, 2, 5) == 0

    def test_moment_is_regularized_zeta(self):
        assert mazur_moment(2, 2, 5) == zeta_reg(2, 5, 1)

    def test_regularizer_checked_for_zero_polynomial(self):
        with pytest.raises(PreconditionViolated):
            mazur_integrate_poly(IntPolynomial(()), 5, 5, 2)

    def test_linearity(self):
        rng = random.Random(11)
        for _ in range(25):
            h1 = IntPolynomial(tuple(rng.randint(-5, 5) for _ in range(6)))
            h2 = IntPolynomial(tuple(rng.randint(-5, 5) for _ in range(6)))
            combined = mazur_integrate_poly(h1 + h2, 2, 7, 3)
            assert combined == mazur_integrate_poly(h1, 2, 7, 3) + mazur_integrate_poly(h2, 2, 7, 3)

    def test_mellin(self):
        assert mellin_at_power(2, 2, 5, 3) == padic_from_fraction(zeta_reg(2, 5, 1), 5, 3)
        assert mellin_at_power(1, 2, 5, 3).residue == 0


class TestKubotaLeopoldt:
    """(1 - p^k) zeta(-k) in Z_p"""

    def test_values(self):
        assert kubota_leopoldt_rational(1, 5) == Fraction(1, 3)
        assert kubota_leopoldt_value(1, 5, 3) == padic_from_fraction(Fraction(1, 3), 5, 3)
        assert kubota_leopoldt_rational(4, 5) == 0

    def test_pole(self):
        with pytest.raises(NonPIntegral):
            kubota_leopoldt_rational(3, 5)

    def test_bad_prime(self):
        with pytest.raises(InvalidPrime):
            kubota_leopoldt_rational(1, 2)

    @pytest.mark.parametrize("k,p,N", [(1, 5, 2), (3, 7, 2), (5, 5, 2), (1, 11, 1)])
    def test_congruence(self, k, p, N):
        assert kubota_leopoldt_congruence(k, p, N).passed
