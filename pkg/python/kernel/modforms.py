"""
Bernoulli numbers and level-one modular forms

Eisenstein series in three normalizations (E_k with constant term 1, the
a(1) = 1 form G_k, and its p-stabilization G*_k), the discriminant by two
independent constructions, q*j, dimension formulas, Hecke operators, and
the congruence checkers that work on q-expansions.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Any, Dict, List, Optional, Tuple
import logging
import threading

from sympy import Matrix, Rational, isprime

from kernel.arithfun import euler_product, p_valuation, sigma_table
from kernel.base import (
    CongruenceReport,
    DenominatorNotPUnit,
    InvalidPrime,
    InvalidWeight,
    NonIntegralQuotient,
    NotInSpace,
    PreconditionViolated,
)
from kernel.qseries import QSeries, qs_pow

logger = logging.getLogger("modkernel")


# =============================================================================
# Bernoulli numbers
# =============================================================================


@dataclass(frozen=True)
class BernoulliTable:
    """B_0 .. B_max_k with the B_1 = -1/2 convention"""

    max_k: int
    values: Tuple[Fraction, ...]

    def __getitem__(self, k: int) -> Fraction:
        if k < 0 or k > self.max_k:
            raise IndexError(f"B_{k} is outside the table (max_k={self.max_k})")
        return self.values[k]

    def to_dict(self) -> Dict[str, str]:
        return {str(k): str(v) for k, v in enumerate(self.values)}


_bernoulli_values: List[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def _extend_bernoulli(max_k: int) -> None:
    with _bernoulli_lock:
        for m in range(len(_bernoulli_values), max_k + 1):
            if m > 1 and m % 2:
                _bernoulli_values.append(Fraction(0))
                continue
            # sum_{j=0}^{m} C(m+1, j) B_j = 0
            acc = sum(
                (comb(m + 1, j) * _bernoulli_values[j] for j in range(m) if _bernoulli_values[j]),
                Fraction(0),
            )
            _bernoulli_values.append(-acc / (m + 1))


def bernoulli_numbers(max_k: int) -> BernoulliTable:
    if max_k < 0:
        raise ValueError(f"max_k must be non-negative, got {max_k}")
    if len(_bernoulli_values) <= max_k:
        _extend_bernoulli(max_k)
    return BernoulliTable(max_k, tuple(_bernoulli_values[: max_k + 1]))


def bernoulli(k: int) -> Fraction:
    if len(_bernoulli_values) <= k:
        _extend_bernoulli(k)
    return _bernoulli_values[k]


def bernoulli_poly(k: int, x: Fraction) -> Fraction:
    """B_k(x) = sum_i C(k, i) B_i x^(k-i)"""
    if k < 0:
        raise ValueError(f"bernoulli_poly needs k >= 0, got {k}")
    x = Fraction(x)
    return sum((comb(k, i) * bernoulli(i) * x ** (k - i) for i in range(k + 1)), Fraction(0))


def zeta_neg(k: int) -> Fraction:
    """zeta(-k) = -B_{k+1}/(k+1) for k >= 1"""
    if k < 1:
        raise ValueError(f"zeta_neg needs k >= 1, got {k}")
    return -bernoulli(k + 1) / (k + 1)


def zeta_nonpositive(k: int) -> Fraction:
    """zeta(-k) for k >= 0; zeta(0) = -1/2"""
    if k == 0:
        return Fraction(-1, 2)
    return zeta_neg(k)


# =============================================================================
# Eisenstein series
# =============================================================================


def _check_weight(k: int) -> None:
    if k < 4 or k % 2:
        raise InvalidWeight(f"weight must be an even integer >= 4, got {k}")


def _check_odd_prime(p: int) -> None:
    if p == 2 or not isprime(p):
        raise InvalidPrime(f"p must be an odd prime, got {p}")


def eisenstein_E(k: int, terms: int) -> QSeries:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n"""
    _check_weight(k)
    factor = -Fraction(2 * k) / bernoulli(k)
    sigmas = sigma_table(k - 1, terms)
    coeffs = [Fraction(1)] + [factor * s for s in sigmas[1:]]
    return QSeries(coeffs, terms)


def eisenstein_Gfrak(k: int, terms: int) -> QSeries:
    """G_k = -B_k/(2k) + sum sigma_{k-1}(n) q^n"""
    _check_weight(k)
    sigmas = sigma_table(k - 1, terms)
    return QSeries([-bernoulli(k) / (2 * k)] + sigmas[1:], terms)


def eisenstein_Gstar(k: int, p: int, terms: int) -> QSeries:
    """G*_k(z) = G_k(z) - p^{k-1} G_k(pz)"""
    _check_weight(k)
    _check_odd_prime(p)
    g = eisenstein_Gfrak(k, terms)
    return g - g.substitute_qpow(p).scale(p ** (k - 1))


# =============================================================================
# Discriminant and j
# =============================================================================


def jacobi_cube_series(terms: int) -> QSeries:
    """prod (1-q^m)^3 = sum_{i>=0} (-1)^i (2i+1) q^{i(i+1)/2}"""
    coeffs: Dict[int, int] = {}
    i = 0
    while i * (i + 1) // 2 <= terms:
        coeffs[i * (i + 1) // 2] = (-1) ** i * (2 * i + 1)
        i += 1
    return QSeries.from_terms(coeffs, terms)


def _times_q(series: QSeries) -> QSeries:
    return QSeries([0] + list(series.coeffs), series.trunc + 1)


def delta_eta(terms: int, method: str = "jacobi") -> QSeries:
    """
    Delta = q prod (1-q^m)^24 to O(q^(terms+1))

    ``jacobi`` raises Jacobi's cube series to the 8th power; ``product``
    raises the multiplied-out Euler product to the 24th.
    """
    if terms < 1:
        raise ValueError(f"delta_eta needs terms >= 1, got {terms}")
    if method == "jacobi":
        body = qs_pow(jacobi_cube_series(terms - 1), 8)
    elif method == "product":
        body = qs_pow(euler_product(terms - 1), 24)
    else:
        raise ValueError(f"unknown delta construction: {method}")
    logger.debug(f"Delta computed to O(q^{terms + 1}) via {method}")
    return _times_q(body)


def delta_eisenstein(terms: int) -> QSeries:
    """
    (E_4^3 - E_6^2)/1728

    The cube on E_6 sometimes printed for this identity is a misprint: E_6^3
    has weight 18, and only E_6^2 makes the constant terms cancel.
    """
    if terms < 1:
        raise ValueError(f"delta_eisenstein needs terms >= 1, got {terms}")
    e4 = eisenstein_E(4, terms)
    e6 = eisenstein_E(6, terms)
    return (e4 * e4 * e4 - e6 * e6).scale(Fraction(1, 1728))


def j_invariant_times_q(terms: int) -> QSeries:
    """q*j = E_4^3 / (Delta/q), so the constant term is 1"""
    if terms < 1:
        raise ValueError(f"j_invariant_times_q needs terms >= 1, got {terms}")
    e4 = eisenstein_E(4, terms)
    delta_over_q = delta_eta(terms + 1).divide_by_q()
    return e4 * e4 * e4 * delta_over_q.inverse()


# =============================================================================
# Dimensions and bases
# =============================================================================


def dim_Mk(k: int) -> int:
    if k < 0 or k % 2:
        return 0
    if k % 12 == 2:
        return k // 12
    return k // 12 + 1


def dim_Sk(k: int) -> int:
    if k < 12 or k % 2:
        return 0
    return dim_Mk(k) - 1


def monomial_basis(k: int) -> List[Tuple[int, int]]:
    """All (alpha, beta) >= 0 with 4 alpha + 6 beta = k"""
    if k < 0 or k % 2:
        return []
    return [(alpha, (k - 4 * alpha) // 6) for alpha in range(k // 4, -1, -1) if (k - 4 * alpha) % 6 == 0]


def basis_series(k: int, terms: int) -> List[QSeries]:
    """q-expansions of E_4^alpha E_6^beta over the monomial basis"""
    e4 = eisenstein_E(4, terms)
    e6 = eisenstein_E(6, terms)
    return [qs_pow(e4, alpha) * qs_pow(e6, beta) for alpha, beta in monomial_basis(k)]


def decompose_in_basis(f: QSeries, k: int) -> List[Fraction]:
    """
    Exact x with f = sum x_i E_4^alpha_i E_6^beta_i

    A form of weight k vanishing to order dim M_k is zero, so the first
    dim M_k coefficients pin x down; the rest of the expansion verifies it.
    """
    dim = dim_Mk(k)
    if dim == 0:
        if any(f.coeffs):
            raise NotInSpace(f"M_{k} is zero but the series is not")
        return []
    if f.trunc < dim - 1:
        raise PreconditionViolated(f"need at least {dim} coefficients to decompose in M_{k}")
    basis = basis_series(k, f.trunc)
    matrix = Matrix(dim, dim, lambda i, j: Rational(basis[j][i].numerator, basis[j][i].denominator))
    rhs = Matrix(dim, 1, lambda i, _: Rational(f[i].numerator, f[i].denominator))
    solution = matrix.LUsolve(rhs)
    x = [Fraction(int(v.p), int(v.q)) for v in solution]

    combination = QSeries.zero(f.trunc)
    for coeff, series in zip(x, basis):
        combination = combination + series.scale(coeff)
    if combination != f:
        raise NotInSpace(f"series is not in M_{k} up to O(q^{f.trunc + 1})")
    return x


def cusp_isomorphism_check(k_max: int) -> CongruenceReport:
    """dim S_k = dim M_{k-12} for even 12 <= k <= k_max"""
    report = CongruenceReport(check="cusp-isomorphism", modulus={})
    for k in range(12, k_max + 1, 2):
        if dim_Sk(k) != dim_Mk(k - 12):
            report.mismatches.append(k)
    report.details = {"kMax": k_max}
    return report


def ramanujan_691_decomposition(terms: int) -> Dict[str, Any]:
    """
    E_6^2 = E_12 + alpha Delta with alpha = -1008 - 65520/691

    Writing alpha = a/691, the identity 691 E_6^2 = 691 E_12 + a Delta read
    mod 691 gives tau(n) = sigma_11(n) (mod 691) exactly when a is congruent
    to -65520, which is what is reported.
    """
    e6 = eisenstein_E(6, terms)
    e12 = eisenstein_E(12, terms)
    delta = delta_eta(terms)
    alpha = (e6 * e6 - e12)[1]
    verified = e6 * e6 == e12 + delta.scale(alpha)
    numerator = alpha * 691
    return {
        "alpha": alpha,
        "numerator": numerator.numerator,
        "numeratorModulo691": numerator.numerator % 691,
        "expectedModulo691": (-65520) % 691,
        "impliesCongruence": numerator.denominator == 1
        and numerator.numerator % 691 == (-65520) % 691
        and gcd(numerator.numerator, 691) == 1,
        "identityVerified": verified,
        "terms": terms,
    }


def hecke_operator(f: QSeries, p: int, k: int) -> QSeries:
    """T_p on a weight-k expansion: b(n) = a(pn) + p^{k-1} a(n/p)"""
    if not isprime(p):
        raise InvalidPrime(f"Hecke operator needs a prime, got {p}")
    trunc = f.trunc // p
    pk = p ** (k - 1)
    coeffs = [f[p * n] + (pk * f[n // p] if n % p == 0 else 0) for n in range(trunc + 1)]
    return QSeries(coeffs, trunc)


# =============================================================================
# Congruences on q-expansions
# =============================================================================


def ramanujan_quotient_series(terms: int) -> QSeries:
    """(Delta - sum sigma_11(n) q^n)/691, which must be integral"""
    delta = delta_eta(terms)
    sigmas = sigma_table(11, terms)
    quotient = (delta - QSeries(sigmas, terms)).scale(Fraction(1, 691))
    for n, c in enumerate(quotient):
        if c.denominator != 1:
            raise NonIntegralQuotient(f"coefficient of q^{n} is {c}, not an integer")
    return quotient


def check_eisenstein_congruence(
    p: int, k: int, k2: int, N: int, terms: int, c: Optional[int] = None
) -> CongruenceReport:
    """
    G*_k = G*_k2 (mod p^N), or (1-c^k) G*_k = (1-c^k2) G*_k2 when c is given

    Every coefficient difference must have p-adic valuation >= N.
    """
    _check_weight(k)
    _check_weight(k2)
    _check_odd_prime(p)
    if N < 1:
        raise PreconditionViolated(f"N must be >= 1, got {N}")
    modulus = (p - 1) * p ** (N - 1)
    if (k - k2) % modulus:
        raise PreconditionViolated(f"k = {k} and k' = {k2} are not congruent mod {modulus}")

    if c is None:
        if k % (p - 1) == 0:
            raise DenominatorNotPUnit(
                f"(p-1) divides k = {k}: the constant term of G*_{k} is not {p}-integral"
            )
        lhs = eisenstein_Gstar(k, p, terms)
        rhs = eisenstein_Gstar(k2, p, terms)
    else:
        if c <= 1 or c % p == 0:
            raise PreconditionViolated(f"c must satisfy c > 1 and (c, p) = 1, got c = {c}")
        lhs = eisenstein_Gstar(k, p, terms).scale(1 - c**k)
        rhs = eisenstein_Gstar(k2, p, terms).scale(1 - c**k2)

    report = CongruenceReport(
        check="eisenstein-congruence",
        modulus={"p": p, "N": N},
        bound=N,
        details={"k": k, "k2": k2, "c": c, "terms": terms, "variant": "a" if c is None else "b"},
    )
    for n, (a, b) in enumerate(zip(lhs, rhs)):
        diff = a - b
        if diff.denominator % p == 0:
            raise DenominatorNotPUnit(f"coefficient of q^{n} has {p} in its denominator")
        report.record(n, p_valuation(diff, p))
    logger.debug(f"Eisenstein congruence p={p} k={k} k2={k2}: min valuation {report.min_valuation}")
    return report


def check_identity(name: str, lhs: QSeries, rhs: QSeries) -> CongruenceReport:
    """Coefficientwise equality report for two expansions"""
    report = CongruenceReport(check=name, modulus={})
    for n, (a, b) in enumerate(zip(lhs, rhs)):
        if a != b:
            report.mismatches.append(n)
    report.details = {"terms": min(lhs.trunc, rhs.trunc)}
    return report
