"""
Elementary arithmetic functions and combinatorial q-series

Divisor sums, partitions, theta series and representation numbers, and the
classical product/sum identities (Gauss, Jacobi triple product, Cauchy)
checked coefficient by coefficient.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from math import isqrt
from typing import Dict, List, Optional, Union
import logging
import threading

import mpmath
from sympy import factorint

from kernel.base import CongruenceReport, PreconditionViolated, ZeroParameter
from kernel.qseries import QSeries

logger = logging.getLogger("modkernel")


# =============================================================================
# Divisors
# =============================================================================


class DivisorSumCache:
    """
    Memoized n -> sorted divisor list

    Readers never take the lock; insertion is serialized so a divisor list is
    written once and never mutated afterwards.
    """

    def __init__(self, max_entries: int = 100_000):
        self._divisors: Dict[int, List[int]] = {}
        self._factorizations: Dict[int, Dict[int, int]] = {}
        self._lock = threading.Lock()
        self.max_entries = max_entries

    def factorization(self, n: int) -> Dict[int, int]:
        if n < 1:
            raise ValueError(f"factorization needs n >= 1, got {n}")
        cached = self._factorizations.get(n)
        if cached is not None:
            return cached
        factors = {int(p): int(e) for p, e in factorint(n).items()}
        with self._lock:
            if len(self._factorizations) < self.max_entries:
                self._factorizations.setdefault(n, factors)
        return factors

    def divisors(self, n: int) -> List[int]:
        cached = self._divisors.get(n)
        if cached is not None:
            return cached
        divs = [1]
        for p, e in sorted(self.factorization(n).items()):
            divs = [d * p**i for d in divs for i in range(e + 1)]
        divs.sort()
        with self._lock:
            if len(self._divisors) < self.max_entries:
                self._divisors.setdefault(n, divs)
        return divs

    def clear(self) -> None:
        with self._lock:
            self._divisors.clear()
            self._factorizations.clear()


divisor_cache = DivisorSumCache()


def divisors(n: int) -> List[int]:
    return divisor_cache.divisors(n)


def p_valuation(x: Union[int, Fraction], p: int) -> Optional[int]:
    """v_p of a rational; None for zero (infinite valuation)"""
    x = Fraction(x)
    if x == 0:
        return None
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def sigma(k: int, n: int) -> int:
    """sum of d^k over the divisors d of n"""
    if n < 1:
        raise ValueError(f"sigma needs n >= 1, got {n}")
    if k < 0:
        raise ValueError(f"sigma needs k >= 0, got {k}")
    result = 1
    for p, e in divisor_cache.factorization(n).items():
        if k == 0:
            result *= e + 1
        else:
            pk = p**k
            result *= (pk ** (e + 1) - 1) // (pk - 1)
    return result


def sigma_star(k: int, n: int, p: int) -> int:
    """Divisor power sum over the divisors of n prime to p"""
    while n % p == 0:
        n //= p
    return sigma(k, n)


def sigma_table(k: int, limit: int) -> List[int]:
    """[0, sigma_k(1), ..., sigma_k(limit)] by a divisor sieve"""
    table = [0] * (limit + 1)
    for d in range(1, limit + 1):
        dk = d**k
        for multiple in range(d, limit + 1, d):
            table[multiple] += dk
    return table


# =============================================================================
# Partitions
# =============================================================================


def euler_product(terms: int) -> QSeries:
    """prod_{m>=1} (1 - q^m) multiplied out factor by factor"""
    series = QSeries.one(terms)
    for m in range(1, terms + 1):
        series = series.mul_binomial(-1, m)
    return series


def pentagonal_series(terms: int) -> QSeries:
    """sum_k (-1)^k q^{k(3k-1)/2} over all integers k"""
    coeffs: Dict[int, int] = {0: 1}
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > terms:
            break
        sign = -1 if k % 2 else 1
        coeffs[g1] = sign
        g2 = k * (3 * k + 1) // 2
        if g2 <= terms:
            coeffs[g2] = sign
        k += 1
    return QSeries.from_terms(coeffs, terms)


def partition_series(terms: int) -> QSeries:
    """sum p(n) q^n as the inverse of the Euler product"""
    if terms < 0:
        raise ValueError("terms must be non-negative")
    return euler_product(terms).inverse()


class PartitionTable:
    """
    p(0), p(1), ... grown in place by the pentagonal recurrence

    The list is append-only; growth happens under a lock, so concurrent
    readers only ever see fully computed entries.
    """

    def __init__(self):
        self._values: List[int] = [1]
        self._lock = threading.Lock()

    @staticmethod
    def _next(values: List[int], n: int) -> int:
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            g2 = k * (3 * k + 1) // 2
            term = values[n - g1] + (values[n - g2] if g2 <= n else 0)
            total += term if k % 2 else -term
            k += 1
        return total

    def get(self, n: int) -> int:
        if n < len(self._values):
            return self._values[n]
        with self._lock:
            values = self._values
            for m in range(len(values), n + 1):
                values.append(self._next(values, m))
            return values[n]

    def __len__(self) -> int:
        return len(self._values)


partition_table = PartitionTable()


def partition_count(n: int) -> int:
    """p(n) by the pentagonal-number recurrence"""
    if n < 0:
        raise ValueError(f"partition_count needs n >= 0, got {n}")
    return partition_table.get(n)


def hardy_ramanujan_estimate(n: int) -> float:
    """
    exp(K*lam) / (4*sqrt(3)*lam^2) with K = pi*sqrt(2/3), lam = sqrt(n - 1/24)

    Some statements of the estimate use lam = sqrt(n - 1/2) instead; the
    classical 1/24 shift is used here, and both agree to leading order.
    """
    if n < 1:
        raise ValueError(f"hardy_ramanujan_estimate needs n >= 1, got {n}")
    with mpmath.workdps(30):
        lam = mpmath.sqrt(mpmath.mpf(n) - mpmath.mpf(1) / 24)
        K = mpmath.pi * mpmath.sqrt(mpmath.mpf(2) / 3)
        value = mpmath.exp(K * lam) / (4 * mpmath.sqrt(3) * lam**2)
        return float(value)


def hardy_ramanujan_check(n: int, tolerance: float = 0.05) -> CongruenceReport:
    """Compare exact p(n) with the asymptotic estimate"""
    exact = partition_count(n)
    with mpmath.workdps(30):
        ratio = float(mpmath.mpf(exact) / mpmath.mpf(hardy_ramanujan_estimate(n)))
    report = CongruenceReport(check="hardy-ramanujan", modulus={"tolerance": tolerance})
    report.details = {
        "n": n,
        "partitions": exact,
        "estimate": hardy_ramanujan_estimate(n),
        "ratio": ratio,
        "relativeError": abs(ratio - 1),
    }
    if abs(ratio - 1) >= tolerance:
        report.mismatches.append(n)
    return report


# =============================================================================
# Theta series and sums of squares
# =============================================================================


def theta_series(terms: int) -> QSeries:
    """1 + 2 sum_{n>=1} q^{n^2}"""
    coeffs: Dict[int, int] = {0: 1}
    n = 1
    while n * n <= terms:
        coeffs[n * n] = 2
        n += 1
    return QSeries.from_terms(coeffs, terms)


@lru_cache(maxsize=32)
def theta_power(k: int, terms: int) -> QSeries:
    if k < 1:
        raise ValueError(f"theta power needs k >= 1, got {k}")
    return theta_series(terms) ** k


def rk_count(k: int, n: int, terms: Optional[int] = None) -> int:
    """Number of representations of n as an ordered sum of k signed squares"""
    if terms is None:
        terms = n
    if n > terms:
        raise ValueError(f"rk_count needs n <= terms ({n} > {terms})")
    return theta_power(k, terms)[n].numerator


def lattice_count(k: int, n: int) -> int:
    """Brute-force count of (x_1..x_k) in Z^k with sum x_i^2 = n"""
    bound = isqrt(n)
    axis = range(-bound, bound + 1)
    return sum(1 for point in cartesian(axis, repeat=k) if sum(x * x for x in point) == n)


def lattice_counts(k: int, limit: int) -> List[int]:
    """lattice_count(k, n) for every n <= limit from a single sweep of the box"""
    counts = [0] * (limit + 1)
    bound = isqrt(limit)
    squares = [x * x for x in range(-bound, bound + 1)]
    for point in cartesian(squares, repeat=k):
        total = sum(point)
        if total <= limit:
            counts[total] += 1
    return counts


def r4_jacobi(n: int) -> int:
    """Jacobi's four-squares formula"""
    if n < 1:
        raise ValueError(f"r4_jacobi needs n >= 1, got {n}")
    if n % 2:
        return 8 * sigma(1, n)
    return 24 * sum(d for d in divisors(n) if d % 2)


def three_squares_representable(n: int) -> bool:
    """False exactly for n of the form 4^a (8b + 7)"""
    if n < 1:
        raise ValueError(f"three_squares_representable needs n >= 1, got {n}")
    while n % 4 == 0:
        n //= 4
    return n % 8 != 7


def r4_check(n_max: int) -> CongruenceReport:
    report = CongruenceReport(check="r4", modulus={})
    theta4 = theta_power(4, n_max)
    for n in range(1, n_max + 1):
        if theta4[n] != r4_jacobi(n):
            report.mismatches.append(n)
    report.details = {"nMax": n_max, "checked": n_max}
    return report


def three_squares_check(n_max: int) -> CongruenceReport:
    report = CongruenceReport(check="three-squares", modulus={})
    theta3 = theta_power(3, n_max)
    exceptions = []
    for n in range(1, n_max + 1):
        representable = three_squares_representable(n)
        if (theta3[n] > 0) != representable:
            report.mismatches.append(n)
        if not representable:
            exceptions.append(n)
    report.details = {"nMax": n_max, "nonRepresentable": exceptions[:50]}
    return report


# =============================================================================
# Classical identities
# =============================================================================


def _compare(report: CongruenceReport, lhs: QSeries, rhs: QSeries) -> CongruenceReport:
    for i, (a, b) in enumerate(zip(lhs, rhs)):
        if a != b:
            report.mismatches.append(i)
    return report


def verify_gauss_identity(terms: int) -> CongruenceReport:
    """prod (1-q^{2m}) / prod (1-q^{2m-1}) against the triangular-number series"""
    lhs = QSeries.one(terms)
    for m in range(1, terms + 1):
        if 2 * m <= terms:
            lhs = lhs.mul_binomial(-1, 2 * m)
        if 2 * m - 1 <= terms:
            lhs = lhs.div_binomial(-1, 2 * m - 1)

    triangular: Dict[int, int] = {}
    n = 0
    while n * (n + 1) // 2 <= terms:
        triangular[n * (n + 1) // 2] = 1
        n += 1
    rhs = QSeries.from_terms(triangular, terms)

    report = _compare(CongruenceReport(check="gauss-identity", modulus={}), lhs, rhs)
    report.details = {"terms": terms, "exponents": lhs.support()}
    return report


def verify_jacobi_triple(u: Union[int, Fraction], terms: int) -> CongruenceReport:
    """sum u^n q^{n^2} against prod (1-q^{2m+2})(1+u q^{2m+1})(1+u^{-1} q^{2m+1})"""
    u = Fraction(u)
    if u == 0:
        raise ZeroParameter("Jacobi triple product needs u != 0")

    lhs_terms: Dict[int, Fraction] = {0: Fraction(1)}
    n = 1
    while n * n <= terms:
        lhs_terms[n * n] = u**n + u**-n
        n += 1
    lhs = QSeries.from_terms(lhs_terms, terms)

    rhs = QSeries.one(terms)
    u_inv = 1 / u
    m = 0
    while 2 * m + 1 <= terms:
        if 2 * m + 2 <= terms:
            rhs = rhs.mul_binomial(-1, 2 * m + 2)
        rhs = rhs.mul_binomial(u, 2 * m + 1)
        rhs = rhs.mul_binomial(u_inv, 2 * m + 1)
        m += 1

    report = _compare(CongruenceReport(check="jacobi-triple", modulus={}), lhs, rhs)
    report.details = {"u": u, "terms": terms}
    return report


def verify_cauchy(a: Union[int, Fraction], t: Union[int, Fraction], terms: int) -> CongruenceReport:
    """
    sum_n (a;q)_n/(q;q)_n t^n against (at;q)_inf/(t;q)_inf

    Modulo q^(N+1) the summands stabilize from n = N+1 on, so the tail is the
    geometric series c_{N+1} t^{N+1}/(1-t), summed exactly.
    """
    a, t = Fraction(a), Fraction(t)
    if t == 1:
        raise PreconditionViolated("Cauchy identity is singular at t = 1")

    c = QSeries.one(terms)
    lhs = QSeries.one(terms)
    t_power = Fraction(1)
    for n in range(1, terms + 2):
        c = c.mul_binomial(-a, n - 1).div_binomial(-1, n)
        t_power *= t
        if n <= terms:
            lhs = lhs + c.scale(t_power)
    lhs = lhs + c.scale(t_power / (1 - t))

    rhs = QSeries.constant((1 - a * t) / (1 - t), terms)
    for m in range(1, terms + 1):
        rhs = rhs.mul_binomial(-a * t, m).div_binomial(-t, m)

    report = _compare(CongruenceReport(check="cauchy", modulus={}), lhs, rhs)
    report.details = {"a": a, "t": t, "terms": terms}
    return report
