"""
Ramanujan's tau function by independent algorithms

tau(n) comes from the eta product (cached), from the Eisenstein cubic
relation, or from Manin's sum over admissible solutions of
n = Delta*Delta' + delta*delta'. The checks here exercise multiplicativity,
the prime bound, the 691 congruence and non-vanishing.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any, Dict, List, Optional
import logging
import threading

from sympy import factorint, isprime, primerange

from kernel.arithfun import divisors, p_valuation, partition_series, sigma
from kernel.base import CongruenceReport, InvalidPrime, NonIntegralResult, RangeExceeded
from kernel.modforms import delta_eisenstein, delta_eta
from kernel.qseries import QSeries, qs_pow

logger = logging.getLogger("modkernel")

RAMANUJAN_PRIME = 691


class TauCache:
    """
    tau(1..limit) filled in one pass from the eta product

    The table is built on first use and replaced atomically when a larger
    limit is requested, so readers never see a partially filled list.
    """

    def __init__(self, limit: int = 2000):
        self.limit = limit
        self._values: Optional[List[int]] = None
        self._lock = threading.Lock()

    def _ensure(self) -> List[int]:
        values = self._values
        if values is not None and len(values) > self.limit:
            return values
        with self._lock:
            if self._values is None or len(self._values) <= self.limit:
                logger.debug(f"Filling tau cache up to n={self.limit}")
                delta = delta_eta(self.limit)
                self._values = [c.numerator for c in delta]
            return self._values

    def get(self, n: int) -> int:
        if n < 1:
            raise ValueError(f"tau needs n >= 1, got {n}")
        if n > self.limit:
            raise RangeExceeded(f"n = {n} is beyond the tau cache limit {self.limit}")
        return self._ensure()[n]

    def covers(self, n: int) -> bool:
        return 1 <= n <= self.limit

    def resize(self, limit: int) -> None:
        with self._lock:
            self.limit = limit
            if self._values is not None and len(self._values) <= limit:
                self._values = None


tau_cache = TauCache()


def configure_tau_cache(limit: int) -> None:
    tau_cache.resize(limit)


def tau_eta(n: int) -> int:
    """Coefficient of q^n in q prod (1-q^m)^24"""
    if n < 1:
        raise ValueError(f"tau needs n >= 1, got {n}")
    if tau_cache.covers(n):
        return tau_cache.get(n)
    return delta_eta(n)[n].numerator


def tau_eisenstein(n: int) -> int:
    """Coefficient of q^n in (E_4^3 - E_6^2)/1728"""
    if n < 1:
        raise ValueError(f"tau needs n >= 1, got {n}")
    value = delta_eisenstein(n)[n]
    if value.denominator != 1:
        raise NonIntegralResult(f"Eisenstein route gave non-integral tau({n}) = {value}")
    return value.numerator


# =============================================================================
# Manin's formula
# =============================================================================


@dataclass(frozen=True)
class ManinSolution:
    """One admissible solution of n = Delta*Delta' + delta*delta'"""

    Delta: int
    DeltaPrime: int
    delta: int
    deltaPrime: int
    weight: Fraction = Fraction(1)

    @property
    def branch(self) -> int:
        return 2 if self.deltaPrime == 0 else 1

    def value(self) -> int:
        return self.Delta * self.DeltaPrime + self.delta * self.deltaPrime

    def summand(self) -> int:
        """Delta^2 delta^2 (Delta^2 - delta^2)^3, unweighted"""
        D2, d2 = self.Delta**2, self.delta**2
        return D2 * d2 * (D2 - d2) ** 3

    def to_dict(self) -> Dict[str, Any]:
        return {
            "Delta": self.Delta,
            "DeltaPrime": self.DeltaPrime,
            "delta": self.delta,
            "deltaPrime": self.deltaPrime,
            "weight": str(self.weight),
        }


_HALF = Fraction(1, 2)


def _divisor_lists(limit: int) -> List[List[int]]:
    table: List[List[int]] = [[] for _ in range(limit + 1)]
    for d in range(1, limit + 1):
        for multiple in range(d, limit + 1, d):
            table[multiple].append(d)
    return table


def manin_enumerate(n: int) -> List[ManinSolution]:
    """
    Admissible solutions in the order of the reference trace

    Branch 1: Delta > delta >= 1, Delta' > delta' >= 1, delta*delta' = n - Delta*Delta'.
    Branch 2: Delta | n, Delta' = n/Delta, 0 <= delta <= Delta/2, delta' = 0,
    weight 1/2 exactly when 2*delta = Delta.
    """
    if n < 1:
        raise ValueError(f"manin_enumerate needs n >= 1, got {n}")
    solutions: List[ManinSolution] = []
    divs = _divisor_lists(n - 1) if n > 1 else [[]]

    for D in range(2, n):
        # delta < D and delta' < D' force n - D*D' < D*D'
        for Dp in range(max(1, n // (2 * D)), (n - 1) // D + 1):
            rest = n - D * Dp
            if rest <= 0:
                break
            for d in divs[rest]:
                if d >= D:
                    break
                dp = rest // d
                if dp < Dp:
                    solutions.append(ManinSolution(D, Dp, d, dp))

    for D in divisors(n):
        for d in range(D // 2 + 1):
            weight = _HALF if 2 * d == D else Fraction(1)
            solutions.append(ManinSolution(D, n // D, d, 0, weight))

    logger.debug(f"Manin enumeration for n={n}: {len(solutions)} solutions")
    return solutions


def manin_sum(solutions: List[ManinSolution]) -> Fraction:
    return sum((s.weight * s.summand() for s in solutions), Fraction(0))


def tau_manin(n: int) -> int:
    """sigma_11(n) - (691/18) * weighted sum of Delta^2 delta^2 (Delta^2 - delta^2)^3"""
    total = manin_sum(manin_enumerate(n))
    value = sigma(11, n) - Fraction(RAMANUJAN_PRIME, 18) * total
    if value.denominator != 1:
        raise NonIntegralResult(f"Manin's formula gave non-integral tau({n}) = {value}")
    return value.numerator


def tau_manin_variant_check(n: int) -> bool:
    """Both printed forms of the summand agree on every solution for n"""
    for s in manin_enumerate(n):
        D, d = s.Delta, s.delta
        expanded = (D**8 * d**2 - D**2 * d**8) - 3 * (D**6 * d**4 - D**4 * d**6)
        if expanded != s.summand():
            return False
    return True


TAU_METHODS = {
    "eta": tau_eta,
    "eisenstein": tau_eisenstein,
    "manin": tau_manin,
}


# =============================================================================
# Checks
# =============================================================================


def _require_cached(*values: int) -> None:
    for value in values:
        if not tau_cache.covers(value):
            raise RangeExceeded(f"n = {value} is outside the cached range 1..{tau_cache.limit}")


def _hecke_convolution(m: int, n: int) -> bool:
    lhs = tau_cache.get(m) * tau_cache.get(n)
    rhs = sum(d**11 * tau_cache.get(m * n // (d * d)) for d in divisors(gcd(m, n)))
    return lhs == rhs


def _coprime_multiplicative(m: int, n: int) -> bool:
    if gcd(m, n) != 1:
        return True
    return tau_cache.get(m * n) == tau_cache.get(m) * tau_cache.get(n)


def _prime_power_recursion(n: int) -> bool:
    for p, e in factorint(n).items():
        for r in range(1, e):
            lhs = tau_cache.get(p ** (r + 1))
            rhs = tau_cache.get(p**r) * tau_cache.get(p) - p**11 * tau_cache.get(p ** (r - 1))
            if lhs != rhs:
                return False
    return True


def hecke_check(m: int, n: int) -> bool:
    """Convolution, coprime multiplicativity and the prime-power recursion at (m, n)"""
    if m < 1 or n < 1:
        raise ValueError("hecke_check needs positive m and n")
    _require_cached(m * n)
    return _hecke_convolution(m, n) and _coprime_multiplicative(m, n) and _prime_power_recursion(m * n)


def hecke_sweep(limit: int) -> CongruenceReport:
    report = CongruenceReport(check="hecke", modulus={})
    _require_cached(limit * limit)
    failures = [(m, n) for m in range(1, limit + 1) for n in range(m, limit + 1) if not hecke_check(m, n)]
    report.mismatches.extend(m * n for m, n in failures)
    report.details = {"limit": limit, "pairs": limit * (limit + 1) // 2, "failingPairs": failures}
    return report


def deligne_check(p: int) -> bool:
    """tau(p)^2 < 4 p^11, compared exactly"""
    if not isprime(p):
        raise InvalidPrime(f"deligne_check needs a prime, got {p}")
    _require_cached(p)
    return tau_cache.get(p) ** 2 < 4 * p**11


def deligne_sweep(p_max: int) -> CongruenceReport:
    report = CongruenceReport(check="deligne", modulus={})
    _require_cached(p_max)
    primes = list(primerange(2, p_max + 1))
    report.mismatches.extend(int(p) for p in primes if not deligne_check(int(p)))
    report.details = {"pMax": p_max, "primesChecked": len(primes)}
    return report


def ramanujan_congruence_check(n_max: int) -> CongruenceReport:
    """tau(n) = sigma_11(n) (mod 691) for every n <= n_max"""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if tau_cache.covers(n_max):
        taus = [0] + [tau_cache.get(n) for n in range(1, n_max + 1)]
    else:
        taus = [c.numerator for c in delta_eta(n_max)]
    report = CongruenceReport(
        check="ramanujan-691", modulus={"p": RAMANUJAN_PRIME, "N": 1}, bound=1
    )
    for n in range(1, n_max + 1):
        diff = taus[n] - sigma(11, n)
        report.residues[n] = taus[n] % RAMANUJAN_PRIME
        report.record(n, p_valuation(diff, RAMANUJAN_PRIME))
    report.details = {"nMax": n_max}
    return report


def ramanujan_congruence_at(n: int, method: str = "eta") -> Dict[str, Any]:
    """tau(n) against sigma_11(n) modulo 691 and 691^2 at a single n"""
    tau_n = TAU_METHODS[method](n)
    diff = tau_n - sigma(11, n)
    valuation = p_valuation(diff, RAMANUJAN_PRIME)
    return {
        "n": n,
        "tau": tau_n,
        "tauMod691": tau_n % RAMANUJAN_PRIME,
        "sigma11Mod691": sigma(11, n) % RAMANUJAN_PRIME,
        "valuation": "inf" if valuation is None else valuation,
        "congruentMod691": valuation is None or valuation >= 1,
        "congruentMod691Squared": valuation is None or valuation >= 2,
    }


def lehmer_check(n_max: int) -> Optional[int]:
    """First n <= n_max with tau(n) = 0, or None"""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if tau_cache.covers(n_max):
        values = [tau_cache.get(n) for n in range(1, n_max + 1)]
    else:
        values = [c.numerator for c in delta_eta(n_max).coeffs[1:]]
    for n, value in enumerate(values, start=1):
        if value == 0:
            return n
    return None


def euler_factor_check(p: int, r_max: int) -> bool:
    """(1 - tau(p) X + p^11 X^2) * sum tau(p^r) X^r = 1 + O(X^(r_max+1))"""
    if not isprime(p):
        raise InvalidPrime(f"euler_factor_check needs a prime, got {p}")
    _require_cached(p**r_max)
    local = QSeries([tau_cache.get(p**r) for r in range(r_max + 1)], r_max)
    factor = QSeries([1, -tau_cache.get(p), p**11], r_max)
    return local * factor == QSeries.one(r_max)


def divisor_bound_check(n: int) -> bool:
    """tau(n)^2 < sigma_0(n)^2 n^11"""
    return tau_eta(n) ** 2 < sigma(0, n) ** 2 * n**11


def tau_partition_identity(terms: int) -> bool:
    """Delta = q * (sum p(n) q^n)^(-24)"""
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    body = qs_pow(partition_series(terms - 1).inverse(), 24)
    via_partitions = QSeries([0] + list(body.coeffs), terms)
    return via_partitions == delta_eta(terms)
