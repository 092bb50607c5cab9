"""
Fixed-precision p-adic integers and the p-adic side of the zeta function

Every PadicInt carries its (p, N) context; arithmetic between different
contexts is refused. On top of that sit power sums and their p-adic limits,
c-regularized zeta values, the Kummer congruence checker, the moment
calculus of the regularized measure on Z_p^*, and Kubota-Leopoldt values.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import inf
from typing import Any, Dict, List, Optional, Tuple, Union
import logging

from sympy import Expr, Poly, Symbol, isprime
from sympy.parsing.sympy_parser import parse_expr

from kernel.arithfun import p_valuation
from kernel.base import (
    CongruenceReport,
    DenominatorDivisibleByP,
    HypothesisFails,
    InconsistentMethods,
    InvalidPrime,
    MixedContext,
    NegativeValuation,
    NonIntegralResult,
    NonPIntegral,
    NonUnit,
    PreconditionViolated,
)
from kernel.modforms import bernoulli, bernoulli_poly, zeta_nonpositive

logger = logging.getLogger("modkernel")

Rational = Union[int, Fraction]

# direct summation is only cross-checked up to this many terms
DIRECT_SUM_LIMIT = 20000


def _check_odd_prime(p: int) -> None:
    if p == 2 or not isprime(p):
        raise InvalidPrime(f"p must be an odd prime, got {p}")


def _check_regularizer(c: int, p: int) -> None:
    if c <= 1 or c % p == 0:
        raise PreconditionViolated(f"c must satisfy c > 1 and (c, p) = 1, got c = {c}")


# =============================================================================
# PadicInt
# =============================================================================


@dataclass(frozen=True)
class PadicInt:
    """An element of Z/p^N Z viewed as Z_p at precision N"""

    p: int
    precision: int
    residue: int = field(default=0)

    def __post_init__(self):
        if not isprime(self.p):
            raise InvalidPrime(f"p must be prime, got {self.p}")
        if self.precision < 1:
            raise ValueError(f"precision must be >= 1, got {self.precision}")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    @property
    def valuation(self) -> int:
        """Largest v <= N with p^v | residue; N means zero at this precision"""
        if self.residue == 0:
            return self.precision
        v, r = 0, self.residue
        while r % self.p == 0:
            r //= self.p
            v += 1
        return v

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def _same_context(self, other: "PadicInt") -> None:
        if (self.p, self.precision) != (other.p, other.precision):
            raise MixedContext(
                f"cannot combine Z/{self.p}^{self.precision} with Z/{other.p}^{other.precision}"
            )

    def _lift(self, other: Union["PadicInt", int]) -> "PadicInt":
        if isinstance(other, PadicInt):
            self._same_context(other)
            return other
        return PadicInt(self.p, self.precision, other)

    def __add__(self, other: Union["PadicInt", int]) -> "PadicInt":
        other = self._lift(other)
        return PadicInt(self.p, self.precision, self.residue + other.residue)

    __radd__ = __add__

    def __neg__(self) -> "PadicInt":
        return PadicInt(self.p, self.precision, -self.residue)

    def __sub__(self, other: Union["PadicInt", int]) -> "PadicInt":
        other = self._lift(other)
        return PadicInt(self.p, self.precision, self.residue - other.residue)

    def __mul__(self, other: Union["PadicInt", int]) -> "PadicInt":
        other = self._lift(other)
        return PadicInt(self.p, self.precision, self.residue * other.residue)

    __rmul__ = __mul__

    def inverse(self) -> "PadicInt":
        if not self.is_unit():
            raise NonUnit(f"{self.residue} has positive {self.p}-adic valuation")
        return PadicInt(self.p, self.precision, pow(self.residue, -1, self.modulus))

    def __pow__(self, exponent: int) -> "PadicInt":
        if exponent < 0:
            return self.inverse() ** -exponent
        return PadicInt(self.p, self.precision, pow(self.residue, exponent, self.modulus))

    def to_dict(self) -> Dict[str, Any]:
        return {"p": self.p, "precision": self.precision, "residue": str(self.residue)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PadicInt":
        return cls(int(data["p"]), int(data["precision"]), int(data["residue"]))


def padic_from_rational(num: int, den: int, p: int, N: int) -> PadicInt:
    """Reduce num/den into Z/p^N; the denominator must be prime to p"""
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    reduced = Fraction(num, den)
    if reduced.denominator % p == 0:
        raise NegativeValuation(f"{reduced} is not {p}-integral")
    if den % p == 0:
        raise DenominatorDivisibleByP(f"denominator {den} is divisible by {p}")
    modulus = p**N
    return PadicInt(p, N, reduced.numerator * pow(reduced.denominator, -1, modulus))


def padic_from_fraction(x: Rational, p: int, N: int) -> PadicInt:
    x = Fraction(x)
    return padic_from_rational(x.numerator, x.denominator, p, N)


def padic_add(a: PadicInt, b: PadicInt) -> PadicInt:
    return a + b


def padic_sub(a: PadicInt, b: PadicInt) -> PadicInt:
    return a - b


def padic_neg(a: PadicInt) -> PadicInt:
    return -a


def padic_mul(a: PadicInt, b: PadicInt) -> PadicInt:
    return a * b


def padic_inv(a: PadicInt) -> PadicInt:
    return a.inverse()


def padic_pow(a: PadicInt, e: int) -> PadicInt:
    return a**e


def padic_valuation(x: Rational, p: int) -> Union[int, float]:
    """v_p of a rational, +inf for zero"""
    v = p_valuation(x, p)
    return inf if v is None else v


# =============================================================================
# Integer polynomials
# =============================================================================


_X = Symbol("x")
CONSTANT_EXPONENT_LIMIT = 256


def _degree_bound(expr: Expr) -> int:
    """Upper bound on the degree in x, read off the expression tree without expanding"""
    if expr == _X:
        return 1
    if expr.is_Number:
        return 0
    if expr.is_Add:
        return max(_degree_bound(arg) for arg in expr.args)
    if expr.is_Mul:
        return sum(_degree_bound(arg) for arg in expr.args)
    if expr.is_Pow:
        base, exponent = expr.args
        if exponent.is_Integer and exponent >= 0:
            if base.free_symbols:
                return _degree_bound(base) * int(exponent)
            # 10^(10^9) would be evaluated in full by the second parse
            if not base.is_Number or exponent > CONSTANT_EXPONENT_LIMIT:
                raise PreconditionViolated(f"constant power {expr} is too large")
            return 0
    raise PreconditionViolated(f"{expr} is not an integer polynomial in x with literal exponents")


@dataclass(frozen=True)
class IntPolynomial:
    """sum alpha_i x^i with integer coefficients, index = degree"""

    coefficients: Tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = [int(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def parse(cls, text: str, max_degree: Optional[int] = None) -> "IntPolynomial":
        """
        Parse an expression in x such as ``x^2 - x^22``

        The degree is bounded from the unevaluated expression first, so
        ``x^1000000000`` is refused before any coefficient list is built.
        """
        source = text.replace("^", "**")
        try:
            degree = _degree_bound(parse_expr(source, local_dict={"x": _X}, evaluate=False))
        except PreconditionViolated:
            raise
        except Exception as e:
            raise PreconditionViolated(f"cannot parse polynomial {text!r}: {e}")
        if max_degree is not None and degree > max_degree:
            raise PreconditionViolated(f"polynomial {text!r} has degree up to {degree}, limit is {max_degree}")
        try:
            poly = Poly(parse_expr(source, local_dict={"x": _X}), _X)
        except Exception as e:
            raise PreconditionViolated(f"cannot parse polynomial {text!r}: {e}")
        coeffs = poly.all_coeffs()[::-1]
        if not all(c.is_integer for c in coeffs):
            raise PreconditionViolated(f"polynomial {text!r} has non-integer coefficients")
        return cls(tuple(int(c) for c in coeffs))

    @classmethod
    def monomial(cls, k: int, coefficient: int = 1) -> "IntPolynomial":
        return cls(tuple([0] * k + [coefficient]))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def terms(self) -> List[Tuple[int, int]]:
        return [(i, a) for i, a in enumerate(self.coefficients) if a]

    def evaluate(self, x: int, modulus: Optional[int] = None) -> int:
        # sparse: x^2 - x^22 style inputs have huge degree and two terms
        if modulus is None:
            return sum(a * x**i for i, a in self.terms())
        return sum(a * pow(x, i, modulus) for i, a in self.terms()) % modulus

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (size - len(self.coefficients))
        b = other.coefficients + (0,) * (size - len(other.coefficients))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        expr = sum(a * _X**i for i, a in self.terms())
        return str(expr).replace("**", "^")


# =============================================================================
# Power sums
# =============================================================================


def power_sum_closed(k: int, M: int) -> int:
    """(B_{k+1}(M) - B_{k+1})/(k+1), less the n = 0 term when k = 0"""
    value = (bernoulli_poly(k + 1, Fraction(M)) - bernoulli(k + 1)) / (k + 1)
    if k == 0:
        value -= 1
    if value.denominator != 1:
        raise NonIntegralResult(f"closed form for S_{k}({M}) is not an integer: {value}")
    return value.numerator


def power_sum(k: int, M: int) -> int:
    """sum_{n=1}^{M-1} n^k, by direct summation and by the Bernoulli closed form"""
    if M < 1:
        raise ValueError(f"power_sum needs M >= 1, got {M}")
    if k < 0:
        raise ValueError(f"power_sum needs k >= 0, got {k}")
    closed = power_sum_closed(k, M)
    direct = sum(n**k for n in range(1, M))
    if direct != closed:
        raise InconsistentMethods(f"S_{k}({M}): direct {direct} != closed form {closed}")
    return closed


def power_sum_star(k: int, p: int, N: int) -> int:
    """sum of n^k over 1 <= n < p^N with p not dividing n"""
    if N < 1:
        raise ValueError(f"power_sum_star needs N >= 1, got {N}")
    closed = power_sum_closed(k, p**N) - p**k * power_sum_closed(k, p ** (N - 1))
    if p**N <= DIRECT_SUM_LIMIT:
        direct = sum(n**k for n in range(1, p**N) if n % p)
        if direct != closed:
            raise InconsistentMethods(f"S*_{k}({p}^{N}): direct {direct} != closed form {closed}")
    return closed


def bernoulli_padic_limit_check(k: int, p: int, N_max: int) -> CongruenceReport:
    """
    S_k(p^N)/p^N tends to B_k p-adically

    The difference at level N must have valuation at least N - 1.
    """
    _check_odd_prime(p)
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k == 0 or k % (p - 1) == 0:
        raise NonPIntegral(f"B_{k} is not {p}-integral or the limit degenerates at k = {k}")
    b_k = bernoulli(k)
    report = CongruenceReport(
        check="bernoulli-limit", modulus={"p": p}, details={"k": k, "NMax": N_max, "offset": 1}
    )
    previous: Optional[int] = None
    monotone = True
    for N in range(1, N_max + 1):
        M = p**N
        diff = Fraction(power_sum_closed(k, M), M) - b_k
        v = p_valuation(diff, p)
        report.record(N, v)
        if v is not None and v < N - 1:
            report.mismatches.append(N)
        if previous is not None and v is not None and v <= previous:
            monotone = False
        previous = v
    report.details["monotone"] = monotone
    return report


# =============================================================================
# Regularized zeta values and the Kummer congruences
# =============================================================================


def zeta_reg(c: int, p: int, k: int) -> Fraction:
    """(1 - c^{k+1})(1 - p^k) zeta(-k), which is p-integral"""
    _check_regularizer(c, p)
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    value = (1 - c ** (k + 1)) * (1 - p**k) * zeta_nonpositive(k)
    if value.denominator % p == 0:
        raise NonIntegralResult(f"regularized zeta({-k}) = {value} is not {p}-integral")
    return value


def kummer_check(h: IntPolynomial, p: int, N: int, c: int) -> CongruenceReport:
    """If h vanishes on (Z/p^N)^*, then sum alpha_i zeta_reg(-i) = 0 (mod p^N)"""
    _check_odd_prime(p)
    _check_regularizer(c, p)
    if N < 1:
        raise PreconditionViolated(f"N must be >= 1, got {N}")
    modulus = p**N
    for a in range(1, modulus):
        if a % p and h.evaluate(a, modulus) != 0:
            raise HypothesisFails(f"h({a}) is not 0 mod {p}^{N}; no conclusion is asserted")

    total = sum((alpha * zeta_reg(c, p, i) for i, alpha in h.terms()), Fraction(0))
    report = CongruenceReport(
        check="kummer",
        modulus={"p": p, "N": N},
        bound=N,
        details={"h": h.to_text(), "c": c, "hypothesis": "pass", "value": total},
    )
    report.record(0, p_valuation(total, p))
    report.details["conclusion"] = report.verdict
    return report


def kummer_continuity(k: int, k2: int, p: int, N: int, c: int) -> CongruenceReport:
    """zeta_reg(-k) = zeta_reg(-k2) (mod p^N) when k = k2 mod (p-1)p^(N-1)"""
    _check_odd_prime(p)
    _check_regularizer(c, p)
    modulus = (p - 1) * p ** (N - 1)
    if (k - k2) % modulus:
        raise PreconditionViolated(f"k = {k} and k' = {k2} are not congruent mod {modulus}")
    diff = zeta_reg(c, p, k) - zeta_reg(c, p, k2)
    report = CongruenceReport(
        check="kummer-continuity",
        modulus={"p": p, "N": N},
        bound=N,
        details={"k": k, "k2": k2, "c": c},
    )
    report.record(0, p_valuation(diff, p))
    return report


def zeta_reg_riemann_sum(c: int, p: int, k: int, M: int) -> PadicInt:
    """
    sum t_n * n_c^k over units n < p^M, with c*n = n_c + p^M t_n and 0 < n_c < p^M

    Agrees with zeta_reg(c, p, k) modulo p^(M - 2 - v_p(k+1)).
    """
    _check_odd_prime(p)
    _check_regularizer(c, p)
    modulus = p**M
    total = 0
    for n in range(1, modulus):
        if n % p == 0:
            continue
        t_n, n_c = divmod(c * n, modulus)
        total += t_n * pow(n_c, k, modulus)
    return PadicInt(p, M, total)


def riemann_sum_check(c: int, p: int, k: int, M: int) -> CongruenceReport:
    value = zeta_reg_riemann_sum(c, p, k, M)
    exact = padic_from_fraction(zeta_reg(c, p, k), p, M)
    bound = max(0, M - 2 - (p_valuation(k + 1, p) or 0))
    report = CongruenceReport(
        check="riemann-sum",
        modulus={"p": p, "N": M},
        bound=bound,
        details={"c": c, "k": k, "riemannSum": value.to_dict(), "zetaReg": exact.to_dict()},
    )
    diff = padic_sub(value, exact)
    report.record(0, None if diff.residue == 0 else diff.valuation)
    return report


# =============================================================================
# Moments of the regularized measure
# =============================================================================


def mazur_moment(k: int, c: int, p: int) -> Fraction:
    """Integral of x^k: 0 for k = 0, else (1-c^k)(1-p^(k-1)) zeta(1-k)"""
    if k == 0:
        _check_regularizer(c, p)
        return Fraction(0)
    return zeta_reg(c, p, k - 1)


def mazur_integrate_poly(h: IntPolynomial, c: int, p: int, N: int) -> PadicInt:
    _check_odd_prime(p)
    _check_regularizer(c, p)
    total = PadicInt(p, N, 0)
    for k, alpha in h.terms():
        moment = padic_from_fraction(mazur_moment(k, c, p), p, N)
        total = padic_add(total, padic_mul(moment, PadicInt(p, N, alpha)))
    return total


def mellin_at_power(k: int, c: int, p: int, N: int) -> PadicInt:
    """The measure evaluated on the character x -> x^k"""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return mazur_integrate_poly(IntPolynomial.monomial(k), c, p, N)


# =============================================================================
# Kubota-Leopoldt values
# =============================================================================


def kubota_leopoldt_rational(k: int, p: int) -> Fraction:
    """(1 - p^k) zeta(-k); not p-integral exactly when (p-1) | (k+1)"""
    _check_odd_prime(p)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if (k + 1) % (p - 1) == 0:
        raise NonPIntegral(f"(p-1) divides k+1 = {k + 1}: zeta({-k}) has {p} in its denominator")
    return (1 - p**k) * zeta_nonpositive(k)


def kubota_leopoldt_value(k: int, p: int, N: int) -> PadicInt:
    return padic_from_fraction(kubota_leopoldt_rational(k, p), p, N)


def kubota_leopoldt_congruence(k: int, p: int, N: int) -> CongruenceReport:
    """Values at k and k + (p-1)p^(N-1) agree modulo p^N"""
    k2 = k + (p - 1) * p ** (N - 1)
    diff = kubota_leopoldt_rational(k, p) - kubota_leopoldt_rational(k2, p)
    report = CongruenceReport(
        check="kubota-leopoldt", modulus={"p": p, "N": N}, bound=N, details={"k": k, "k2": k2}
    )
    report.record(0, p_valuation(diff, p))
    return report
