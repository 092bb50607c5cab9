"""
Truncated formal power series in q over exact rationals

A QSeries is known modulo q^(trunc+1). Values are immutable; every operation
returns a new series whose truncation is the minimum of the operands'.
Products are computed on integer numerators over a common denominator, so
the dense path stays in machine-friendly int arithmetic, and the sparser
operand drives the outer loop (eta and theta products are very sparse).
"""
from fractions import Fraction
from math import lcm
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union
import logging

from kernel.base import NonUnitConstantTerm, ZeroConstantTerm

logger = logging.getLogger("modkernel")

Scalar = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _scale_to_integers(coeffs: Sequence[Fraction]) -> Tuple[List[int], int]:
    """Return (integer numerators, common denominator) for a coefficient list"""
    denom = 1
    for c in coeffs:
        if c.denominator != 1:
            denom = lcm(denom, c.denominator)
    if denom == 1:
        return [c.numerator for c in coeffs], 1
    return [c.numerator * (denom // c.denominator) for c in coeffs], denom


class QSeries:
    """Truncated power series c_0 + c_1 q + ... + c_N q^N + O(q^(N+1))"""

    __slots__ = ("_trunc", "_coeffs")

    def __init__(self, coeffs: Iterable[Scalar], trunc: Optional[int] = None):
        values = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        if trunc is None:
            trunc = len(values) - 1
        if trunc < 0:
            raise ValueError("truncation must be a non-negative integer")
        if len(values) <= trunc:
            values.extend([_ZERO] * (trunc + 1 - len(values)))
        self._trunc = trunc
        self._coeffs: Tuple[Fraction, ...] = tuple(values[: trunc + 1])

    # -------------------------------------------------------------------------
    # Constructors
    # -------------------------------------------------------------------------

    @classmethod
    def zero(cls, trunc: int) -> "QSeries":
        return cls([], trunc)

    @classmethod
    def one(cls, trunc: int) -> "QSeries":
        return cls([1], trunc)

    @classmethod
    def constant(cls, value: Scalar, trunc: int) -> "QSeries":
        return cls([value], trunc)

    @classmethod
    def from_terms(cls, terms: Dict[int, Scalar], trunc: int) -> "QSeries":
        """Build from a sparse exponent -> coefficient map (exponents > trunc dropped)"""
        values: List[Fraction] = [_ZERO] * (trunc + 1)
        for exponent, value in terms.items():
            if exponent < 0:
                raise ValueError("negative exponents are not representable")
            if exponent <= trunc:
                values[exponent] += Fraction(value)
        return cls(values, trunc)

    @classmethod
    def _from_fractions(cls, values: List[Fraction], trunc: int) -> "QSeries":
        series = cls.__new__(cls)
        series._trunc = trunc
        series._coeffs = tuple(values)
        return series

    # -------------------------------------------------------------------------
    # Accessors
    # -------------------------------------------------------------------------

    @property
    def trunc(self) -> int:
        return self._trunc

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    def __getitem__(self, index: int) -> Fraction:
        if index < 0 or index > self._trunc:
            raise IndexError(f"coefficient q^{index} is beyond O(q^{self._trunc + 1})")
        return self._coeffs[index]

    def __len__(self) -> int:
        return self._trunc + 1

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self._coeffs)

    def nonzero_terms(self) -> List[Tuple[int, Fraction]]:
        return [(i, c) for i, c in enumerate(self._coeffs) if c]

    def support(self) -> List[int]:
        """Exponents carrying a nonzero coefficient"""
        return [i for i, c in enumerate(self._coeffs) if c]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._coeffs)

    def integer_coefficients(self) -> List[int]:
        if not self.is_integral():
            raise ValueError("series has non-integral coefficients")
        return [c.numerator for c in self._coeffs]

    def truncate(self, trunc: int) -> "QSeries":
        if trunc > self._trunc:
            raise ValueError(f"cannot extend O(q^{self._trunc + 1}) to O(q^{trunc + 1})")
        return QSeries._from_fractions(list(self._coeffs[: trunc + 1]), trunc)

    # -------------------------------------------------------------------------
    # Ring operations
    # -------------------------------------------------------------------------

    def _coerce(self, other: Union["QSeries", Scalar]) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return QSeries.constant(other, self._trunc)
        return NotImplemented

    def __add__(self, other: Union["QSeries", Scalar]) -> "QSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        trunc = min(self._trunc, other._trunc)
        return QSeries._from_fractions(
            [self._coeffs[i] + other._coeffs[i] for i in range(trunc + 1)], trunc
        )

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries._from_fractions([-c for c in self._coeffs], self._trunc)

    def __sub__(self, other: Union["QSeries", Scalar]) -> "QSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "QSeries":
        return (-self) + other

    def scale(self, factor: Scalar) -> "QSeries":
        factor = Fraction(factor)
        return QSeries._from_fractions([factor * c for c in self._coeffs], self._trunc)

    def __mul__(self, other: Union["QSeries", Scalar]) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return _convolve(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["QSeries", Scalar]) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a series by zero")
            return self.scale(Fraction(1) / Fraction(other))
        if isinstance(other, QSeries):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, exponent: int) -> "QSeries":
        return qs_pow(self, exponent)

    def __eq__(self, other: object) -> bool:
        """Equality up to the common truncation"""
        if isinstance(other, (int, Fraction)):
            other = QSeries.constant(other, self._trunc)
        if not isinstance(other, QSeries):
            return NotImplemented
        trunc = min(self._trunc, other._trunc)
        return self._coeffs[: trunc + 1] == other._coeffs[: trunc + 1]

    def __hash__(self) -> int:
        return hash((self._trunc, self._coeffs))

    # -------------------------------------------------------------------------
    # Structured operations used by the product formulas
    # -------------------------------------------------------------------------

    def inverse(self) -> "QSeries":
        return qs_inv(self)

    def mul_binomial(self, c: Scalar, e: int) -> "QSeries":
        """Return self * (1 + c q^e) in O(N)"""
        c = Fraction(c)
        if e == 0:
            return self.scale(1 + c)
        out = list(self._coeffs)
        for k in range(self._trunc, e - 1, -1):
            out[k] += c * out[k - e]
        return QSeries._from_fractions(out, self._trunc)

    def div_binomial(self, c: Scalar, e: int) -> "QSeries":
        """Return self / (1 + c q^e) in O(N)"""
        c = Fraction(c)
        if e == 0:
            if 1 + c == 0:
                raise ZeroConstantTerm("division by a series with zero constant term")
            return self.scale(1 / (1 + c))
        out = list(self._coeffs)
        for k in range(e, self._trunc + 1):
            out[k] -= c * out[k - e]
        return QSeries._from_fractions(out, self._trunc)

    def substitute_qpow(self, m: int) -> "QSeries":
        return qs_substitute_qpow(self, m)

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k keeping the truncation"""
        if k < 0:
            raise ValueError("use divide_by_q for negative shifts")
        out = [_ZERO] * k + list(self._coeffs)
        return QSeries._from_fractions(out[: self._trunc + 1], self._trunc)

    def divide_by_q(self, k: int = 1) -> "QSeries":
        """Divide by q^k; the first k coefficients must vanish and trunc drops by k"""
        if k > self._trunc:
            raise ValueError("not enough known coefficients to divide by q^k")
        if any(self._coeffs[:k]):
            raise ValueError(f"series is not divisible by q^{k}")
        return QSeries._from_fractions(list(self._coeffs[k:]), self._trunc - k)

    # -------------------------------------------------------------------------
    # Presentation and serialization
    # -------------------------------------------------------------------------

    def to_json(self) -> Dict[str, Any]:
        return {"trunc": self._trunc, "coeffs": [str(c) for c in self._coeffs]}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "QSeries":
        return cls([Fraction(c) for c in data["coeffs"]], int(data["trunc"]))

    def to_text(self) -> str:
        parts: List[str] = []
        for i, c in enumerate(self._coeffs):
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if i == 0:
                body = str(magnitude)
            else:
                power = "q" if i == 1 else f"q^{i}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            parts.append(f"{sign} {body}")
        parts.append(f"+ O(q^{self._trunc + 1})")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"QSeries({self.to_text()})"


# =============================================================================
# Functional API
# =============================================================================


def _convolve(a: QSeries, b: QSeries) -> QSeries:
    trunc = min(a.trunc, b.trunc)
    a_ints, a_den = _scale_to_integers(a.coeffs[: trunc + 1])
    b_ints, b_den = _scale_to_integers(b.coeffs[: trunc + 1])

    sparse_a = [(i, c) for i, c in enumerate(a_ints) if c]
    sparse_b = [(i, c) for i, c in enumerate(b_ints) if c]
    if len(sparse_a) > len(sparse_b):
        sparse_a, b_ints = sparse_b, a_ints

    out = [0] * (trunc + 1)
    for i, c in sparse_a:
        if c == 1:
            for j in range(trunc + 1 - i):
                out[i + j] += b_ints[j]
        elif c == -1:
            for j in range(trunc + 1 - i):
                out[i + j] -= b_ints[j]
        else:
            for j in range(trunc + 1 - i):
                out[i + j] += c * b_ints[j]

    denom = a_den * b_den
    if denom == 1:
        return QSeries._from_fractions([Fraction(v) for v in out], trunc)
    return QSeries._from_fractions([Fraction(v, denom) for v in out], trunc)


def qs_add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    return _convolve(a, b)


def qs_inv(a: QSeries) -> QSeries:
    """Multiplicative inverse; requires a nonzero constant term"""
    c0 = a[0]
    if c0 == 0:
        raise ZeroConstantTerm("cannot invert a series with zero constant term")
    trunc = a.trunc
    terms = [(i, c) for i, c in a.nonzero_terms() if i > 0]

    if a.is_integral() and abs(c0) == 1:
        # unit constant term: stay in integers
        sign = c0.numerator
        ints = [0] * (trunc + 1)
        ints[0] = sign
        int_terms = [(i, c.numerator) for i, c in terms]
        for n in range(1, trunc + 1):
            acc = 0
            for i, c in int_terms:
                if i > n:
                    break
                acc += c * ints[n - i]
            ints[n] = -sign * acc
        return QSeries._from_fractions([Fraction(v) for v in ints], trunc)

    inv_c0 = 1 / c0
    out: List[Fraction] = [_ZERO] * (trunc + 1)
    out[0] = inv_c0
    for n in range(1, trunc + 1):
        acc = _ZERO
        for i, c in terms:
            if i > n:
                break
            acc += c * out[n - i]
        out[n] = -inv_c0 * acc
    return QSeries._from_fractions(out, trunc)


def _is_sparse(a: QSeries) -> bool:
    return len(a.nonzero_terms()) ** 2 <= a.trunc + 1


def qs_pow(a: QSeries, e: int) -> QSeries:
    """Integer power; negative exponents go through the inverse"""
    if e < 0:
        return qs_pow(qs_inv(a), -e)
    result = QSeries.one(a.trunc)
    if e == 0:
        return result
    if _is_sparse(a):
        # repeated multiplication by a sparse factor beats squaring dense series
        for _ in range(e):
            result = result * a
        return result
    base = a
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def qs_nth_root(a: QSeries, n: int) -> QSeries:
    """
    The unique b with b^n = a and b_0 = 1

    Uses the recursion from a * b' = (1/n) * a' * b:
        m * b_m = sum_{k=1..m} (k/n - (m - k)) * a_k * b_{m-k}
    """
    if n <= 0:
        raise ValueError("root order must be a positive integer")
    if a[0] != 1:
        raise NonUnitConstantTerm("nth root needs constant term 1")
    alpha = Fraction(1, n)
    trunc = a.trunc
    terms = [(i, c) for i, c in a.nonzero_terms() if i > 0]
    out: List[Fraction] = [_ZERO] * (trunc + 1)
    out[0] = _ONE
    for m in range(1, trunc + 1):
        acc = _ZERO
        for k, c in terms:
            if k > m:
                break
            acc += (alpha * k - (m - k)) * c * out[m - k]
        out[m] = acc / m
    return QSeries._from_fractions(out, trunc)


def qs_substitute_qpow(a: QSeries, m: int) -> QSeries:
    """q -> q^m with the truncation preserved"""
    if m <= 0:
        raise ValueError("substitution exponent must be a positive integer")
    out: List[Fraction] = [_ZERO] * (a.trunc + 1)
    for n in range(a.trunc // m + 1):
        out[m * n] = a[n]
    return QSeries._from_fractions(out, a.trunc)


def monomial(exponent: int, trunc: int, coefficient: Scalar = 1) -> QSeries:
    return QSeries.from_terms({exponent: coefficient}, trunc)
