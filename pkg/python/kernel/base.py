"""
Shared kernel types: the exception hierarchy and the congruence report

Every checker in the kernel returns a CongruenceReport; every failure the
kernel can signal is a KernelError subclass carrying the process exit code
the command line maps it to.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional
import logging

logger = logging.getLogger("modkernel")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK_FAILED = 2
EXIT_INTEGRALITY = 3


class KernelError(Exception):
    """Base exception for kernel errors"""

    exit_code = EXIT_INTEGRALITY


# =============================================================================
# USAGE-LEVEL ERRORS (exit 1)
# =============================================================================


class PreconditionError(KernelError):
    """Raised when an operation is called outside its domain"""

    exit_code = EXIT_USAGE


class ZeroConstantTerm(PreconditionError):
    """Raised when inverting a series whose constant term is zero"""
    pass


class NonUnitConstantTerm(PreconditionError):
    """Raised when taking a root of a series whose constant term is not 1"""
    pass


class InvalidWeight(PreconditionError):
    """Raised for odd, negative or too small modular weights"""
    pass


class InvalidPrime(PreconditionError):
    """Raised when p is not an odd prime"""
    pass


class ZeroParameter(PreconditionError):
    """Raised when a parameter that must be invertible is zero"""
    pass


class PreconditionViolated(PreconditionError):
    """Raised when the hypothesis of a congruence is not met"""
    pass


class RangeExceeded(PreconditionError):
    """Raised when a value lies outside the cached or configured range"""
    pass


class MixedContext(PreconditionError):
    """Raised when p-adic operands do not share (p, N)"""
    pass


class NonUnit(PreconditionError):
    """Raised when inverting a p-adic integer of positive valuation"""
    pass


class DenominatorDivisibleByP(PreconditionError):
    """Raised when a rational handed to Z_p has p in its denominator"""
    pass


class NegativeValuation(DenominatorDivisibleByP):
    """Raised when the reduced rational itself is not p-integral"""
    pass


class InvalidForm(PreconditionError):
    """Raised for an unknown q-expansion form name"""
    pass


class HypothesisFails(PreconditionError):
    """Raised when h does not vanish on units, so no conclusion is asserted"""
    pass


class NotInSpace(PreconditionError):
    """Raised when a series is not a combination of the given basis"""
    pass


# =============================================================================
# MATHEMATICAL FAILURES (exit 2)
# =============================================================================


class MathematicalError(KernelError):
    """Raised when a value needed by a check does not exist in Z_p"""

    exit_code = EXIT_CHECK_FAILED


class NonPIntegral(MathematicalError):
    """Raised when a rational has p in its denominator (von Staudt)"""
    pass


class DenominatorNotPUnit(MathematicalError):
    """Raised when a congruence coefficient has p in its denominator"""
    pass


# =============================================================================
# INTERNAL INTEGRALITY VIOLATIONS (exit 3)
# =============================================================================


class IntegralityViolation(KernelError):
    """Raised when a quantity that must be an integer is not"""

    exit_code = EXIT_INTEGRALITY


class NonIntegralQuotient(IntegralityViolation):
    """Raised when (Delta - sum sigma_11 q^n)/691 is not integral"""
    pass


class NonIntegralResult(IntegralityViolation):
    """Raised when Manin's formula does not produce an integer"""
    pass


class InconsistentMethods(IntegralityViolation):
    """Raised when two independent algorithms disagree"""
    pass


# =============================================================================
# CONGRUENCE REPORT
# =============================================================================


def _jsonable(value: Any) -> Any:
    """Big integers and rationals go out as decimal strings"""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass
class CongruenceReport:
    """
    Structured verdict of a congruence or identity check

    ``valuations`` maps a checked index (coefficient exponent, n, N, ...)
    to the p-adic valuation of the difference found there; ``None`` stands
    for an identically zero difference (infinite valuation).
    """

    check: str
    modulus: Dict[str, Any]
    bound: Optional[int] = None
    valuations: Dict[int, Optional[int]] = field(default_factory=dict)
    residues: Dict[int, int] = field(default_factory=dict)
    mismatches: List[int] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def min_valuation(self) -> Optional[int]:
        finite = [v for v in self.valuations.values() if v is not None]
        return min(finite) if finite else None

    @property
    def first_failure(self) -> Optional[int]:
        if self.mismatches:
            return min(self.mismatches)
        if self.bound is None:
            return None
        for index in sorted(self.valuations):
            v = self.valuations[index]
            if v is not None and v < self.bound:
                return index
        return None

    @property
    def passed(self) -> bool:
        return self.first_failure is None

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def record(self, index: int, valuation: Optional[int]) -> None:
        self.valuations[index] = valuation

    def to_dict(self) -> Dict[str, Any]:
        min_v = self.min_valuation
        return {
            "check": self.check,
            "modulus": _jsonable(self.modulus),
            "bound": self.bound,
            "verdict": self.verdict,
            "passed": self.passed,
            "firstFailure": self.first_failure,
            "minValuation": "inf" if min_v is None and self.valuations else min_v,
            "checkedCount": max(len(self.valuations), len(self.residues)),
            "valuations": {
                str(i): ("inf" if v is None else v)
                for i, v in sorted(self.valuations.items())
            },
            "residues": {str(i): r for i, r in sorted(self.residues.items())},
            "mismatches": list(self.mismatches),
            "details": _jsonable(self.details),
        }
