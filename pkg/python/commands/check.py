"""
check command: every congruence and identity checker behind one name
"""
from fractions import Fraction
from typing import Any, Callable, Dict, Literal, Optional
import logging

from pydantic import BaseModel, Field, field_validator

from commands.responses import enforce_limit, failure_response, report_response
from kernel import arithfun, modforms, padic, tau
from kernel.base import CongruenceReport, PreconditionViolated
from kernel.padic import IntPolynomial
from utils.config import KernelConfig

logger = logging.getLogger("modkernel")


class CheckParams(BaseModel):
    """Union of the parameters any check takes; each check reads its own subset"""

    check: str = Field(..., min_length=1)
    p: Optional[int] = Field(None, ge=2)
    k: Optional[int] = Field(None, ge=0)
    k2: Optional[int] = Field(None, ge=0)
    N: Optional[int] = Field(None, ge=1)
    c: Optional[int] = None
    h: Optional[str] = None
    h2: Optional[str] = None
    n: Optional[int] = Field(None, ge=1)
    m: Optional[int] = Field(None, ge=1)
    nmax: Optional[int] = Field(None, ge=1)
    pmax: Optional[int] = Field(None, ge=2)
    kmax: Optional[int] = Field(None, ge=0)
    r: Optional[int] = Field(None, ge=0)
    limit: Optional[int] = Field(None, ge=1)
    terms: Optional[int] = Field(None, ge=0)
    u: Optional[str] = None
    a: Optional[str] = None
    t: Optional[str] = None
    method: Literal["eta", "eisenstein", "manin"] = "eta"

    @field_validator("u", "a", "t")
    @classmethod
    def _rational(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            try:
                Fraction(str(value))
            except (ValueError, ZeroDivisionError) as e:
                raise ValueError(f"{value!r} is not a rational number: {e}")
        return None if value is None else str(value)

    def require(self, *names: str) -> None:
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            raise PreconditionViolated(f"check {self.check} needs --{', --'.join(missing)}")


P_ADIC_EXPONENT_CHECKS = ("kummer-continuity", "bernoulli-limit", "kubota-leopoldt", "riemann-sum")


def _boolean_report(name: str, index: int, ok: bool, **details: Any) -> CongruenceReport:
    report = CongruenceReport(check=name, modulus={}, details=details)
    if not ok:
        report.mismatches.append(index)
    return report


class CheckCommands:
    """Handles the congruence and identity checks"""

    def __init__(self, config: KernelConfig):
        self.config = config
        self.checks: Dict[str, Callable[[CheckParams], CongruenceReport]] = {
            "ramanujan-691": self._ramanujan_691,
            "eisenstein-congruence": self._eisenstein_congruence,
            "kummer": self._kummer,
            "kummer-continuity": self._kummer_continuity,
            "gauss-identity": self._gauss_identity,
            "jacobi-triple": self._jacobi_triple,
            "cauchy": self._cauchy,
            "r4": self._r4,
            "three-squares": self._three_squares,
            "deligne": self._deligne,
            "lehmer": self._lehmer,
            "hecke": self._hecke,
            "hardy-ramanujan": self._hardy_ramanujan,
            "tau-partition": self._tau_partition,
            "euler-factor": self._euler_factor,
            "divisor-bound": self._divisor_bound,
            "ramanujan-proof": self._ramanujan_proof,
            "bernoulli-limit": self._bernoulli_limit,
            "kubota-leopoldt": self._kubota_leopoldt,
            "riemann-sum": self._riemann_sum,
            "mazur-linearity": self._mazur_linearity,
            "modular-identities": self._modular_identities,
            "manin-variant": self._manin_variant,
            "dimensions": self._dimensions,
        }

    def check(self, params: Dict[str, Any]) -> Dict[str, Any]:
        """Run one named check and return its report"""
        try:
            args = CheckParams(**params)
            runner = self.checks.get(args.check)
            if runner is None:
                raise PreconditionViolated(
                    f"unknown check {args.check!r}; known checks: {', '.join(sorted(self.checks))}"
                )
            self._enforce_limits(args)
            logger.info(f"Running check {args.check}")
            report = runner(args)
            return report_response(report.to_dict())

        except Exception as e:
            return failure_response(e, f"check {params.get('check', '')}".strip())

    def _enforce_limits(self, args: CheckParams) -> None:
        cfg = self.config
        enforce_limit("terms", args.terms, cfg.max_terms)
        enforce_limit("p", args.p, cfg.max_prime)
        enforce_limit("pmax", args.pmax, cfg.max_prime)
        enforce_limit("N", args.N, cfg.max_precision)
        enforce_limit("nmax", args.nmax, cfg.max_tau_n)
        enforce_limit("n", args.n, cfg.max_tau_n)
        enforce_limit("kmax", args.kmax, cfg.max_weight)
        if args.check == "eisenstein-congruence":
            enforce_limit("k", args.k, cfg.max_weight)
            enforce_limit("k2", args.k2, cfg.max_weight)
        if args.check in P_ADIC_EXPONENT_CHECKS:
            enforce_limit("k", args.k, cfg.max_exponent)
            enforce_limit("k2", args.k2, cfg.max_exponent)
        if args.check == "kubota-leopoldt" and None not in (args.k, args.p, args.N):
            enforce_limit("k + (p-1)p^(N-1)", args.k + (args.p - 1) * args.p ** (args.N - 1), cfg.max_exponent)
        if args.check in ("kummer", "riemann-sum") and None not in (args.p, args.N):
            # both walk every residue below p^N
            enforce_limit("p^N", args.p**args.N, cfg.max_residues)
        if args.check == "manin-variant":
            enforce_limit("n", args.n or args.nmax, cfg.max_manin_n)
        if args.check == "ramanujan-691" and args.method == "eisenstein":
            enforce_limit("n", args.n, cfg.max_terms)

    def _polynomial(self, text: str) -> IntPolynomial:
        return IntPolynomial.parse(text, max_degree=self.config.max_exponent)

    # -------------------------------------------------------------------------
    # tau and Delta
    # -------------------------------------------------------------------------

    def _ramanujan_691(self, args: CheckParams) -> CongruenceReport:
        if args.n is not None:
            at = tau.ramanujan_congruence_at(args.n, args.method)
            report = CongruenceReport(
                check="ramanujan-691", modulus={"p": 691, "N": 1}, bound=1, details=at
            )
            report.record(args.n, None if at["valuation"] == "inf" else at["valuation"])
            return report
        return tau.ramanujan_congruence_check(args.nmax or 1000)

    def _deligne(self, args: CheckParams) -> CongruenceReport:
        if args.p is not None:
            return _boolean_report("deligne", args.p, tau.deligne_check(args.p), p=args.p)
        return tau.deligne_sweep(args.pmax or 500)

    def _lehmer(self, args: CheckParams) -> CongruenceReport:
        n_max = args.nmax or 1000
        zero = tau.lehmer_check(n_max)
        return _boolean_report("lehmer", zero or 0, zero is None, nMax=n_max, firstZero=zero)

    def _hecke(self, args: CheckParams) -> CongruenceReport:
        if args.m is not None and args.n is not None:
            ok = tau.hecke_check(args.m, args.n)
            return _boolean_report("hecke", args.m * args.n, ok, m=args.m, n=args.n)
        return tau.hecke_sweep(args.limit or 30)

    def _tau_partition(self, args: CheckParams) -> CongruenceReport:
        terms = args.terms or 100
        return _boolean_report("tau-partition", terms, tau.tau_partition_identity(terms), terms=terms)

    def _euler_factor(self, args: CheckParams) -> CongruenceReport:
        args.require("p")
        r_max = args.r if args.r is not None else 5
        ok = tau.euler_factor_check(args.p, r_max)
        return _boolean_report("euler-factor", args.p, ok, p=args.p, rMax=r_max)

    def _divisor_bound(self, args: CheckParams) -> CongruenceReport:
        if args.n is not None:
            return _boolean_report("divisor-bound", args.n, tau.divisor_bound_check(args.n), n=args.n)
        n_max = args.nmax or 500
        report = CongruenceReport(check="divisor-bound", modulus={}, details={"nMax": n_max})
        report.mismatches.extend(n for n in range(1, n_max + 1) if not tau.divisor_bound_check(n))
        return report

    def _manin_variant(self, args: CheckParams) -> CongruenceReport:
        n_max = args.n or args.nmax or 100
        report = CongruenceReport(check="manin-variant", modulus={}, details={"nMax": n_max})
        report.mismatches.extend(n for n in range(1, n_max + 1) if not tau.tau_manin_variant_check(n))
        return report

    # -------------------------------------------------------------------------
    # Modular forms
    # -------------------------------------------------------------------------

    def _eisenstein_congruence(self, args: CheckParams) -> CongruenceReport:
        args.require("p", "k", "k2", "N")
        return modforms.check_eisenstein_congruence(
            args.p, args.k, args.k2, args.N, args.terms if args.terms is not None else 100, args.c
        )

    def _ramanujan_proof(self, args: CheckParams) -> CongruenceReport:
        terms = args.terms or 50
        outcome = modforms.ramanujan_691_decomposition(terms)
        ok = outcome["identityVerified"] and outcome["impliesCongruence"]
        return _boolean_report("ramanujan-proof", terms, ok, **outcome)

    def _modular_identities(self, args: CheckParams) -> CongruenceReport:
        terms = args.terms or 60
        e4 = modforms.eisenstein_E(4, terms)
        pairs = {
            "E4*E4=E8": (e4 * e4, modforms.eisenstein_E(8, terms)),
            "E4*E6=E10": (e4 * modforms.eisenstein_E(6, terms), modforms.eisenstein_E(10, terms)),
            "delta_eta=delta_eisenstein": (modforms.delta_eta(terms), modforms.delta_eisenstein(terms)),
            "delta_jacobi=delta_product": (
                modforms.delta_eta(terms, "jacobi"),
                modforms.delta_eta(terms, "product"),
            ),
        }
        report = CongruenceReport(check="modular-identities", modulus={}, details={"terms": terms})
        for name, (lhs, rhs) in pairs.items():
            sub = modforms.check_identity(name, lhs, rhs)
            report.details[name] = sub.verdict
            report.mismatches.extend(sub.mismatches)
        report.mismatches = sorted(set(report.mismatches))
        return report

    def _dimensions(self, args: CheckParams) -> CongruenceReport:
        k_max = args.kmax or 200
        report = modforms.cusp_isomorphism_check(k_max)
        report.check = "dimensions"
        report.mismatches.extend(
            k for k in range(0, k_max + 1, 2) if len(modforms.monomial_basis(k)) != modforms.dim_Mk(k)
        )
        report.mismatches = sorted(set(report.mismatches))
        return report

    # -------------------------------------------------------------------------
    # Classical q-series
    # -------------------------------------------------------------------------

    def _gauss_identity(self, args: CheckParams) -> CongruenceReport:
        return arithfun.verify_gauss_identity(args.terms if args.terms is not None else 100)

    def _jacobi_triple(self, args: CheckParams) -> CongruenceReport:
        args.require("u")
        return arithfun.verify_jacobi_triple(Fraction(args.u), args.terms if args.terms is not None else 50)

    def _cauchy(self, args: CheckParams) -> CongruenceReport:
        args.require("a", "t")
        return arithfun.verify_cauchy(
            Fraction(args.a), Fraction(args.t), args.terms if args.terms is not None else 30
        )

    def _r4(self, args: CheckParams) -> CongruenceReport:
        return arithfun.r4_check(args.nmax or 2000)

    def _three_squares(self, args: CheckParams) -> CongruenceReport:
        return arithfun.three_squares_check(args.nmax or 2000)

    def _hardy_ramanujan(self, args: CheckParams) -> CongruenceReport:
        return arithfun.hardy_ramanujan_check(args.n or 1000)

    # -------------------------------------------------------------------------
    # p-adic
    # -------------------------------------------------------------------------

    def _kummer(self, args: CheckParams) -> CongruenceReport:
        args.require("p", "N", "c", "h")
        return padic.kummer_check(self._polynomial(args.h), args.p, args.N, args.c)

    def _kummer_continuity(self, args: CheckParams) -> CongruenceReport:
        args.require("k", "k2", "p", "N", "c")
        return padic.kummer_continuity(args.k, args.k2, args.p, args.N, args.c)

    def _bernoulli_limit(self, args: CheckParams) -> CongruenceReport:
        args.require("k", "p")
        return padic.bernoulli_padic_limit_check(args.k, args.p, args.N or 4)

    def _kubota_leopoldt(self, args: CheckParams) -> CongruenceReport:
        args.require("k", "p", "N")
        return padic.kubota_leopoldt_congruence(args.k, args.p, args.N)

    def _riemann_sum(self, args: CheckParams) -> CongruenceReport:
        args.require("c", "p", "k", "N")
        return padic.riemann_sum_check(args.c, args.p, args.k, args.N)

    def _mazur_linearity(self, args: CheckParams) -> CongruenceReport:
        args.require("h", "h2", "c", "p", "N")
        h1, h2 = self._polynomial(args.h), self._polynomial(args.h2)
        first = padic.mazur_integrate_poly(h1, args.c, args.p, args.N)
        second = padic.mazur_integrate_poly(h2, args.c, args.p, args.N)
        combined = padic.mazur_integrate_poly(h1 + h2, args.c, args.p, args.N)
        total_mass = padic.mazur_integrate_poly(IntPolynomial((1,)), args.c, args.p, args.N)
        return _boolean_report(
            "mazur-linearity",
            0,
            combined == first + second and total_mass.residue == 0,
            h=h1.to_text(),
            h2=h2.to_text(),
            integral=first.to_dict(),
            integral2=second.to_dict(),
            integralSum=combined.to_dict(),
        )
