"""
qexp command: truncated q-expansions of the named forms and series
"""
import re
from typing import Any, Callable, Dict, Literal, Optional, Tuple
import logging

from pydantic import BaseModel, Field

from commands.responses import enforce_limit, failure_response, success_response
from kernel.arithfun import partition_series, theta_power
from kernel.base import InvalidForm
from kernel.modforms import (
    delta_eisenstein,
    delta_eta,
    eisenstein_E,
    eisenstein_Gfrak,
    eisenstein_Gstar,
    hecke_operator,
    j_invariant_times_q,
    ramanujan_quotient_series,
)
from kernel.qseries import QSeries
from utils.config import KernelConfig

logger = logging.getLogger("modkernel")

FORM_PATTERN = re.compile(r"^(?P<name>E|Gfrak|Gstar|theta\^?)(?P<k>\d*)$")


class QExpansionParams(BaseModel):
    form: str = Field(..., min_length=1)
    terms: int = Field(20, ge=1)
    p: Optional[int] = Field(None, ge=3)
    method: Literal["jacobi", "product", "eisenstein"] = "jacobi"
    hecke: Optional[int] = Field(None, ge=2)


class QExpansionCommands:
    """Handles q-expansion output"""

    def __init__(self, config: KernelConfig):
        self.config = config

    def _resolve(self, args: QExpansionParams) -> Tuple[Callable[[int], QSeries], Optional[int]]:
        """Return (builder, weight) for a form name; weight is None for non-modular series"""
        simple: Dict[str, tuple] = {
            "delta": (lambda t: delta_eisenstein(t) if args.method == "eisenstein" else delta_eta(t, args.method), 12),
            "j": (j_invariant_times_q, None),
            "partition": (partition_series, None),
            "quotient691": (ramanujan_quotient_series, None),
        }
        if args.form in simple:
            return simple[args.form]

        match = FORM_PATTERN.match(args.form)
        if not match:
            raise InvalidForm(f"unknown form {args.form!r}")
        name, k_text = match.group("name"), match.group("k")
        if name.startswith("theta"):
            k = int(k_text) if k_text else 1
            if k < 1:
                raise InvalidForm("theta power must be >= 1")
            enforce_limit("theta power", k, self.config.max_weight)
            return (lambda t: theta_power(k, t)), None
        if not k_text:
            raise InvalidForm(f"form {args.form!r} needs a weight, e.g. {name}12")
        k = int(k_text)
        enforce_limit("weight", k, self.config.max_weight)
        if name == "E":
            return (lambda t: eisenstein_E(k, t)), k
        if name == "Gfrak":
            return (lambda t: eisenstein_Gfrak(k, t)), k
        if args.p is None:
            raise InvalidForm(f"{args.form} needs the prime p")
        enforce_limit("p", args.p, self.config.max_prime)
        return (lambda t: eisenstein_Gstar(k, args.p, t)), k

    def qexp(self, params: Dict[str, Any]) -> Dict[str, Any]:
        """Print the expansion of a form to O(q^(terms+1))"""
        try:
            args = QExpansionParams(**params)
            enforce_limit("terms", args.terms, self.config.max_terms)
            builder, weight = self._resolve(args)

            if args.hecke is not None:
                if weight is None:
                    raise InvalidForm(f"Hecke operators need a modular form, not {args.form!r}")
                # T_p keeps only every p-th coefficient
                enforce_limit("terms", args.terms * args.hecke, self.config.max_terms)
                series = hecke_operator(builder(args.terms * args.hecke), args.hecke, weight)
            else:
                series = builder(args.terms)

            logger.debug(f"Expanded {args.form} to O(q^{series.trunc + 1})")
            return success_response(
                {
                    "form": args.form,
                    "weight": weight,
                    "hecke": args.hecke,
                    "series": series.to_json(),
                    "text": series.to_text(),
                }
            )

        except Exception as e:
            return failure_response(e, "qexp")
