"""
pzeta command: Kubota-Leopoldt values and their regularized companions
"""
from typing import Any, Dict, Optional
import logging

from pydantic import BaseModel, Field

from commands.responses import enforce_limit, failure_response, success_response
from kernel.padic import (
    kubota_leopoldt_rational,
    mellin_at_power,
    padic_from_fraction,
    zeta_reg,
)
from utils.config import KernelConfig

logger = logging.getLogger("modkernel")


class PZetaParams(BaseModel):
    k: int = Field(..., ge=1)
    p: int = Field(..., ge=3)
    N: int = Field(..., ge=1)
    c: Optional[int] = None


class PZetaCommands:
    """Handles p-adic zeta values"""

    def __init__(self, config: KernelConfig):
        self.config = config

    def pzeta(self, params: Dict[str, Any]) -> Dict[str, Any]:
        """(1 - p^k) zeta(-k) in Z/p^N, plus the c-regularized value when c is given"""
        try:
            args = PZetaParams(**params)
            enforce_limit("p", args.p, self.config.max_prime)
            enforce_limit("N", args.N, self.config.max_precision)
            enforce_limit("k", args.k, self.config.max_exponent)

            rational = kubota_leopoldt_rational(args.k, args.p)
            value = padic_from_fraction(rational, args.p, args.N)
            result: Dict[str, Any] = {
                "k": args.k,
                "rational": str(rational),
                "padic": value.to_dict(),
            }
            if args.c is not None:
                regularized = zeta_reg(args.c, args.p, args.k)
                result["c"] = args.c
                result["regularized"] = {
                    "rational": str(regularized),
                    "padic": padic_from_fraction(regularized, args.p, args.N).to_dict(),
                }
                # the (k+1)-th moment of the regularized measure is the same number
                result["moment"] = mellin_at_power(args.k + 1, args.c, args.p, args.N).to_dict()

            logger.debug(f"pzeta k={args.k} p={args.p} N={args.N}: {rational}")
            return success_response(result)

        except Exception as e:
            return failure_response(e, "pzeta")
