"""
tau command: Ramanujan's tau by one or all methods
"""
from typing import Any, Dict, Literal
import logging

from pydantic import BaseModel, Field

from commands.responses import enforce_limit, failure_response, success_response
from kernel.base import EXIT_INTEGRALITY
from kernel.tau import TAU_METHODS, manin_enumerate
from utils.config import KernelConfig

logger = logging.getLogger("modkernel")


class TauParams(BaseModel):
    n: int = Field(..., ge=1)
    method: Literal["eta", "eisenstein", "manin", "all"] = "eta"
    solutions: bool = False


class TauCommands:
    """Handles tau(n) evaluation"""

    def __init__(self, config: KernelConfig):
        self.config = config

    def tau(self, params: Dict[str, Any]) -> Dict[str, Any]:
        """Evaluate tau(n); method=all runs every algorithm and compares"""
        try:
            args = TauParams(**params)
            enforce_limit("n", args.n, self.config.max_tau_n)
            if args.method == "eisenstein":
                enforce_limit("n", args.n, self.config.max_terms)

            methods = list(TAU_METHODS) if args.method == "all" else [args.method]
            skipped = []
            if args.method == "all" and args.n > self.config.max_terms:
                # the Eisenstein route needs a full q-expansion up to n
                methods.remove("eisenstein")
                skipped.append("eisenstein")
                logger.info(f"Skipping the eisenstein route for n={args.n} > maxTerms={self.config.max_terms}")
            values = {}
            for method in methods:
                logger.debug(f"Computing tau({args.n}) via {method}")
                values[method] = TAU_METHODS[method](args.n)

            result: Dict[str, Any] = {"n": args.n, "values": {m: str(v) for m, v in values.items()}}
            if args.method != "all":
                result["tau"] = str(values[args.method])
            agree = len(set(values.values())) == 1
            result["agree"] = agree
            if skipped:
                result["skipped"] = skipped
            if args.solutions:
                result["solutions"] = [s.to_dict() for s in manin_enumerate(args.n)]

            if not agree:
                logger.error(f"tau({args.n}) methods disagree: {values}")
                return {
                    "success": False,
                    "message": f"tau({args.n}) methods disagree",
                    "errorDetails": ", ".join(f"{m}={v}" for m, v in values.items()),
                    "errorType": "InconsistentMethods",
                    "result": result,
                    "exitCode": EXIT_INTEGRALITY,
                }
            return success_response(result)

        except Exception as e:
            return failure_response(e, "tau")
