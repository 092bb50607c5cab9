"""
Result dictionaries shared by the command handlers
"""
import traceback
from typing import Any, Dict, Optional
import logging

from pydantic import ValidationError

from kernel.base import EXIT_CHECK_FAILED, EXIT_INTEGRALITY, EXIT_OK, EXIT_USAGE, KernelError

logger = logging.getLogger("modkernel")


class LimitExceeded(Exception):
    """Raised when a parameter exceeds a configured limit"""

    exit_code = EXIT_USAGE


def success_response(result: Dict[str, Any], message: Optional[str] = None) -> Dict[str, Any]:
    response: Dict[str, Any] = {"success": True, "result": result, "exitCode": EXIT_OK}
    if message:
        response["message"] = message
    return response


def report_response(report_dict: Dict[str, Any]) -> Dict[str, Any]:
    """A finished check: exit code 0 on pass, 2 on fail"""
    if report_dict.get("passed", False):
        return success_response(report_dict, f"{report_dict['check']}: pass")
    return {
        "success": False,
        "message": f"{report_dict['check']}: fail",
        "errorDetails": f"first failing index {report_dict.get('firstFailure')}",
        "errorType": "CheckFailed",
        "result": report_dict,
        "exitCode": EXIT_CHECK_FAILED,
    }


def failure_response(error: Exception, action: str) -> Dict[str, Any]:
    """Map an exception raised while running ``action`` to a failure dict"""
    if isinstance(error, ValidationError):
        details = "; ".join(
            f"{'.'.join(str(part) for part in e['loc'])}: {e['msg']}" for e in error.errors()
        )
        logger.warning(f"Invalid parameters for {action}: {details}")
        return {
            "success": False,
            "message": f"Invalid parameters for {action}",
            "errorDetails": details,
            "errorType": "ValidationError",
            "exitCode": EXIT_USAGE,
        }
    if isinstance(error, (KernelError, LimitExceeded)):
        logger.warning(f"{action} failed: {type(error).__name__}: {error}")
        return {
            "success": False,
            "message": f"{action} failed",
            "errorDetails": str(error),
            "errorType": type(error).__name__,
            "exitCode": error.exit_code,
        }
    logger.error(f"Error in {action}: {str(error)}")
    logger.error(f"Traceback: {traceback.format_exc()}")
    return {
        "success": False,
        "message": f"Unexpected error in {action}",
        "errorDetails": f"{type(error).__name__}: {error}",
        "errorType": type(error).__name__,
        "exitCode": EXIT_INTEGRALITY,
    }


def enforce_limit(name: str, value: Optional[int], limit: int) -> None:
    if value is not None and value > limit:
        raise LimitExceeded(f"{name} = {value} exceeds the configured limit {limit}")
