#!/usr/bin/env python3
"""
modkernel command-line interface

Parses a subcommand (generated from the command schemas), routes it to the
command handlers and writes one result envelope to stdout. Diagnostics go to
stderr and the log file. In batch mode commands arrive as JSON lines on
stdin, one envelope is written per line.
"""

import argparse
import json
import os
import sys
import time
from typing import Any, Dict, List, Optional, TextIO
import logging

# Make the packages under python/ importable when run as a script
script_dir = os.path.dirname(os.path.abspath(__file__))
if script_dir not in sys.path:
    sys.path.insert(0, script_dir)

from commands import CheckCommands, PZetaCommands, QExpansionCommands, TauCommands
from commands.responses import failure_response
from kernel import __version__
from kernel.base import EXIT_OK, EXIT_USAGE
from kernel.tau import configure_tau_cache
from schemas.command_schemas import COMMAND_SCHEMAS, public_schemas
from utils.config import ConfigError, KernelConfig, load_config
from utils.logging_setup import configure_logging
from utils.platform_helper import detect_platform

logger = logging.getLogger("modkernel")

ENVELOPE_SCHEMA_VERSION = 1


class ModKernelInterface:
    """Routes commands to their handlers and wraps results in envelopes"""

    def __init__(self, config: Optional[KernelConfig] = None):
        self.config = config or KernelConfig()
        configure_tau_cache(self.config.tau_cache_nmax)

        self.tau_commands = TauCommands(self.config)
        self.qexp_commands = QExpansionCommands(self.config)
        self.check_commands = CheckCommands(self.config)
        self.pzeta_commands = PZetaCommands(self.config)

        self.command_routes = {
            "tau": self.tau_commands.tau,
            "qexp": self.qexp_commands.qexp,
            "check": self.check_commands.check,
            "pzeta": self.pzeta_commands.pzeta,
            "list-commands": self._list_commands,
        }
        logger.debug(f"modkernel {__version__} initialized with {len(self.command_routes)} commands")

    def _list_commands(self, params: Dict[str, Any]) -> Dict[str, Any]:
        return {"success": True, "result": {"commands": public_schemas()}, "exitCode": EXIT_OK}

    def handle_command(self, command: str, params: Dict[str, Any]) -> Dict[str, Any]:
        """Route command to appropriate handler"""
        logger.info(f"Handling command: {command}")
        logger.debug(f"Command parameters: {params}")

        handler = self.command_routes.get(command)
        if handler is None:
            logger.error(f"Unknown command: {command}")
            return {
                "success": False,
                "message": f"Unknown command: {command}",
                "errorDetails": "The specified command is not supported",
                "errorType": "UnknownCommand",
                "exitCode": EXIT_USAGE,
            }
        try:
            result = handler(params)
            logger.debug(f"Command result: {result.get('message', result.get('success'))}")
            return result
        except Exception as e:
            return failure_response(e, command)

    def run(self, command: str, params: Dict[str, Any]) -> Dict[str, Any]:
        """Handle a command and build its envelope"""
        start = time.perf_counter()
        outcome = self.handle_command(command, params)
        elapsed_ms = (time.perf_counter() - start) * 1000.0
        return build_envelope(command, params, outcome, elapsed_ms)


def _json_safe(value: Any) -> Any:
    """Integers beyond double precision go out as decimal strings"""
    if isinstance(value, int) and not isinstance(value, bool) and abs(value) >= 2**53:
        return str(value)
    return value


def build_envelope(
    command: str, params: Dict[str, Any], outcome: Dict[str, Any], elapsed_ms: float
) -> Dict[str, Any]:
    envelope: Dict[str, Any] = {
        "schema": ENVELOPE_SCHEMA_VERSION,
        "command": command,
        "parameters": {k: _json_safe(v) for k, v in params.items()},
        "result": outcome.get("result"),
        "success": bool(outcome.get("success")),
        "exitCode": outcome.get("exitCode", EXIT_OK if outcome.get("success") else EXIT_USAGE),
        "elapsed_ms": round(elapsed_ms, 3),
        "version": __version__,
    }
    if not outcome.get("success"):
        envelope["error"] = {
            "message": outcome.get("message"),
            "errorDetails": outcome.get("errorDetails"),
            "errorType": outcome.get("errorType"),
        }
    return envelope


# =============================================================================
# Rendering
# =============================================================================


def _text_lines(value: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines: List[str] = []
    if isinstance(value, dict):
        width = max((len(str(k)) for k in value), default=0)
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}{str(key).ljust(width)} : {_scalar(item)}")
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            lines.append(f"{pad}{', '.join(_scalar(v) for v in value)}")
        else:
            for item in value:
                lines.extend(_text_lines(item, indent))
                lines.append("")
    else:
        lines.append(f"{pad}{_scalar(value)}")
    return lines


def _scalar(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (dict, list)):
        return "{}" if isinstance(value, dict) else "[]"
    return str(value)


def render(envelope: Dict[str, Any], output_format: str) -> str:
    if output_format == "json":
        return json.dumps(envelope)
    result = envelope.get("result")
    head = {
        "command": envelope["command"],
        "success": envelope["success"],
        "elapsed_ms": envelope["elapsed_ms"],
    }
    lines = _text_lines(head)
    if isinstance(result, dict) and "text" in result:
        # q-expansions print as a single series line
        lines.append(result["text"])
        result = {k: v for k, v in result.items() if k not in ("text", "series")}
    if result:
        lines.extend(_text_lines(result))
    if "error" in envelope:
        lines.extend(_text_lines({"error": envelope["error"]}))
    return "\n".join(lines)


# =============================================================================
# Argument parsing
# =============================================================================

_TYPES = {"integer": int, "string": str}


def _add_schema_arguments(parser: argparse.ArgumentParser, schema: Dict[str, Any]) -> None:
    input_schema = schema.get("inputSchema", {})
    required = set(input_schema.get("required", []))
    for name, prop in input_schema.get("properties", {}).items():
        help_text = prop.get("description")
        if prop.get("x-positional"):
            parser.add_argument(name, help=help_text)
            continue
        flags = list(prop.get("x-flags", [])) + [f"--{name}"]
        if prop.get("type") == "boolean":
            parser.add_argument(*flags, dest=name, action="store_true", default=argparse.SUPPRESS, help=help_text)
            continue
        kwargs: Dict[str, Any] = {
            "dest": name,
            "type": _TYPES.get(prop.get("type", "string"), str),
            "default": argparse.SUPPRESS,
            "help": help_text,
        }
        if "enum" in prop:
            kwargs["choices"] = prop["enum"]
        if name in required:
            kwargs["required"] = True
        parser.add_argument(*flags, **kwargs)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS, help="Output format")
    common.add_argument("--config", default=argparse.SUPPRESS, help="Path to a JSON config file")
    common.add_argument("--log-level", dest="log_level", default=argparse.SUPPRESS, help="Override the log level")

    parser = argparse.ArgumentParser(
        prog="modkernel",
        description="Exact q-expansions, Ramanujan tau and p-adic zeta values",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"modkernel {__version__}")
    parser.add_argument("--platform-info", action="store_true", help="Print platform and path information")
    subparsers = parser.add_subparsers(dest="command")
    for name, schema in COMMAND_SCHEMAS.items():
        sub = subparsers.add_parser(name, help=schema["title"], description=schema["description"], parents=[common])
        _add_schema_arguments(sub, schema)
    return parser


_GLOBAL_OPTIONS = ("command", "format", "config", "log_level", "platform_info")


def command_params(namespace: argparse.Namespace) -> Dict[str, Any]:
    return {k: v for k, v in vars(namespace).items() if k not in _GLOBAL_OPTIONS}


# =============================================================================
# Entry points
# =============================================================================


def run_batch(interface: ModKernelInterface, stream: TextIO, output_format: str, out: TextIO) -> int:
    """Process JSON-line commands until EOF; returns the highest exit code seen"""
    worst = EXIT_OK
    logger.info("Processing commands from stdin...")
    for line in stream:
        line = line.strip()
        if not line:
            continue
        logger.debug(f"Received input: {line}")
        try:
            command_data = json.loads(line)
            command = command_data.get("command")
            params = command_data.get("params", {}) or {}
            if not isinstance(command, str) or not isinstance(params, dict):
                raise ValueError('expected {"command": <name>, "params": {...}}')
        except (json.JSONDecodeError, ValueError, AttributeError) as e:
            logger.error(f"Invalid batch input: {e}")
            envelope = build_envelope(
                "batch",
                {},
                {
                    "success": False,
                    "message": "Invalid JSON input",
                    "errorDetails": str(e),
                    "errorType": "InvalidInput",
                    "exitCode": EXIT_USAGE,
                },
                0.0,
            )
        else:
            if command == "batch":
                envelope = build_envelope(
                    command,
                    params,
                    {"success": False, "message": "batch cannot be nested", "exitCode": EXIT_USAGE},
                    0.0,
                )
            else:
                envelope = interface.run(command, params)
        worst = max(worst, envelope["exitCode"])
        out.write(render(envelope, output_format) + "\n")
        out.flush()
    return worst


def main(argv: Optional[List[str]] = None, stdin: TextIO = sys.stdin, stdout: TextIO = sys.stdout) -> int:
    """Main entry point; returns the process exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    if args.platform_info:
        stdout.write(json.dumps(detect_platform(), indent=2) + "\n")
        return EXIT_OK
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    try:
        config = load_config(getattr(args, "config", None))
    except ConfigError as e:
        configure_logging("WARNING")
        logger.error(str(e))
        return EXIT_USAGE

    configure_logging(getattr(args, "log_level", None) or config.log_level, config.resolved_log_dir())
    output_format = getattr(args, "format", "text")
    interface = ModKernelInterface(config)

    if args.command == "batch":
        return run_batch(interface, stdin, output_format, stdout)

    envelope = interface.run(args.command, command_params(args))
    stdout.write(render(envelope, output_format) + "\n")
    return envelope["exitCode"]


if __name__ == "__main__":
    sys.exit(main())
