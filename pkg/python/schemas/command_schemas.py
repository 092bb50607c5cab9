"""
Command schema definitions for the modkernel command line

Each command includes:
- name: Unique identifier (the CLI subcommand)
- title: Human-readable display name
- description: What the command computes
- inputSchema: JSON Schema for parameters

Properties marked ``"x-positional": True`` become positional CLI arguments;
every other property becomes a ``--name`` option. ``x-flags`` adds aliases.
"""

from typing import Any, Dict, List

CHECK_NAMES = [
    "ramanujan-691",
    "eisenstein-congruence",
    "kummer",
    "kummer-continuity",
    "gauss-identity",
    "jacobi-triple",
    "cauchy",
    "r4",
    "three-squares",
    "deligne",
    "lehmer",
    "hecke",
    "hardy-ramanujan",
    "tau-partition",
    "euler-factor",
    "divisor-bound",
    "ramanujan-proof",
    "bernoulli-limit",
    "kubota-leopoldt",
    "riemann-sum",
    "mazur-linearity",
    "modular-identities",
    "manin-variant",
    "dimensions",
]

_RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}

# =============================================================================
# TAU
# =============================================================================

TAU_COMMANDS = [
    {
        "name": "tau",
        "title": "Ramanujan Tau",
        "description": "Computes tau(n) from the eta product, the Eisenstein cubic relation or Manin's admissible-solutions formula. method=all runs every algorithm and fails if they disagree.",
        "inputSchema": {
            "type": "object",
            "properties": {
                "n": {
                    "type": "integer",
                    "description": "Index n >= 1",
                    "minimum": 1,
                    "x-flags": ["-n"],
                },
                "method": {
                    "type": "string",
                    "enum": ["eta", "eisenstein", "manin", "all"],
                    "description": "Algorithm",
                    "default": "eta",
                },
                "solutions": {
                    "type": "boolean",
                    "description": "Also list Manin's admissible solutions for n",
                    "default": False,
                },
            },
            "required": ["n"],
        },
    },
]

# =============================================================================
# Q-EXPANSIONS
# =============================================================================

QEXP_COMMANDS = [
    {
        "name": "qexp",
        "title": "q-Expansion",
        "description": "Prints a truncated q-expansion: delta, E<k>, Gfrak<k>, Gstar<k> (with --p), j (as q*j), partition, theta^<k>, quotient691 ((Delta - sum sigma_11 q^n)/691).",
        "inputSchema": {
            "type": "object",
            "properties": {
                "form": {
                    "type": "string",
                    "description": "Form name, e.g. delta, E12, Gstar4, theta^4",
                    "x-positional": True,
                },
                "terms": {
                    "type": "integer",
                    "description": "Highest exponent kept; the expansion is O(q^(terms+1))",
                    "minimum": 1,
                    "default": 20,
                },
                "p": {"type": "integer", "description": "Prime for Gstar<k>", "minimum": 3},
                "method": {
                    "type": "string",
                    "enum": ["jacobi", "product", "eisenstein"],
                    "description": "Construction of delta",
                    "default": "jacobi",
                },
                "hecke": {
                    "type": "integer",
                    "description": "Apply the Hecke operator T_p for this prime p",
                    "minimum": 2,
                },
            },
            "required": ["form"],
        },
    },
]

# =============================================================================
# CHECKS
# =============================================================================

CHECK_COMMANDS = [
    {
        "name": "check",
        "title": "Congruence and Identity Checks",
        "description": "Runs one checker and prints its report. Exit code 0 on pass, 2 on failure, 1 on usage errors.",
        "inputSchema": {
            "type": "object",
            "properties": {
                "check": {
                    "type": "string",
                    "enum": CHECK_NAMES,
                    "description": "Checker name",
                    "x-positional": True,
                },
                "p": {"type": "integer", "description": "Prime"},
                "k": {"type": "integer", "description": "Weight or exponent"},
                "k2": {"type": "integer", "description": "Second weight or exponent"},
                "N": {"type": "integer", "description": "p-adic precision (modulus p^N)"},
                "c": {"type": "integer", "description": "Regularizing integer, c > 1 and prime to p"},
                "h": {"type": "string", "description": "Integer polynomial in x, e.g. x^2-x^22"},
                "h2": {"type": "string", "description": "Second integer polynomial in x"},
                "n": {"type": "integer", "description": "Single index"},
                "m": {"type": "integer", "description": "Second index (hecke)"},
                "nmax": {"type": "integer", "description": "Sweep bound on n"},
                "pmax": {"type": "integer", "description": "Sweep bound on primes"},
                "kmax": {"type": "integer", "description": "Sweep bound on weights"},
                "r": {"type": "integer", "description": "Highest prime power exponent (euler-factor)"},
                "limit": {"type": "integer", "description": "Sweep bound on index pairs (hecke)"},
                "terms": {"type": "integer", "description": "Number of q-expansion coefficients"},
                "u": dict(_RATIONAL, description="Jacobi triple product parameter (rational)"),
                "a": dict(_RATIONAL, description="Cauchy identity parameter a (rational)"),
                "t": dict(_RATIONAL, description="Cauchy identity parameter t (rational)"),
                "method": {
                    "type": "string",
                    "enum": ["eta", "eisenstein", "manin"],
                    "description": "tau algorithm for single-n checks",
                    "default": "eta",
                },
            },
            "required": ["check"],
        },
    },
]

# =============================================================================
# P-ADIC ZETA
# =============================================================================

PZETA_COMMANDS = [
    {
        "name": "pzeta",
        "title": "p-adic Zeta Value",
        "description": "Prints (1 - p^k) zeta(-k) exactly and in Z/p^N. With --c also the c-regularized value and the matching moment of the regularized measure.",
        "inputSchema": {
            "type": "object",
            "properties": {
                "k": {"type": "integer", "description": "k >= 1", "minimum": 1},
                "p": {"type": "integer", "description": "Odd prime", "minimum": 3},
                "N": {"type": "integer", "description": "Precision", "minimum": 1},
                "c": {"type": "integer", "description": "Optional regularizer"},
            },
            "required": ["k", "p", "N"],
        },
    },
]

# =============================================================================
# UTILITY
# =============================================================================

UTILITY_COMMANDS = [
    {
        "name": "list-commands",
        "title": "List Commands",
        "description": "Prints every command schema.",
        "inputSchema": {"type": "object", "properties": {}},
    },
    {
        "name": "batch",
        "title": "Batch Mode",
        "description": 'Reads JSON lines {"command": ..., "params": {...}} from stdin and writes one result envelope per line.',
        "inputSchema": {"type": "object", "properties": {}},
    },
]

# =============================================================================
# COMBINED COMMAND SCHEMAS
# =============================================================================

COMMAND_SCHEMAS: Dict[str, Any] = {}

for command in TAU_COMMANDS + QEXP_COMMANDS + CHECK_COMMANDS + PZETA_COMMANDS + UTILITY_COMMANDS:
    COMMAND_SCHEMAS[command["name"]] = command


def public_schemas() -> List[Dict[str, Any]]:
    """Schemas with the CLI-only ``x-`` keys stripped"""
    cleaned = []
    for schema in COMMAND_SCHEMAS.values():
        properties = {
            name: {key: value for key, value in prop.items() if not key.startswith("x-")}
            for name, prop in schema["inputSchema"].get("properties", {}).items()
        }
        cleaned.append(dict(schema, inputSchema=dict(schema["inputSchema"], properties=properties)))
    return cleaned
