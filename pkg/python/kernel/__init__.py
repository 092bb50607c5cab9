"""
Exact arithmetic kernel: q-series, arithmetic functions, level-one modular
forms, Ramanujan's tau and fixed-precision p-adic integers
"""

__version__ = "1.0.0"
