"""
Command schema definitions for modkernel
"""

from .command_schemas import COMMAND_SCHEMAS, public_schemas

__all__ = ['COMMAND_SCHEMAS', 'public_schemas']
