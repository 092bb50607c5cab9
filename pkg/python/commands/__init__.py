"""
modkernel command implementations package
"""

from .tau import TauCommands
from .qexp import QExpansionCommands
from .check import CheckCommands
from .pzeta import PZetaCommands

__all__ = [
    'TauCommands',
    'QExpansionCommands',
    'CheckCommands',
    'PZetaCommands',
]
