"""
Commands Module
Each file handles one CLI command and the table it emits
"""

from .dispersion import DispersionCommand
from .density import DensityCommand
from .entropy_sweep import EntropySweepCommand
from .state_dump import StateDumpCommand
from .verify import VerifyCommand

__all__ = [
    'DispersionCommand',
    'DensityCommand',
    'EntropySweepCommand',
    'StateDumpCommand',
    'VerifyCommand'
]
