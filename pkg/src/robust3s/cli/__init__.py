"""
Paquete cli: parseo de argumentos (fit, filter, simulate) y ejecución de comandos.
"""
from .executor import CommandExecutor
from .model import ALTERNATING, FIT_METHODS, Command, RunConfig
from .parser import ArgumentsParser

__all__ = [
    "ALTERNATING",
    "ArgumentsParser",
    "Command",
    "CommandExecutor",
    "FIT_METHODS",
    "RunConfig",
]
