"""
Jerarquía de errores de robust3s.
Cada clase lleva el código de salida que usa la línea de comandos.
"""
from __future__ import annotations


class Robust3SError(Exception):
    """Error base del paquete."""

    exit_code = 1


class UsageError(Robust3SError):
    """Opciones inválidas o combinación de opciones no permitida."""

    exit_code = 2


class DataError(Robust3SError, ValueError):
    """Datos de entrada que no se pueden usar."""

    exit_code = 3


class EmptySampleError(DataError):
    def __init__(self, message: str = "empty sample"):
        super().__init__(message)


class NonFiniteError(DataError):
    """Valor NaN/Inf en la entrada; el mensaje nombra fila y columna."""

    def __init__(self, row: int, column: int | str):
        self.row = row
        self.column = column
        super().__init__(f"non-finite value at row {row}, column {column}")


class NumericalError(Robust3SError, ArithmeticError):
    """Fallo numérico durante la estimación."""

    exit_code = 4


class DegenerateDesignError(NumericalError):
    def __init__(self, detail: str = ""):
        msg = "degenerate design"
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)


class SingularMatrixError(NumericalError):
    """Matriz singular o casi singular; incluye el número de condición."""

    def __init__(self, what: str, condition_number: float):
        self.condition_number = condition_number
        super().__init__(f"singular {what} (condition number {condition_number:.3g})")


class FilterConsistencyError(NumericalError):
    """La escala de cola no coincide con su forma en cuantiles."""
