"""
Servicio de conjuntos de datos CSV: lectura con errores que nombran línea y columna,
separación en respuesta / covariables continuas / dicotómicas y escritura del CSV filtrado.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from ..dummy import detect_dummy_columns
from ..errors import DataError, EmptySampleError, UsageError
from .storage import atomic_output

LOGGER = logging.getLogger(__name__)

DEFAULT_SENTINEL = "NA"
# La fila i (base 0) del DataFrame está en la línea i + 2 del fichero (cabecera en la 1)
_HEADER_LINES = 1


def _line(row: int) -> int:
    return row + _HEADER_LINES + 1


@dataclass(frozen=True, eq=False)
class DesignData:
    """Datos listos para ajustar: y (n,), X (n, p_x), D (n, p_d) y sus nombres."""
    y: np.ndarray
    X: np.ndarray
    D: np.ndarray
    response: str
    x_names: list[str]
    d_names: list[str]


class DatasetService:
    """
    Lectura y escritura de CSV separados por comas, con cabecera y UTF-8.
    sentinel y la cadena vacía se leen como valor faltante.
    """

    def __init__(self, sentinel: str = DEFAULT_SENTINEL) -> None:
        self.sentinel = sentinel

    def read(self, path, *, allow_missing: bool = False) -> pd.DataFrame:
        """Lee el CSV; todas las columnas deben ser numéricas."""
        path = Path(path)
        if not path.exists():
            raise DataError(f"input file {path} does not exist")
        try:
            frame = pd.read_csv(
                path,
                na_values=[self.sentinel, ""],
                keep_default_na=False,
                skipinitialspace=True,
                encoding="utf-8",
            )
        except pd.errors.EmptyDataError:
            raise EmptySampleError() from None
        except pd.errors.ParserError as exc:
            match = re.search(r"line (\d+)", str(exc))
            where = f"line {match.group(1)}" if match else "unknown line"
            raise DataError(f"{path}: parse error at {where}: {exc}") from None
        except UnicodeDecodeError as exc:
            raise DataError(f"{path}: not valid UTF-8 ({exc.reason})") from None
        if frame.shape[0] == 0:
            raise EmptySampleError()

        for col in frame.columns:
            if frame[col].dtype.kind in "biuf":
                continue
            numeric = pd.to_numeric(frame[col], errors="coerce")
            bad = numeric.isna() & frame[col].notna()
            if not bad.any():
                frame[col] = numeric
                continue
            row = int(np.flatnonzero(bad.to_numpy())[0])
            raise DataError(f"{path}: non-numeric value {frame[col].iloc[row]!r} at line {_line(row)}, column {col!r}")

        frame = frame.astype(float)
        if not allow_missing:
            missing = np.argwhere(frame.isna().to_numpy())
            if missing.size:
                row, col = (int(v) for v in missing[0])
                raise DataError(
                    f"{path}: missing value at line {_line(row)}, column {frame.columns[col]!r}"
                )
        infinite = np.argwhere(np.isinf(frame.to_numpy()))
        if infinite.size:
            row, col = (int(v) for v in infinite[0])
            raise DataError(f"{path}: non-finite value at line {_line(row)}, column {frame.columns[col]!r}")
        return frame

    def split(self, frame: pd.DataFrame, response: str, dummies=None) -> DesignData:
        """
        dummies: lista de columnas, "auto" para detectarlas (a lo sumo dos valores distintos) o None.
        Las columnas constantes se rechazan.
        """
        if response not in frame.columns:
            raise UsageError(f"response column {response!r} not found; columns: {', '.join(map(str, frame.columns))}")
        if dummies == "auto":
            d_names = detect_dummy_columns(frame, exclude=(response,))
        else:
            d_names = list(dummies or [])
        missing = [c for c in d_names if c not in frame.columns]
        if missing:
            raise UsageError(f"dummy columns not found: {', '.join(missing)}")
        if response in d_names:
            raise UsageError("the response cannot be a dummy column")
        x_names = [c for c in frame.columns if c != response and c not in d_names]

        for col in frame.columns:
            if frame[col].nunique(dropna=True) <= 1:
                raise DataError(f"column {col!r} is constant")
        LOGGER.info("response %s, %d continuous and %d dummy covariates", response, len(x_names), len(d_names))
        return DesignData(
            y=frame[response].to_numpy(dtype=float),
            X=frame[x_names].to_numpy(dtype=float),
            D=frame[d_names].to_numpy(dtype=float) if d_names else np.zeros((frame.shape[0], 0)),
            response=response,
            x_names=x_names,
            d_names=d_names,
        )

    def write_filtered(self, frame: pd.DataFrame, columns: list[str], flags: np.ndarray, path) -> None:
        """Escribe el CSV con las celdas filtradas (flags = False) sustituidas por el centinela."""
        out = frame.copy()
        for j, col in enumerate(columns):
            out.loc[~flags[:, j], col] = np.nan
        with atomic_output(path) as fh:
            out.to_csv(fh, index=False, na_rep=self.sentinel, lineterminator="\n")

    def write_table(self, table: pd.DataFrame, path, *, sep: str = "\t") -> None:
        with atomic_output(path) as fh:
            table.to_csv(fh, index=False, sep=sep, na_rep=self.sentinel, lineterminator="\n")
