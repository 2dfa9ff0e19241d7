"""
Escritura de ficheros de salida.
Se escribe en un temporal del mismo directorio y se reemplaza el destino solo si no hubo error.
"""
from __future__ import annotations

import os
import sys
import tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import Generator, TextIO


@contextmanager
def atomic_output(path: str | os.PathLike | None) -> Generator[TextIO, None, None]:
    """
    Context manager para escribir un fichero de texto UTF-8.
    Garantiza el reemplazo del destino en éxito y borra el temporal en error.
    Con path None o "-" escribe en la salida estándar.
    """
    if path is None or str(path) == "-":
        yield sys.stdout
        sys.stdout.flush()
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
    handle = os.fdopen(fd, "w", encoding="utf-8", newline="")
    try:
        yield handle
        handle.close()
        os.replace(tmp, target)
    except BaseException:
        handle.close()
        Path(tmp).unlink(missing_ok=True)
        raise
