"""
Flujos aleatorios por réplica y estimador derivados de una única semilla.
Añadir un estimador no altera los datos generados.
"""
from __future__ import annotations

import zlib

import numpy as np

_DATA = 0
_ESTIMATOR = 1


def data_stream(seed: int, replicate: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(replicate, _DATA)))


def estimator_seed(seed: int, replicate: int, name: str) -> np.random.SeedSequence:
    tag = zlib.crc32(name.encode("utf-8"))
    return np.random.SeedSequence(seed, spawn_key=(replicate, _ESTIMATOR, tag))


def fresh_seed() -> int:
    """Semilla de 63 bits tomada de la entropía del sistema."""
    return int(np.random.SeedSequence().generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))
