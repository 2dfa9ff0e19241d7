"""
Punto de entrada de la línea de comandos robust3s.
"""
from __future__ import annotations

import logging
import sys

from .cli import ArgumentsParser, CommandExecutor
from .errors import Robust3SError

LOGGER = logging.getLogger("robust3s")

_LEVELS = {0: logging.WARNING, 1: logging.INFO}


def _configure_logging(verbose: int) -> None:
    logging.basicConfig(
        level=_LEVELS.get(verbose, logging.DEBUG),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv: list[str] | None = None) -> int:
    """Devuelve el código de salida: 0 éxito, 2 uso, 3 datos, 4 fallo numérico."""
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = ArgumentsParser().parse(argv)
        _configure_logging(cfg.verbose)
        if cfg.seed_generated:
            LOGGER.info("no --seed given, using %d", cfg.seed)
        text = CommandExecutor().execute(cfg)
    except Robust3SError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.exit_code
    # El informe va a stdout salvo que se haya escrito en --out
    if cfg.out is None or cfg.command.value == "filter":
        sys.stdout.write(text)
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
