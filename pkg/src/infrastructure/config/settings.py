"""
Configuración del proceso
cellshot

Se lee de variables de entorno:
- CELLSHOT_THREADS: hilos para paralelizar réplicas (entero >= 1, por defecto 1)
- CELLSHOT_LOG_LEVEL: nivel de logging (por defecto WARNING)
"""

import logging
import os
from dataclasses import dataclass

logger = logging.getLogger(__name__)

DEFAULT_LOG_LEVEL = "WARNING"


@dataclass(frozen=True)
class Settings:
    threads: int = 1
    log_level: str = DEFAULT_LOG_LEVEL


def _leer_threads(valor: str | None) -> int:
    if valor is None or not valor.strip():
        return 1
    try:
        threads = int(valor)
    except ValueError:
        logger.warning("CELLSHOT_THREADS inválido (%r): se usa 1 hilo", valor)
        return 1
    if threads < 1:
        logger.warning("CELLSHOT_THREADS debe ser >= 1 (%d): se usa 1 hilo", threads)
        return 1
    return threads


def _leer_nivel(valor: str | None) -> str:
    if not valor:
        return DEFAULT_LOG_LEVEL
    nivel = valor.strip().upper()
    if not isinstance(logging.getLevelName(nivel), int):
        logger.warning("CELLSHOT_LOG_LEVEL desconocido (%r): se usa %s", valor, DEFAULT_LOG_LEVEL)
        return DEFAULT_LOG_LEVEL
    return nivel


def get_settings() -> Settings:
    """Lee la configuración en cada llamada (los tests modifican el entorno)"""
    return Settings(
        threads=_leer_threads(os.environ.get("CELLSHOT_THREADS")),
        log_level=_leer_nivel(os.environ.get("CELLSHOT_LOG_LEVEL")),
    )


def configure_logging(verbosity: int = 0) -> None:
    """
    Configura el handler raíz sobre stderr.

    verbosity 1 fuerza INFO y 2 o más DEBUG; sin flags manda CELLSHOT_LOG_LEVEL.
    """
    if verbosity >= 2:
        nivel = "DEBUG"
    elif verbosity == 1:
        nivel = "INFO"
    else:
        nivel = get_settings().log_level
    logging.basicConfig(
        level=nivel,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )
