"""
Repositorio CSV de datasets
cellshot

Dialecto: separador coma, punto decimal, primera fila de encabezado, UTF-8.
Todas las celdas deben ser numéricas; vacías o NA son error de ingesta.
"""

import io
import logging
from pathlib import Path

import numpy as np
import pandas as pd

from src.domain.entities.regression_data import RegressionData
from src.domain.exceptions.domain_exceptions import (
    ColumnNotFoundException,
    InvalidDatasetException,
)
from src.infrastructure.repositories.base.dataset_repository_base import (
    DatasetRepositoryBase,
    Fuente,
)

logger = logging.getLogger(__name__)

_FALTANTES = {"", "na", "nan", "null", "none", "n/a"}


class CsvDatasetRepository(DatasetRepositoryBase):
    """
    Implementación con pandas de DatasetRepositoryBase.

    Las filas se informan desde 0 (primera fila de datos) junto con la
    línea del archivo (el encabezado es la línea 1).
    """

    def cargar(self, fuente: Fuente, response: str) -> RegressionData:
        tabla = self._leer(fuente)
        columnas = [str(c).strip() for c in tabla.columns]
        if len(set(columnas)) != len(columnas):
            raise InvalidDatasetException(f"Encabezado con columnas repetidas: {columnas}")
        tabla.columns = columnas
        if response not in columnas:
            raise ColumnNotFoundException(
                f"La respuesta '{response}' no está en el encabezado: {columnas}"
            )
        if len(columnas) < 2:
            raise InvalidDatasetException("Se requiere al menos un predictor además de la respuesta")
        if tabla.empty:
            raise InvalidDatasetException("El dataset no tiene filas de datos")

        valores = self._a_numeros(tabla)
        predictores = [c for c in columnas if c != response]
        logger.info("Dataset cargado: n=%d, p=%d, respuesta '%s'",
                    len(tabla), len(predictores), response)
        return RegressionData(
            y=valores[response].to_numpy(dtype=float),
            X=valores[predictores].to_numpy(dtype=float),
            column_names=tuple(predictores),
            response_name=response,
        )

    @staticmethod
    def _leer(fuente: Fuente) -> pd.DataFrame:
        if isinstance(fuente, bytes):
            fuente = io.BytesIO(fuente)
        elif isinstance(fuente, (str, Path)) and not Path(fuente).exists():
            raise InvalidDatasetException(f"No existe el archivo: {fuente}")
        try:
            return pd.read_csv(
                fuente,
                sep=",",
                dtype=str,
                keep_default_na=False,
                skipinitialspace=True,
                encoding="utf-8",
            )
        except pd.errors.EmptyDataError as e:
            raise InvalidDatasetException("El archivo está vacío") from e
        except pd.errors.ParserError as e:
            raise InvalidDatasetException(f"El CSV no es rectangular: {e}") from e
        except UnicodeDecodeError as e:
            raise InvalidDatasetException(f"El archivo no es UTF-8: {e}") from e

    @staticmethod
    def _a_numeros(tabla: pd.DataFrame) -> pd.DataFrame:
        """Convierte columna por columna; el primer problema se informa con su fila y columna"""
        resultado = {}
        for columna in tabla.columns:
            crudo = tabla[columna]
            faltante = crudo.isna() | crudo.str.strip().str.lower().isin(_FALTANTES)
            if faltante.any():
                fila = int(np.flatnonzero(faltante.to_numpy())[0])
                raise InvalidDatasetException(
                    f"Celda vacía o NA en la fila {fila} (línea {fila + 2}), columna '{columna}'"
                )
            numeros = pd.to_numeric(crudo.str.strip(), errors="coerce")
            invalido = numeros.isna() | ~np.isfinite(numeros.to_numpy(dtype=float))
            if invalido.any():
                fila = int(np.flatnonzero(invalido.to_numpy())[0])
                raise InvalidDatasetException(
                    f"Valor no numérico '{crudo.iloc[fila]}' en la fila {fila} "
                    f"(línea {fila + 2}), columna '{columna}'"
                )
            resultado[columna] = numeros.astype(float)
        return pd.DataFrame(resultado)
