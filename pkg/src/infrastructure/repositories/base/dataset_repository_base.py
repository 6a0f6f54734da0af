"""
Interfaz Base: DatasetRepository
cellshot
"""

from abc import ABC, abstractmethod
from typing import BinaryIO, Union
from pathlib import Path

from src.domain.entities.regression_data import RegressionData

Fuente = Union[str, Path, bytes, BinaryIO]


class DatasetRepositoryBase(ABC):
    """
    Interfaz base para cargar datasets de regresión.
    """

    @abstractmethod
    def cargar(self, fuente: Fuente, response: str) -> RegressionData:
        """
        Carga el dataset y separa la columna respuesta del resto.

        Raises:
            InvalidDatasetException: formato inválido (nombra fila y columna)
            ColumnNotFoundException: la respuesta no está en el encabezado
        """
        pass
