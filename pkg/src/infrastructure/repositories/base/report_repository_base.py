"""
Interfaz Base: ReportRepository
cellshot
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Union

from src.domain.entities.experiment_report import ExperimentReport
from src.domain.entities.fit_report import FitReport

Destino = Union[str, Path]


class ReportRepositoryBase(ABC):
    """
    Interfaz base para serializar reportes.

    Las salidas son funciones puras del reporte: el mismo reporte produce
    los mismos bytes.
    """

    @abstractmethod
    def fit_json(self, report: FitReport) -> str:
        """Serializa un FitReport a JSON."""
        pass

    @abstractmethod
    def diagnose_csv(self, report: FitReport) -> str:
        """Listado CSV de celdas y filas marcadas más un resumen."""
        pass

    @abstractmethod
    def experiment_csv(self, report: ExperimentReport, by_block_columns: bool = False) -> str:
        """Tabla CSV con filas = estimadores."""
        pass

    @abstractmethod
    def experiment_json(self, report: ExperimentReport) -> str:
        """JSON con semillas, fallas y descriptores."""
        pass

    @abstractmethod
    def escribir(self, contenido: str, destino: Destino) -> Path:
        """Escribe el contenido en el destino y devuelve la ruta."""
        pass
