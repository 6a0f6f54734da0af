"""
Repositorio de reportes en archivos CSV y JSON
cellshot

JSON con claves ordenadas e indentación fija; CSV con fin de línea "\\n"
y floats en repr: la misma entrada produce los mismos bytes.
"""

import csv
import io
import json
import logging
from pathlib import Path

from src.domain.entities.experiment_report import ExperimentReport
from src.domain.entities.fit_report import FitReport
from src.domain.exceptions.domain_exceptions import InvalidParameterException
from src.infrastructure.repositories.base.report_repository_base import (
    Destino,
    ReportRepositoryBase,
)

logger = logging.getLogger(__name__)


def _celda(valor) -> str:
    if valor is None:
        return "NA"
    if isinstance(valor, float):
        return repr(valor)
    return str(valor)


def _csv(filas: list[list]) -> str:
    buffer = io.StringIO()
    escritor = csv.writer(buffer, lineterminator="\n")
    for fila in filas:
        escritor.writerow([_celda(v) for v in fila])
    return buffer.getvalue()


def to_json(contenido: dict) -> str:
    return json.dumps(contenido, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


class FileReportRepository(ReportRepositoryBase):
    """
    Implementación en archivos de ReportRepositoryBase.
    """

    def fit_json(self, report: FitReport) -> str:
        return to_json(report.to_dict())

    def diagnose_csv(self, report: FitReport) -> str:
        filas: list[list] = [["row", "column", "weight"]]
        filas += [[c.row, c.column, c.weight] for c in report.flagged_cells]
        filas.append([])
        filas.append(["flagged_row"])
        filas += [[i] for i in report.flagged_rows]
        filas.append([])
        filas.append(["summary", "value"])
        filas.append(["flagged_cells", len(report.flagged_cells)])
        filas.append(["rows_with_flagged_cells", report.rows_with_flagged_cells])
        filas.append(["wholly_flagged_rows", len(report.flagged_rows)])
        return _csv(filas)

    def experiment_csv(self, report: ExperimentReport, by_block_columns: bool = False) -> str:
        encabezado, filas = report.table_rows(by_block_columns=by_block_columns)
        return _csv([encabezado] + filas)

    def experiment_json(self, report: ExperimentReport) -> str:
        return to_json(report.to_dict())

    def escribir(self, contenido: str, destino: Destino) -> Path:
        """
        Raises:
            InvalidParameterException: el destino no se puede crear o escribir
        """
        ruta = Path(destino)
        try:
            if ruta.parent and not ruta.parent.exists():
                ruta.parent.mkdir(parents=True, exist_ok=True)
            with open(ruta, "w", encoding="utf-8", newline="") as f:
                f.write(contenido)
        except OSError as e:
            raise InvalidParameterException(f"No se pudo escribir {ruta}: {e}") from e
        logger.info("Reporte escrito en %s", ruta)
        return ruta
