"""
Schemas de Pydantic para ajustes y diagnósticos
cellshot
"""

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class FlaggedCellSchema(BaseModel):
    """Celda con peso de robustez por debajo del umbral"""

    row: int = Field(..., ge=0, description="Fila (desde 0, sin contar el encabezado)")
    column: str
    weight: float = Field(..., ge=0, le=1)


class SlopeSchema(BaseModel):
    column: str
    value: float


class FlagSummarySchema(BaseModel):
    flagged_cells: int = Field(..., ge=0)
    rows_with_flagged_cells: int = Field(..., ge=0)
    wholly_flagged_rows: int = Field(..., ge=0)


class ConvergenceSchema(BaseModel):
    converged: bool
    outer_loops: Optional[int] = None


class FitReportJson(BaseModel):
    """
    Schema del reporte de ajuste (mismo JSON que escribe `cellshot fit`).
    """

    model_config = ConfigDict(extra="forbid")

    method: str
    response: str
    n: int = Field(..., ge=1)
    p: int = Field(..., ge=1)
    slopes: list[SlopeSchema]
    intercept: float
    scales: list[float]
    threshold: float = Field(..., gt=0)
    flagged_cells: list[FlaggedCellSchema]
    flagged_rows: list[int]
    summary: FlagSummarySchema
    convergence: ConvergenceSchema
    config: dict

    @classmethod
    def from_entity(cls, report) -> "FitReportJson":
        return cls.model_validate(report.to_dict())


class DiagnosticsResponseSchema(BaseModel):
    """Solo las marcas: celdas, filas completas y resumen"""

    method: str
    threshold: float
    flagged_cells: list[FlaggedCellSchema]
    flagged_rows: list[int]
    summary: FlagSummarySchema

    @classmethod
    def from_entity(cls, report) -> "DiagnosticsResponseSchema":
        datos = report.to_dict()
        return cls(
            method=datos["method"],
            threshold=datos["threshold"],
            flagged_cells=datos["flagged_cells"],
            flagged_rows=datos["flagged_rows"],
            summary=datos["summary"],
        )
