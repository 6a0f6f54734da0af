"""
Entidad: FitReport
cellshot

Reporte de un ajuste sobre un dataset: coeficientes con nombres de
columna, escalas, celdas y filas marcadas, y eco de la configuración.
Las filas se numeran desde 0 en el orden del CSV (sin contar el encabezado).
"""

from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class FlaggedCell:
    row: int
    column: str
    weight: float

    def to_dict(self) -> dict:
        return {"row": self.row, "column": self.column, "weight": self.weight}


@dataclass(frozen=True)
class FitReport:
    """
    Entidad de Dominio: FitReport

    Reglas:
    - flagged_cells son exactamente las celdas con peso < threshold
    - una fila está en flagged_rows si todas sus celdas están marcadas
    - los estimadores sin pesos por celda (ls, s, mm) no marcan nada
    """

    method: str
    response: str
    column_names: tuple[str, ...]
    slopes: tuple[float, ...]
    intercept: float
    scales: tuple[float, ...]
    threshold: float
    converged: bool
    n: int
    flagged_cells: tuple[FlaggedCell, ...] = field(default_factory=tuple)
    flagged_rows: tuple[int, ...] = field(default_factory=tuple)
    rows_with_flagged_cells: int = 0
    outer_loops: Optional[int] = None
    config: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.slopes) != len(self.column_names):
            raise ValueError("Se requiere una pendiente por columna")
        if not self.threshold > 0:
            raise ValueError(f"El umbral debe ser positivo: {self.threshold}")

    @property
    def p(self) -> int:
        return len(self.column_names)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "response": self.response,
            "n": self.n,
            "p": self.p,
            "slopes": [{"column": nombre, "value": b}
                       for nombre, b in zip(self.column_names, self.slopes)],
            "intercept": self.intercept,
            "scales": list(self.scales),
            "threshold": self.threshold,
            "flagged_cells": [c.to_dict() for c in self.flagged_cells],
            "flagged_rows": list(self.flagged_rows),
            "summary": {
                "flagged_cells": len(self.flagged_cells),
                "rows_with_flagged_cells": self.rows_with_flagged_cells,
                "wholly_flagged_rows": len(self.flagged_rows),
            },
            "convergence": {"converged": self.converged, "outer_loops": self.outer_loops},
            "config": self.config,
        }
