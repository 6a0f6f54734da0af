"""
Entidad: ExperimentReport
cellshot

Resultado agregado de una tabla de simulación o de un benchmark sobre
datos reales. Las filas de la tabla son (bloque, estimador) y las columnas
los niveles de contaminación; el bloque es el esquema de contaminación en
las simulaciones y observed / contaminated en los datos reales.
"""

from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class ReportRecord:
    """Una celda de la tabla: métrica de un estimador en un bloque y un eps"""

    estimator: str
    block: str
    eps: float
    value: Optional[float]
    n_ok: int
    n_failed: int

    def __post_init__(self):
        if self.value is not None and self.value < 0:
            raise ValueError(f"La métrica no puede ser negativa: {self.value}")

    def to_dict(self) -> dict:
        return {
            "estimator": self.estimator,
            "block": self.block,
            "eps": self.eps,
            "value": self.value,
            "n_ok": self.n_ok,
            "n_failed": self.n_failed,
        }


@dataclass(frozen=True)
class ReplicateRecord:
    """Semilla usada por una réplica y los estimadores que fallaron en ella"""

    index: int
    seed: int
    failures: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {"index": self.index, "seed": self.seed, "failures": list(self.failures)}


@dataclass(frozen=True)
class ExperimentReport:
    """
    Entidad de Dominio: ExperimentReport

    Reglas:
    - una ReplicateRecord por réplica pedida
    - métricas no negativas (None si todas las réplicas fallaron)
    """

    name: str
    metric: str
    estimators: tuple[str, ...]
    records: tuple[ReportRecord, ...]
    replicates: int
    seed: int
    replicate_log: tuple[ReplicateRecord, ...]
    descriptor: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError("Se requiere al menos una réplica")
        if len(self.replicate_log) != self.replicates:
            raise ValueError(
                f"Se registraron {len(self.replicate_log)} réplicas; se pidieron {self.replicates}"
            )

    @property
    def blocks(self) -> list[str]:
        return list(dict.fromkeys(r.block for r in self.records))

    @property
    def eps_grid(self) -> list[float]:
        return sorted(set(r.eps for r in self.records))

    def value(self, estimator: str, eps: float = 0.0, block: Optional[str] = None) -> Optional[float]:
        for r in self.records:
            if r.estimator == estimator and r.eps == eps and (block is None or r.block == block):
                return r.value
        raise KeyError(f"No hay registro para {estimator}, eps={eps}, bloque={block}")

    def failure_count(self) -> int:
        return sum(r.n_failed for r in self.records)

    def table_rows(self, by_block_columns: bool = False) -> tuple[list[str], list[list]]:
        """
        Tabla con filas = estimadores y columnas = eps (una fila por bloque y
        estimador), o con columnas = bloques si by_block_columns.
        """
        if by_block_columns:
            encabezado = ["estimator"] + self.blocks
            filas = [[est] + [self._buscar(est, b, None) for b in self.blocks]
                     for est in self.estimators]
            return encabezado, filas

        encabezado = ["block", "estimator"] + [f"eps={e:g}" for e in self.eps_grid]
        filas = []
        for bloque in self.blocks:
            for est in self.estimators:
                filas.append([bloque, est] + [self._buscar(est, bloque, e) for e in self.eps_grid])
        return encabezado, filas

    def _buscar(self, estimator: str, block: str, eps: Optional[float]):
        for r in self.records:
            if r.estimator == estimator and r.block == block and (eps is None or r.eps == eps):
                return r.value
        return None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "metric": self.metric,
            "estimators": list(self.estimators),
            "replicates": self.replicates,
            "seed": self.seed,
            "descriptor": self.descriptor,
            "records": [r.to_dict() for r in self.records],
            "failures": self.failure_count(),
            "replicate_log": [r.to_dict() for r in self.replicate_log],
        }
