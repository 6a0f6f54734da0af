"""
Servicio de Aplicación: SimulationService
cellshot

Corre una tabla de simulación: para cada esquema, cada eps y cada
estimador, R réplicas con semillas derivadas de (seed, réplica) y la
métrica n·MSE contra los coeficientes verdaderos.

Semillas por réplica r:
- datos limpios: derive_seed(seed, r, _DATOS), común a todos los eps y esquemas
- contaminación: derive_seed(seed, r, _CONTAMINACION, esquema, índice de eps)
- estimación: derive_seed(seed, r, _AJUSTE)
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np

from src.application.services.estimator_service import EstimatorService
from src.domain.entities.experiment_report import ExperimentReport, ReplicateRecord, ReportRecord
from src.domain.entities.regression_data import RegressionData
from src.domain.entities.sim_design import ContaminationScheme, SimDesign
from src.domain.exceptions.domain_exceptions import DomainException, InvalidParameterException
from src.domain.simulation.generators import (
    contaminate_cellwise,
    contaminate_rowwise,
    contaminate_vertical,
    derive_seed,
    expected_contaminated_rows,
    gen_clean,
)
from src.domain.simulation.metrics import n_mse
from src.domain.value_objects.enums import CellwiseScheme, ContaminationMode, Method, SimTable
from src.infrastructure.config.settings import get_settings

logger = logging.getLogger(__name__)

_DATOS = 0
_CONTAMINACION = 1
_AJUSTE = 2

VERTICAL_BLOCK = "vertical"


class SimulationService:
    """
    Servicio de Aplicación para las tablas de simulación.
    """

    def __init__(self, estimator_service: EstimatorService, threads: Optional[int] = None):
        self.estimators = estimator_service
        self.threads = threads if threads is not None else get_settings().threads
        if self.threads < 1:
            raise InvalidParameterException(f"threads debe ser >= 1: {self.threads}")

    def contaminate(
        self,
        design: SimDesign,
        data: RegressionData,
        esquema: ContaminationScheme,
        seed: int,
    ) -> RegressionData:
        """Aplica el modo y el nivel de contaminación del esquema"""
        if esquema.mode is ContaminationMode.CELLWISE:
            return contaminate_cellwise(data, esquema.eps, esquema.scheme, seed)
        if esquema.mode is ContaminationMode.ROWWISE:
            return contaminate_rowwise(data, esquema.eps, esquema.scheme, design.cov, seed)
        return contaminate_vertical(design, data, esquema.eps, seed)

    def run_table(
        self,
        table: SimTable,
        estimators: Sequence[Method],
        eps_grid: Sequence[float],
        replicates: int,
        seed: int,
        schemes: Optional[Sequence[CellwiseScheme]] = None,
        n: int = 100,
        p: int = 15,
    ) -> ExperimentReport:
        """
        Raises:
            InvalidParameterException: R < 1, sin estimadores, eps fuera de [0, 1)
        """
        if replicates < 1:
            raise InvalidParameterException(f"Se requiere al menos una réplica: {replicates}")
        if not estimators:
            raise InvalidParameterException("Se requiere al menos un estimador")
        if not eps_grid:
            raise InvalidParameterException("Se requiere al menos un nivel de contaminación")
        for eps in eps_grid:
            if not 0.0 <= eps < 1.0:
                raise InvalidParameterException(f"eps debe estar en [0, 1): {eps}")

        metodos = list(dict.fromkeys(estimators))
        try:
            design = SimDesign(n=n, p=p, correlated=table.correlacionada())
        except ValueError as e:
            raise InvalidParameterException(str(e)) from e
        if table.modo() is ContaminationMode.VERTICAL:
            bloques: list[Optional[CellwiseScheme]] = [None]
        else:
            bloques = list(schemes or list(CellwiseScheme))

        def _replica(r: int) -> dict:
            return self._correr_replica(r, table, design, metodos, list(eps_grid), bloques, seed)

        logger.info("Tabla %s: %d réplicas, %d hilo(s)", table.value, replicates, self.threads)
        if self.threads == 1:
            resultados = [_replica(r) for r in range(replicates)]
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                resultados = list(pool.map(_replica, range(replicates)))

        registros = []
        for b, bloque in enumerate(bloques):
            etiqueta = VERTICAL_BLOCK if bloque is None else bloque.value
            for e, eps in enumerate(eps_grid):
                for metodo in metodos:
                    estimaciones = []
                    for res in resultados:
                        valor = res[(b, e, metodo)]
                        if isinstance(valor, np.ndarray):
                            estimaciones.append(valor)
                    fallas = replicates - len(estimaciones)
                    registros.append(ReportRecord(
                        estimator=metodo.value,
                        block=etiqueta,
                        eps=float(eps),
                        value=n_mse(estimaciones, design.beta_true, n) if estimaciones else None,
                        n_ok=len(estimaciones),
                        n_failed=fallas,
                    ))

        log = tuple(
            ReplicateRecord(
                index=r,
                seed=derive_seed(seed, r, _DATOS),
                failures=tuple(sorted(
                    f"{(VERTICAL_BLOCK if bloques[b] is None else bloques[b].value)}"
                    f"@eps={eps_grid[e]:g}:{metodo.value}"
                    for (b, e, metodo), valor in res.items() if not isinstance(valor, np.ndarray)
                )),
            )
            for r, res in enumerate(resultados)
        )
        return ExperimentReport(
            name=table.value,
            metric="n_mse",
            estimators=tuple(m.value for m in metodos),
            records=tuple(registros),
            replicates=replicates,
            seed=seed,
            replicate_log=log,
            descriptor={
                "table": table.value,
                "design": design.to_dict(),
                "mode": table.modo().value,
                "schemes": [VERTICAL_BLOCK if b is None else b.value for b in bloques],
                "eps_grid": [float(e) for e in eps_grid],
                "expected_contaminated_rows": {
                    f"{e:g}": expected_contaminated_rows(n, p, e) for e in eps_grid
                },
                "signal_to_noise": design.signal_to_noise(),
                "estimator_settings": self.estimators.describe(),
            },
        )

    def _correr_replica(
        self,
        r: int,
        table: SimTable,
        design: SimDesign,
        metodos: list[Method],
        eps_grid: list[float],
        bloques: list[Optional[CellwiseScheme]],
        seed: int,
    ) -> dict:
        """
        Una réplica completa. Devuelve {(bloque, eps, método): pendientes o
        mensaje de error}; con eps = 0 los datos no dependen del bloque y se
        reutiliza el primer ajuste.
        """
        limpio = gen_clean(design, derive_seed(seed, r, _DATOS))
        semilla_ajuste = derive_seed(seed, r, _AJUSTE)
        salida: dict = {}
        sin_contaminar: dict = {}
        for b, bloque in enumerate(bloques):
            for e, eps in enumerate(eps_grid):
                if eps == 0.0 and sin_contaminar:
                    for metodo in metodos:
                        salida[(b, e, metodo)] = sin_contaminar[metodo]
                    continue
                esquema = ContaminationScheme(table.modo(), eps, bloque)
                datos = self.contaminate(
                    design, limpio, esquema, derive_seed(seed, r, _CONTAMINACION, b, e)
                )
                for metodo in metodos:
                    try:
                        salida[(b, e, metodo)] = self.estimators.slopes(metodo, datos, semilla_ajuste)
                    except DomainException as ex:
                        logger.warning("Réplica %d, %s, eps=%g, %s: %s",
                                       r, esquema.label(), eps, metodo.value, ex)
                        salida[(b, e, metodo)] = str(ex)
                if eps == 0.0:
                    sin_contaminar = {m: salida[(b, e, m)] for m in metodos}
        return salida
