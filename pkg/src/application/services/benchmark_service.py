"""
Servicio de Aplicación: BenchmarkService
cellshot

Benchmarks sobre datos reales con la métrica AND (distancia promedio,
escalada por MAD, entre los ajustes de cada réplica y el ajuste sobre los
datos completos):

- resample: R submuestras del 80% de las filas (sin reposición)
- contaminate: R copias con el 5% de las celdas reemplazadas por
  N(mediana_j + 10·MAD_j, MAD_j²)

Todos los ajustes de un estimador usan la misma semilla de estimación,
de modo que datos idénticos producen ajustes idénticos.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Sequence

import numpy as np

from src.application.services.estimator_service import EstimatorService
from src.domain.entities.experiment_report import ExperimentReport, ReplicateRecord, ReportRecord
from src.domain.entities.regression_data import RegressionData
from src.domain.exceptions.domain_exceptions import DomainException, InvalidParameterException
from src.domain.simulation.generators import contaminate_real_cells, derive_seed, round_half_away
from src.domain.simulation.metrics import and_metric
from src.domain.value_objects.enums import BenchMode, Method
from src.infrastructure.config.settings import get_settings

logger = logging.getLogger(__name__)

OBSERVED_BLOCK = "observed"
CONTAMINATED_BLOCK = "contaminated"

_AJUSTE = 0
_RESAMPLE = 1
_CONTAMINACION = 2


class BenchmarkService:
    """
    Servicio de Aplicación para los benchmarks sobre datos reales.
    """

    def __init__(self, estimator_service: EstimatorService, threads: Optional[int] = None):
        self.estimators = estimator_service
        self.threads = threads if threads is not None else get_settings().threads
        if self.threads < 1:
            raise InvalidParameterException(f"threads debe ser >= 1: {self.threads}")

    # ------------------------------------------------------------------
    # Operaciones
    # ------------------------------------------------------------------

    def real_data_resample(
        self,
        data: RegressionData,
        replicates: int,
        estimators: Sequence[Method],
        seed: int,
        frac: float = 0.8,
    ) -> ExperimentReport:
        """
        Raises:
            InvalidParameterException: frac fuera de (0, 1] o submuestra de
                tamaño <= p + 1
        """
        if not 0.0 < frac <= 1.0:
            raise InvalidParameterException(f"frac debe estar en (0, 1]: {frac}")
        m = round_half_away(frac * data.n)
        if m <= data.p + 1:
            raise InvalidParameterException(
                f"La submuestra de {m} filas no alcanza para {data.p} predictores más intercepto"
            )

        def _datos(r: int) -> RegressionData:
            rng = np.random.default_rng(derive_seed(seed, r, _RESAMPLE))
            return data.subset(np.sort(rng.choice(data.n, size=m, replace=False)))

        return self._correr(
            data, replicates, estimators, seed, _datos,
            bloque=OBSERVED_BLOCK, eps=0.0,
            descriptor={"mode": BenchMode.RESAMPLE.value, "frac": frac, "subset_size": m},
        )

    def real_data_contaminate(
        self,
        data: RegressionData,
        replicates: int,
        estimators: Sequence[Method],
        seed: int,
        eps: float = 0.05,
        shift: float = 10.0,
    ) -> ExperimentReport:
        if not 0.0 <= eps < 1.0:
            raise InvalidParameterException(f"eps debe estar en [0, 1): {eps}")

        def _datos(r: int) -> RegressionData:
            return contaminate_real_cells(data, eps, shift, derive_seed(seed, r, _CONTAMINACION))

        return self._correr(
            data, replicates, estimators, seed, _datos,
            bloque=CONTAMINATED_BLOCK, eps=eps,
            descriptor={"mode": BenchMode.CONTAMINATE.value, "eps": eps, "shift": shift},
        )

    def run(
        self,
        data: RegressionData,
        modes: Sequence[BenchMode],
        replicates: int,
        estimators: Sequence[Method],
        seed: int,
        frac: float = 0.8,
        eps: float = 0.05,
        shift: float = 10.0,
    ) -> ExperimentReport:
        """Uno o ambos modos reunidos en un reporte de dos bloques (observed / contaminated)"""
        reportes = []
        for modo in dict.fromkeys(modes):
            if modo is BenchMode.RESAMPLE:
                reportes.append(self.real_data_resample(data, replicates, estimators, seed, frac))
            else:
                reportes.append(self.real_data_contaminate(data, replicates, estimators, seed,
                                                           eps, shift))
        if len(reportes) == 1:
            return reportes[0]
        return _combinar(reportes)

    # ------------------------------------------------------------------
    # Internos
    # ------------------------------------------------------------------

    def _correr(
        self,
        data: RegressionData,
        replicates: int,
        estimators: Sequence[Method],
        seed: int,
        generar: Callable[[int], RegressionData],
        bloque: str,
        eps: float,
        descriptor: dict,
    ) -> ExperimentReport:
        if replicates < 1:
            raise InvalidParameterException(f"Se requiere al menos una réplica: {replicates}")
        if not estimators:
            raise InvalidParameterException("Se requiere al menos un estimador")
        metodos = list(dict.fromkeys(estimators))
        semilla_ajuste = derive_seed(seed, _AJUSTE)

        # el ajuste de referencia no se excluye: si falla, falla el benchmark
        completos = {m: self.estimators.slopes(m, data, semilla_ajuste) for m in metodos}

        def _replica(r: int) -> dict:
            datos = generar(r)
            salida = {}
            for metodo in metodos:
                try:
                    salida[metodo] = self.estimators.slopes(metodo, datos, semilla_ajuste)
                except DomainException as ex:
                    logger.warning("Réplica %d, %s: %s", r, metodo.value, ex)
                    salida[metodo] = str(ex)
            return salida

        if self.threads == 1:
            resultados = [_replica(r) for r in range(replicates)]
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                resultados = list(pool.map(_replica, range(replicates)))

        registros = []
        for metodo in metodos:
            estimaciones = [res[metodo] for res in resultados if isinstance(res[metodo], np.ndarray)]
            registros.append(ReportRecord(
                estimator=metodo.value,
                block=bloque,
                eps=float(eps),
                value=and_metric(estimaciones, completos[metodo], data.X, data.y)
                if estimaciones else None,
                n_ok=len(estimaciones),
                n_failed=replicates - len(estimaciones),
            ))

        log = tuple(
            ReplicateRecord(
                index=r,
                seed=derive_seed(seed, r, _CONTAMINACION if bloque == CONTAMINATED_BLOCK else _RESAMPLE),
                failures=tuple(sorted(f"{bloque}:{m.value}" for m, v in res.items()
                                      if not isinstance(v, np.ndarray))),
            )
            for r, res in enumerate(resultados)
        )
        return ExperimentReport(
            name=bloque,
            metric="and",
            estimators=tuple(m.value for m in metodos),
            records=tuple(registros),
            replicates=replicates,
            seed=seed,
            replicate_log=log,
            descriptor={
                "n": data.n,
                "p": data.p,
                "response": data.response_name,
                "columns": list(data.column_names),
                "blocks": {bloque: descriptor},
                "estimator_settings": self.estimators.describe(),
            },
        )


def _combinar(reportes: list[ExperimentReport]) -> ExperimentReport:
    """Une reportes con las mismas réplicas en uno solo, bloque por bloque"""
    primero = reportes[0]
    bloques: dict = {}
    for rep in reportes:
        bloques.update(rep.descriptor["blocks"])
    log = tuple(
        ReplicateRecord(
            index=r,
            seed=primero.replicate_log[r].seed,
            failures=tuple(f for rep in reportes for f in rep.replicate_log[r].failures),
        )
        for r in range(primero.replicates)
    )
    return ExperimentReport(
        name="real-data",
        metric=primero.metric,
        estimators=primero.estimators,
        records=tuple(reg for rep in reportes for reg in rep.records),
        replicates=primero.replicates,
        seed=primero.seed,
        replicate_log=log,
        descriptor={**primero.descriptor, "blocks": bloques},
    )
