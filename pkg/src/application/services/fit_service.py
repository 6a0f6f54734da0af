"""
Servicio de Aplicación: FitService
cellshot

Ajuste de un dataset y diagnóstico de celdas: una celda se declara outlier
cuando su peso de robustez queda por debajo del umbral (0.5 por defecto),
y una observación entera cuando lo están todas sus celdas.
"""

import logging

import numpy as np

from src.application.services.estimator_service import EstimatorService
from src.domain.entities.fit_report import FitReport, FlaggedCell
from src.domain.entities.regression_data import RegressionData
from src.domain.entities.shooting_fit import ShootingFit
from src.domain.estimation.shooting import flag_outliers
from src.domain.exceptions.domain_exceptions import InvalidParameterException
from src.domain.value_objects.enums import Method

logger = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 0.5


class FitService:
    """
    Servicio de Aplicación para ajustes y diagnósticos sobre un dataset.
    """

    def __init__(self, estimator_service: EstimatorService):
        self.estimators = estimator_service

    def fit(
        self,
        data: RegressionData,
        method: Method = Method.SHOOTING_BI,
        seed: int = 0,
        threshold: float = DEFAULT_THRESHOLD,
    ) -> FitReport:
        if not threshold > 0:
            raise InvalidParameterException(f"El umbral debe ser positivo: {threshold}")
        ajuste = self.estimators.fit(method, data, seed=seed)
        config = {"seed": seed, **self.estimators.describe()}

        if isinstance(ajuste, ShootingFit):
            return self._reporte_shooting(data, method, ajuste, threshold, config)

        return FitReport(
            method=method.value,
            response=data.response_name,
            column_names=data.column_names,
            slopes=tuple(float(b) for b in ajuste.slopes),
            intercept=float(ajuste.intercept),
            scales=(float(ajuste.scale),),
            threshold=threshold,
            converged=bool(ajuste.converged),
            n=data.n,
            config=config,
        )

    def diagnose(
        self,
        data: RegressionData,
        method: Method = Method.SHOOTING_BI,
        seed: int = 0,
        threshold: float = DEFAULT_THRESHOLD,
    ) -> FitReport:
        """Como fit, pero solo para estimadores con pesos por celda"""
        if not method.es_shooting():
            raise InvalidParameterException(
                f"El diagnóstico por celdas requiere un método shooting, no {method.value}"
            )
        return self.fit(data, method, seed=seed, threshold=threshold)

    def _reporte_shooting(
        self,
        data: RegressionData,
        method: Method,
        ajuste: ShootingFit,
        threshold: float,
        config: dict,
    ) -> FitReport:
        celdas, filas = flag_outliers(ajuste, threshold)
        marcadas = tuple(
            FlaggedCell(row=int(i), column=data.column_names[j], weight=float(ajuste.weights[i, j]))
            for i, j in np.argwhere(celdas)
        )
        con_marca = int(np.count_nonzero(np.any(celdas, axis=1)))
        logger.info("%s: %d celdas marcadas en %d filas (%d filas completas)",
                    method.value, len(marcadas), con_marca, int(np.count_nonzero(filas)))
        return FitReport(
            method=method.value,
            response=data.response_name,
            column_names=data.column_names,
            slopes=tuple(float(b) for b in ajuste.slopes),
            intercept=float(ajuste.intercept),
            scales=tuple(float(s) for s in ajuste.scales),
            threshold=threshold,
            converged=ajuste.converged,
            n=data.n,
            flagged_cells=marcadas,
            flagged_rows=tuple(int(i) for i in np.flatnonzero(filas)),
            rows_with_flagged_cells=con_marca,
            outer_loops=ajuste.outer_loops,
            config=config,
        )
