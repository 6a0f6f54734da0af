"""
Servicio de Aplicación: EstimatorService
cellshot

Traduce un Method a la llamada de estimación correspondiente con los
valores por defecto de los benchmarks:
- shooting-*: ρ calibrada a 20% de ruptura, corte c = 3
- s: biweight con 20% de ruptura (k = 3.420)
- mm: biweight, 50% de ruptura y 95% de eficiencia
"""

import logging
from typing import Union

import numpy as np

from src.domain.entities.regression_data import RegressionData
from src.domain.entities.shooting_fit import ShootingConfig, ShootingFit
from src.domain.estimation.baselines import N_SUBSAMPLES, ls_fit, mm_fit, s_fit
from src.domain.estimation.rho_kernels import tune_for_bdp
from src.domain.estimation.shooting import shooting_fit
from src.domain.exceptions.domain_exceptions import InvalidParameterException
from src.domain.value_objects.enums import Method, RhoKind, SmallSlopeImputation
from src.domain.value_objects.linear_fit import LinearFit

logger = logging.getLogger(__name__)

Fit = Union[LinearFit, ShootingFit]


class EstimatorService:
    """
    Servicio de Aplicación para correr cualquiera de los estimadores.
    """

    def __init__(
        self,
        shooting_bdp: float = 0.2,
        cutoff_c: float = 3.0,
        s_bdp: float = 0.2,
        mm_bdp: float = 0.5,
        mm_eff: float = 0.95,
        n_subsamples: int = N_SUBSAMPLES,
        small_slope_imputation: SmallSlopeImputation = SmallSlopeImputation.MEDIAN,
    ):
        if not 0.0 < shooting_bdp <= 0.5 or not 0.0 < s_bdp <= 0.5:
            raise InvalidParameterException("El punto de ruptura debe estar en (0, 0.5]")
        if not cutoff_c > 0:
            raise InvalidParameterException(f"El corte debe ser positivo: {cutoff_c}")
        self.shooting_bdp = shooting_bdp
        self.cutoff_c = cutoff_c
        self.s_bdp = s_bdp
        self.mm_bdp = mm_bdp
        self.mm_eff = mm_eff
        self.n_subsamples = n_subsamples
        self.small_slope_imputation = small_slope_imputation

    def shooting_config(self, method: Method, seed: int = 0) -> ShootingConfig:
        if not method.es_shooting():
            raise InvalidParameterException(f"{method.value} no es un estimador shooting")
        return ShootingConfig.for_rho(
            method.rho_kind(),
            bdp=self.shooting_bdp,
            cutoff_c=self.cutoff_c,
            init_seed=seed,
            init_subsamples=self.n_subsamples,
            small_slope_imputation=self.small_slope_imputation,
        )

    def fit(self, method: Method, data: RegressionData, seed: int = 0) -> Fit:
        """Ajusta el método pedido; seed gobierna el submuestreo de S, MM y la inicialización"""
        logger.debug("Ajustando %s sobre %r", method.value, data)
        if method is Method.LS:
            return ls_fit(data)
        if method is Method.S:
            return s_fit(data, tune_for_bdp(RhoKind.BIWEIGHT, self.s_bdp),
                         n_subsamples=self.n_subsamples, seed=seed)
        if method is Method.MM:
            return mm_fit(data, bdp=self.mm_bdp, eff=self.mm_eff, seed=seed,
                          n_subsamples=self.n_subsamples)
        return shooting_fit(data, self.shooting_config(method, seed))

    def slopes(self, method: Method, data: RegressionData, seed: int = 0) -> np.ndarray:
        return np.asarray(self.fit(method, data, seed).slopes, dtype=float)

    def describe(self) -> dict:
        return {
            "shooting_bdp": self.shooting_bdp,
            "cutoff_c": self.cutoff_c,
            "s_bdp": self.s_bdp,
            "mm_bdp": self.mm_bdp,
            "mm_eff": self.mm_eff,
            "n_subsamples": self.n_subsamples,
            "small_slope_imputation": self.small_slope_imputation.value,
        }
