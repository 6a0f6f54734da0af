"""
Entidades: ShootingConfig y ShootingFit
cellshot
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.domain.estimation.rho_kernels import WeightFunction, hard_rejection, tune_for_bdp
from src.domain.value_objects.enums import RhoKind, SmallSlopeImputation
from src.domain.value_objects.rho_spec import RhoSpec


@dataclass(frozen=True)
class ShootingConfig:
    """
    Parámetros del estimador shooting S.

    Las tolerancias se expresan como factores que el algoritmo escala con
    los datos:
    - eps2 = eps2_factor · MAD(y)           (cambio de residuos, I-steps)
    - eps3 = eps3_factor · MAD(y) / MAD(x_j) (pendiente mínima para calibrar)
    - eps4 = eps4_factor · MAD(y)           (cambio de escalas, lazo externo)

    weight_function recibe |res|/s y devuelve pesos en [0, 1]; si es None
    se usa rechazo duro con corte cutoff_c.
    """

    spec: RhoSpec
    cutoff_c: float = 3.0
    eps1: float = 1e-6
    eps2_factor: float = 1e-6
    eps3_factor: float = 1e-4
    eps4_factor: float = 1e-2
    max_outer_loops: int = 50
    max_i_steps: int = 100
    max_m_steps: int = 200
    small_slope_imputation: SmallSlopeImputation = SmallSlopeImputation.MEDIAN
    weight_function: Optional[WeightFunction] = None
    init_seed: int = 0
    init_subsamples: int = 500

    def __post_init__(self):
        positivos = {
            "cutoff_c": self.cutoff_c,
            "eps1": self.eps1,
            "eps2_factor": self.eps2_factor,
            "eps3_factor": self.eps3_factor,
            "eps4_factor": self.eps4_factor,
        }
        for nombre, valor in positivos.items():
            if not valor > 0:
                raise ValueError(f"{nombre} debe ser positivo: {valor}")
        for nombre in ("max_outer_loops", "max_i_steps", "max_m_steps", "init_subsamples"):
            if getattr(self, nombre) < 1:
                raise ValueError(f"{nombre} debe ser al menos 1")

    @classmethod
    def for_rho(cls, kind: RhoKind, bdp: float = 0.2, **kwargs) -> "ShootingConfig":
        """Config con la ρ calibrada al punto de ruptura bdp de las regresiones simples"""
        return cls(spec=tune_for_bdp(kind, bdp), **kwargs)

    def cell_weight_function(self) -> WeightFunction:
        return self.weight_function or hard_rejection(self.cutoff_c)

    def to_dict(self) -> dict:
        return {
            "rho": self.spec.to_dict(),
            "cutoff_c": self.cutoff_c,
            "eps1": self.eps1,
            "eps2_factor": self.eps2_factor,
            "eps3_factor": self.eps3_factor,
            "eps4_factor": self.eps4_factor,
            "max_outer_loops": self.max_outer_loops,
            "small_slope_imputation": self.small_slope_imputation.value,
            "custom_weight_function": self.weight_function is not None,
            "init_seed": self.init_seed,
        }


@dataclass(frozen=True, eq=False)
class ShootingFit:
    """
    Resultado del estimador shooting S.

    Invariantes:
    - cleaned_x = weights · x + (1 - weights) · imputado (celda a celda)
    - con rechazo duro, weights ∈ {0, 1}
    - intercept = mediana_i (y_i - Σ_j cleaned_x[i, j] · slopes[j])

    criterion_trace guarda Σ_j |s_j^(L) - s_j^(L-1)| de cada lazo externo.
    """

    slopes: np.ndarray
    intercept: float
    scales: np.ndarray
    weights: np.ndarray
    cleaned_x: np.ndarray
    outer_loops: int
    converged: bool
    init_slopes: np.ndarray
    init_intercept: float = 0.0
    init_scale: float = 0.0
    column_intercepts: np.ndarray = field(default_factory=lambda: np.zeros(0))
    criterion_trace: tuple[float, ...] = field(default_factory=tuple)
    column_names: tuple[str, ...] = field(default_factory=tuple)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def p(self) -> int:
        return self.weights.shape[1]
