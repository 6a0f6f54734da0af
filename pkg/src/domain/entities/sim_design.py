"""
Entidades: SimDesign y ContaminationScheme
cellshot
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.domain.value_objects.enums import CellwiseScheme, ContaminationMode

# Desvío del error que iguala la relación señal/ruido en ambos diseños
SIGMA_UNCORRELATED = 0.5
SIGMA_CORRELATED = 0.81
VERTICAL_SHIFT = 50.0


@dataclass(frozen=True, eq=False)
class SimDesign:
    """
    Diseño de simulación: X ~ N(0, cov), y = Xβ + e con e ~ N(0, sigma_err²).

    - beta_true[j] = (j + 1) / p (coeficientes equiespaciados en (0, 1])
    - cov = identidad, o Σ_ij = 0.5^|i-j| si correlated
    """

    n: int = 100
    p: int = 15
    correlated: bool = False
    sigma_err: Optional[float] = None
    beta_true: np.ndarray = field(default=None)
    cov: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.n < 2 or self.p < 1:
            raise ValueError(f"Diseño inválido: n={self.n}, p={self.p}")
        if self.sigma_err is None:
            sigma = SIGMA_CORRELATED if self.correlated else SIGMA_UNCORRELATED
            object.__setattr__(self, "sigma_err", sigma)
        if self.sigma_err < 0:
            raise ValueError("sigma_err no puede ser negativo")
        if self.beta_true is None:
            object.__setattr__(self, "beta_true", np.arange(1, self.p + 1) / self.p)
        if self.cov is None:
            indices = np.arange(self.p)
            cov = (0.5 ** np.abs(indices[:, None] - indices[None, :])
                   if self.correlated else np.eye(self.p))
            object.__setattr__(self, "cov", cov)
        cov = np.asarray(self.cov, dtype=float)
        if cov.shape != (self.p, self.p) or not np.allclose(cov, cov.T):
            raise ValueError("cov debe ser una matriz simétrica p x p")
        # falla si cov no es definida positiva
        object.__setattr__(self, "cov", cov)
        object.__setattr__(self, "_chol", np.linalg.cholesky(cov))

    @property
    def cov_factor(self) -> np.ndarray:
        """Factor triangular inferior L con L L' = cov"""
        return self._chol

    def signal_to_noise(self) -> float:
        """sqrt(β' Σ β) / σ"""
        return float(np.sqrt(self.beta_true @ self.cov @ self.beta_true) / self.sigma_err)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "correlated": self.correlated,
            "sigma_err": self.sigma_err,
        }


@dataclass(frozen=True)
class ContaminationScheme:
    """
    Modo y nivel de contaminación.

    - cellwise: celdas elegidas al azar reemplazadas por N(media, desvío²)
    - rowwise: filas enteras reemplazadas por N(media·1, desvío²·Σ)
    - vertical: filas con error N(50, σ²) en la respuesta
    """

    mode: ContaminationMode
    eps: float
    scheme: Optional[CellwiseScheme] = None

    def __post_init__(self):
        if not 0.0 <= self.eps < 1.0:
            raise ValueError(f"eps debe estar en [0, 1): {self.eps}")
        if self.mode is ContaminationMode.VERTICAL:
            if self.scheme is not None:
                raise ValueError("La contaminación vertical no usa esquema de distribución")
        elif self.scheme is None:
            object.__setattr__(self, "scheme", CellwiseScheme.DENSE)

    @property
    def mean(self) -> float:
        return VERTICAL_SHIFT if self.scheme is None else self.scheme.media()

    @property
    def sd(self) -> Optional[float]:
        return None if self.scheme is None else self.scheme.desvio()

    def label(self) -> str:
        return self.mode.value if self.scheme is None else f"{self.mode.value}:{self.scheme.value}"
