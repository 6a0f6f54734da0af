"""
Value Object: LinearFit
cellshot

Resultado de los estimadores de referencia (LS, S y MM).
"""

from dataclasses import dataclass, field

import numpy as np

from src.domain.value_objects.enums import Method


@dataclass(frozen=True, eq=False)
class LinearFit:
    """
    Ajuste lineal con intercepto.

    scale según el método:
    - ls: raíz del residuo cuadrático medio
    - s, mm: M-scale (en mm es exactamente la escala de la etapa S)

    candidate_scales lista, en s/mm, los M-scales de los candidatos
    refinados por fast-S; el elegido tiene el mínimo.
    """

    slopes: np.ndarray
    intercept: float
    scale: float
    method: Method
    converged: bool = True
    candidate_scales: tuple[float, ...] = field(default_factory=tuple)

    def residuals(self, X: np.ndarray, y: np.ndarray) -> np.ndarray:
        return y - X @ self.slopes - self.intercept

    def to_dict(self) -> dict:
        return {
            "method": self.method.value,
            "slopes": [float(b) for b in self.slopes],
            "intercept": float(self.intercept),
            "scale": float(self.scale),
            "converged": self.converged,
        }
