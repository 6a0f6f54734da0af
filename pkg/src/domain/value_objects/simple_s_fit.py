"""
Value Object: SimpleSFit
cellshot

Resultado de la regresión S simple (un predictor más intercepto).
"""

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True, eq=False)
class SimpleSFit:
    """
    Ajuste S simple por IRLS.

    Invariantes:
    - residuals[i] = ytilde[i] - x[i] * slope - intercept
    - scale resuelve la ecuación del M-scale sobre residuals (0 en ajuste exacto)

    residual_trace guarda max|res^(r) - res^(r-1)| por I-step, el mismo
    valor que decide la parada.
    """

    slope: float
    intercept: float
    scale: float
    residuals: np.ndarray
    i_steps: int
    converged: bool
    residual_trace: tuple[float, ...] = field(default_factory=tuple)

    @property
    def exact_fit(self) -> bool:
        return self.scale == 0.0
