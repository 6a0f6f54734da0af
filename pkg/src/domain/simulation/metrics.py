"""
Métricas de comparación de estimadores.
cellshot

- n_mse: n · (1/p) Σ_j (1/R) Σ_r (β̂_j^(r) - β_j)²
- and_metric: (1/R) Σ_r sqrt( (1/p) Σ_j (β̂_j^(r) - β̂_j^full)² · MAD(x_j)² / MAD(y)² )

np.mean suma por pares, así que el orden de las réplicas (fijo por índice)
determina el resultado sin importar cómo se calcularon.
"""

from typing import Sequence

import numpy as np

from src.domain.estimation.mscale import normalized_mad
from src.domain.exceptions.domain_exceptions import (
    DegenerateDesignException,
    DegenerateResponseException,
    InvalidParameterException,
)


def _apilar(estimates: Sequence, p_esperado: int) -> np.ndarray:
    if len(estimates) == 0:
        raise InvalidParameterException("Se requiere al menos una estimación")
    matriz = np.vstack([np.asarray(e, dtype=float).ravel() for e in estimates])
    if matriz.shape[1] != p_esperado:
        raise InvalidParameterException(
            f"Las estimaciones tienen {matriz.shape[1]} coeficientes; se esperaban {p_esperado}"
        )
    return matriz


def n_mse(estimates: Sequence, beta_true, n: int) -> float:
    """n · MSE promediado sobre coeficientes y réplicas"""
    beta = np.asarray(beta_true, dtype=float).ravel()
    matriz = _apilar(estimates, beta.size)
    return float(n * np.mean((matriz - beta) ** 2))


def and_metric(estimates: Sequence, beta_full, X, y) -> float:
    """
    Average Norm Distance contra el ajuste sobre los datos completos.

    Raises:
        DegenerateResponseException: MAD(y) = 0
        DegenerateDesignException: alguna columna con MAD nulo
    """
    beta = np.asarray(beta_full, dtype=float).ravel()
    matriz = _apilar(estimates, beta.size)
    X = np.asarray(X, dtype=float)
    mad_y = normalized_mad(y)
    if mad_y == 0.0:
        raise DegenerateResponseException("MAD(y) es nulo: AND no está definido")
    mad_x = np.array([normalized_mad(X[:, j]) for j in range(X.shape[1])])
    if np.any(mad_x == 0.0):
        nulas = [int(j) for j in np.flatnonzero(mad_x == 0.0)]
        raise DegenerateDesignException(f"Columnas con MAD nulo: {nulas}")
    escalado = (matriz - beta) * (mad_x / mad_y)
    return float(np.mean(np.sqrt(np.mean(escalado ** 2, axis=1))))
