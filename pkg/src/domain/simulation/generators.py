"""
Generación de datos sintéticos y contaminación.
cellshot

Todas las funciones son puras en (entradas, semilla): la misma semilla
reproduce los mismos datos byte a byte. Las cantidades de celdas o filas
contaminadas son exactas, redondeando eps · total con mitades hacia afuera.
"""

import math
from typing import Optional

import numpy as np

from src.domain.entities.regression_data import RegressionData
from src.domain.entities.sim_design import VERTICAL_SHIFT, SimDesign
from src.domain.estimation.mscale import normalized_mad
from src.domain.exceptions.domain_exceptions import InvalidParameterException
from src.domain.value_objects.enums import CellwiseScheme


def round_half_away(valor: float) -> int:
    """Redondeo con mitades lejos de cero (2.5 -> 3)"""
    return int(math.copysign(math.floor(abs(valor) + 0.5), valor))


def contaminated_count(eps: float, total: int) -> int:
    _validar_eps(eps)
    return min(total, round_half_away(eps * total))


def expected_contaminated_rows(n: int, p: int, eps: float) -> float:
    """Número esperado de filas con al menos una celda contaminada: n(1 - (1 - eps)^p)"""
    return n * (1.0 - (1.0 - eps) ** p)


def _validar_eps(eps: float) -> None:
    if not 0.0 <= eps < 1.0:
        raise InvalidParameterException(f"eps debe estar en [0, 1): {eps}")


def gen_clean(design: SimDesign, seed: int) -> RegressionData:
    """X ~ N(0, cov) por filas; y = Xβ + e con e ~ N(0, σ²)"""
    rng = np.random.default_rng(seed)
    Z = rng.standard_normal((design.n, design.p))
    X = Z @ design.cov_factor.T
    e = design.sigma_err * rng.standard_normal(design.n)
    return RegressionData(y=X @ design.beta_true + e, X=X)


def contaminate_cellwise(
    data: RegressionData,
    eps: float,
    scheme: CellwiseScheme,
    seed: int,
) -> RegressionData:
    """
    Reemplaza una fracción eps de las n·p celdas (sin reposición) por
    draws N(media, desvío²) del esquema. y no cambia.
    """
    cantidad = contaminated_count(eps, data.n * data.p)
    if cantidad == 0:
        return data
    rng = np.random.default_rng(seed)
    celdas = rng.choice(data.n * data.p, size=cantidad, replace=False)
    X = data.X.copy()
    X.flat[celdas] = rng.normal(scheme.media(), scheme.desvio(), size=cantidad)
    return data.with_X(X)


def contaminate_rowwise(
    data: RegressionData,
    eps: float,
    scheme: CellwiseScheme,
    cov: Optional[np.ndarray],
    seed: int,
) -> RegressionData:
    """
    Reemplaza eps·n filas de X por draws N(media·1, desvío²·cov). y no cambia.
    """
    cantidad = contaminated_count(eps, data.n)
    if cantidad == 0:
        return data
    cov = np.eye(data.p) if cov is None else np.asarray(cov, dtype=float)
    factor = np.linalg.cholesky(cov)
    rng = np.random.default_rng(seed)
    filas = rng.choice(data.n, size=cantidad, replace=False)
    draws = scheme.media() + scheme.desvio() * (rng.standard_normal((cantidad, data.p)) @ factor.T)
    X = data.X.copy()
    X[filas] = draws
    return data.with_X(X)


def contaminate_vertical(
    design: SimDesign,
    data: RegressionData,
    eps: float,
    seed: int,
) -> RegressionData:
    """
    Reconstruye la respuesta de eps·n filas como x_i'β + e con e ~ N(50, σ²).
    X no cambia.
    """
    cantidad = contaminated_count(eps, data.n)
    if cantidad == 0:
        return data
    rng = np.random.default_rng(seed)
    filas = rng.choice(data.n, size=cantidad, replace=False)
    y = data.y.copy()
    errores = rng.normal(VERTICAL_SHIFT, design.sigma_err, size=cantidad)
    y[filas] = data.X[filas] @ design.beta_true + errores
    return data.with_y(y)


def contaminate_real_cells(
    data: RegressionData,
    eps: float,
    shift: float,
    seed: int,
) -> RegressionData:
    """
    Contaminación de datos reales: eps·n·p celdas al azar reemplazadas por
    N(μ_j + shift·σ_j, σ_j²), con μ_j y σ_j la mediana y el MAD de la columna j.
    """
    cantidad = contaminated_count(eps, data.n * data.p)
    if cantidad == 0:
        return data
    centros = np.median(data.X, axis=0)
    escalas = np.array([normalized_mad(data.X[:, j]) for j in range(data.p)])
    rng = np.random.default_rng(seed)
    celdas = rng.choice(data.n * data.p, size=cantidad, replace=False)
    columnas = celdas % data.p
    X = data.X.copy()
    X.flat[celdas] = rng.normal(centros[columnas] + shift * escalas[columnas], escalas[columnas])
    return data.with_X(X)


def derive_seed(seed: int, *keys: int) -> int:
    """
    Semilla derivada de (seed, keys) vía SeedSequence: independiente del
    orden de ejecución y estable entre corridas.
    """
    if seed < 0 or any(k < 0 for k in keys):
        raise InvalidParameterException("Las semillas y claves deben ser no negativas")
    return int(np.random.SeedSequence([seed, *keys]).generate_state(1, dtype=np.uint32)[0])
