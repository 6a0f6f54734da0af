"""
Estimador shooting S.
cellshot

Descenso por coordenadas (Gauss-Seidel) sobre las variables: para cada j
se arma la respuesta parcial ỹ^(j) con las celdas limpiadas del resto de
las columnas, se ajusta una regresión S simple de ỹ^(j) sobre x_j, y con
ese ajuste se imputan, pesan y limpian las celdas de la columna j.

Inicialización: predictores huberizados a mediana ± 2 MAD y regresión MM
con ρ lqq (50% de ruptura, 95% de eficiencia). El lazo externo termina
cuando Σ_j |s_j^(L) - s_j^(L-1)| < eps4 o al llegar a max_outer_loops.
"""

import logging
from typing import NamedTuple, Optional, Sequence

import numpy as np

from src.domain.entities.regression_data import RegressionData
from src.domain.entities.shooting_fit import ShootingConfig, ShootingFit
from src.domain.estimation.baselines import mm_fit
from src.domain.estimation.mscale import normalized_mad
from src.domain.estimation.rho_kernels import WeightFunction, hard_rejection
from src.domain.estimation.univariate_s import simple_s_fit
from src.domain.exceptions.domain_exceptions import (
    DegenerateDesignException,
    DegenerateResponseException,
    InitializationException,
    InvalidParameterException,
    SubsamplingException,
)
from src.domain.value_objects.enums import RhoKind, SmallSlopeImputation

logger = logging.getLogger(__name__)


class InitialFit(NamedTuple):
    slopes: np.ndarray
    intercept: float
    scale: float


# ============================================================================
# Inicialización
# ============================================================================

def huberize_columns(X) -> np.ndarray:
    """Recorta cada columna a [mediana - 2 MAD, mediana + 2 MAD]"""
    X = np.asarray(X, dtype=float)
    if X.shape[0] < 2:
        raise InvalidParameterException("Huberizar requiere al menos 2 filas")
    resultado = np.empty_like(X)
    for j in range(X.shape[1]):
        columna = X[:, j]
        centro = float(np.median(columna))
        banda = 2.0 * normalized_mad(columna)
        resultado[:, j] = np.clip(columna, centro - banda, centro + banda)
    return resultado


def _columnas_problematicas(Z: np.ndarray, nombres: Sequence[str]) -> list[str]:
    constantes = [nombres[j] for j in range(Z.shape[1] - 1) if np.ptp(Z[:, j + 1]) == 0.0]
    if constantes:
        return constantes
    rango = np.linalg.matrix_rank(Z)
    return [nombres[j] for j in range(Z.shape[1] - 1)
            if np.linalg.matrix_rank(np.delete(Z, j + 1, axis=1)) == rango]


def initial_fit(
    X0,
    y,
    seed: int = 0,
    column_names: Optional[Sequence[str]] = None,
    n_subsamples: int = 500,
) -> InitialFit:
    """
    Regresión MM lqq de y sobre los predictores huberizados.

    Raises:
        InitializationException: diseño huberizado sin rango completo (nombra
            las columnas) o submuestreo fallido
    """
    X0 = np.asarray(X0, dtype=float)
    nombres = list(column_names or [f"x{j + 1}" for j in range(X0.shape[1])])
    Z = np.column_stack([np.ones(X0.shape[0]), X0])
    if np.linalg.matrix_rank(Z) < Z.shape[1]:
        culpables = _columnas_problematicas(Z, nombres)
        raise InitializationException(
            f"El diseño huberizado no tiene rango completo; columnas: {', '.join(culpables)}",
            columns=culpables,
        )
    try:
        ajuste = mm_fit(RegressionData(y=y, X=X0, column_names=tuple(nombres)),
                        bdp=0.5, eff=0.95, seed=seed, kind=RhoKind.LQQ,
                        n_subsamples=n_subsamples)
    except (DegenerateDesignException, SubsamplingException) as e:
        raise InitializationException(f"Falló el ajuste MM inicial: {e}") from e
    return InitialFit(slopes=ajuste.slopes, intercept=ajuste.intercept, scale=ajuste.scale)


# ============================================================================
# Pasos del lazo
# ============================================================================

def partial_response(y, cleaned_prev, cleaned_curr, slopes_prev, slopes_curr, j: int) -> np.ndarray:
    """
    ỹ^(j) = y - Σ_{k<j} x̃^(L)_k β^(L)_k - Σ_{k>j} x̃^(L-1)_k β^(L-1)_k
    """
    y = np.asarray(y, dtype=float)
    cleaned_prev = np.asarray(cleaned_prev, dtype=float)
    cleaned_curr = np.asarray(cleaned_curr, dtype=float)
    slopes_prev = np.asarray(slopes_prev, dtype=float)
    slopes_curr = np.asarray(slopes_curr, dtype=float)
    return (y
            - cleaned_curr[:, :j] @ slopes_curr[:j]
            - cleaned_prev[:, j + 1:] @ slopes_prev[j + 1:])


def impute_cells(
    ytilde_j,
    alpha_j: float,
    beta_j: float,
    x_j,
    eps3: float,
    fallback: SmallSlopeImputation = SmallSlopeImputation.MEDIAN,
) -> np.ndarray:
    """
    Valor calibrado x̂ = (ỹ^(j) - α_j) / β_j.

    Con |β_j| < eps3 la calibración no es estable y todas las celdas toman
    la mediana de x_j (o 0 con fallback=ZERO).
    """
    ytilde_j = np.asarray(ytilde_j, dtype=float)
    if abs(beta_j) >= eps3:
        return (ytilde_j - alpha_j) / beta_j
    valor = float(np.median(x_j)) if fallback is SmallSlopeImputation.MEDIAN else 0.0
    return np.full(ytilde_j.shape, valor)


def update_cell_weights(
    residuals,
    s_j: float,
    cutoff_c: float = 3.0,
    weight_function: Optional[WeightFunction] = None,
) -> np.ndarray:
    """
    w_ij = w(|res_i| / s_j); con s_j = 0 (ajuste exacto) todos los pesos son 1.
    """
    residuals = np.asarray(residuals, dtype=float)
    if s_j == 0.0:
        return np.ones_like(residuals)
    funcion = weight_function or hard_rejection(cutoff_c)
    return np.asarray(funcion(np.abs(residuals) / s_j), dtype=float)


def clean_column(x_j, xhat_j, w_j) -> np.ndarray:
    """x̃ = w · x + (1 - w) · x̂"""
    x_j = np.asarray(x_j, dtype=float)
    w_j = np.asarray(w_j, dtype=float)
    return w_j * x_j + (1.0 - w_j) * np.asarray(xhat_j, dtype=float)


# ============================================================================
# Algoritmo completo
# ============================================================================

def shooting_fit(data: RegressionData, config: ShootingConfig) -> ShootingFit:
    """
    Estimador shooting S.

    Raises:
        InvalidParameterException: n <= 2
        DegenerateResponseException: MAD(y) = 0
        InitializationException: falla del ajuste MM inicial
    """
    X, y = data.X, data.y
    n, p = X.shape
    if n <= 2:
        raise InvalidParameterException(f"Se requieren más de 2 observaciones (n={n})")

    mad_y = normalized_mad(y)
    if mad_y == 0.0:
        raise DegenerateResponseException(
            f"La respuesta '{data.response_name}' tiene MAD nulo: las tolerancias se anulan"
        )
    eps2 = config.eps2_factor * mad_y
    eps4 = config.eps4_factor * mad_y
    mad_x = np.array([normalized_mad(X[:, j]) for j in range(p)])
    with np.errstate(divide="ignore"):
        eps3 = np.where(mad_x > 0, config.eps3_factor * mad_y / mad_x, np.inf)

    X0 = huberize_columns(X)
    inicial = initial_fit(X0, y, seed=config.init_seed, column_names=data.column_names,
                          n_subsamples=config.init_subsamples)
    logger.debug("Inicio MM lqq: intercepto=%.6g escala=%.6g", inicial.intercept, inicial.scale)

    pesar = config.cell_weight_function()
    slopes_prev = np.array(inicial.slopes, dtype=float)
    scales_prev = np.full(p, inicial.scale)
    alphas = np.full(p, inicial.intercept)
    cleaned_prev = X0.copy()
    weights = np.ones((n, p))
    traza: list[float] = []
    convergio = False
    lazo = 0

    for lazo in range(1, config.max_outer_loops + 1):
        cleaned_curr = cleaned_prev.copy()
        slopes_curr = slopes_prev.copy()
        scales_curr = scales_prev.copy()

        for j in range(p):
            ytilde = partial_response(y, cleaned_prev, cleaned_curr, slopes_prev, slopes_curr, j)
            simple = simple_s_fit(ytilde, X[:, j], config.spec,
                                  beta_init=slopes_prev[j], s_init=scales_prev[j],
                                  eps1=config.eps1, eps2=eps2,
                                  max_i_steps=config.max_i_steps,
                                  max_m_steps=config.max_m_steps)
            slopes_curr[j] = simple.slope
            alphas[j] = simple.intercept
            scales_curr[j] = simple.scale

            xhat = impute_cells(ytilde, simple.intercept, simple.slope, X[:, j],
                                float(eps3[j]), config.small_slope_imputation)
            weights[:, j] = update_cell_weights(simple.residuals, simple.scale,
                                                config.cutoff_c, pesar)
            cleaned_curr[:, j] = clean_column(X[:, j], xhat, weights[:, j])

        criterio = float(np.sum(np.abs(scales_curr - scales_prev)))
        traza.append(criterio)
        logger.debug("Lazo %d: Σ|Δs_j| = %.6g (eps4 = %.6g)", lazo, criterio, eps4)

        cleaned_prev, slopes_prev, scales_prev = cleaned_curr, slopes_curr, scales_curr
        if criterio < eps4:
            convergio = True
            break

    if convergio:
        logger.info("shooting S convergió en %d lazos", lazo)
    else:
        logger.warning("shooting S sin converger tras %d lazos", config.max_outer_loops)

    intercepto = float(np.median(y - cleaned_prev @ slopes_prev))
    return ShootingFit(
        slopes=slopes_prev,
        intercept=intercepto,
        scales=scales_prev,
        weights=weights,
        cleaned_x=cleaned_prev,
        outer_loops=lazo,
        converged=convergio,
        init_slopes=np.array(inicial.slopes, dtype=float),
        init_intercept=float(inicial.intercept),
        init_scale=float(inicial.scale),
        column_intercepts=alphas,
        criterion_trace=tuple(traza),
        column_names=data.column_names,
    )


def flag_outliers(fit: ShootingFit, threshold: float = 0.5) -> tuple[np.ndarray, np.ndarray]:
    """
    Celda marcada si su peso < threshold; fila marcada si todas sus celdas lo están.

    Returns:
        (matriz booleana n x p, vector booleano de largo n)
    """
    celdas = fit.weights < threshold
    return celdas, np.all(celdas, axis=1)
