"""
Regresión S simple (un predictor más intercepto) por IRLS.
cellshot

Cada I-step:
1. mínimos cuadrados ponderados de ỹ sobre x con los pesos ω actuales
2. residuos nuevos y M-scale sobre ellos (arranca del MAD en el primer
   I-step y de la escala anterior en los siguientes)
3. ω_i = ψ(res_i/s)/(res_i/s)

Para cuando el máximo cambio absoluto de los residuos (no de los
coeficientes) baja de eps2.
"""

import logging

import numpy as np

from src.domain.estimation.mscale import (
    MAX_M_STEPS,
    solve_mscale,
    starting_scale,
)
from src.domain.estimation.rho_kernels import irls_weight
from src.domain.exceptions.domain_exceptions import (
    DegenerateDesignException,
    InvalidParameterException,
)
from src.domain.value_objects.rho_spec import RhoSpec
from src.domain.value_objects.simple_s_fit import SimpleSFit

logger = logging.getLogger(__name__)

MAX_I_STEPS = 100
# Residuos por debajo de esta fracción de max|ỹ| se consideran ajuste exacto
EXACT_FIT_RTOL = 1e-12


def weighted_ls_simple(y, x, w) -> tuple[float, float]:
    """
    Recta de mínimos cuadrados ponderados por medias y covarianzas ponderadas.

    Returns:
        (pendiente, intercepto)

    Raises:
        InvalidParameterException: largos distintos, pesos negativos o Σw = 0
        DegenerateDesignException: varianza ponderada de x nula
    """
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    if not (y.shape == x.shape == w.shape):
        raise InvalidParameterException("y, x y w deben tener el mismo largo")
    if np.any(w < 0):
        raise InvalidParameterException("Los pesos deben ser no negativos")
    total = float(np.sum(w))
    if not total > 0:
        raise InvalidParameterException("La suma de pesos debe ser positiva")

    x_media = float(np.dot(w, x)) / total
    y_media = float(np.dot(w, y)) / total
    dx = x - x_media
    sxx = float(np.dot(w, dx * dx))
    escala_x = float(np.dot(w, x * x))
    if not sxx > np.finfo(float).eps * escala_x or not np.isfinite(sxx):
        raise DegenerateDesignException(
            "El predictor tiene varianza ponderada nula: la recta no está determinada"
        )
    pendiente = float(np.dot(w, dx * (y - y_media))) / sxx
    return pendiente, y_media - pendiente * x_media


def _es_exacto(res: np.ndarray, ytilde: np.ndarray) -> bool:
    return float(np.max(np.abs(res))) <= EXACT_FIT_RTOL * float(np.max(np.abs(ytilde)))


def simple_s_fit(
    ytilde,
    x,
    spec: RhoSpec,
    beta_init: float,
    s_init: float,
    eps1: float,
    eps2: float,
    max_i_steps: int = MAX_I_STEPS,
    max_m_steps: int = MAX_M_STEPS,
) -> SimpleSFit:
    """
    Ajuste S de ỹ sobre x por I-steps.

    Args:
        ytilde: respuesta parcial
        x: predictor observado
        spec: función ρ
        beta_init: pendiente de arranque (la del lazo anterior)
        s_init: escala de arranque; si es 0 se usa la de los residuos centrados
        eps1: tolerancia de los M-steps
        eps2: tolerancia sobre el cambio máximo de residuos

    Returns:
        SimpleSFit con el último iterado (converged=False si se agotó el
        tope de I-steps o todos los pesos quedaron en cero)

    Raises:
        DegenerateDesignException: si x no tiene varianza bajo los pesos
    """
    ytilde = np.asarray(ytilde, dtype=float)
    x = np.asarray(x, dtype=float)
    if ytilde.shape != x.shape:
        raise InvalidParameterException("ỹ y x deben tener el mismo largo")

    crudo = ytilde - x * beta_init
    centro = float(np.median(crudo))
    res_prev = crudo - centro
    if _es_exacto(res_prev, ytilde):
        return SimpleSFit(slope=float(beta_init), intercept=centro, scale=0.0,
                          residuals=res_prev, i_steps=0, converged=True)

    s = float(s_init) if s_init > 0 else starting_scale(res_prev)
    pesos = np.asarray(irls_weight(spec, res_prev / s), dtype=float)
    pendiente, intercepto = float(beta_init), centro
    traza: list[float] = []

    for paso in range(1, max_i_steps + 1):
        if not np.any(pesos > 0):
            logger.warning("Regresión S simple: todos los pesos IRLS son cero (I-step %d)", paso)
            return SimpleSFit(slope=pendiente, intercept=intercepto, scale=s,
                              residuals=res_prev, i_steps=paso - 1, converged=False,
                              residual_trace=tuple(traza))

        pendiente, intercepto = weighted_ls_simple(ytilde, x, pesos)
        res = ytilde - x * pendiente - intercepto
        cambio = float(np.max(np.abs(res - res_prev)))
        traza.append(cambio)

        if _es_exacto(res, ytilde):
            return SimpleSFit(slope=pendiente, intercept=intercepto, scale=0.0,
                              residuals=res, i_steps=paso, converged=True,
                              residual_trace=tuple(traza))

        s0 = starting_scale(res) if paso == 1 else s
        s = solve_mscale(res, spec, s0, eps1=eps1, max_steps=max_m_steps).s
        if s == 0.0:
            return SimpleSFit(slope=pendiente, intercept=intercepto, scale=0.0,
                              residuals=res, i_steps=paso, converged=True,
                              residual_trace=tuple(traza))
        pesos = np.asarray(irls_weight(spec, res / s), dtype=float)

        if cambio < eps2:
            return SimpleSFit(slope=pendiente, intercept=intercepto, scale=s,
                              residuals=res, i_steps=paso, converged=True,
                              residual_trace=tuple(traza))
        res_prev = res

    logger.warning("Regresión S simple sin converger tras %d I-steps", max_i_steps)
    return SimpleSFit(slope=pendiente, intercept=intercepto, scale=s,
                      residuals=res_prev, i_steps=max_i_steps, converged=False,
                      residual_trace=tuple(traza))
