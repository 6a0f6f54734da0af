"""
Estimadores de referencia: mínimos cuadrados, S (fast-S) y MM.
cellshot

fast-S:
1. submuestras elementales de p + 1 filas, cada una resuelta exacta
2. k_refine I-steps de mejora local por candidato (la escala avanza un
   M-step por I-step)
3. los n_best candidatos de menor M-scale se refinan hasta converger
4. gana el de menor M-scale

MM: la escala de la etapa S queda fija y se itera una M-regresión con la
ρ calibrada para la eficiencia pedida.
"""

import logging

import numpy as np

from src.domain.entities.regression_data import RegressionData
from src.domain.estimation.mscale import solve_mscale, starting_scale
from src.domain.estimation.rho_kernels import (
    irls_weight,
    rho_eval,
    tune_for_bdp,
    tune_for_efficiency,
)
from src.domain.exceptions.domain_exceptions import (
    DegenerateDesignException,
    SubsamplingException,
)
from src.domain.value_objects.enums import Method, RhoKind
from src.domain.value_objects.linear_fit import LinearFit
from src.domain.value_objects.rho_spec import RhoSpec

logger = logging.getLogger(__name__)

N_SUBSAMPLES = 500
K_REFINE = 2
N_BEST = 5
MAX_REFINE = 200
COEF_TOL = 1e-8


def _con_intercepto(X: np.ndarray) -> np.ndarray:
    return np.column_stack([np.ones(X.shape[0]), X])


def _wls(Z: np.ndarray, y: np.ndarray, w: np.ndarray) -> np.ndarray:
    raiz = np.sqrt(w)
    coef, *_ = np.linalg.lstsq(Z * raiz[:, None], y * raiz, rcond=None)
    return coef


def _verificar_rango(Z: np.ndarray) -> None:
    if np.linalg.matrix_rank(Z) < Z.shape[1]:
        raise DegenerateDesignException(
            "La matriz de diseño con intercepto no tiene rango completo"
        )


def _ajuste(coef: np.ndarray, scale: float, method: Method, **extra) -> LinearFit:
    return LinearFit(slopes=np.array(coef[1:], dtype=float), intercept=float(coef[0]),
                     scale=float(scale), method=method, **extra)


# ============================================================================
# Mínimos cuadrados
# ============================================================================

def ls_fit(data: RegressionData) -> LinearFit:
    """
    Mínimos cuadrados ordinarios con intercepto.

    Raises:
        DegenerateDesignException: si [1, X] no tiene rango completo
    """
    Z = _con_intercepto(data.X)
    _verificar_rango(Z)
    coef, *_ = np.linalg.lstsq(Z, data.y, rcond=None)
    res = data.y - Z @ coef
    return _ajuste(coef, float(np.sqrt(np.mean(res ** 2))), Method.LS)


# ============================================================================
# fast-S
# ============================================================================

def _mscale_aproximado(res: np.ndarray, spec: RhoSpec, s: float) -> float:
    """Un solo M-step desde s (mejora local de fast-S)"""
    return s * float(np.sqrt(np.mean(rho_eval(spec, res / s)) / spec.delta))


def _mejorar(Z, y, coef, spec: RhoSpec, pasos: int) -> np.ndarray:
    res = y - Z @ coef
    s = starting_scale(res)
    for _ in range(pasos):
        if s == 0.0:
            break
        s = _mscale_aproximado(res, spec, s)
        pesos = np.asarray(irls_weight(spec, res / s), dtype=float)
        if not np.any(pesos > 0):
            break
        coef = _wls(Z, y, pesos)
        res = y - Z @ coef
    return coef


def _refinar(Z, y, coef, spec: RhoSpec, max_iter: int, tol: float) -> tuple[np.ndarray, float, bool]:
    """I-steps completos hasta que los coeficientes se estabilizan"""
    res = y - Z @ coef
    s = solve_mscale(res, spec, starting_scale(res)).s
    for _ in range(max_iter):
        if s == 0.0:
            return coef, 0.0, True
        pesos = np.asarray(irls_weight(spec, res / s), dtype=float)
        if not np.any(pesos > 0):
            return coef, s, False
        nuevo = _wls(Z, y, pesos)
        res = y - Z @ nuevo
        s = solve_mscale(res, spec, s).s
        cambio = np.max(np.abs(nuevo - coef)) / max(1.0, float(np.max(np.abs(coef))))
        coef = nuevo
        if cambio < tol:
            return coef, s, True
    return coef, s, False


def _submuestras(n: int, q: int, cantidad: int, rng: np.random.Generator) -> list[np.ndarray]:
    return [np.sort(rng.choice(n, size=q, replace=False)) for _ in range(cantidad)]


def s_fit(
    data: RegressionData,
    spec: RhoSpec,
    n_subsamples: int = N_SUBSAMPLES,
    k_refine: int = K_REFINE,
    seed: int = 0,
    n_best: int = N_BEST,
    max_refine: int = MAX_REFINE,
) -> LinearFit:
    """
    S-estimador de regresión por fast-S.

    Las submuestras se sortean todas de antemano con el generador sembrado
    y se evalúan en orden de índice: la misma semilla reproduce el mismo ajuste.

    Raises:
        DegenerateDesignException: si n <= p + 1
        SubsamplingException: si quedan menos de n_best submuestras no degeneradas
    """
    Z = _con_intercepto(data.X)
    y = data.y
    n, q = Z.shape
    if n <= q:
        raise DegenerateDesignException(f"Se requiere n > p + 1 (n={n}, p={q - 1})")

    rng = np.random.default_rng(seed)
    candidatos: list[tuple[float, int, np.ndarray]] = []
    for indice, filas in enumerate(_submuestras(n, q, n_subsamples, rng)):
        A = Z[filas]
        if np.linalg.matrix_rank(A) < q:
            continue
        coef = np.linalg.solve(A, y[filas])
        coef = _mejorar(Z, y, coef, spec, k_refine)
        res = y - Z @ coef
        escala = solve_mscale(res, spec, starting_scale(res)).s
        candidatos.append((escala, indice, coef))
        if escala == 0.0:
            logger.debug("fast-S: ajuste exacto en la submuestra %d", indice)
            return _ajuste(coef, 0.0, Method.S, candidate_scales=(0.0,))

    requeridos = min(n_best, n_subsamples)
    if len(candidatos) < requeridos:
        raise SubsamplingException(
            f"Solo {len(candidatos)} de {n_subsamples} submuestras son no degeneradas"
        )

    candidatos.sort(key=lambda c: (c[0], c[1]))
    refinados = []
    for escala_inicial, indice, coef in candidatos[:requeridos]:
        coef, escala, convergio = _refinar(Z, y, coef, spec, max_refine, COEF_TOL)
        refinados.append((escala, indice, coef, convergio))

    refinados.sort(key=lambda c: (c[0], c[1]))
    escala, indice, coef, convergio = refinados[0]
    logger.debug("fast-S: mejor candidato %d con escala %.6g", indice, escala)
    return _ajuste(coef, escala, Method.S, converged=convergio,
                   candidate_scales=tuple(float(r[0]) for r in refinados))


# ============================================================================
# MM
# ============================================================================

def mm_fit(
    data: RegressionData,
    bdp: float = 0.5,
    eff: float = 0.95,
    seed: int = 0,
    kind: RhoKind = RhoKind.BIWEIGHT,
    n_subsamples: int = N_SUBSAMPLES,
    k_refine: int = K_REFINE,
    max_iter: int = MAX_REFINE,
) -> LinearFit:
    """
    MM-estimador: escala S con punto de ruptura bdp y M-regresión con
    eficiencia eff, ambas con la misma familia ρ.

    La escala reportada es exactamente la de la etapa S.
    """
    etapa_s = s_fit(data, tune_for_bdp(kind, bdp), n_subsamples=n_subsamples,
                    k_refine=k_refine, seed=seed)
    escala = etapa_s.scale
    coef = np.concatenate([[etapa_s.intercept], etapa_s.slopes])
    if escala == 0.0:
        return _ajuste(coef, 0.0, Method.MM)

    spec_m = tune_for_efficiency(kind, eff)
    Z = _con_intercepto(data.X)
    y = data.y
    convergio = False
    for _ in range(max_iter):
        res = y - Z @ coef
        pesos = np.asarray(irls_weight(spec_m, res / escala), dtype=float)
        if not np.any(pesos > 0):
            break
        nuevo = _wls(Z, y, pesos)
        cambio = np.max(np.abs(nuevo - coef)) / max(1.0, float(np.max(np.abs(coef))))
        coef = nuevo
        if cambio < COEF_TOL:
            convergio = True
            break
    if not convergio:
        logger.warning("MM: la M-regresión no convergió en %d iteraciones", max_iter)
    return _ajuste(coef, escala, Method.MM, converged=convergio)
