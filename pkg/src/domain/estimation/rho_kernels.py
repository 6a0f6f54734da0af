"""
Funciones ρ, sus derivadas, pesos IRLS y calibración de constantes.
cellshot

Parametrización (z ya escalado por s):

- biweight:      ρ(z) = k²/6 (1 - (1 - (z/k)²)³) si |z| <= k, k²/6 si no
- skipped Huber: ρ(z) = z²/2 si |z| <= k, k²/2 si no
- lqq:           ψ' = 1 en [0, c]; lineal hasta 1 - s en [c, c + b];
                 lineal hasta 0 en [c + b, a]; ψ = 0 después de a

Las tres cumplen ρ''(0) = 1, así que el peso IRLS ψ(z)/z vale 1 en 0.
Todas las funciones son vectorizadas: aceptan escalares o arrays y
devuelven float o ndarray según la entrada.
"""

import logging
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import integrate, optimize
from scipy.stats import norm

from src.domain.exceptions.domain_exceptions import (
    CalibrationException,
    InvalidParameterException,
)
from src.domain.value_objects.enums import RhoKind
from src.domain.value_objects.rho_spec import RhoSpec

logger = logging.getLogger(__name__)

# Forma fija de lqq: b = 1.5 c y pendiente mínima de ψ igual a 1 - s = -0.5
LQQ_B_OVER_C = 1.5
LQQ_S = 1.5

# Intervalo de búsqueda de la constante principal
_BRACKET = (0.05, 50.0)
_QUAD_OPTS = dict(epsabs=1e-13, epsrel=1e-12, limit=200)

WeightFunction = Callable[[np.ndarray], np.ndarray]


def _como_salida(valores: np.ndarray, z):
    return float(valores) if np.ndim(z) == 0 else valores


# ============================================================================
# Evaluación
# ============================================================================

def _lqq_geometria(constants: tuple[float, ...]) -> tuple[float, float, float, float, float]:
    """Devuelve (b, c, s, d, a) con d = a - (b + c)"""
    b, c, s = constants
    d = (2.0 * (b + c) - s * b) / (s - 1.0)
    return b, c, s, d, b + c + d


def _rho_sup(kind: RhoKind, constants: tuple[float, ...]) -> float:
    if kind is RhoKind.BIWEIGHT:
        return constants[0] ** 2 / 6.0
    if kind is RhoKind.SKIPPED_HUBER:
        return constants[0] ** 2 / 2.0
    b, c, s, d, _ = _lqq_geometria(constants)
    return (b + c) ** 2 / 2.0 - s * b ** 2 / 6.0 + (s - 1.0) * d ** 2 / 6.0


def _rho(kind: RhoKind, constants: tuple[float, ...], z) -> np.ndarray:
    az = np.abs(np.asarray(z, dtype=float))
    if kind is RhoKind.BIWEIGHT:
        k = constants[0]
        u2 = np.minimum(az / k, 1.0) ** 2
        return k ** 2 / 6.0 * (1.0 - (1.0 - u2) ** 3)
    if kind is RhoKind.SKIPPED_HUBER:
        k = constants[0]
        return np.where(az <= k, 0.5 * az ** 2, 0.5 * k ** 2)

    b, c, s, d, a = _lqq_geometria(constants)
    rho_bc = (b + c) ** 2 / 2.0 - s * b ** 2 / 6.0
    t = np.minimum(az, a)
    tramo1 = 0.5 * t ** 2
    tramo2 = 0.5 * t ** 2 - s / (6.0 * b) * (t - c) ** 3
    tramo3 = rho_bc + (s - 1.0) / (6.0 * d) * (d ** 3 - (a - t) ** 3)
    return np.where(t <= c, tramo1, np.where(t <= b + c, tramo2, tramo3))


def _psi_abs(kind: RhoKind, constants: tuple[float, ...], az: np.ndarray) -> np.ndarray:
    """ψ evaluada en |z| (la extensión impar la hace el llamador)"""
    if kind is RhoKind.BIWEIGHT:
        k = constants[0]
        return np.where(az <= k, az * (1.0 - (az / k) ** 2) ** 2, 0.0)
    if kind is RhoKind.SKIPPED_HUBER:
        return np.where(az <= constants[0], az, 0.0)

    b, c, s, d, a = _lqq_geometria(constants)
    tramo2 = az - s / (2.0 * b) * (az - c) ** 2
    tramo3 = (s - 1.0) * (a - az) ** 2 / (2.0 * d)
    return np.where(az <= c, az,
                    np.where(az <= b + c, tramo2,
                             np.where(az <= a, tramo3, 0.0)))


def rho_eval(spec: RhoSpec, z):
    """ρ(z); par, no decreciente en |z| y acotada por spec.rho_sup"""
    return _como_salida(_rho(spec.kind, spec.constants, z), z)


def rho_prime(spec: RhoSpec, z):
    """ψ(z) = ρ'(z); impar y nula fuera del soporte"""
    zz = np.asarray(z, dtype=float)
    valores = np.sign(zz) * _psi_abs(spec.kind, spec.constants, np.abs(zz))
    return _como_salida(valores, z)


def irls_weight(spec: RhoSpec, z):
    """
    ω(z) = ψ(z)/z, con el límite ρ''(0) = 1 en z = 0.

    Toma valores en [0, 1] para las tres familias.
    """
    az = np.abs(np.asarray(z, dtype=float))
    if spec.kind is RhoKind.BIWEIGHT:
        k = spec.constants[0]
        w = np.where(az <= k, (1.0 - (az / k) ** 2) ** 2, 0.0)
    elif spec.kind is RhoKind.SKIPPED_HUBER:
        w = np.where(az <= spec.constants[0], 1.0, 0.0)
    else:
        psi = _psi_abs(spec.kind, spec.constants, az)
        w = np.divide(psi, az, out=np.ones_like(az), where=az > spec.constants[1])
    return _como_salida(w, z)


# ============================================================================
# Momentos bajo la normal
# ============================================================================

def _soporte(kind: RhoKind, constants: tuple[float, ...]) -> float:
    if kind is RhoKind.LQQ:
        return _lqq_geometria(constants)[4]
    return constants[0]


def _quiebres(kind: RhoKind, constants: tuple[float, ...]) -> list[float]:
    if kind is RhoKind.LQQ:
        b, c, _, _, a = _lqq_geometria(constants)
        return [c, b + c, a]
    return [constants[0]]


def _delta(kind: RhoKind, constants: tuple[float, ...]) -> float:
    """
    E[ρ(Z)] por cuadratura adaptativa en [0, U] usando simetría.

    Más allá del soporte ρ es constante, así que la cola se suma exacta.
    """
    tope = max(8.0, 2.0 * _soporte(kind, constants))
    puntos = [q for q in _quiebres(kind, constants) if q < tope]
    integral, _ = integrate.quad(
        lambda t: float(_rho(kind, constants, t)) * norm.pdf(t),
        0.0, tope, points=puntos, **_QUAD_OPTS,
    )
    cola = _rho_sup(kind, constants) * norm.sf(tope)
    return 2.0 * (integral + cola)


def build_spec(kind: RhoKind, constants) -> RhoSpec:
    """Construye un RhoSpec calculando rho_sup y delta"""
    consts = tuple(float(c) for c in constants)
    return RhoSpec(kind=kind, constants=consts,
                   delta=_delta(kind, consts), rho_sup=_rho_sup(kind, consts))


def spec_from_k(kind: RhoKind, k: float) -> RhoSpec:
    """
    Spec a partir de la constante principal.

    Para lqq se usa la forma fija b = 1.5 k, c = k, s = 1.5.
    """
    if kind is RhoKind.LQQ:
        return build_spec(kind, (LQQ_B_OVER_C * k, k, LQQ_S))
    return build_spec(kind, (k,))


def expected_rho_normal(spec: RhoSpec) -> float:
    """δ = E[ρ(Z)], Z ~ N(0, 1)"""
    return _delta(spec.kind, spec.constants)


def efficiency_normal(spec: RhoSpec) -> float:
    """
    Eficiencia asintótica de la M-regresión con ψ bajo errores normales.

    Se usa (E[Zψ(Z)])² / E[ψ(Z)²]; por integración por partes coincide con
    (E[ψ'(Z)])² / E[ψ(Z)²] y admite el ψ discontinuo del skipped Huber.
    """
    kind, consts = spec.kind, spec.constants
    soporte = _soporte(kind, consts)
    puntos = _quiebres(kind, consts)[:-1] or None

    def _zpsi(t):
        return t * float(_psi_abs(kind, consts, np.asarray(t))) * norm.pdf(t)

    def _psi2(t):
        return float(_psi_abs(kind, consts, np.asarray(t))) ** 2 * norm.pdf(t)

    num, _ = integrate.quad(_zpsi, 0.0, soporte, points=puntos, **_QUAD_OPTS)
    den, _ = integrate.quad(_psi2, 0.0, soporte, points=puntos, **_QUAD_OPTS)
    return (2.0 * num) ** 2 / (2.0 * den)


# ============================================================================
# Calibración
# ============================================================================

def _bisect(funcion: Callable[[float], float], objetivo: str) -> float:
    lo, hi = _BRACKET
    f_lo, f_hi = funcion(lo), funcion(hi)
    if np.sign(f_lo) == np.sign(f_hi):
        raise CalibrationException(
            f"No se pudo acotar la constante para {objetivo} en [{lo}, {hi}] "
            f"(f(lo)={f_lo:.3g}, f(hi)={f_hi:.3g})"
        )
    return optimize.bisect(funcion, lo, hi, xtol=1e-12, rtol=1e-14, maxiter=400)


@lru_cache(maxsize=64)
def tune_for_bdp(kind: RhoKind, bdp: float) -> RhoSpec:
    """
    Constante k tal que δ(k)/ρ_k(∞) = bdp, por bisección.

    Raises:
        InvalidParameterException: si bdp no está en (0, 0.5]
        CalibrationException: si el intervalo de búsqueda no acota la raíz
    """
    if not 0.0 < bdp <= 0.5:
        raise InvalidParameterException(f"El punto de ruptura debe estar en (0, 0.5]: {bdp}")

    def _exceso(k: float) -> float:
        spec = spec_from_k(kind, k)
        return spec.delta / spec.rho_sup - bdp

    k = _bisect(_exceso, f"bdp={bdp}")
    spec = spec_from_k(kind, k)
    logger.debug("Calibrado %s para bdp=%s: k=%.6f delta=%.6f", kind.value, bdp, k, spec.delta)
    return spec


@lru_cache(maxsize=64)
def tune_for_efficiency(kind: RhoKind, eff: float) -> RhoSpec:
    """
    Constante k tal que la eficiencia normal de la M-regresión sea eff.

    Raises:
        InvalidParameterException: si eff no está en (0.5, 1)
        CalibrationException: si el intervalo de búsqueda no acota la raíz
    """
    if not 0.5 < eff < 1.0:
        raise InvalidParameterException(f"La eficiencia debe estar en (0.5, 1): {eff}")

    def _exceso(k: float) -> float:
        return efficiency_normal(spec_from_k(kind, k)) - eff

    k = _bisect(_exceso, f"eficiencia={eff}")
    spec = spec_from_k(kind, k)
    logger.debug("Calibrado %s para eficiencia=%s: k=%.6f", kind.value, eff, k)
    return spec


# ============================================================================
# Pesos de celda
# ============================================================================

def hard_rejection_weight(r, c: float = 3.0):
    """w(r) = 1 si r <= c, 0 si no"""
    valores = np.where(np.asarray(r, dtype=float) <= c, 1.0, 0.0)
    return _como_salida(valores, r)


def hard_rejection(c: float = 3.0) -> WeightFunction:
    """Función de peso de rechazo duro con corte c, lista para ShootingConfig"""
    def _peso(r: np.ndarray) -> np.ndarray:
        return np.asarray(hard_rejection_weight(r, c), dtype=float)
    return _peso
