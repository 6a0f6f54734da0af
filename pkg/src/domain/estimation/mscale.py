"""
M-estimador de escala.
cellshot

Resuelve (1/n) Σ ρ(r_i / s) = δ con la iteración de punto fijo

    s_l = sqrt( s_{l-1}² / (δ n) · Σ ρ(r_i / s_{l-1}) )

hasta |s_l / s_{l-1} - 1| < eps1.
"""

import logging

import numpy as np

from src.domain.estimation.rho_kernels import rho_eval
from src.domain.exceptions.domain_exceptions import InvalidParameterException
from src.domain.value_objects.rho_spec import RhoSpec
from src.domain.value_objects.scale_solution import ScaleSolution

logger = logging.getLogger(__name__)

# Constante de consistencia del MAD bajo la normal: 1 / Φ⁻¹(0.75)
MAD_CONSTANT = 1.4826
MAX_M_STEPS = 200


def _vector(residuals) -> np.ndarray:
    r = np.asarray(residuals, dtype=float).ravel()
    if r.size == 0:
        raise InvalidParameterException("Se requiere al menos un residuo")
    return r


def initial_scale(residuals) -> float:
    """1.4826 · mediana de |r|"""
    r = _vector(residuals)
    return MAD_CONSTANT * float(np.median(np.abs(r)))


def normalized_mad(x) -> float:
    """1.4826 · mediana de |x - mediana(x)|"""
    v = _vector(x)
    return MAD_CONSTANT * float(np.median(np.abs(v - np.median(v))))


def starting_scale(residuals) -> float:
    """
    Escala de arranque de la iteración de punto fijo.

    initial_scale, salvo que más de la mitad de los residuos sean nulos
    (mediana cero): entonces 1.4826 · media de |r|. Devuelve 0 solo si
    todos los residuos son 0.
    """
    r = _vector(residuals)
    s0 = initial_scale(r)
    if s0 > 0.0:
        return s0
    return MAD_CONSTANT * float(np.mean(np.abs(r)))


def solve_mscale(
    residuals,
    spec: RhoSpec,
    s0: float,
    eps1: float = 1e-6,
    max_steps: int = MAX_M_STEPS,
) -> ScaleSolution:
    """
    M-steps desde s0 hasta que el cociente entre iterados se estabiliza.

    Args:
        residuals: residuos (no necesariamente centrados)
        spec: función ρ con su δ
        s0: escala inicial; si no es positiva se usa starting_scale
        eps1: tolerancia relativa entre M-steps
        max_steps: tope de M-steps

    Returns:
        ScaleSolution; converged=False si se alcanzó el tope
    """
    r = _vector(residuals)
    if not np.any(r):
        return ScaleSolution(s=0.0, m_steps=0, converged=True)

    s = float(s0) if np.isfinite(s0) and s0 > 0 else starting_scale(r)
    n_delta = spec.delta * r.size

    for paso in range(1, max_steps + 1):
        s_nuevo = s * np.sqrt(float(np.sum(rho_eval(spec, r / s))) / n_delta)
        if s_nuevo == 0.0 or abs(s_nuevo / s - 1.0) < eps1:
            return ScaleSolution(s=float(s_nuevo), m_steps=paso, converged=s_nuevo > 0.0)
        s = s_nuevo

    logger.warning("M-scale sin converger tras %d M-steps (s=%.6g)", max_steps, s)
    return ScaleSolution(s=float(s), m_steps=max_steps, converged=False)


def mscale_equation_gap(residuals, spec: RhoSpec, s: float) -> float:
    """(1/n) Σ ρ(r_i / s) - δ; nulo en la solución"""
    r = _vector(residuals)
    return float(np.mean(rho_eval(spec, r / s))) - spec.delta
