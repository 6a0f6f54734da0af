"""
Value Object: ScaleSolution
cellshot
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class ScaleSolution:
    """
    Resultado de resolver (1/n) Σ ρ(r_i / s) = δ por punto fijo.

    s = 0 solo cuando todos los residuos son 0 (ajuste exacto).
    Si se alcanza el tope de M-steps, converged es False y s es el último iterado.
    """

    s: float
    m_steps: int
    converged: bool

    @property
    def exact_fit(self) -> bool:
        return self.s == 0.0
