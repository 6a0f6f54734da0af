"""
Schemas de Pydantic para calibración
cellshot
"""

from pydantic import BaseModel


class CalibrationResponseSchema(BaseModel):
    """Constantes calibradas de una función ρ"""

    rho: str
    target: dict[str, float]
    k: float
    constants: list[float]
    delta: float
    rho_sup: float
    breakdown_point: float
    efficiency: float
