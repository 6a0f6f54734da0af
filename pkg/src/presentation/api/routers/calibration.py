"""
Router de FastAPI para Calibración
cellshot
"""

from typing import Optional

from fastapi import APIRouter, Query

from src.application.services.calibration_service import CalibrationService
from src.domain.exceptions.domain_exceptions import InvalidParameterException
from src.domain.value_objects.enums import RhoKind
from src.presentation.api.schemas.calibration_schema import CalibrationResponseSchema

router = APIRouter(
    prefix="/calibration",
    tags=["Calibración"],
)


@router.get(
    "",
    response_model=CalibrationResponseSchema,
    summary="Calibrar la constante de una función ρ",
    description="Indicar exactamente uno de bdp o efficiency",
)
def calibrar(
    rho: str = Query(..., description=f"Uno de {RhoKind.valores_validos()}"),
    bdp: Optional[float] = Query(None),
    efficiency: Optional[float] = Query(None),
):
    try:
        kind = RhoKind.desde_texto(rho)
    except ValueError as e:
        raise InvalidParameterException(str(e)) from e
    return CalibrationService().calibrate(kind, bdp=bdp, efficiency=efficiency)
