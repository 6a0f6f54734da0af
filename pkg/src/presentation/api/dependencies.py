"""
Dependencias de FastAPI
cellshot
"""

from typing import Optional

from fastapi import Form

from src.application.services.estimator_service import EstimatorService
from src.application.services.fit_service import DEFAULT_THRESHOLD
from src.domain.exceptions.domain_exceptions import InvalidParameterException
from src.domain.value_objects.enums import Method, SmallSlopeImputation


class FitForm:
    """Campos de formulario compartidos por /fits y /diagnostics"""

    def __init__(
        self,
        response: str = Form(..., description="Columna respuesta"),
        method: str = Form(Method.SHOOTING_BI.value, description=f"Uno de {Method.valores_validos()}"),
        bdp: float = Form(0.2),
        cutoff: float = Form(3.0),
        seed: int = Form(0),
        threshold: float = Form(DEFAULT_THRESHOLD),
        small_slope: Optional[str] = Form(None),
    ):
        try:
            self.method = Method.desde_texto(method)
            self.small_slope = (SmallSlopeImputation.desde_texto(small_slope)
                                if small_slope else SmallSlopeImputation.MEDIAN)
        except ValueError as e:
            raise InvalidParameterException(str(e)) from e
        self.response = response
        self.bdp = bdp
        self.cutoff = cutoff
        self.seed = seed
        self.threshold = threshold

    def estimator_service(self) -> EstimatorService:
        return EstimatorService(shooting_bdp=self.bdp, cutoff_c=self.cutoff,
                                small_slope_imputation=self.small_slope)
