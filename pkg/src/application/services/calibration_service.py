"""
Servicio de Aplicación: CalibrationService
cellshot
"""

from typing import Optional

from src.domain.estimation.rho_kernels import efficiency_normal, tune_for_bdp, tune_for_efficiency
from src.domain.exceptions.domain_exceptions import InvalidParameterException
from src.domain.value_objects.enums import RhoKind


class CalibrationService:
    """
    Calibra la constante de una familia ρ para un punto de ruptura o una
    eficiencia objetivo (exactamente uno de los dos).
    """

    def calibrate(
        self,
        kind: RhoKind,
        bdp: Optional[float] = None,
        efficiency: Optional[float] = None,
    ) -> dict:
        if (bdp is None) == (efficiency is None):
            raise InvalidParameterException("Indicar exactamente uno de bdp o efficiency")
        if bdp is not None:
            spec = tune_for_bdp(kind, bdp)
            objetivo = {"bdp": bdp}
        else:
            spec = tune_for_efficiency(kind, efficiency)
            objetivo = {"efficiency": efficiency}
        return {
            "rho": kind.value,
            "target": objetivo,
            "k": spec.k,
            "constants": list(spec.constants),
            "delta": spec.delta,
            "rho_sup": spec.rho_sup,
            "breakdown_point": spec.breakdown_point,
            "efficiency": efficiency_normal(spec),
        }
