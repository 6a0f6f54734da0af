"""
Excepciones de Dominio
cellshot - Regresión S por coordenadas para outliers celda a celda

Jerarquía:
- ValidationException: el problema está en la entrada (CSV, parámetros).
  La CLI lo traduce a exit code 2, la API a HTTP 422.
- EstimationException: la entrada es válida pero el cálculo numérico no
  puede completarse. La CLI lo traduce a exit code 3, la API a HTTP 409.
"""


class DomainException(Exception):
    """
    Excepción base para todas las excepciones de dominio.

    Permite capturar cualquier error de negocio con un solo except.
    """
    pass


# ============================================================================
# Excepciones de Validación (entrada)
# ============================================================================

class ValidationException(DomainException):
    """Excepción base para errores de validación de entrada"""
    pass


class InvalidDatasetException(ValidationException):
    """
    El dataset no es rectangular, tiene celdas vacías/NA o valores no numéricos.

    El mensaje nombra la fila y la columna problemáticas.
    """
    pass


class ColumnNotFoundException(ValidationException):
    """La columna pedida (p.ej. la respuesta) no existe en el dataset"""
    pass


class InvalidParameterException(ValidationException):
    """Un parámetro numérico está fuera de su dominio (eps, bdp, eficiencia...)"""
    pass


# ============================================================================
# Excepciones de Estimación (numéricas)
# ============================================================================

class EstimationException(DomainException):
    """Excepción base para fallas del cálculo numérico"""
    pass


class DegenerateDesignException(EstimationException):
    """
    La matriz de diseño no tiene rango completo, o el predictor de una
    regresión simple tiene varianza ponderada nula.
    """
    pass


class DegenerateResponseException(EstimationException):
    """
    La respuesta tiene MAD nulo.

    Las tolerancias del algoritmo se escalan con MAD(y); con MAD(y) = 0
    se anulan y el criterio de parada no tiene sentido.
    """
    pass


class CalibrationException(EstimationException):
    """La búsqueda por bisección de la constante de ajuste no quedó acotada"""
    pass


class InitializationException(EstimationException):
    """
    El ajuste MM inicial sobre los predictores huberizados falló.

    Atributos:
        columns: nombres de las columnas que causan la deficiencia de rango
    """

    def __init__(self, message: str, columns: list[str] | None = None):
        super().__init__(message)
        self.columns = list(columns or [])


class SubsamplingException(EstimationException):
    """fast-S no encontró suficientes submuestras elementales no degeneradas"""
    pass
