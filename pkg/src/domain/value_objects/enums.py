"""
Enumeraciones del Dominio
cellshot

Heredan de str y Enum (como en el resto del proyecto): se serializan
directo a JSON/CSV y Pydantic las valida sin adaptadores.
"""

from enum import Enum


class _ValoresMixin:
    """Helpers compartidos por las enumeraciones de texto"""

    def __str__(self) -> str:
        return self.value

    @classmethod
    def valores_validos(cls) -> list[str]:
        """Retorna lista de valores válidos como strings"""
        return [item.value for item in cls]

    @classmethod
    def desde_texto(cls, texto: str):
        """
        Crea el miembro desde texto, aceptando '-' o '_' y mayúsculas.

        Raises:
            ValueError: si el texto no corresponde a ningún miembro
        """
        normalizado = texto.strip().lower().replace("_", "-")
        for item in cls:
            if item.value == normalizado:
                return item
        raise ValueError(
            f"Valor inválido: {texto}. Debe ser uno de: {cls.valores_validos()}"
        )


class RhoKind(_ValoresMixin, str, Enum):
    """
    Familias de funciones ρ.

    - biweight: Tukey, suave y redescendente
    - skipped-huber: cuadrática hasta k y constante después
    - lqq: lineal-cuadrática-cuadrática (ψ' lineal a trozos)
    """
    BIWEIGHT = "biweight"
    SKIPPED_HUBER = "skipped-huber"
    LQQ = "lqq"


class Method(_ValoresMixin, str, Enum):
    """Estimadores disponibles en la CLI, la API y los benchmarks"""
    LS = "ls"
    S = "s"
    MM = "mm"
    SHOOTING_BI = "shooting-bi"
    SHOOTING_SKH = "shooting-skh"
    SHOOTING_LQQ = "shooting-lqq"

    def es_shooting(self) -> bool:
        return self in (Method.SHOOTING_BI, Method.SHOOTING_SKH, Method.SHOOTING_LQQ)

    def rho_kind(self) -> RhoKind:
        """
        Función ρ usada por el estimador.

        LS no usa ρ; S y MM usan biweight como en los benchmarks.
        """
        mapping = {
            Method.SHOOTING_SKH: RhoKind.SKIPPED_HUBER,
            Method.SHOOTING_LQQ: RhoKind.LQQ,
        }
        return mapping.get(self, RhoKind.BIWEIGHT)

    @classmethod
    def benchmark_set(cls) -> list["Method"]:
        """Los cinco estimadores de las tablas de simulación"""
        return [cls.LS, cls.S, cls.MM, cls.SHOOTING_BI, cls.SHOOTING_SKH]


class ContaminationMode(_ValoresMixin, str, Enum):
    """Dónde se inyectan los outliers"""
    CELLWISE = "cellwise"
    ROWWISE = "rowwise"
    VERTICAL = "vertical"


class CellwiseScheme(_ValoresMixin, str, Enum):
    """
    Distribución de las celdas (o filas) contaminadas.

    - dense: cluster denso N(50, 1)
    - scattered: outliers dispersos N(0, 100²)
    - wide: cluster ancho N(50, 10²)
    """
    DENSE = "dense"
    SCATTERED = "scattered"
    WIDE = "wide"

    def media(self) -> float:
        return 0.0 if self is CellwiseScheme.SCATTERED else 50.0

    def desvio(self) -> float:
        mapping = {
            CellwiseScheme.DENSE: 1.0,
            CellwiseScheme.SCATTERED: 100.0,
            CellwiseScheme.WIDE: 10.0,
        }
        return mapping[self]


class SimTable(_ValoresMixin, str, Enum):
    """
    Tablas de simulación reproducibles.

    Cada tabla fija el diseño (correlacionado o no) y el modo de contaminación.
    """
    CELL_UNCORR = "cell-uncorr"
    CELL_CORR = "cell-corr"
    ROW_CORR = "row-corr"
    VERTICAL = "vertical"

    def correlacionada(self) -> bool:
        return self is not SimTable.CELL_UNCORR

    def modo(self) -> ContaminationMode:
        mapping = {
            SimTable.CELL_UNCORR: ContaminationMode.CELLWISE,
            SimTable.CELL_CORR: ContaminationMode.CELLWISE,
            SimTable.ROW_CORR: ContaminationMode.ROWWISE,
            SimTable.VERTICAL: ContaminationMode.VERTICAL,
        }
        return mapping[self]

    @classmethod
    def desde_texto(cls, texto: str) -> "SimTable":
        # alias usado en el API de servicios: vertical_corr
        if texto.strip().lower().replace("_", "-") == "vertical-corr":
            return cls.VERTICAL
        return super().desde_texto(texto)


class SmallSlopeImputation(_ValoresMixin, str, Enum):
    """
    Valor imputado a las celdas cuando |β̂_j| es demasiado chico para calibrar.

    - median: mediana de la columna observada (regla operativa del algoritmo)
    - zero: cero (variante de la definición motivadora)
    """
    MEDIAN = "median"
    ZERO = "zero"


class BenchMode(_ValoresMixin, str, Enum):
    """Modos del benchmark sobre datos reales"""
    RESAMPLE = "resample"
    CONTAMINATE = "contaminate"
