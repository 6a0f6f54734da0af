"""
Entidad: RegressionData
cellshot

Vector respuesta y (largo n) y matriz de diseño X (n x p) sin columna de
unos: el intercepto lo maneja cada estimador.
"""

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


@dataclass(frozen=True, eq=False)
class RegressionData:
    """
    Entidad de Dominio: RegressionData

    Reglas:
    - X es 2-D con tantas filas como elementos tiene y
    - no hay valores faltantes ni infinitos
    - column_names tiene un nombre por columna (por defecto x1..xp)

    Los arrays se copian y se marcan de solo lectura: las funciones de
    contaminación devuelven instancias nuevas y nunca modifican la original.
    """

    y: np.ndarray
    X: np.ndarray
    column_names: tuple[str, ...] = field(default_factory=tuple)
    response_name: str = "y"

    def __post_init__(self):
        y = np.array(self.y, dtype=float)
        X = np.array(self.X, dtype=float)
        if X.ndim == 1:
            X = X.reshape(-1, 1)
        self._validar(y, X)

        y.setflags(write=False)
        X.setflags(write=False)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "X", X)

        nombres = tuple(self.column_names) or tuple(f"x{j + 1}" for j in range(X.shape[1]))
        if len(nombres) != X.shape[1]:
            raise ValueError(
                f"Se esperaban {X.shape[1]} nombres de columna, se recibieron {len(nombres)}"
            )
        object.__setattr__(self, "column_names", nombres)

    @staticmethod
    def _validar(y: np.ndarray, X: np.ndarray) -> None:
        if y.ndim != 1:
            raise ValueError("La respuesta debe ser un vector")
        if X.ndim != 2:
            raise ValueError("La matriz de diseño debe ser 2-D")
        if X.shape[0] != y.shape[0]:
            raise ValueError(
                f"X tiene {X.shape[0]} filas pero y tiene {y.shape[0]} elementos"
            )
        if X.shape[1] < 1:
            raise ValueError("Se requiere al menos un predictor")
        if not np.all(np.isfinite(y)):
            raise ValueError("La respuesta contiene valores faltantes o infinitos")
        if not np.all(np.isfinite(X)):
            fila, col = np.argwhere(~np.isfinite(X))[0]
            raise ValueError(f"Valor faltante o infinito en fila {fila}, columna {col}")

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def p(self) -> int:
        return self.X.shape[1]

    def with_X(self, X: np.ndarray) -> "RegressionData":
        """Copia con otra matriz de diseño (mismos nombres y respuesta)"""
        return RegressionData(y=self.y, X=X, column_names=self.column_names,
                              response_name=self.response_name)

    def with_y(self, y: np.ndarray) -> "RegressionData":
        """Copia con otra respuesta"""
        return RegressionData(y=y, X=self.X, column_names=self.column_names,
                              response_name=self.response_name)

    def subset(self, rows: Sequence[int]) -> "RegressionData":
        """Submuestra de filas (en el orden dado)"""
        idx = np.asarray(rows, dtype=int)
        return RegressionData(y=self.y[idx], X=self.X[idx], column_names=self.column_names,
                              response_name=self.response_name)

    def __repr__(self) -> str:
        return (f"RegressionData(n={self.n}, p={self.p}, response='{self.response_name}', "
                f"columns={list(self.column_names)})")
