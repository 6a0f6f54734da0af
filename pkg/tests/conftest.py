"""Fixtures compartidas por los tests."""

import numpy as np
import pytest

from src.domain.entities.regression_data import RegressionData
from src.domain.estimation.rho_kernels import spec_from_k
from src.domain.value_objects.enums import RhoKind

K_BIWEIGHT = 3.420
K_SKIPPED_HUBER = 2.177


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(scope="session")
def biweight_spec():
    return spec_from_k(RhoKind.BIWEIGHT, K_BIWEIGHT)


@pytest.fixture(scope="session")
def skh_spec():
    return spec_from_k(RhoKind.SKIPPED_HUBER, K_SKIPPED_HUBER)


def make_linear_data(rng, n=60, p=3, sigma=0.5, beta=None, intercept=0.0) -> RegressionData:
    beta = np.arange(1, p + 1, dtype=float) if beta is None else np.asarray(beta, dtype=float)
    X = rng.standard_normal((n, p))
    y = intercept + X @ beta + sigma * rng.standard_normal(n)
    return RegressionData(y=y, X=X)


@pytest.fixture
def clean_data(rng):
    return make_linear_data(rng)


def write_csv(path, data: RegressionData, response: str = "y") -> None:
    """CSV con la respuesta primero y los predictores después"""
    encabezado = [response] + list(data.column_names)
    lineas = [",".join(encabezado)]
    for i in range(data.n):
        lineas.append(",".join(repr(float(v)) for v in [data.y[i], *data.X[i]]))
    path.write_text("\n".join(lineas) + "\n", encoding="utf-8")
