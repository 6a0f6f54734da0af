import numpy as np
import pytest

from src.domain.entities.regression_data import RegressionData
from src.domain.entities.sim_design import SimDesign
from src.domain.exceptions.domain_exceptions import InvalidParameterException
from src.domain.simulation.generators import (
    contaminate_cellwise,
    contaminate_real_cells,
    contaminate_rowwise,
    contaminate_vertical,
    contaminated_count,
    derive_seed,
    expected_contaminated_rows,
    gen_clean,
    round_half_away,
)
from src.domain.value_objects.enums import CellwiseScheme


@pytest.fixture(scope="module")
def design():
    return SimDesign(n=100, p=15, correlated=True)


@pytest.fixture(scope="module")
def clean(design):
    return gen_clean(design, seed=7)


class TestCounts:

    @pytest.mark.parametrize("valor, esperado", [(2.5, 3), (2.4, 2), (-2.5, -3), (0.5, 1), (0.0, 0)])
    def test_round_half_away(self, valor, esperado):
        assert round_half_away(valor) == esperado

    def test_contaminated_count(self):
        assert contaminated_count(0.1, 1500) == 150
        assert contaminated_count(0.05, 30) == 2
        assert contaminated_count(0.0, 1500) == 0

    @pytest.mark.parametrize("eps", [-0.1, 1.0])
    def test_eps_out_of_range(self, eps):
        with pytest.raises(InvalidParameterException):
            contaminated_count(eps, 100)

    def test_expected_rows(self):
        assert expected_contaminated_rows(100, 15, 0.01) == pytest.approx(13.99, abs=0.01)
        assert expected_contaminated_rows(100, 15, 0.1) == pytest.approx(79.41, abs=0.01)


class TestDesign:

    def test_defaults(self):
        d = SimDesign()
        np.testing.assert_allclose(d.beta_true, np.arange(1, 16) / 15)
        assert d.sigma_err == 0.5
        np.testing.assert_array_equal(d.cov, np.eye(15))

    def test_correlated(self, design):
        assert design.sigma_err == 0.81
        assert design.cov[0, 3] == pytest.approx(0.125)
        np.testing.assert_allclose(design.cov_factor @ design.cov_factor.T, design.cov)

    def test_signal_to_noise_is_close_in_both_designs(self, design):
        assert SimDesign().signal_to_noise() == pytest.approx(design.signal_to_noise(), rel=0.05)

    def test_rejects_non_symmetric_cov(self):
        with pytest.raises(ValueError):
            SimDesign(p=2, cov=np.array([[1.0, 0.2], [0.0, 1.0]]))


class TestGenClean:

    def test_deterministic(self, design):
        a, b = gen_clean(design, 3), gen_clean(design, 3)
        np.testing.assert_array_equal(a.X, b.X)
        np.testing.assert_array_equal(a.y, b.y)
        assert not np.array_equal(a.X, gen_clean(design, 4).X)

    def test_shape_and_model(self):
        d = SimDesign(n=4000, p=3, sigma_err=0.0)
        datos = gen_clean(d, 1)
        assert datos.X.shape == (4000, 3)
        np.testing.assert_allclose(datos.y, datos.X @ d.beta_true)
        np.testing.assert_allclose(np.cov(datos.X.T), np.eye(3), atol=0.1)


class TestContamination:

    def test_cellwise_exact_count(self, clean):
        sucio = contaminate_cellwise(clean, 0.1, CellwiseScheme.DENSE, seed=11)
        cambiadas = sucio.X != clean.X
        assert cambiadas.sum() == 150
        np.testing.assert_array_equal(sucio.y, clean.y)
        assert abs(sucio.X[cambiadas].mean() - 50.0) < 1.0

    def test_cellwise_leaves_input_alone(self, clean):
        antes = clean.X.copy()
        contaminate_cellwise(clean, 0.2, CellwiseScheme.SCATTERED, seed=1)
        np.testing.assert_array_equal(clean.X, antes)

    def test_eps_zero_is_identity(self, clean):
        assert contaminate_cellwise(clean, 0.0, CellwiseScheme.WIDE, seed=1) is clean

    def test_cellwise_deterministic(self, clean):
        a = contaminate_cellwise(clean, 0.05, CellwiseScheme.WIDE, seed=5)
        b = contaminate_cellwise(clean, 0.05, CellwiseScheme.WIDE, seed=5)
        np.testing.assert_array_equal(a.X, b.X)

    def test_rowwise_replaces_whole_rows(self, clean, design):
        sucio = contaminate_rowwise(clean, 0.1, CellwiseScheme.DENSE, design.cov, seed=2)
        filas = np.any(sucio.X != clean.X, axis=1)
        assert filas.sum() == 10
        assert np.all(sucio.X[filas] != clean.X[filas])
        np.testing.assert_array_equal(sucio.y, clean.y)

    def test_vertical_moves_response(self, clean, design):
        sucio = contaminate_vertical(design, clean, 0.2, seed=3)
        np.testing.assert_array_equal(sucio.X, clean.X)
        filas = sucio.y != clean.y
        assert filas.sum() == 20
        errores = sucio.y[filas] - clean.X[filas] @ design.beta_true
        assert abs(errores.mean() - 50.0) < 1.0

    def test_real_cells_shifted_by_mad(self, rng):
        X = rng.standard_normal((200, 2)) * [1.0, 4.0]
        datos = RegressionData(y=rng.standard_normal(200), X=X)
        sucio = contaminate_real_cells(datos, 0.1, 10.0, seed=9)
        cambiadas = sucio.X != datos.X
        assert cambiadas.sum() == 40
        # columna 1: mediana ~0, MAD ~4, corrimiento ~40
        assert np.median(sucio.X[:, 1][cambiadas[:, 1]]) > 20.0


class TestDeriveSeed:

    def test_stable_and_distinct(self):
        assert derive_seed(1, 2, 3) == derive_seed(1, 2, 3)
        assert derive_seed(1, 2, 3) != derive_seed(1, 3, 2)
        assert derive_seed(1, 0) != derive_seed(2, 0)

    def test_negative(self):
        with pytest.raises(InvalidParameterException):
            derive_seed(-1, 0)
