"""Tests de funciones ρ, pesos y calibración."""

import numpy as np
import pytest
from scipy import integrate
from scipy.stats import norm

from src.domain.estimation import rho_kernels
from src.domain.estimation.rho_kernels import (
    LQQ_B_OVER_C,
    LQQ_S,
    build_spec,
    efficiency_normal,
    expected_rho_normal,
    hard_rejection,
    hard_rejection_weight,
    irls_weight,
    rho_eval,
    rho_prime,
    spec_from_k,
    tune_for_bdp,
    tune_for_efficiency,
)
from src.domain.exceptions.domain_exceptions import (
    CalibrationException,
    InvalidParameterException,
)
from src.domain.value_objects.enums import RhoKind

K_BI = 3.420
K_SKH = 2.177


class TestRhoEval:

    def test_biweight_values(self, biweight_spec):
        assert rho_eval(biweight_spec, 0.0) == 0.0
        assert rho_eval(biweight_spec, 5.0) == pytest.approx(K_BI ** 2 / 6, abs=1e-12)
        esperado = K_BI ** 2 / 6 * (1 - (1 - (1 / K_BI) ** 2) ** 3)
        assert rho_eval(biweight_spec, 1.0) == pytest.approx(esperado, rel=1e-12)

    def test_skipped_huber_values(self, skh_spec):
        assert rho_eval(skh_spec, 1.0) == pytest.approx(0.5)
        assert rho_eval(skh_spec, 10.0) == pytest.approx(K_SKH ** 2 / 2)

    def test_rho_sup(self, biweight_spec, skh_spec):
        assert biweight_spec.rho_sup == pytest.approx(K_BI ** 2 / 6)
        assert skh_spec.rho_sup == pytest.approx(K_SKH ** 2 / 2)

    def test_scalar_in_scalar_out(self, biweight_spec):
        assert isinstance(rho_eval(biweight_spec, 1.0), float)
        assert rho_eval(biweight_spec, np.array([1.0, 2.0])).shape == (2,)

    @pytest.mark.parametrize("kind", list(RhoKind))
    def test_even_monotone_bounded(self, kind):
        spec = spec_from_k(kind, 2.0)
        z = np.linspace(0, 4 * spec.support, 2001)
        valores = rho_eval(spec, z)
        np.testing.assert_allclose(valores, rho_eval(spec, -z), atol=0)
        assert np.all(np.diff(valores) >= -1e-12)
        assert np.max(valores) <= spec.rho_sup + 1e-12
        np.testing.assert_allclose(rho_eval(spec, 1.5 * spec.support), spec.rho_sup, rtol=1e-12)

    def test_lqq_continuous_at_breaks(self):
        spec = spec_from_k(RhoKind.LQQ, 1.0)
        b, c, _ = spec.constants
        for quiebre in (c, b + c, spec.support):
            izq = rho_eval(spec, quiebre - 1e-9)
            der = rho_eval(spec, quiebre + 1e-9)
            assert izq == pytest.approx(der, abs=1e-7)

    def test_lqq_fixed_shape(self):
        spec = spec_from_k(RhoKind.LQQ, 1.3)
        b, c, s = spec.constants
        assert c == pytest.approx(1.3)
        assert b == pytest.approx(LQQ_B_OVER_C * 1.3)
        assert s == LQQ_S
        assert spec.k == pytest.approx(1.3)


class TestRhoPrime:

    def test_known_values(self, biweight_spec, skh_spec):
        assert rho_prime(skh_spec, 1.0) == pytest.approx(1.0)
        assert rho_prime(biweight_spec, 4.0) == 0.0
        assert rho_prime(biweight_spec, K_BI / 2) == pytest.approx(0.28125 * K_BI, rel=1e-12)

    def test_odd(self, biweight_spec):
        z = np.linspace(-5, 5, 101)
        np.testing.assert_allclose(rho_prime(biweight_spec, -z), -rho_prime(biweight_spec, z))

    @pytest.mark.parametrize("kind", list(RhoKind))
    def test_matches_finite_difference(self, kind, rng):
        spec = spec_from_k(kind, 2.0)
        quiebres = [2.0] if kind is not RhoKind.LQQ else [
            spec.constants[1], spec.constants[0] + spec.constants[1], spec.support]
        z = rng.uniform(-2 * spec.support, 2 * spec.support, 100)
        lejos = np.all(np.abs(np.abs(z)[:, None] - np.array(quiebres)[None, :]) > 1e-3, axis=1)
        z = z[lejos]
        h = 1e-6
        numerica = (rho_eval(spec, z + h) - rho_eval(spec, z - h)) / (2 * h)
        np.testing.assert_allclose(rho_prime(spec, z), numerica, atol=1e-6)


class TestIrlsWeight:

    def test_values(self, biweight_spec, skh_spec):
        assert irls_weight(skh_spec, 0.5) == 1.0
        assert irls_weight(biweight_spec, 0.0) == 1.0
        assert irls_weight(biweight_spec, 1e-8) == pytest.approx(1.0)
        assert irls_weight(biweight_spec, 4.0) == 0.0

    @pytest.mark.parametrize("kind", list(RhoKind))
    def test_in_unit_interval(self, kind):
        spec = spec_from_k(kind, 1.7)
        w = irls_weight(spec, np.linspace(-10, 10, 4001))
        assert np.all(w >= 0) and np.all(w <= 1 + 1e-12)

    def test_lqq_equals_psi_over_z(self):
        spec = spec_from_k(RhoKind.LQQ, 1.0)
        z = np.array([0.3, 1.2, 2.0, 3.0, 10.0])
        np.testing.assert_allclose(irls_weight(spec, z), rho_prime(spec, z) / z)


class TestExpectedRho:

    def test_reference_constants_give_twenty_percent(self, biweight_spec, skh_spec):
        assert biweight_spec.delta / biweight_spec.rho_sup == pytest.approx(0.20, abs=0.005)
        assert skh_spec.delta / skh_spec.rho_sup == pytest.approx(0.20, abs=0.005)

    def test_large_k_tends_to_half(self):
        spec = spec_from_k(RhoKind.SKIPPED_HUBER, 12.0)
        assert expected_rho_normal(spec) == pytest.approx(0.5, abs=1e-9)

    def test_matches_independent_quadrature(self, biweight_spec):
        oracle, _ = integrate.quad(lambda t: rho_eval(biweight_spec, t) * norm.pdf(t),
                                   -np.inf, np.inf, epsabs=1e-12)
        assert expected_rho_normal(biweight_spec) == pytest.approx(oracle, abs=1e-8)

    def test_spec_rejects_inconsistent_constants(self):
        with pytest.raises(ValueError):
            build_spec(RhoKind.BIWEIGHT, (1.0, 2.0))


class TestTuning:

    def test_bdp_biweight(self):
        spec = tune_for_bdp(RhoKind.BIWEIGHT, 0.20)
        assert 3.415 <= spec.k <= 3.425
        assert spec.breakdown_point == pytest.approx(0.20, abs=1e-6)

    def test_bdp_skipped_huber(self):
        spec = tune_for_bdp(RhoKind.SKIPPED_HUBER, 0.20)
        assert 2.172 <= spec.k <= 2.182
        assert spec.breakdown_point == pytest.approx(0.20, abs=1e-6)

    def test_bdp_half_biweight(self):
        assert tune_for_bdp(RhoKind.BIWEIGHT, 0.5).k == pytest.approx(1.547, abs=0.005)

    def test_bdp_lqq_round_trip(self):
        spec = tune_for_bdp(RhoKind.LQQ, 0.5)
        assert spec.breakdown_point == pytest.approx(0.5, abs=1e-6)

    def test_efficiency_biweight(self):
        spec = tune_for_efficiency(RhoKind.BIWEIGHT, 0.95)
        assert spec.k == pytest.approx(4.685, abs=0.005)
        assert efficiency_normal(spec) == pytest.approx(0.95, abs=1e-4)

    def test_efficiency_lqq(self):
        spec = tune_for_efficiency(RhoKind.LQQ, 0.95)
        assert efficiency_normal(spec) == pytest.approx(0.95, abs=1e-4)

    def test_efficiency_monotone_in_k(self):
        eficiencias = [efficiency_normal(spec_from_k(RhoKind.BIWEIGHT, k)) for k in (3, 4, 5, 7)]
        assert eficiencias == sorted(eficiencias)

    @pytest.mark.parametrize("bdp", [0.0, -0.1, 0.6])
    def test_bdp_out_of_range(self, bdp):
        with pytest.raises(InvalidParameterException):
            tune_for_bdp(RhoKind.BIWEIGHT, bdp)

    @pytest.mark.parametrize("eff", [0.5, 1.0, 0.2])
    def test_efficiency_out_of_range(self, eff):
        with pytest.raises(InvalidParameterException):
            tune_for_efficiency(RhoKind.BIWEIGHT, eff)

    def test_unbracketed_root_is_calibration_error(self, monkeypatch):
        monkeypatch.setattr(rho_kernels, "_BRACKET", (3.5, 50.0))
        with pytest.raises(CalibrationException):
            tune_for_bdp.__wrapped__(RhoKind.BIWEIGHT, 0.20)


class TestHardRejection:

    def test_cutoff(self):
        assert hard_rejection_weight(2.9, 3.0) == 1.0
        assert hard_rejection_weight(3.1, 3.0) == 0.0
        assert hard_rejection_weight(0.0, 0.5) == 1.0
        assert hard_rejection_weight(3.0, 3.0) == 1.0

    def test_factory_is_vectorized(self):
        w = hard_rejection(2.0)(np.array([0.0, 1.9, 2.1, 8.0]))
        np.testing.assert_array_equal(w, [1.0, 1.0, 0.0, 0.0])
