"""Tests del M-estimador de escala."""

import numpy as np
import pytest
from scipy import optimize

from src.domain.estimation.mscale import (
    MAD_CONSTANT,
    initial_scale,
    mscale_equation_gap,
    normalized_mad,
    solve_mscale,
    starting_scale,
)
from src.domain.estimation.rho_kernels import rho_eval
from src.domain.exceptions.domain_exceptions import InvalidParameterException


def _oracle_bisection(r, spec):
    """Raíz de s -> mean ρ(r/s) - δ, que es decreciente en s"""
    mad = MAD_CONSTANT * np.median(np.abs(r))
    return optimize.brentq(
        lambda s: np.mean(rho_eval(spec, r / s)) - spec.delta,
        1e-12 * mad, 1e6 * mad, xtol=1e-14, rtol=1e-13, maxiter=500,
    )


class TestInitialScale:

    def test_examples(self):
        assert initial_scale([-1.0, 0.0, 1.0]) == pytest.approx(1.4826)
        assert initial_scale([0.0, 0.0, 0.0]) == 0.0

    def test_absolute_homogeneity(self, rng):
        r = rng.standard_normal(31)
        assert initial_scale(-2.5 * r) == pytest.approx(2.5 * initial_scale(r), rel=1e-14)

    def test_empty_is_error(self):
        with pytest.raises(InvalidParameterException):
            initial_scale([])

    def test_normalized_mad_ignores_location(self, rng):
        x = rng.standard_normal(40)
        assert normalized_mad(x + 100.0) == pytest.approx(normalized_mad(x), rel=1e-12)

    def test_starting_scale_fallback(self):
        r = np.array([0.0, 0.0, 0.0, 2.0, 4.0])
        assert initial_scale(r) == 0.0
        assert starting_scale(r) == pytest.approx(MAD_CONSTANT * 6.0 / 5.0)


class TestSolveMscale:

    def test_all_zero_is_exact_fit(self, biweight_spec):
        sol = solve_mscale(np.zeros(10), biweight_spec, 1.0)
        assert sol.s == 0.0
        assert sol.converged
        assert sol.exact_fit

    def test_constant_residuals_closed_form(self, skh_spec):
        r = np.full(25, -1.7)
        sol = solve_mscale(r, skh_spec, starting_scale(r), eps1=1e-12)
        assert sol.converged
        assert sol.s == pytest.approx(1.7 / np.sqrt(2 * skh_spec.delta), rel=1e-9)

    def test_scale_equivariance(self, biweight_spec, rng):
        r = rng.standard_normal(50)
        base = solve_mscale(r, biweight_spec, starting_scale(r), eps1=1e-12).s
        for c in (0.01, 3.0, -7.5):
            escalado = solve_mscale(c * r, biweight_spec, abs(c) * starting_scale(r), eps1=1e-12).s
            assert escalado == pytest.approx(abs(c) * base, rel=1e-8)

    def test_defining_equation_holds(self, biweight_spec, rng):
        r = rng.standard_t(3, size=80)
        sol = solve_mscale(r, biweight_spec, starting_scale(r), eps1=1e-12)
        assert sol.converged
        assert abs(mscale_equation_gap(r, biweight_spec, sol.s)) <= 1e-8 * biweight_spec.delta

    def test_agrees_with_bisection_oracle(self, biweight_spec, skh_spec, rng):
        for i in range(50):
            spec = biweight_spec if i % 2 else skh_spec
            r = rng.standard_normal(rng.integers(10, 80)) * rng.uniform(0.1, 10)
            sol = solve_mscale(r, spec, starting_scale(r), eps1=1e-12)
            assert sol.s == pytest.approx(_oracle_bisection(r, spec), rel=1e-6)

    def test_nonpositive_start_uses_starting_scale(self, biweight_spec, rng):
        r = rng.standard_normal(30)
        a = solve_mscale(r, biweight_spec, 0.0, eps1=1e-12).s
        b = solve_mscale(r, biweight_spec, starting_scale(r), eps1=1e-12).s
        assert a == pytest.approx(b, rel=1e-12)

    def test_step_cap_reports_non_convergence(self, biweight_spec, rng, caplog):
        r = rng.standard_normal(30)
        sol = solve_mscale(r, biweight_spec, 1e-3, eps1=1e-15, max_steps=2)
        assert not sol.converged
        assert sol.m_steps == 2
        assert "M-scale sin converger" in caplog.text
