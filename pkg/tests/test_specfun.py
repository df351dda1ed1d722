"""
Tests for the c-function, spherical functions and far-field solutions
"""
import math
import unittest

import numpy as np

from src.exceptions import DomainError, SingularityError
from src.models.space import SpaceParams
from src.models.spectral import SphericalMethod
from src.specfun.cfunction import harish_chandra_c, lambda_c, plancherel_continuation, plancherel_density
from src.specfun.spherical import (asymptotic_residual, jost_fn, ode_table, series_table, spherical_fn,
                                   spherical_table)


class TestCFunction(unittest.TestCase):
    """Test cases for the Harish-Chandra c-function"""

    def setUp(self):
        """Set up test fixtures"""
        self.h3 = SpaceParams(2, 0)
        self.h2 = SpaceParams(1, 0)

    def test_h3_closed_form(self):
        """Test c(λ) = 1/(iλ) on H³"""
        for lam in (0.5, 1.0, 3.0):
            self.assertAlmostEqual(abs(harish_chandra_c(self.h3, lam) - 1 / (1j * lam)), 0.0, places=10)

    def test_density_ratio_h3(self):
        """Test density(2)/density(1) = 4 on H³"""
        ratio = plancherel_density(self.h3, 2.0) / plancherel_density(self.h3, 1.0)
        self.assertAlmostEqual(ratio, 4.0, places=8)

    def test_density_zero_and_evenness(self):
        """Test that the density vanishes at 0 and is even"""
        for p in (self.h2, self.h3, SpaceParams(2, 1)):
            self.assertEqual(plancherel_density(p, 0.0), 0.0)
            lam = np.linspace(0.1, 20.0, 50)
            np.testing.assert_allclose(plancherel_density(p, lam), plancherel_density(p, -lam), rtol=1e-12)

    def test_density_growth(self):
        """Test density(λ)/λ^{2d} bounded above and below for large λ"""
        for p in (self.h2, SpaceParams(2, 1)):
            lam = np.linspace(10.0, 200.0, 40)
            ratio = plancherel_density(p, lam) / lam ** (2 * p.d)
            self.assertLess(float(ratio.max() / ratio.min()), 2.0)

    def test_lambda_c_decay(self):
        """Test |λ c(λ)| (1+λ)^{d-1} bounded along the reals"""
        p = SpaceParams(3, 0)
        lam = np.linspace(1.0, 100.0, 100)
        scaled = np.abs(lambda_c(p, lam)) * (1 + lam) ** (p.d - 1)
        self.assertTrue(np.all(np.isfinite(scaled)))
        self.assertLess(float(scaled.max() / scaled.min()), 4.0)

    def test_continuation_matches_density(self):
        """Test that the continued density agrees with |c|^{-2} on the real line"""
        lam = np.array([0.3, 2.0, 17.0, 60.0])
        for p in (self.h2, self.h3, SpaceParams(2, 1)):
            np.testing.assert_allclose(plancherel_continuation(p, lam).real, plancherel_density(p, lam), rtol=1e-10)
            np.testing.assert_allclose(plancherel_continuation(p, lam).imag, 0.0, atol=1e-8 * lam.max() ** 2)

    def test_continuation_far_from_real_line(self):
        """Test that the continued density is λ² on H³ and finite on H² far up the ray"""
        lam = 60.0 + 1j * np.array([1.0, 50.0, 900.0])
        np.testing.assert_allclose(plancherel_continuation(self.h3, lam), lam ** 2, rtol=1e-9)
        self.assertTrue(np.all(np.isfinite(plancherel_continuation(self.h2, lam))))

    def test_pole(self):
        """Test that λ = 0 raises a singularity error"""
        with self.assertRaises(SingularityError):
            harish_chandra_c(self.h3, 0.0)


class TestSphericalFunctions(unittest.TestCase):
    """Test cases for φ_λ(s)"""

    def setUp(self):
        """Set up test fixtures"""
        self.h3 = SpaceParams(2, 0)
        self.h2 = SpaceParams(1, 0)

    def test_normalization(self):
        """Test φ_λ(0) = 1 for several spaces and frequencies"""
        for p in (self.h2, self.h3, SpaceParams(2, 1), SpaceParams(4, 3)):
            for lam in (0.0, 1.5, 10.0):
                self.assertAlmostEqual(spherical_fn(p, lam, 0.0).value, 1.0, places=12)

    def test_h3_closed_form(self):
        """Test φ_1(1) = sin(1)/sinh(1) on H³ through the series and ODE route"""
        value = spherical_fn(self.h3, 1.0, 1.0)
        self.assertAlmostEqual(value.value, math.sin(1.0) / math.sinh(1.0), places=8)
        self.assertAlmostEqual(value.value, 0.715965, places=5)
        self.assertEqual(value.method, SphericalMethod.ODE)

    def test_closed_form_method(self):
        """Test the H³ closed form against the generic route on a grid"""
        lam = np.linspace(0.0, 20.0, 41)
        s = np.linspace(0.0, 6.0, 61)
        generic = spherical_table(self.h3, lam, s)
        exact = spherical_table(self.h3, lam, s, method="closed_form")
        np.testing.assert_allclose(generic.values, exact.values, atol=1e-8)
        np.testing.assert_allclose(generic.derivatives, exact.derivatives, atol=1e-7)

    def test_series_matches_ode(self):
        """Test the series and the radial ODE at λ = 2, s = 1.5 on H²"""
        series_phi, _ = series_table(self.h2, [2.0], [1.5])
        start_phi, start_dphi = series_table(self.h2, [2.0], [0.5])
        ode_phi, _ = ode_table(self.h2, np.array([2.0]), 0.5, start_phi[:, 0], start_dphi[:, 0], np.array([1.5]))
        self.assertAlmostEqual(complex(series_phi[0, 0]).real, complex(ode_phi[0, 0]).real, delta=1e-9)

    def test_requested_follows_deriv(self):
        """Test that deriv selects the value or the s-derivative"""
        value = spherical_fn(self.h3, 2.0, 0.7)
        slope = spherical_fn(self.h3, 2.0, 0.7, deriv=1)
        self.assertEqual(value.requested, value.value)
        self.assertEqual(slope.requested, slope.s_derivative)
        exact = (2.0 * math.cos(1.4) * math.sinh(0.7) - math.sin(1.4) * math.cosh(0.7)) / (2.0 * math.sinh(0.7) ** 2)
        self.assertAlmostEqual(slope.requested, exact, places=8)
        with self.assertRaises(DomainError):
            spherical_fn(self.h3, 2.0, 0.7, deriv=2)

    def test_tube_violation(self):
        """Test that |Im λ| > ρ' is rejected"""
        with self.assertRaises(DomainError):
            spherical_fn(self.h3, complex(1.0, self.h3.rho_prime + 0.5), 1.0)

    def test_negative_radius(self):
        """Test that s < 0 is rejected"""
        with self.assertRaises(DomainError):
            spherical_table(self.h3, [1.0], [-0.5])

    def test_bound_by_phi_zero(self):
        """Test |φ_λ(s)| <= φ_0(s) for real λ"""
        lam = np.linspace(0.0, 30.0, 61)
        s = np.linspace(0.0, 8.0, 81)
        table = spherical_table(self.h2, lam, s)
        self.assertTrue(np.all(np.abs(table.values) <= table.values[0][None, :] + 1e-9))


class TestFarField(unittest.TestCase):
    """Test cases for the far-field expansion"""

    def setUp(self):
        """Set up test fixtures"""
        self.h3 = SpaceParams(2, 0)
        self.h2 = SpaceParams(1, 0)

    def test_residual_h3(self):
        """Test the H³ residual against its exact value 2|sin(λs)|e^{-2s}/(λ(1-e^{-2s}))"""
        for s in (1.0, 3.0, 6.0):
            exact = 2 * abs(math.sin(s)) * math.exp(-2 * s) / (1 - math.exp(-2 * s))
            self.assertAlmostEqual(asymptotic_residual(self.h3, 1.0, s), exact, delta=1e-8)

    def test_residual_decreasing(self):
        """Test that the H² residual decays along s = 2, 4, 8"""
        residuals = [asymptotic_residual(self.h2, 3.0, s) for s in (2.0, 4.0, 8.0)]
        self.assertGreater(residuals[0], residuals[1])
        self.assertGreater(residuals[1], residuals[2])

    def test_residual_even(self):
        """Test residual(λ) = residual(-λ)"""
        self.assertAlmostEqual(asymptotic_residual(self.h2, 2.5, 3.0), asymptotic_residual(self.h2, -2.5, 3.0),
                               places=10)

    def test_residual_pole(self):
        """Test that λ = 0 is rejected"""
        with self.assertRaises(DomainError):
            asymptotic_residual(self.h2, 0.0, 2.0)

    def test_jost_decomposition(self):
        """Test φ_λ = c(λ)Φ_λ + c(-λ)Φ_{-λ} on H² and a quaternionic-type space"""
        for p in (self.h2, SpaceParams(4, 3)):
            lam, s = 1.7, 2.0
            combined = (harish_chandra_c(p, lam) * jost_fn(p, lam, s)
                        + harish_chandra_c(p, -lam) * jost_fn(p, -lam, s))
            self.assertAlmostEqual(combined.real, spherical_fn(p, lam, s).value, delta=1e-8)
            self.assertAlmostEqual(combined.imag, 0.0, delta=1e-8)

    def test_jost_leading_term(self):
        """Test Φ_μ(s) e^{(ρ-iμ)s} → 1"""
        mu = 2.0
        value = jost_fn(self.h2, mu, 12.0) * np.exp((self.h2.rho - 1j * mu) * 12.0)
        self.assertAlmostEqual(abs(value - 1), 0.0, places=6)


if __name__ == '__main__':
    unittest.main()
