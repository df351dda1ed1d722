"""
Tests for envelope specifications, region fitting and the registered checks
"""
import math
import unittest

import numpy as np

from src.config import GridSpec
from src.exceptions import DomainError, RegimeMismatchError
from src.hardy.atoms import global_bump_atom, standard_bump_atom
from src.models.report import BoundReport, GrowthReport, GrowthSeries, RegionResult, ReportStatus
from src.models.space import SpaceParams
from src.propagator.symbols import make_symbol
from src.transform.plan import clear_plans
from src.verify.base import Sample, fit_region
from src.verify.envelopes import Regime, Target, integer_part, kernel_spec, large_t_spec, small_t_spec
from src.verify.growth import GrowthCheck, _status, norm_growth_experiment
from src.verify.kernel_checks import check_grid, check_Gt_envelope, check_kernel_bounds
from src.verify.lemma_checks import bump_profiles, check_lemma51, check_multiplier_Lq, sobolev_exponents
from src.verify.registry import CHECK_REGISTRY, get_check

SMALL_GRID = GridSpec(s_min=0.0, s_max=4.0, s_points=81, lam_max=30.0, lam_points=601)
# default spacing and λ-grid on a shorter radial range
CHECK_GRID = GridSpec(s_min=0.01, s_max=6.0, s_points=121)


class TestEnvelopes(unittest.TestCase):
    """Test cases for the piecewise envelopes"""

    def setUp(self):
        """Set up test fixtures"""
        self.h3 = SpaceParams(2, 0)

    def test_large_t_values(self):
        """Test two large-t envelope values on H³ with ε = 1/2"""
        spec = large_t_spec(self.h3, 0.5)
        small = spec.region("small_s").envelope(np.array([0.05]), 1.0)[0]
        inner = spec.region("inner").envelope(np.array([0.5]), 1.0)[0]
        self.assertAlmostEqual(small, 0.05 ** -1.5, places=8)
        self.assertAlmostEqual(small, 89.4427, places=3)
        self.assertAlmostEqual(inner, math.exp(-0.5) * 0.5 ** -2, places=10)
        self.assertAlmostEqual(inner, 2.4261, places=3)

    def test_far_exponent_floor(self):
        """Test that the far-field exponent uses the integer part of ε"""
        self.assertEqual(integer_part(0.5), 0)
        self.assertEqual(integer_part(1.0), 1)
        spec = small_t_spec(self.h3, 1.25)
        far = spec.region("far").envelope(np.array([2.0]), 0.25)[0]
        self.assertAlmostEqual(far, math.exp(-4.0) * 1.75 ** -1, places=10)

    def test_regime_mismatch(self):
        """Test that a large-t envelope refuses t < 1/2"""
        with self.assertRaises(RegimeMismatchError):
            large_t_spec(self.h3, 0.5).check_time(0.25)

    def test_kernel_spec_by_name(self):
        """Test lookup of envelopes by regime and target names"""
        spec = kernel_spec(self.h3, "small_t", "Kprime", 0.5)
        self.assertIs(spec.regime, Regime.SMALL_T)
        self.assertIs(spec.target, Target.KPRIME)
        self.assertEqual([region.name for region in spec.regions], ["near", "far"])

    def test_unsupported_target(self):
        """Test that split targets have no kernel envelope"""
        with self.assertRaises(DomainError):
            large_t_spec(self.h3, 0.5, Target.GT)


class TestFitRegion(unittest.TestCase):
    """Test cases for fitted constants and region verdicts"""

    def setUp(self):
        """Set up test fixtures"""
        self.region = large_t_spec(SpaceParams(2, 0), 0.5).region("inner")
        self.coarse_s = np.linspace(0.0, 4.0, 41)
        self.fine_s = np.linspace(0.0, 4.0, 81)
        self.t = 2.0

    def _sample(self, s, factor, reliable=None):
        return Sample.build(s, factor * self.region.envelope(s, self.t), reliable, 0.01, self.t)

    def test_stable_constant(self):
        """Test C* = 3 at both resolutions"""
        result = fit_region(self.region, self.t, self._sample(self.coarse_s, 3.0), self._sample(self.fine_s, 3.0))
        self.assertAlmostEqual(result.constant, 3.0, places=10)
        self.assertIs(result.status, ReportStatus.PASS)

    def test_unstable_constant(self):
        """Test that a constant growing under refinement fails"""
        result = fit_region(self.region, self.t, self._sample(self.coarse_s, 1.0), self._sample(self.fine_s, 5.0))
        self.assertIs(result.status, ReportStatus.FAIL)

    def test_unreliable_points(self):
        """Test that unreliable samples make the region inconclusive"""
        reliable = np.ones(self.coarse_s.size, dtype=bool)
        reliable[5] = False
        result = fit_region(self.region, self.t, self._sample(self.coarse_s, 1.0, reliable),
                            self._sample(self.fine_s, 1.0))
        self.assertIs(result.status, ReportStatus.INCONCLUSIVE)
        self.assertEqual(result.n_unreliable, 1)

    def test_empty_region(self):
        """Test that a region without grid points passes with a note"""
        s = np.linspace(0.0, 0.05, 6)
        sample = Sample.build(s, np.ones(s.size))
        result = fit_region(self.region, self.t, sample, sample)
        self.assertEqual(result.n_points, 0)
        self.assertIs(result.status, ReportStatus.PASS)
        self.assertEqual(result.note, "no grid points in region")

    def test_report_status(self):
        """Test that FAIL dominates and an empty report is inconclusive"""
        report = BoundReport("kernel", {})
        self.assertIs(report.status, ReportStatus.INCONCLUSIVE)
        report.regions.append(RegionResult("a", "", 1.0, 1.0, 10))
        self.assertIs(report.status, ReportStatus.PASS)
        report.regions.append(RegionResult("b", "", 1.0, 9.0, 10, status=ReportStatus.FAIL))
        self.assertIs(report.status, ReportStatus.FAIL)
        self.assertEqual(report.status.exit_code, 2)


class TestChecks(unittest.TestCase):
    """Test cases for the kernel, lemma and multiplier checks"""

    def setUp(self):
        """Set up test fixtures"""
        self.h3 = SpaceParams(2, 0)
        self.h2 = SpaceParams(1, 0)

    def tearDown(self):
        clear_plans()

    def test_kernel_check_needs_epsilon(self):
        """Test that order -d symbols are refused by the kernel envelope check"""
        with self.assertRaises(DomainError):
            check_kernel_bounds(self.h3, make_symbol("rational_power", -1.0, 1.0), 2.0, SMALL_GRID)

    def test_gt_check_order(self):
        """Test that orders above -d are refused by the split-kernel check"""
        with self.assertRaises(DomainError):
            check_Gt_envelope(self.h3, make_symbol("rational_power", -0.5, 1.0), 2.0, SMALL_GRID)

    def test_sobolev_exponents(self):
        """Test 1/q = 1/2 + b/n and 1/s = 1/2 - b/n on H³"""
        q, s = sobolev_exponents(self.h3, -1.0)
        self.assertAlmostEqual(q, 6.0, places=12)
        self.assertAlmostEqual(s, 1.2, places=12)
        self.assertEqual(sobolev_exponents(self.h3, 0.0), (2.0, 2.0))
        with self.assertRaises(DomainError):
            sobolev_exponents(self.h3, -1.5)

    def test_bounded_multiplier_on_l2(self):
        """Test ‖U_m f‖₂ <= sup|m| ‖f‖₂ for an order-zero symbol"""
        m = make_symbol("gaussian", 0.0, 1.0)
        report = check_multiplier_Lq(self.h3, m, bump_profiles(3, 201), SMALL_GRID)
        self.assertLessEqual(report.region("L2->Lq").constant, report.metadata["sup_m"] * (1 + 1e-3))
        self.assertEqual(report.metadata["q"], 2.0)

    def test_spherical_scan(self):
        """Test that |φ_λ| stays below e^{-ρs}(1+s) with a stable constant"""
        report = check_lemma51(self.h2, lam_max=10.0, s_max=4.0, lam_points=21, s_points=21)
        region = report.region("phi_l0")
        self.assertIs(region.status, ReportStatus.PASS)
        self.assertTrue(0 < region.constant < 10)
        self.assertIn("lambda_c_alpha2", [r.name for r in report.regions])


class TestKernelVerdicts(unittest.TestCase):
    """Test cases for the kernel and split-kernel verdicts on H² and H³"""

    def setUp(self):
        """Set up test fixtures"""
        self.spaces = (SpaceParams(1, 0), SpaceParams(2, 0))

    def tearDown(self):
        clear_plans()

    def _assert_pass(self, report):
        for region in report.regions:
            self.assertIs(region.status, ReportStatus.PASS, f"{region.name}: {region.note}")
            self.assertTrue(math.isfinite(region.constant), region.name)
            self.assertTrue(math.isfinite(region.constant_fine), region.name)
        self.assertIs(report.status, ReportStatus.PASS)

    def test_check_grid_small_radii(self):
        """Test that the check grid resolves s -> 0 and doubles the extra radii on refinement"""
        coarse = check_grid(CHECK_GRID, 2.0, 0)
        fine = check_grid(CHECK_GRID.refined(), 2.0, 1)
        small_coarse = coarse[(coarse > 0.02) & (coarse <= 0.1)]
        small_fine = fine[(fine > 0.02) & (fine <= 0.1)]
        self.assertGreaterEqual(small_coarse.size, 8)
        self.assertGreaterEqual(small_fine.size, 2 * small_coarse.size - 2)
        for s in small_coarse:
            self.assertLess(float(np.min(np.abs(small_fine - s))), 1e-12)
        self.assertTrue(np.all(np.diff(fine) > 0))
        np.testing.assert_array_equal(check_grid(CHECK_GRID), np.linspace(0.01, 6.0, 121))

    def test_kernel_bounds_pass(self):
        """Test that the K and K' envelopes pass for b = -d - 1/2 at t = 0.3 and t = 2"""
        for p in self.spaces:
            m = make_symbol("rational_power", -p.d - 0.5, p.rho)
            for t in (0.3, 2.0):
                with self.subTest(space=p.label, t=t):
                    self._assert_pass(check_kernel_bounds(p, m, t, CHECK_GRID))

    def test_split_kernel_pass(self):
        """Test that the split-kernel envelopes pass for b = -d at t = 0.3 and t = 2"""
        for p in self.spaces:
            m = make_symbol("rational_power", -p.d, p.rho)
            for t in (0.3, 2.0):
                with self.subTest(space=p.label, t=t):
                    self._assert_pass(check_Gt_envelope(p, m, t, CHECK_GRID))


class TestGrowth(unittest.TestCase):
    """Test cases for the norm-growth experiment"""

    def setUp(self):
        """Set up test fixtures"""
        self.h3 = SpaceParams(2, 0)
        self.critical = make_symbol("rational_power", -1.0, 1.0)

    def tearDown(self):
        clear_plans()

    def _series(self, quantity, times, norms, slope, spread):
        return GrowthSeries("a", times, norms, slope, spread, max(norms), quantity)

    def test_status_rules(self):
        """Test the verdicts for short, flat and fast-growing series"""
        report = GrowthReport({}, {}, 1.0, [self._series("L1", [1.0], [1.0], math.nan, 1.0)])
        self.assertIs(_status(report, 1.0), ReportStatus.INCONCLUSIVE)
        report = GrowthReport({}, {}, 1.0, [self._series("L1", [1.0, 2.0], [1.0, 2.0], 0.7, 1.1)])
        self.assertIs(_status(report, 1.0), ReportStatus.PASS)
        report = GrowthReport({}, {}, 1.0, [self._series("h1_upper", [1.0, 2.0], [1.0, 9.0], 2.2, 1.0)])
        self.assertIs(_status(report, 1.0), ReportStatus.FAIL)
        self.assertTrue(report.notes)

    def test_bad_times(self):
        """Test that empty or negative time lists are refused"""
        atoms = [global_bump_atom(self.h3, points=201)]
        with self.assertRaises(DomainError):
            norm_growth_experiment(self.h3, self.critical, atoms, [])
        with self.assertRaises(DomainError):
            norm_growth_experiment(self.h3, self.critical, atoms, [-1.0, 1.0])

    def test_h1_needs_subcritical_order(self):
        """Test that the h1 bracket is refused at order -d"""
        with self.assertRaises(DomainError):
            norm_growth_experiment(self.h3, self.critical, [global_bump_atom(self.h3, points=201)], [1.0],
                                   h1=True)

    def test_l1_series(self):
        """Test one L1 series over two times"""
        report = norm_growth_experiment(self.h3, self.critical, [global_bump_atom(self.h3, points=201)],
                                        [2.0, 1.0], SMALL_GRID)
        self.assertEqual(len(report.series), 1)
        series = report.series[0]
        self.assertEqual(series.quantity, "L1")
        self.assertEqual(series.t_values, [1.0, 2.0])
        self.assertTrue(math.isfinite(series.max_ratio))
        self.assertEqual(len(series.extra["holder_bound"]), 2)

    def test_gaussian_growth_rate(self):
        """Test that ‖T_t a‖₁ grows like e^{ρt} for the Gaussian multiplier"""
        m = make_symbol("gaussian", 0.0, 1.0)
        report = norm_growth_experiment(self.h3, m, [global_bump_atom(self.h3, points=201)],
                                        [2.0, 3.0, 4.0, 5.0], SMALL_GRID)
        series = report.series[0]
        self.assertEqual(series.quantity, "L1")
        self.assertEqual(series.t_values, [2.0, 3.0, 4.0, 5.0])
        self.assertLessEqual(abs(series.slope - self.h3.rho), 0.15)
        self.assertIs(report.status, ReportStatus.PASS)

    def test_h1_bracket_series(self):
        """Test that the h1 upper bracket is reported at every time and dominates the L1 norm"""
        m = make_symbol("rational_power", -1.5, 1.0)
        atom = standard_bump_atom(self.h3, 0.5, points=201)
        report = norm_growth_experiment(self.h3, m, [atom], [1.0, 2.0], SMALL_GRID)
        self.assertEqual([series.quantity for series in report.series], ["L1", "h1_upper"])
        l1, upper = report.series
        self.assertEqual(upper.t_values, [1.0, 2.0])
        self.assertEqual(len(upper.extra["largest_piece"]), 2)
        for norm, bracket in zip(l1.norms, upper.norms):
            self.assertTrue(math.isfinite(bracket))
            self.assertGreaterEqual(bracket, norm * (1 - 1e-6))
        self.assertTrue(math.isfinite(upper.slope))
        self.assertIn("upper brackets", report.notes[0])


class TestRegistry(unittest.TestCase):
    """Test cases for the check registry"""

    def test_names(self):
        """Test the registered check names"""
        self.assertEqual(sorted(CHECK_REGISTRY), ["growth", "gt", "kernel", "lemma51", "lq"])
        self.assertIs(get_check("growth"), GrowthCheck)

    def test_unknown(self):
        """Test that an unknown check name raises a domain error"""
        with self.assertRaises(DomainError):
            get_check("wave")


if __name__ == '__main__':
    unittest.main()
