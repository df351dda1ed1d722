"""
Tests for h1-atoms, atomic decompositions and h1 brackets
"""
import math
import unittest

import numpy as np

from src.config import HardyOptions
from src.exceptions import PreconditionError, UnsupportedInputError
from src.geometry.measure import annulus_measure, ball_measure, radial_integral
from src.hardy.atoms import global_bump_atom, standard_bump_atom, step_atom, validate_atom
from src.hardy.bounds import conv_atom_bound, h1_bracket, piece_h1_bound
from src.hardy.decompose import decompose_annulus, decompose_ball, dyadic_levels, validate_decomposition
from src.models.atom import Atom, AtomKind
from src.models.profile import RadialProfile
from src.models.space import Annulus, SpaceParams
from src.transform.plan import clear_plans


def annulus_profile(p: SpaceParams, R: float, r: float, points: int = 2001) -> RadialProfile:
    """Mean-zero smooth profile supported in A_{R-r}^{R+r}"""
    grid = np.linspace(0.0, R + 2 * r, points)
    x = (grid - R) / r
    bump = np.where(np.abs(x) < 1, (1 - x ** 2) ** 6, 0.0)
    tilted = bump * x
    shift = float(radial_integral(p, grid, tilted)) / float(radial_integral(p, grid, bump))
    return RadialProfile(grid, tilted - shift * bump)


class TestAtoms(unittest.TestCase):
    """Test cases for atom construction and validation"""

    def setUp(self):
        """Set up test fixtures"""
        self.h3 = SpaceParams(2, 0)

    def test_standard_bump_valid(self):
        """Test that the smooth standard atom passes every condition"""
        a = standard_bump_atom(self.h3, 0.25)
        report = validate_atom(self.h3, a)
        self.assertTrue(report.passed)
        self.assertAlmostEqual(report.l2_norm / report.size_bound, 1.0, places=6)
        self.assertLess(abs(report.integral), 1e-8 * report.l1_norm)

    def test_global_bump_valid(self):
        """Test that the global atom passes without cancellation"""
        report = validate_atom(self.h3, global_bump_atom(self.h3))
        self.assertTrue(report.passed)
        self.assertGreater(report.integral, 0.0)

    def test_oversized_atom_fails(self):
        """Test that doubling an atom breaks the size condition only"""
        a = standard_bump_atom(self.h3, 0.5)
        doubled = Atom(AtomKind.STANDARD, 0.5, profile=a.profile.with_values(2 * a.profile.values))
        report = validate_atom(self.h3, doubled)
        self.assertFalse(report.passed)
        self.assertFalse(report.size_ok)
        self.assertTrue(report.cancellation_ok)

    def test_step_atom_exact(self):
        """Test a two-ball step atom with vanishing integral"""
        inner, outer = ball_measure(self.h3, 0.25), ball_measure(self.h3, 0.5)
        a = step_atom(self.h3, [0.25, 0.5], [outer / inner, -1.0])
        report = validate_atom(self.h3, a)
        self.assertEqual(report.method, "exact")
        self.assertTrue(report.cancellation_ok)
        self.assertAlmostEqual(report.integral, 0.0, places=10)

    def test_standard_without_cancellation(self):
        """Test that a positive standard atom fails cancellation"""
        a = step_atom(self.h3, [0.5], [0.1])
        self.assertFalse(validate_atom(self.h3, a).cancellation_ok)


class TestDecompositions(unittest.TestCase):
    """Test cases for ball and annulus decompositions"""

    def setUp(self):
        """Set up test fixtures"""
        self.h3 = SpaceParams(2, 0)
        self.options = HardyOptions(qmc_points_per_ball=512, net_budget=2000)

    def test_dyadic_levels(self):
        """Test the lowest K with 2^K r > 1"""
        self.assertEqual(dyadic_levels(0.25), 3)
        self.assertEqual(dyadic_levels(1.0), 1)
        self.assertEqual(dyadic_levels(0.3), 2)

    def test_zero_function(self):
        """Test that the zero profile decomposes into nothing"""
        zero = RadialProfile.zeros(np.linspace(0.0, 2.0, 201))
        decomposition = decompose_ball(self.h3, zero, 2.0, self.options)
        self.assertEqual(len(decomposition), 0)
        self.assertEqual(decomposition.total, 0.0)
        self.assertEqual(decomposition.constants["C"], 0.0)

    def test_small_ball_single_atom(self):
        """Test that a mean-zero f on B(o, R < 1) is one multiple of a standard atom"""
        a = standard_bump_atom(self.h3, 0.5)
        f = a.profile.with_values(3 * a.profile.values)
        decomposition = decompose_ball(self.h3, f, 0.5, self.options)
        self.assertEqual(len(decomposition), 1)
        self.assertAlmostEqual(decomposition.total, 3.0, places=5)
        self.assertEqual(decomposition.constants["C"], 1.0)

    def test_small_ball_needs_cancellation(self):
        """Test that a positive f on B(o, R < 1) is rejected"""
        grid = np.linspace(0.0, 0.5, 101)
        with self.assertRaises(UnsupportedInputError):
            decompose_ball(self.h3, RadialProfile(grid, np.ones(grid.size)), 0.5, self.options)

    def test_annulus_needs_cancellation(self):
        """Test that the annulus construction insists on a vanishing integral"""
        grid = np.linspace(0.0, 2.5, 501)
        bump = np.where(np.abs(grid - 2.0) < 0.5, (1 - ((grid - 2.0) / 0.5) ** 2) ** 2, 0.0)
        with self.assertRaises(PreconditionError):
            decompose_annulus(self.h3, RadialProfile(grid, bump), 2.0, 0.5, self.options)

    def test_large_ball_global_atoms(self):
        """Test that a ball of radius >= 1 yields global atoms on unit balls"""
        grid = np.linspace(0.0, 1.5, 301)
        f = RadialProfile(grid, (1 - (grid / 1.5) ** 2) ** 2)
        decomposition = decompose_ball(self.h3, f, 1.5, self.options, seed=7)
        self.assertGreater(len(decomposition), 0)
        self.assertTrue(all(term.atom.kind is AtomKind.GLOBAL for term in decomposition.terms))
        self.assertIn("net_size", decomposition.meta)
        self.assertTrue(math.isfinite(decomposition.constants["C"]))


class TestAnnulusDecompositions(unittest.TestCase):
    """Test cases for telescoping decompositions of thin annuli on H²"""

    def setUp(self):
        """Set up test fixtures"""
        self.h2 = SpaceParams(1, 0)
        self.options = HardyOptions(qmc_points_per_ball=512, net_budget=40000)
        self.R = 2.0

    def test_constant_stable_in_width(self):
        """Test that C stays within a factor 3 as the half-width shrinks"""
        constants = []
        for r in (0.1, 0.2, 0.4):
            with self.subTest(r=r):
                f = annulus_profile(self.h2, self.R, r)
                decomposition = decompose_annulus(self.h2, f, self.R, r, self.options, seed=3)
                C = decomposition.constants["C"]
                self.assertTrue(math.isfinite(C))
                self.assertGreater(C, 0.0)
                self.assertEqual(decomposition.constants["levels"], float(dyadic_levels(r)))
                constants.append(C)
        self.assertLessEqual(max(constants) / min(constants), 3.0)

    def test_reconstruction_with_valid_atoms(self):
        """Test that Σ c_j a_j rebuilds f and every emitted atom validates"""
        r = 0.2
        f = annulus_profile(self.h2, self.R, r)
        decomposition = decompose_annulus(self.h2, f, self.R, r, self.options, seed=5)
        self.assertGreater(len(decomposition), 0)
        self.assertLessEqual(decomposition.reconstruction_error, 1e-8)
        reports = validate_decomposition(self.h2, decomposition, self.options, seed=5)
        self.assertEqual(len(reports), len(decomposition))
        failed = [term.atom.label for term, report in zip(decomposition.terms, reports) if not report.passed]
        self.assertEqual(failed, [])
        kinds = {term.atom.kind for term in decomposition.terms}
        self.assertEqual(kinds, {AtomKind.STANDARD, AtomKind.GLOBAL})


class TestBounds(unittest.TestCase):
    """Test cases for convolution bounds and h1 brackets"""

    def setUp(self):
        """Set up test fixtures"""
        self.h3 = SpaceParams(2, 0)
        self.lam = np.linspace(0.0, 80.0, 4001)

    def tearDown(self):
        clear_plans()

    def test_bracket_zero(self):
        """Test the bracket of the zero profile"""
        bracket = h1_bracket(self.h3, RadialProfile.zeros(np.linspace(0.0, 1.0, 11)))
        self.assertEqual((bracket.lower, bracket.upper, bracket.route), (0.0, 0.0, "zero"))

    def test_bracket_of_atom(self):
        """Test ‖a‖₁ <= upper <= 1 for a standard atom"""
        bracket = h1_bracket(self.h3, standard_bump_atom(self.h3, 0.5))
        self.assertLessEqual(bracket.lower, bracket.upper)
        self.assertLessEqual(bracket.upper, 1.0 + 1e-6)
        self.assertEqual(bracket.route, "ball")

    def test_piece_bound_routes(self):
        """Test the annulus and ball routes of the per-piece h1 bound"""
        bound, route = piece_h1_bound(self.h3, 2.0, 2.5, 0.1, 1.0, True)
        self.assertEqual(route, "annulus")
        width = 0.35
        expected = (1 + math.log(1 / width)) * math.sqrt(annulus_measure(self.h3, Annulus(2.25, width)))
        self.assertAlmostEqual(bound, expected, places=10)
        bound, route = piece_h1_bound(self.h3, 2.0, 2.5, 0.1, 1.0, False)
        self.assertEqual(route, "ball")
        self.assertAlmostEqual(bound, math.sqrt(ball_measure(self.h3, 2.6)), places=10)

    def test_standard_convolution_bound(self):
        """Test ‖a∗γ‖₂ <= min(‖γ‖₂, r‖∇γ‖₂) for a standard atom"""
        grid = np.linspace(0.0, 0.5, 201)
        gamma = RadialProfile(grid, (1 - (grid / 0.5) ** 2) ** 4)
        result = conv_atom_bound(self.h3, standard_bump_atom(self.h3, 0.25), gamma, self.lam,
                                 np.linspace(0.0, 1.5, 301))
        self.assertTrue(result.passed)
        self.assertLessEqual(result.support, 0.75 + 0.02)

    def test_global_convolution_bound(self):
        """Test ‖a∗γ‖₂ <= ‖a‖₁‖γ‖₂ for a global atom"""
        grid = np.linspace(0.0, 0.5, 201)
        gamma = RadialProfile(grid, (1 - (grid / 0.5) ** 2) ** 4)
        result = conv_atom_bound(self.h3, global_bump_atom(self.h3), gamma, self.lam,
                                 np.linspace(0.0, 2.0, 401))
        self.assertTrue(result.passed)
        self.assertLessEqual(result.measured, result.l1_bound * (1 + 1e-6))


if __name__ == '__main__':
    unittest.main()
