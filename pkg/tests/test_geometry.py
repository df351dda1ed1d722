"""
Tests for the radial measure, the hyperboloid model and nets
"""
import math
import os
import tempfile
import unittest

import numpy as np

from src.exceptions import CertificationError, DomainError, InvalidPointError
from src.geometry.hyperboloid import ball_sample, geodesic_length, model_distance, sample_region
from src.geometry.measure import annulus_measure, ball_measure, density, radial_integral
from src.geometry.nets import ball_counts, build_net, covering_multiplicity, min_separation, nearest_distances, write_net
from src.models.space import Annulus, ModelPoint, SpaceParams
from src.utils.io import read_table


class TestMeasure(unittest.TestCase):
    """Test cases for density, ball and annulus measures"""

    def setUp(self):
        """Set up test fixtures"""
        self.h3 = SpaceParams(2, 0)
        self.h2 = SpaceParams(1, 0)

    def test_density_h3(self):
        """Test δ(1) = 4π sinh²(1) on H³"""
        self.assertAlmostEqual(density(self.h3, 1.0), 4 * math.pi * math.sinh(1.0) ** 2, places=10)
        self.assertAlmostEqual(density(self.h3, 1.0), 17.3554, places=3)

    def test_density_at_origin(self):
        """Test that the density vanishes at s = 0 for every space"""
        for p in (self.h2, self.h3, SpaceParams(2, 1), SpaceParams(4, 3)):
            self.assertEqual(density(p, 0.0), 0.0)

    def test_density_growth(self):
        """Test δ(s)/e^{2s} → π on H³"""
        self.assertAlmostEqual(density(self.h3, 20.0) / math.exp(40.0), math.pi, places=6)

    def test_density_negative_radius(self):
        """Test that negative radii are rejected"""
        with self.assertRaises(DomainError):
            density(self.h3, -0.1)

    def test_ball_measure_h3(self):
        """Test μ(B(o,1)) = π(sinh 2 - 2) on H³"""
        self.assertAlmostEqual(ball_measure(self.h3, 1.0), math.pi * (math.sinh(2.0) - 2.0), places=8)

    def test_ball_measure_small_radius(self):
        """Test the Euclidean limit μ(B(o,r))/r^n → ω_{n-1}/n"""
        for p in (self.h2, self.h3, SpaceParams(2, 1)):
            r = 1e-3
            self.assertAlmostEqual(ball_measure(p, r) / r ** p.n, p.sphere_area / p.n, delta=1e-3 * p.sphere_area)

    def test_ball_measure_exponential_regime(self):
        """Test μ(B(o,5))/μ(B(o,4)) ≈ e^{2ρ} on H³"""
        ratio = ball_measure(self.h3, 5.0) / ball_measure(self.h3, 4.0)
        self.assertLess(abs(ratio / math.exp(2.0) - 1), 0.05)

    def test_ball_measure_nonpositive_radius(self):
        """Test that r <= 0 is rejected"""
        with self.assertRaises(DomainError):
            ball_measure(self.h3, 0.0)

    def test_annulus_measure(self):
        """Test the thin annulus scaling and the degenerate ball case"""
        value = annulus_measure(self.h3, Annulus(3.0, 0.1))
        self.assertTrue(1 <= value / (math.exp(6.0) * 0.1) <= 50)
        self.assertAlmostEqual(annulus_measure(self.h3, Annulus(0.5, 0.5)), ball_measure(self.h3, 1.0), places=10)
        self.assertLess(annulus_measure(self.h3, Annulus(3.0, 1e-9)), 1e-5)

    def test_radial_integral_matches_ball_measure(self):
        """Test Simpson integration of the constant function"""
        grid = np.linspace(0.0, 1.0, 401)
        self.assertAlmostEqual(float(radial_integral(self.h3, grid, np.ones_like(grid))),
                               ball_measure(self.h3, 1.0), places=6)


class TestHyperboloid(unittest.TestCase):
    """Test cases for the hyperboloid model"""

    def setUp(self):
        """Set up test fixtures"""
        self.h2 = SpaceParams(1, 0)
        self.origin = ModelPoint.origin(2)

    def test_distance_identity(self):
        """Test d(o, o) = 0"""
        self.assertEqual(model_distance(self.origin, self.origin), 0.0)

    def test_distance_normal_coordinates(self):
        """Test d(o, (cosh 1, sinh 1, 0)) = 1"""
        y = ModelPoint(np.array([math.cosh(1.0), math.sinh(1.0), 0.0]))
        self.assertAlmostEqual(model_distance(self.origin, y), 1.0, places=12)

    def test_distance_matches_geodesic_length(self):
        """Test the closed form against the integrated geodesic"""
        x = ModelPoint.from_polar(0.7, [1.0, 0.3])
        y = ModelPoint.from_polar(1.9, [-0.4, 1.0])
        self.assertAlmostEqual(model_distance(x, y), geodesic_length(x, y), delta=1e-8)

    def test_off_sheet_point(self):
        """Test that points off the hyperboloid are rejected"""
        with self.assertRaises(InvalidPointError):
            ModelPoint(np.array([1.0, 1.0, 0.0]))

    def test_samples_are_deterministic(self):
        """Test that equal seeds give equal samples inside the annulus"""
        a = sample_region(self.h2, 1.0, 2.0, 256, seed=7)
        b = sample_region(self.h2, 1.0, 2.0, 256, seed=7)
        np.testing.assert_array_equal(a, b)
        radii = np.arccosh(a[:, 0])
        self.assertTrue(np.all((radii >= 1.0 - 1e-9) & (radii <= 2.0 + 1e-9)))

    def test_ball_sample_weights(self):
        """Test that ball weights sum to the ball measure"""
        center = ModelPoint.from_polar(1.0, [0.0, 1.0]).coords
        points, weights = ball_sample(self.h2, center, 0.5, 512, seed=3)
        self.assertAlmostEqual(float(weights.sum()), ball_measure(self.h2, 0.5), places=10)
        gaps = np.arccosh(np.maximum(points[:, 0] * center[0] - points[:, 1:] @ center[1:], 1.0))
        self.assertLessEqual(float(gaps.max()), 0.5 + 1e-8)


class TestNets(unittest.TestCase):
    """Test cases for r/3-nets"""

    def setUp(self):
        """Set up test fixtures"""
        self.h2 = SpaceParams(1, 0)

    def test_degenerate_region(self):
        """Test that a ball of radius 0 gives the origin only"""
        net = build_net(self.h2, Annulus(0.0, 0.0), 0.5, 100)
        self.assertEqual(net.size, 1)
        np.testing.assert_array_equal(net.centers[0], ModelPoint.origin(2).coords)

    def test_separation(self):
        """Test that centers are r/3-separated"""
        net = build_net(self.h2, Annulus.ball(1.0), 0.5, 4000, seed=1)
        self.assertGreater(min_separation(net.centers), 0.5 / 3)

    def test_covering_radius(self):
        """Test that fresh samples of the annulus are within r/3 of a center"""
        net = build_net(self.h2, Annulus(2.0, 0.25), 0.25, 20000, seed=2)
        fresh = sample_region(self.h2, 1.75, 2.25, 20000, seed=99)
        self.assertLessEqual(float(nearest_distances(fresh, net.centers).max()), 0.25 / 3 * 1.5)
        self.assertGreaterEqual(covering_multiplicity(net, fresh), 1)

    def test_multiplicity_bounded_in_mesh(self):
        """Test that the overlap of mesh balls stays below the packing bound for every r"""
        counts = []
        for r in (0.1, 0.2, 0.4):
            with self.subTest(r=r):
                net = build_net(self.h2, Annulus(2.0, r), r, 40000, seed=4)
                fresh = sample_region(self.h2, 2.0 - r, 2.0 + r, 8000, seed=41)
                multiplicity = covering_multiplicity(net, fresh)
                # disjoint r/6-balls around centers within r of a point
                packing = ball_measure(self.h2, r + r / 6) / ball_measure(self.h2, r / 6)
                self.assertGreaterEqual(multiplicity, 1)
                self.assertLessEqual(multiplicity, packing)
                self.assertTrue(np.all(ball_counts(net, fresh) >= 1))
                counts.append(multiplicity)
        self.assertLessEqual(max(counts), 64)

    def test_multiplicity_single_center(self):
        """Test multiplicity one for a single-center net and zero outside"""
        net = build_net(self.h2, Annulus(0.0, 0.0), 0.5, 100)
        inside = ModelPoint.from_polar(0.2, [1.0, 0.0])
        outside = ModelPoint.from_polar(3.0, [1.0, 0.0])
        self.assertEqual(covering_multiplicity(net, [inside]), 1)
        np.testing.assert_array_equal(ball_counts(net, [inside, outside]), [1, 0])

    def test_multiplicity_empty_samples(self):
        """Test that an empty sample set is rejected"""
        net = build_net(self.h2, Annulus(0.0, 0.0), 0.5, 100)
        with self.assertRaises(DomainError):
            covering_multiplicity(net, np.empty((0, 3)))

    def test_certification_failure(self):
        """Test that a tiny budget cannot certify a large annulus"""
        with self.assertRaises(CertificationError):
            build_net(self.h2, Annulus(4.0, 1.0), 0.1, 8, seed=0)

    def test_write_net(self):
        """Test the CSV export of centers"""
        net = build_net(self.h2, Annulus.ball(1.0), 0.5, 2000, seed=1)
        with tempfile.TemporaryDirectory() as tmp:
            path = write_net(net, os.path.join(tmp, "net.csv"))
            df = read_table(path, "net")
        self.assertEqual(list(df.columns), ["x0", "x1", "x2", "index"])
        self.assertEqual(len(df), net.size)


if __name__ == '__main__':
    unittest.main()
