"""
Tests for configuration loading and validation
"""
import json
import os
import shutil
import tempfile
import unittest
from unittest.mock import patch

from src.config import GridSpec, RunConfig, _deep_update, default_config, load_config
from src.exceptions import UsageError
from src.utils.parallel import resolve_threads


class TestConfig(unittest.TestCase):
    """Test cases for the configuration layer"""

    def setUp(self):
        """Set up test fixtures"""
        self.workdir = tempfile.mkdtemp()
        self.env = patch.dict(os.environ, {"CONFIG_PATH": "", "HYPWAVE_THREADS": "", "HYPWAVE_SEED": ""})
        self.env.start()

    def tearDown(self):
        self.env.stop()
        shutil.rmtree(self.workdir, ignore_errors=True)

    def test_defaults(self):
        """Test the default space, grid and thread count"""
        config = RunConfig.from_dict(default_config())
        self.assertEqual(config.space_params.label, "H3")
        self.assertEqual(config.grid.lam_points, 3001)
        self.assertIsNone(config.threads)

    def test_thread_env(self):
        """Test that HYPWAVE_THREADS enters the defaults and caps workers"""
        with patch.dict(os.environ, {"HYPWAVE_THREADS": "3"}):
            self.assertEqual(default_config()["threads"], 3)
            self.assertEqual(resolve_threads(8), 3)
            self.assertEqual(resolve_threads(2), 2)
        with patch.dict(os.environ, {"HYPWAVE_THREADS": "many"}):
            self.assertIsNone(default_config()["threads"])

    def test_seed_env(self):
        """Test that HYPWAVE_SEED replaces the default seed"""
        with patch.dict(os.environ, {"HYPWAVE_SEED": "42"}):
            self.assertEqual(default_config()["seed"], 42)

    def test_deep_update(self):
        """Test that nested updates keep sibling keys"""
        target = {"grid": {"s_max": 12.0, "s_points": 241}, "seed": 1}
        _deep_update(target, {"grid": {"s_max": 8.0}, "seed": 2})
        self.assertEqual(target, {"grid": {"s_max": 8.0, "s_points": 241}, "seed": 2})

    def test_file_wins(self):
        """Test that the JSON file overrides command-line values"""
        path = os.path.join(self.workdir, "config.json")
        with open(path, "w") as f:
            json.dump({"seed": 7, "grid": {"s_max": 5.0}}, f)
        config = load_config(path, {"seed": 3, "grid": {"s_points": 101}})
        self.assertEqual(config["seed"], 7)
        self.assertEqual(config["grid"]["s_max"], 5.0)
        self.assertEqual(config["grid"]["s_points"], 101)

    def test_missing_file(self):
        """Test that an explicit missing path raises FileNotFoundError"""
        with self.assertRaises(FileNotFoundError):
            load_config(os.path.join(self.workdir, "absent.json"))

    def test_invalid_json(self):
        """Test that a malformed file is a usage error"""
        path = os.path.join(self.workdir, "broken.json")
        with open(path, "w") as f:
            f.write("{grid: }")
        with self.assertRaises(UsageError):
            load_config(path)

    def test_invalid_values(self):
        """Test that grid and space violations become usage errors"""
        config = default_config()
        config["grid"]["lam_points"] = 6
        with self.assertRaises(UsageError):
            RunConfig.from_dict(config)
        config = default_config()
        config["space"] = {"m1": 0, "m2": 0}
        with self.assertRaises(UsageError):
            RunConfig.from_dict(config)
        config = default_config()
        config["kernel"]["contour"] = "sometimes"
        with self.assertRaises(UsageError):
            RunConfig.from_dict(config)

    def test_refined_grid(self):
        """Test that refinement keeps lam_points - 1 divisible by 4"""
        fine = GridSpec(lam_points=401, s_points=81).refined()
        self.assertEqual((fine.lam_points, fine.s_points), (801, 161))


if __name__ == '__main__':
    unittest.main()
