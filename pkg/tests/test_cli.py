"""
Tests for the hypwave command line: argument parsing, exit codes and outputs
"""
import json
import os
import shutil
import tempfile
import unittest
from unittest.mock import patch

import numpy as np

from run_hypwave import EXIT_NO_INPUT, EXIT_USAGE, flag_overrides, main, parse_arguments
from src.exceptions import UsageError
from src.models.profile import RadialProfile
from src.runner import parse_grid, parse_shape, parse_t_list
from src.utils.io import read_spectrum, read_table, write_profile


class TestParsers(unittest.TestCase):
    """Test cases for the command-line value parsers"""

    def test_parse_shape(self):
        """Test ball and annulus shapes"""
        kind, region = parse_shape("ball:2")
        self.assertEqual(kind, "ball")
        self.assertEqual((region.lower, region.upper), (0.0, 2.0))
        kind, region = parse_shape("annulus:3:0.5")
        self.assertEqual(kind, "annulus")
        self.assertEqual((region.lower, region.upper), (2.5, 3.5))
        for bad in ("disk:1", "ball:x", "annulus:1"):
            with self.assertRaises(UsageError):
                parse_shape(bad)

    def test_parse_t_list(self):
        """Test comma-separated times"""
        self.assertEqual(parse_t_list("1,2, 3.5"), [1.0, 2.0, 3.5])
        with self.assertRaises(UsageError):
            parse_t_list("1,two")

    def test_parse_grid(self):
        """Test key=value grid overrides"""
        self.assertEqual(parse_grid("s_max=8,lam_points=801"), {"s_max": 8.0, "lam_points": 801})
        with self.assertRaises(UsageError):
            parse_grid("depth=3")

    def test_flag_overrides(self):
        """Test that flags become nested configuration values"""
        args = parse_arguments(["kernel", "--t", "1", "--space", "H3", "--threads", "2", "--lam-max", "20"])
        overrides = flag_overrides(args)
        self.assertEqual(overrides["space"], {"m1": 2, "m2": 0})
        self.assertEqual(overrides["threads"], 2)
        self.assertEqual(overrides["grid"], {"lam_max": 20.0})

    def test_bad_space_flag(self):
        """Test that an unparsable space is a usage error"""
        args = parse_arguments(["spherical", "--space", "X7"])
        with self.assertRaises(UsageError):
            flag_overrides(args)


class TestExitCodes(unittest.TestCase):
    """Test cases for the mapping of outcomes to exit codes"""

    def setUp(self):
        """Set up test fixtures"""
        self.workdir = tempfile.mkdtemp()
        self.env = patch.dict(os.environ, {"CONFIG_PATH": ""})
        self.env.start()

    def tearDown(self):
        self.env.stop()
        shutil.rmtree(self.workdir, ignore_errors=True)

    def path(self, name):
        return os.path.join(self.workdir, name)

    def test_missing_subcommand(self):
        """Test that no subcommand is a usage error"""
        self.assertEqual(main([]), EXIT_USAGE)

    def test_unknown_subcommand(self):
        """Test that an unknown subcommand is a usage error"""
        self.assertEqual(main(["propagate"]), EXIT_USAGE)

    def test_unknown_check(self):
        """Test that an unregistered check name is a usage error"""
        self.assertEqual(main(["verify", "--check", "wave"]), EXIT_USAGE)

    def test_missing_input(self):
        """Test that a missing input file exits with 66"""
        code = main(["transform", "--quiet", "--in", self.path("absent.csv"), "--out", self.path("out.csv")])
        self.assertEqual(code, EXIT_NO_INPUT)

    def test_missing_config(self):
        """Test that a missing --config file exits with 66"""
        self.assertEqual(main(["spherical", "--quiet", "--config", self.path("absent.json")]), EXIT_NO_INPUT)

    def test_invalid_grid(self):
        """Test that lam_points - 1 not divisible by 4 is a usage error"""
        self.assertEqual(main(["spherical", "--quiet", "--lam-points", "6"]), EXIT_USAGE)

    def test_bad_symbol(self):
        """Test that a malformed symbol is a usage error"""
        self.assertEqual(main(["kernel", "--quiet", "--t", "1", "--symbol", "bessel:2"]), EXIT_USAGE)

    def test_bad_shape(self):
        """Test that a malformed shape is a usage error"""
        profile = self.path("profile.csv")
        write_profile(RadialProfile(np.linspace(0.0, 1.0, 11), np.zeros(11)), profile)
        self.assertEqual(main(["atoms", "--quiet", "--shape", "disk:1", "--input", profile]), EXIT_USAGE)

    @patch("run_hypwave.HypwaveRunner.verify", return_value=3)
    def test_verdict_passthrough(self, mock_verify):
        """Test that the check verdict becomes the exit code"""
        self.assertEqual(main(["verify", "--quiet", "--check", "lemma51"]), 3)
        mock_verify.assert_called_once_with("lemma51", None, None, None, None)

    @patch("run_hypwave.HypwaveRunner.verify", return_value=0)
    def test_t_list_forwarded(self, mock_verify):
        """Test that --t-list reaches the runner as floats"""
        main(["verify", "--quiet", "--check", "growth", "--t-list", "1,2,4"])
        self.assertEqual(mock_verify.call_args[0][3], [1.0, 2.0, 4.0])


class TestOutputs(unittest.TestCase):
    """Test cases for files written by the subcommands"""

    def setUp(self):
        """Set up test fixtures"""
        self.workdir = tempfile.mkdtemp()
        self.env = patch.dict(os.environ, {"CONFIG_PATH": ""})
        self.env.start()
        self.grid = ["--lam-max", "2", "--lam-points", "5", "--s-max", "1", "--s-points", "3"]

    def tearDown(self):
        self.env.stop()
        shutil.rmtree(self.workdir, ignore_errors=True)

    def test_spherical_table(self):
        """Test the spherical table layout and schema header"""
        out = os.path.join(self.workdir, "phi.csv")
        self.assertEqual(main(["spherical", "--quiet", "--space", "H2", "--out", out] + self.grid), 0)
        with open(out) as f:
            self.assertEqual(f.readline().strip(), "# schema: hypwave.spherical/1")
        table = read_table(out, "spherical")
        self.assertEqual(len(table), 15)
        self.assertEqual(list(table.columns),
                         ["lambda", "s", "value", "derivative", "method", "c_re", "c_im", "density"])
        self.assertTrue(np.allclose(table.loc[table["s"] == 0, "value"], 1.0))

    def test_config_wins_over_flags(self):
        """Test that values in --config override the same flags"""
        config = os.path.join(self.workdir, "config.json")
        with open(config, "w") as f:
            json.dump({"grid": {"lam_points": 9}}, f)
        out = os.path.join(self.workdir, "phi.csv")
        code = main(["spherical", "--quiet", "--config", config, "--out", out] + self.grid)
        self.assertEqual(code, 0)
        self.assertEqual(read_table(out)["lambda"].nunique(), 9)

    def test_forward_transform(self):
        """Test transform fwd from a profile CSV to a spectrum CSV"""
        s = np.linspace(0.0, 1.0, 101)
        source = os.path.join(self.workdir, "bump.csv")
        write_profile(RadialProfile(s, (1 - s ** 2) ** 4), source)
        out = os.path.join(self.workdir, "spectrum.csv")
        code = main(["transform", "--quiet", "--direction", "fwd", "--in", source, "--out", out,
                     "--lam-max", "4", "--lam-points", "41"])
        self.assertEqual(code, 0)
        spectrum = read_spectrum(out)
        self.assertEqual(spectrum.lam_grid.size, 41)
        self.assertGreater(float(np.real(spectrum.values[0])), 0.0)


if __name__ == '__main__':
    unittest.main()
