"""
HypwaveRunner - orchestration of the command-line subcommands
"""
import logging
import os
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from tabulate import tabulate

from .config import RunConfig
from .exceptions import DomainError, UsageError
from .geometry.nets import build_net, write_net
from .hardy.decompose import decompose_annulus, decompose_ball, validate_decomposition
from .models.report import BoundReport, GrowthReport, ReportStatus
from .models.space import Annulus, SpaceParams
from .propagator.kernel import wave_kernel
from .propagator.symbols import Symbol, parse_symbol_spec
from .specfun.cfunction import c_inverse, plancherel_density
from .specfun.spherical import spherical_table
from .transform.operations import forward, inverse
from .transform.plan import lam_grid_from, s_grid_from
from .utils.io import read_profile, read_spectrum, write_json, write_profile, write_spectrum, write_table
from .verify.registry import get_check

logger = logging.getLogger(__name__)


def parse_shape(text: str) -> Tuple[str, Annulus]:
    """
    Parse a support shape "ball:R" or "annulus:R:r"

    Args:
        text: Shape description

    Returns:
        ("ball" | "annulus", region)
    """
    parts = [part.strip() for part in text.split(":")]
    try:
        numbers = [float(part) for part in parts[1:]]
    except ValueError as e:
        raise UsageError(f"cannot parse shape {text!r}") from e
    if parts[0] == "ball" and len(numbers) == 1:
        return "ball", Annulus.ball(numbers[0])
    if parts[0] == "annulus" and len(numbers) == 2:
        return "annulus", Annulus(numbers[0], numbers[1])
    raise UsageError(f"shapes read ball:R or annulus:R:r, got {text!r}")


def parse_t_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise UsageError(f"cannot parse time list {text!r}") from e


def parse_grid(text: str) -> Dict[str, Any]:
    """Grid overrides such as "s_max=8,s_points=161,lam_max=40,lam_points=801" """
    keys = {"s_min": float, "s_max": float, "s_points": int, "lam_max": float, "lam_points": int}
    grid = {}
    for part in text.split(","):
        key, sep, value = part.partition("=")
        key = key.strip()
        if not sep or key not in keys:
            raise UsageError(f"grid entries read key=value with keys {', '.join(keys)}, got {part!r}")
        try:
            grid[key] = keys[key](value)
        except ValueError as e:
            raise UsageError(f"cannot parse grid entry {part!r}") from e
    return grid


def _require_file(path: Optional[str], flag: str) -> str:
    if not path:
        raise UsageError(f"{flag} is required")
    if not os.path.exists(path):
        raise FileNotFoundError(path)
    return path


class HypwaveRunner:
    """
    Runs one subcommand against a validated configuration
    """

    def __init__(self, config: RunConfig):
        """
        Initialize the runner.

        Args:
            config: Validated run configuration
        """
        self.config = config
        self.p: SpaceParams = config.space_params
        self.threads = config.threads
        logger.info(f"Space {self.p.label}: rho={self.p.rho:g}, d={self.p.d:g}, seed={config.seed}")

    def symbol(self, text: Optional[str]) -> Optional[Symbol]:
        if not text:
            return None
        try:
            return parse_symbol_spec(text, self.p)
        except DomainError as e:
            raise UsageError(f"--symbol {text!r}: {e}") from e

    def transform(self, direction: str, in_path: Optional[str], out_path: Optional[str]) -> int:
        """Forward (profile -> spectrum) or inverse (spectrum -> profile) transform of a CSV"""
        source = _require_file(in_path, "--in")
        if not out_path:
            raise UsageError("--out is required")
        grid = self.config.grid
        if direction == "fwd":
            spectrum = forward(self.p, read_profile(source), lam_grid_from(grid))
            write_spectrum(spectrum, out_path)
        elif direction == "inv":
            s_grid = s_grid_from(grid, grid.s_max, grid.s_points)
            write_profile(inverse(self.p, read_spectrum(source), s_grid), out_path)
        else:
            raise UsageError(f"direction must be fwd or inv, got {direction!r}")
        return 0

    def kernel(self, symbol_text: Optional[str], t: float, out_path: Optional[str]) -> int:
        """Tabulate K_t and K_t' on the configured s grid"""
        m = self.symbol(symbol_text) or parse_symbol_spec("gaussian", self.p)
        grid = self.config.grid
        s_grid = np.linspace(grid.s_min, grid.s_max, grid.s_points)
        k = wave_kernel(self.p, m, t, s_grid, lam_grid_from(grid), self.config.kernel, self.threads)
        summary = k.summary()
        logger.info(f"Kernel: t={t:g}, {summary['points']} points, {summary['unreliable']} unreliable, "
                    f"{summary['contour_points']} on the shifted contour")
        if out_path:
            write_table(k.to_frame(), out_path, "kernel")
        else:
            print(tabulate(k.to_frame().head(20), headers="keys", tablefmt="simple", showindex=False))
        return 0

    def atoms(self, shape_text: str, in_path: Optional[str], out_path: Optional[str],
              net_path: Optional[str] = None) -> int:
        """Atomic decomposition of a radial profile supported in a ball or an annulus"""
        kind, region = parse_shape(shape_text)
        profile = read_profile(_require_file(in_path, "--input"))
        hardy, seed = self.config.hardy, self.config.seed
        if kind == "ball":
            decomposition = decompose_ball(self.p, profile, region.upper, hardy, self.config.tolerances,
                                           seed, self.threads)
            mesh = 1.0
        else:
            decomposition = decompose_annulus(self.p, profile, region.R, region.r, hardy,
                                              self.config.tolerances, seed, self.threads)
            mesh = region.r
        reports = validate_decomposition(self.p, decomposition, hardy, self.config.tolerances, seed)
        failed = sum(1 for report in reports if not report.passed)
        payload = decomposition.to_dict()
        payload["validation"] = {"atoms": len(reports), "failed": failed}
        logger.info(f"Decomposition: {len(decomposition)} atoms, total {decomposition.total:.6g}, "
                    f"{failed} failed validation")
        if out_path:
            write_json(payload, out_path, "decomposition")
        else:
            print(tabulate([[key, value] for key, value in decomposition.constants.items()],
                           headers=["constant", "value"], tablefmt="simple"))
        if net_path and "net_size" in decomposition.meta:
            # same region, mesh, budget and seed as the decomposition, so the net is identical
            write_net(build_net(self.p, region, mesh, hardy.net_budget, seed), net_path)
        return 0 if failed == 0 else ReportStatus.FAIL.exit_code

    def verify(self, check_name: str, symbol_text: Optional[str], t: Optional[float],
               t_list: Optional[List[float]], out_path: Optional[str]) -> int:
        """Run a registered check and map its verdict to an exit code"""
        check = get_check(check_name)(self.p, self.config, self.threads)
        report = check.run(self.symbol(symbol_text), t, t_list)
        payload = report.to_dict()
        payload["seed"] = self.config.seed
        if out_path:
            write_json(payload, out_path, "report")
        print(render_report(report))
        status = report.status
        logger.info(f"Verdict {status.value.upper()}: {check_name} on {self.p.label}")
        return status.exit_code

    def spherical(self, out_path: Optional[str]) -> int:
        """Tabulate φ_λ(s), ∂_sφ_λ(s), c(λ) and the Plancherel density"""
        grid = self.config.grid
        lam = lam_grid_from(grid)
        s = np.linspace(0.0, grid.s_max, grid.s_points)
        table = spherical_table(self.p, lam, s)
        with np.errstate(divide="ignore", invalid="ignore"):
            c = np.where(lam == 0, np.nan, 1.0 / c_inverse(self.p, lam))
        L, S = np.meshgrid(lam, s, indexing="ij")
        methods = np.array([table.method(i).value for i in range(s.size)])
        frame = pd.DataFrame({
            "lambda": L.ravel(),
            "s": S.ravel(),
            "value": np.real(table.values).ravel(),
            "derivative": np.real(table.derivatives).ravel(),
            "method": np.tile(methods, lam.size),
            "c_re": np.repeat(c.real, s.size),
            "c_im": np.repeat(c.imag, s.size),
            "density": np.repeat(plancherel_density(self.p, lam), s.size),
        })
        if out_path:
            write_table(frame, out_path, "spherical")
        else:
            print(tabulate(frame.head(20), headers="keys", tablefmt="simple", showindex=False))
        return 0


def render_report(report) -> str:
    """Console table of a bound or growth report"""
    if isinstance(report, BoundReport):
        rows = [[r.name, r.envelope, f"{r.constant:.4g}", f"{r.constant_fine:.4g}", r.n_points,
                 r.n_unreliable, r.status.value, r.note] for r in report.regions]
        headers = ["region", "envelope", "C*", "C* fine", "points", "unreliable", "status", "note"]
        return f"\n{tabulate(rows, headers=headers, tablefmt='simple')}\n"
    if isinstance(report, GrowthReport):
        rows = [[s.atom_label, s.quantity, len(s.t_values), f"{s.slope:.4g}", f"{s.ratio_spread:.4g}",
                 f"{s.max_ratio:.4g}"] for s in report.series]
        headers = ["atom", "quantity", "times", "rate", "ratio spread", "max ratio"]
        notes = "\n".join(report.notes)
        return f"\n{tabulate(rows, headers=headers, tablefmt='simple')}\nrho = {report.rho:g}\n{notes}\n"
    raise DomainError(f"cannot render {type(report).__name__}")
