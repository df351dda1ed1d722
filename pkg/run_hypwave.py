#!/usr/bin/env python3
"""
Main entry point of the hypwave command line
"""
import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from src.config import RunConfig, load_config
from src.exceptions import DomainError, HypwaveError, UsageError
from src.models.space import SpaceParams
from src.runner import HypwaveRunner, parse_grid, parse_t_list
from src.utils.logging import setup_logging, setup_quiet_logging
from src.verify.registry import CHECK_REGISTRY

EXIT_ERROR = 1
EXIT_USAGE = 64
EXIT_NO_INPUT = 66

logger = logging.getLogger("hypwave")


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting with status 2"""

    def error(self, message):
        raise UsageError(message)


def parse_arguments(argv: Optional[List[str]] = None):
    """Parse command line arguments"""
    common = _Parser(add_help=False)
    common.add_argument('--space', type=str, help='Space as m1=2,m2=0 or H3')
    common.add_argument('--config', type=str, help='JSON config file; its values win over flags')
    common.add_argument('--threads', type=int, help='Worker threads (default: HYPWAVE_THREADS)')
    common.add_argument('--seed', type=int, help='Seed of every quasi-random path')
    common.add_argument('--quiet', action='store_true', help='Only show verdicts, written files and errors')
    common.add_argument('--log-file', type=str, help='Write the complete log to this file')
    common.add_argument('--s-min', type=float, help='Smallest radius of the s grid')
    common.add_argument('--s-max', type=float, help='Largest radius of the s grid')
    common.add_argument('--s-points', type=int, help='Points of the s grid')
    common.add_argument('--lam-max', type=float, help='Spectral cutoff')
    common.add_argument('--lam-points', type=int, help='Points of the λ grid (N - 1 divisible by 4)')

    parser = _Parser(description='Harmonic analysis and wave propagators on rank-one symmetric spaces')
    commands = parser.add_subparsers(dest='command', parser_class=_Parser)
    commands.required = True

    transform = commands.add_parser('transform', parents=[common], help='Spherical transform of a CSV')
    transform.add_argument('--direction', choices=['fwd', 'inv'], default='fwd')
    transform.add_argument('--in', dest='in_path', type=str, help='Input profile or spectrum CSV')
    transform.add_argument('--out', type=str, help='Output CSV')

    kernel = commands.add_parser('kernel', parents=[common], help='Tabulate the wave kernel K_t')
    kernel.add_argument('--symbol', type=str, default='gaussian', help='rational:b[:c] or gaussian[:b]')
    kernel.add_argument('--t', type=float, required=True, help='Time')
    kernel.add_argument('--contour', choices=['auto', 'on', 'off'], help='Contour shift beyond s > t')
    kernel.add_argument('--exclusion-radius', type=float, help='Band |s - t| left out of envelope fits')
    kernel.add_argument('--out', type=str, help='Output CSV (s, K, Kprime, reliable)')

    atoms = commands.add_parser('atoms', parents=[common], help='Atomic decomposition of a radial profile')
    atoms.add_argument('--shape', type=str, required=True, help='ball:R or annulus:R:r')
    atoms.add_argument('--input', type=str, help='Input profile CSV')
    atoms.add_argument('--out', type=str, help='Output JSON decomposition')
    atoms.add_argument('--net-out', type=str, help='Also export the net centers as CSV')

    verify = commands.add_parser('verify', parents=[common], help='Run a verification check')
    verify.add_argument('--check', choices=list(CHECK_REGISTRY), required=True)
    verify.add_argument('--symbol', type=str, help='rational:b[:c] or gaussian[:b]')
    verify.add_argument('--t', type=float, help='Time of single-time checks')
    verify.add_argument('--t-list', type=str, help='Comma-separated times of the growth check')
    verify.add_argument('--grid', type=str, help='Grid overrides, e.g. s_max=8,s_points=161')
    verify.add_argument('--contour', choices=['auto', 'on', 'off'])
    verify.add_argument('--exclusion-radius', type=float)
    verify.add_argument('--out', type=str, help='Output JSON report')

    spherical = commands.add_parser('spherical', parents=[common], help='Tabulate φ_λ(s), c(λ) and density')
    spherical.add_argument('--out', type=str, help='Output CSV')

    return parser.parse_args(argv)


def flag_overrides(args) -> Dict[str, Any]:
    """Nested configuration values given on the command line"""
    overrides: Dict[str, Any] = {}
    if args.space:
        try:
            p = SpaceParams.parse(args.space)
        except DomainError as e:
            raise UsageError(str(e)) from e
        overrides["space"] = {"m1": p.m1, "m2": p.m2}
    grid = {key: getattr(args, key) for key in ("s_min", "s_max", "s_points", "lam_max", "lam_points")
            if getattr(args, key) is not None}
    if getattr(args, "grid", None):
        grid.update(parse_grid(args.grid))
    if grid:
        overrides["grid"] = grid
    kernel = {}
    if getattr(args, "contour", None):
        kernel["contour"] = args.contour
    if getattr(args, "exclusion_radius", None) is not None:
        kernel["exclusion_radius"] = args.exclusion_radius
    if kernel:
        overrides["kernel"] = kernel
    if args.threads is not None:
        overrides["threads"] = args.threads
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.log_file:
        overrides["log"] = {"file": args.log_file}
    return overrides


def dispatch(runner: HypwaveRunner, args) -> int:
    if args.command == 'transform':
        return runner.transform(args.direction, args.in_path, args.out)
    if args.command == 'kernel':
        return runner.kernel(args.symbol, args.t, args.out)
    if args.command == 'atoms':
        return runner.atoms(args.shape, args.input, args.out, args.net_out)
    if args.command == 'verify':
        t_list = parse_t_list(args.t_list) if args.t_list else None
        return runner.verify(args.check, args.symbol, args.t, t_list, args.out)
    if args.command == 'spherical':
        return runner.spherical(args.out)
    raise UsageError(f"unknown subcommand {args.command!r}")


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code"""
    try:
        args = parse_arguments(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return int(e.code or 0)

    try:
        config = RunConfig.from_dict(load_config(args.config, flag_overrides(args)))
        log_file = config.log.get("file")
        if args.quiet:
            setup_quiet_logging(log_file=log_file)
        else:
            setup_logging(log_file=log_file,
                          console_level=getattr(logging, str(config.log.get("level", "INFO")).upper(), logging.INFO))
        logger.info(f"Starting hypwave {args.command}")
        return dispatch(HypwaveRunner(config), args)
    except UsageError as e:
        logger.error(f"Usage error: {e}")
        return EXIT_USAGE
    except FileNotFoundError as e:
        logger.error(f"Missing input file: {e}")
        return EXIT_NO_INPUT
    except HypwaveError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
