#!/usr/bin/env python3
"""
Command-line front end for the American floating-strike Asian option toolkit
Computes boundaries, surfaces, expiry limits, asymptotes, sweeps, cross-method
comparisons and prices, writing commented CSV
"""

import argparse
import logging
import os
import sys
from typing import Any, Dict, List, Optional

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

# Add project root to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from config.config import LOGGING_CONFIG
from core.exceptions import AsianOptionError
from tools.run_config import build_run_config, load_config_file
from workflows import WORKFLOWS

logger = logging.getLogger(__name__)

TIME_UNITS = "All times (t, T, tau) are in years; rates and volatility are per year."

COMMAND_HELP = {
    'boundary': "Early exercise boundary by front-fixing: t, tau, rho, x_star",
    'surface': "Portfolio surface Pi(xi, tau) and profile slices",
    'compare': "Front-fixing versus PSOR boundary distances",
    'expiry': "Limit of the boundary at expiry",
    'hstar': "Universal near-expiry slope constant h*",
    'asymptote': "Near-expiry expansion of the boundary",
    'sweep': "Expiry limits over an (r, q) grid",
    'value': "European value, early exercise premium and price at one state",
}


def setup_logging(verbose: bool = False) -> None:
    """Configure root logging from LOGGING_CONFIG"""
    handlers: List[logging.Handler] = [logging.StreamHandler()]
    if LOGGING_CONFIG['file_path']:
        handlers.append(logging.FileHandler(LOGGING_CONFIG['file_path']))
    logging.basicConfig(
        level=getattr(logging, str(LOGGING_CONFIG['level']).upper(), logging.INFO),
        format=LOGGING_CONFIG['format'],
        handlers=handlers,
    )
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("model and grid")
    group.add_argument('--r', type=float, help='Risk-free rate')
    group.add_argument('--q', type=float, help='Dividend yield')
    group.add_argument('--sigma', type=float, help='Volatility')
    group.add_argument('--T', type=float, help='Maturity in years')
    group.add_argument('--avg', choices=['arith', 'geom', 'weighted'], help='Averaging method')
    group.add_argument('--lambda', dest='lam', type=float, help='Decay rate for weighted averaging')
    group.add_argument('--kind', choices=['call', 'put'], help='Option kind')
    group.add_argument('--n', type=int, help='Spatial steps of the front-fixing grid')
    group.add_argument('--m', type=int, help='Time steps of the front-fixing grid')
    group.add_argument('--L', type=float, help='Upper end of the xi domain')
    group.add_argument('--out', help='Output CSV path (stdout when omitted)')
    group.add_argument('--config', help='Flat key = value config file; flags override it')
    group.add_argument('--seed', type=int, help='Monte Carlo root seed')
    group.add_argument('--verbose', '-v', action='store_true', help='Enable verbose logging')
    return common


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per workflow"""
    common = _common_flags()
    parser = argparse.ArgumentParser(
        description='American floating-strike Asian option boundaries and prices',
        epilog=TIME_UNITS,
    )
    commands = parser.add_subparsers(dest='command', required=True)
    sub = {
        name: commands.add_parser(name, parents=[common], help=text, description=text, epilog=TIME_UNITS)
        for name, text in COMMAND_HELP.items()
    }

    for name in ('boundary', 'surface', 'compare', 'asymptote', 'value'):
        sub[name].add_argument('--tol-fp', dest='tol_fp', type=float, help='Fixed-point tolerance')
        sub[name].add_argument('--p-max', dest='p_max', type=int, help='Fixed-point iteration cap')
    sub['surface'].add_argument('--stride', type=int, help='Store every stride-th time level')
    sub['surface'].add_argument('--slices', help='Comma-separated tau values for profile slices')
    sub['compare'].add_argument('--psor-n', dest='psor_n', type=int, help='PSOR spatial steps')
    sub['compare'].add_argument('--psor-m', dest='psor_m', type=int, help='PSOR time steps')
    sub['compare'].add_argument('--omega', type=float, help='PSOR relaxation factor in (1, 2)')
    sub['compare'].add_argument('--psor-tol', dest='psor_tol', type=float, help='PSOR update tolerance')
    sub['compare'].add_argument('--x-min', dest='x_min', type=float, help='Lower end of the PSOR x grid')
    sub['compare'].add_argument('--x-max', dest='x_max', type=float, help='Upper end of the PSOR x grid')
    sub['hstar'].add_argument('--nodes', type=int, help='Quadrature points of the h-equation')
    sub['asymptote'].add_argument('--points', type=int, help='Points of the t grid')
    sub['asymptote'].add_argument('--overlay', action='store_const', const='true', help='Also solve the boundary')
    sub['asymptote'].add_argument('--fraction', type=float, help='Tail fraction of the slope fit')
    for flag in ('r-min', 'r-max', 'q-min', 'q-max'):
        sub['sweep'].add_argument(f'--{flag}', dest=flag.replace('-', '_'), type=float)
    sub['sweep'].add_argument('--steps', type=int, help='Points per axis')
    sub['value'].add_argument('--t', type=float, help='Valuation time')
    sub['value'].add_argument('--S', type=float, help='Stock price')
    sub['value'].add_argument('--A', type=float, help='Running average')
    sub['value'].add_argument('--x', type=float, help='Ratio A/S (sets S = 1)')
    sub['value'].add_argument('--boundary-file', dest='boundary_file', help='Boundary CSV from the boundary command')
    sub['value'].add_argument('--mc-paths', dest='mc_paths', type=int, help='Monte Carlo cross-check paths')
    sub['value'].add_argument('--mc-steps', dest='mc_steps', type=int, help='Monte Carlo time steps')
    return parser


def _flag_values(args: argparse.Namespace) -> Dict[str, Any]:
    flags = {key: value for key, value in vars(args).items() if key not in ('command', 'config', 'verbose')}
    flags['lambda'] = flags.pop('lam', None)
    return flags


def display_summary(console: Console, result: Dict[str, Any]) -> None:
    """Summary table of a workflow result"""
    table = Table(title=f"{result.get('workflow', 'Workflow')} Summary")
    table.add_column("Metric", justify="right", style="cyan", no_wrap=True)
    table.add_column("Value", style="magenta")
    for key, value in result.get('summary', {}).items():
        text = f"{value:.10g}" if isinstance(value, float) else str(value)
        table.add_row(key, text)
    for path in result.get('outputs', []):
        table.add_row("output", path)
    console.print(table)


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point with command line interface"""
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)
    # CSV owns stdout; tables and panels go to stderr
    console = Console(stderr=True)

    try:
        file_values = load_config_file(args.config) if args.config else {}
        config = build_run_config(args.command, _flag_values(args), file_values)
    except AsianOptionError as e:
        logger.error(f"Invalid configuration: {e}")
        console.print(Panel(f"Invalid configuration: {e}", title="Error", border_style="red"))
        return 2

    result = WORKFLOWS[args.command]().run(config)
    if result.get('success'):
        display_summary(console, result)
        return 0

    console.print(Panel(
        f"Stage [bold]{result.get('failed_stage')}[/bold] failed: {result.get('error')}",
        title=f"{args.command} failed",
        border_style="red",
    ))
    return 1


if __name__ == "__main__":
    sys.exit(main())
