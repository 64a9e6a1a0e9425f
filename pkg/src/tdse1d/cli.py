"""Command line entry points: run, sweep, validate.

Exit codes: 0 success, 1 configuration problem, 2 numeric failure.
"""

import argparse
import sys

import numpy as np

from .config import load_config
from .errors import ConfigurationError, NumericFailure
from .runner import run_scenario, run_sweep

__all__ = ["main"]


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="tdse1d",
        description="1D time-dependent Schrodinger simulations (Crank-Nicolson)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one scenario and write its CSVs")
    p_run.add_argument("config")
    p_run.add_argument("--out", help="override the configured output directory")

    p_sweep = sub.add_parser("sweep", help="run one simulation per wavevector k")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--k-from", type=float, default=0.6)
    p_sweep.add_argument("--k-to", type=float, default=3.2)
    p_sweep.add_argument("--k-step", type=float, default=0.2)

    p_val = sub.add_parser("validate", help="parse and check a config, run nothing")
    p_val.add_argument("config")
    return parser


def _k_grid(k_from, k_to, k_step):
    if k_step <= 0:
        raise ConfigurationError(f"--k-step must be positive, got {k_step}")
    if k_to < k_from:
        raise ConfigurationError(f"--k-to {k_to} lies below --k-from {k_from}")
    count = int(np.floor((k_to - k_from) / k_step + 1e-9)) + 1
    return [k_from + i * k_step for i in range(count)]


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        scenario = load_config(args.config)
        if args.command == "validate":
            print(f"{args.config}: OK")
            return 0
        if args.command == "run":
            if args.out:
                scenario = scenario.with_output_dir(args.out)
            code, _, _ = run_scenario(scenario)
            return code
        code, records = run_sweep(scenario, _k_grid(args.k_from, args.k_to, args.k_step))
        print(f"sweep: {len(records)} k values recorded in {scenario.output_dir}/sweep.csv")
        return code
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except NumericFailure as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
