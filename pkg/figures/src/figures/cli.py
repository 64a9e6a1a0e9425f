"""Single-shot rendering: render <figure_id> <input_dir> <output_path>."""

import argparse
import sys

from .plots import FIGURE_IDS, FigureError, FigureJob, render

__all__ = ["main"]


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="render",
        description="draw one figure from a simulation run directory",
    )
    parser.add_argument("figure_id", help=f"one of: {', '.join(FIGURE_IDS)}")
    parser.add_argument("input_dir", help="directory holding the run's CSV files")
    parser.add_argument("output_path", help="PNG file to write")
    args = parser.parse_args(argv)
    job = FigureJob(
        input_dir=args.input_dir,
        figure_id=args.figure_id,
        output_path=args.output_path,
    )
    try:
        render(job)
    except FigureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
