"""
Command-line runner for the solenoidal verification suites.

Usage:
    python main.py --suite jacobi --n 2 --seed 1
    python main.py --suite cover-rank --alpha 0 --out report.json

Exit status: 0 when every check passes, 1 when a check fails, 2 on a usage
or configuration error.
"""

import argparse
import logging
import sys
from fractions import Fraction

from errors import ConfigError, SolenoidError
from harness import RunConfig, run_suite
from report import print_report_table, write_report
from suites import SUITE_NAMES

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2

logger = logging.getLogger(__name__)


def rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def build_parser():
    parser = argparse.ArgumentParser(
        description="Exact verification suites for solenoidal Lie algebras W_mu.")
    parser.add_argument("--n", type=int, default=1, help="rank: number of mu components")
    parser.add_argument("--seed", type=int, default=1, help="seed of the random generator")
    parser.add_argument("--window", type=int, default=3, help="window half-width K (>= 2)")
    parser.add_argument("--eval-window", type=int, default=2, dest="eval_window",
                        help="evaluation window half-width K' for the A-cover")
    parser.add_argument("--suite", default="all", choices=SUITE_NAMES, help="suite to run")
    parser.add_argument("--alpha", type=rational, default=None,
                        help="bind alpha to a rational (default: symbolic)")
    parser.add_argument("--beta", type=rational, default=None,
                        help="bind beta to a rational; 0 selects the integral coset (default: symbolic)")
    parser.add_argument("--r", type=int, default=2, help="order of the omega identity (>= 2)")
    parser.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    parser.add_argument("--jet-rep", default=None, dest="jet_rep",
                        help="extra JetRep text file for the aw-calculus suite")
    parser.add_argument("--timing", action="store_true", help="record elapsed_ms in the report")
    parser.add_argument("--log-level", default="INFO", dest="log_level",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    return parser


def main(argv=None):
    """Parse arguments, run the suite and return the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code

    logging.basicConfig(level=args.log_level, stream=sys.stderr,
                        format="%(asctime)s %(name)s %(levelname)s %(message)s")

    config = RunConfig(n=args.n, seed=args.seed, window=args.window, eval_window=args.eval_window,
                       suite=args.suite, alpha=args.alpha, beta=args.beta, r=args.r, out=args.out,
                       jet_rep=args.jet_rep, timing=args.timing)
    try:
        config.validate()
        config.load_jet_rep()
    except (SolenoidError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        report = run_suite(config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    write_report(report, config.out, sys.stdout)
    if config.out is not None:
        print_report_table(report)
        logger.info("report written to %s", config.out)
    return EXIT_PASS if report["passed"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
