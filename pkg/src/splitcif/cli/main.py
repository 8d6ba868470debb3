# Copyright 2025 InstaDeep Ltd
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Callable, Optional

import numpy as np
from loguru import logger
from numpy.linalg import LinAlgError

from splitcif.cli.demo import DEMO_HEADER, DemoConfig, run_demo
from splitcif.cli.output import write_csv, write_json
from splitcif.cli.scenario import load_scenario
from splitcif.exceptions import MaxIterExceeded, NotPsd
from splitcif.fusion import split_ci_fuse
from splitcif.objective import evaluate
from splitcif.optimizer import OptimizeOptions, minimize_w
from splitcif.proofcheck import VerifyConfig, run_verification

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_NUMERICAL_ERROR = 3

SWEEP_HEADER = (
    "w",
    "det",
    "logdet",
    "d1",
    "d2_direct",
    "d2_decomposed",
    "lower_bound",
    "T1",
    "T2",
    "T3",
)
SWEEP_TOLERANCE = 1e-7


def _options(args: argparse.Namespace) -> OptimizeOptions:
    return OptimizeOptions(delta=args.delta, w_tol=args.w_tol)


def cmd_optimize(args: argparse.Namespace) -> int:
    """Minimize det P(w) for the scenario and write the result object."""
    pair = load_scenario(args.input).to_split_pair()
    result = minimize_w(pair, _options(args))
    write_json(
        args.output,
        {
            "w": result.w_star,
            "status": result.status,
            "det_P": result.objective_det,
            "logdet_P": result.objective_logdet,
            "d1_at_solution": result.d1_at_solution,
            "iterations": result.iterations,
        },
    )
    logger.info(f"w = {result.w_star:.17g} ({result.status.value}) written to {args.output}.")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    """Write every quantity of the convexity argument on an equally spaced grid of w."""
    if args.samples < 3:
        raise ValueError(f"--samples must be at least 3, got {args.samples}.")
    if not 0.0 < args.delta < 0.5:
        raise ValueError(f"--delta must lie in (0, 0.5), got {args.delta}.")
    pair = load_scenario(args.input).to_split_pair()
    rows = []
    for w in np.linspace(args.delta, 1.0 - args.delta, args.samples):
        evaluation = evaluate(pair, float(w))
        if evaluation.d2_direct < evaluation.lower_bound - SWEEP_TOLERANCE * (
            1.0 + evaluation.term_scale
        ):
            logger.warning(f"d2 falls below its lower bound at w={w:.17g}.")
        rows.append(
            (
                evaluation.w,
                evaluation.det_P,
                evaluation.logdet_P,
                evaluation.d1,
                evaluation.d2_direct,
                evaluation.d2_decomposed,
                evaluation.lower_bound,
                evaluation.T1,
                evaluation.T2,
                evaluation.T3,
            )
        )
    write_csv(args.output, SWEEP_HEADER, rows)
    logger.info(f"{len(rows)} sweep rows written to {args.output}.")
    return EXIT_OK


def cmd_fuse(args: argparse.Namespace) -> int:
    """Fuse the two estimates of the scenario and write the fused split estimate."""
    first, second = load_scenario(args.input).to_estimates()
    fusion = split_ci_fuse(first, second, _options(args))
    fused = fusion.fused
    write_json(
        args.output,
        {
            "w": fusion.w,
            "x": fused.x,
            "P": fused.covariance.array.reshape(-1),
            "Pd": fused.cov_d.array.reshape(-1),
            "Pi": fused.cov_i.array.reshape(-1),
            "status": fusion.result.status,
        },
    )
    logger.info(f"Fused with w = {fusion.w:.17g}; written to {args.output}.")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Run the randomized verification suite and write its report."""
    config = VerifyConfig(
        seed=args.seed, trials=args.trials, dims=args.dims, oracle_samples=args.oracle_samples
    )
    report = run_verification(config)
    report_path = Path(args.report)
    report_path.parent.mkdir(parents=True, exist_ok=True)
    report_path.write_text(report.model_dump_json(indent=2) + "\n")
    if not report.overall_pass:
        logger.error(f"Verification failed; see {report_path}.")
        return EXIT_VERIFICATION_FAILED
    logger.info(f"All checks passed; report written to {report_path}.")
    return EXIT_OK


def cmd_demo(args: argparse.Namespace) -> int:
    """Run the repeated-fusion demo and write its per-step trace."""
    rows = run_demo(DemoConfig(steps=args.steps, seed=args.seed, dim=args.dim))
    write_csv(args.output, DEMO_HEADER, rows)
    logger.info(f"{len(rows)} demo steps written to {args.output}.")
    return EXIT_OK


def _parse_dims(text: str) -> list[int]:
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"invalid dimension list: {text!r}") from error


def _add_optimize_flags(parser: argparse.ArgumentParser) -> None:
    defaults = OptimizeOptions()
    parser.add_argument("--delta", type=float, default=defaults.delta, help="Boundary clamp.")
    parser.add_argument(
        "--w-tol", type=float, default=defaults.w_tol, help="Bracket width at which to stop."
    )


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser with one sub-command per operation."""
    parser = argparse.ArgumentParser(
        prog="splitcif", description="Split covariance intersection w-optimization."
    )
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level.")
    commands = parser.add_subparsers(dest="command", required=True)

    optimize = commands.add_parser("optimize", help="Find the optimal w of a scenario.")
    optimize.add_argument("input", type=Path, help="Scenario JSON file.")
    optimize.add_argument("output", type=Path, help="Result JSON file.")
    _add_optimize_flags(optimize)
    optimize.set_defaults(handler=cmd_optimize)

    sweep = commands.add_parser("sweep", help="Tabulate the objective and its derivatives.")
    sweep.add_argument("input", type=Path, help="Scenario JSON file.")
    sweep.add_argument("output", type=Path, help="CSV file.")
    sweep.add_argument("--samples", type=int, default=101, help="Number of w samples.")
    sweep.add_argument("--delta", type=float, default=OptimizeOptions().delta)
    sweep.set_defaults(handler=cmd_sweep)

    fuse = commands.add_parser("fuse", help="Fuse the two estimates of a scenario.")
    fuse.add_argument("input", type=Path, help="Scenario JSON file with x1 and x2.")
    fuse.add_argument("output", type=Path, help="Result JSON file.")
    _add_optimize_flags(fuse)
    fuse.set_defaults(handler=cmd_fuse)

    verify_defaults = VerifyConfig()
    verify = commands.add_parser("verify", help="Run the randomized verification suite.")
    verify.add_argument("--seed", type=int, default=verify_defaults.seed)
    verify.add_argument("--trials", type=int, default=verify_defaults.trials)
    verify.add_argument(
        "--dims",
        type=_parse_dims,
        default=list(verify_defaults.dims),
        help="Comma-separated dimensions, e.g. 1,2,3,5,8.",
    )
    verify.add_argument("--oracle-samples", type=int, default=verify_defaults.oracle_samples)
    verify.add_argument("--report", type=Path, default=Path("verify_report.json"))
    verify.set_defaults(handler=cmd_verify)

    demo_defaults = DemoConfig()
    demo = commands.add_parser("demo", help="Run the repeated-fusion demo.")
    demo.add_argument("--steps", type=int, default=demo_defaults.steps)
    demo.add_argument("--seed", type=int, default=demo_defaults.seed)
    demo.add_argument("--dim", type=int, choices=(1, 2), default=demo_defaults.dim)
    demo.add_argument("--output", type=Path, default=Path("demo.csv"))
    demo.set_defaults(handler=cmd_demo)
    return parser


def configure_logging(verbose: bool) -> None:
    """Send log records to stderr, at DEBUG level when verbose and INFO otherwise."""
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "INFO", format="{level}: {message}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse the arguments, run the selected command and map failures to exit codes.

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:].

    Returns:
        The exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return error.code if isinstance(error.code, int) else EXIT_INPUT_ERROR
    configure_logging(args.verbose)

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except (LinAlgError, MaxIterExceeded, NotPsd) as error:
        logger.error(f"Numerical failure: {error}")
        return EXIT_NUMERICAL_ERROR
    except (ValueError, OSError) as error:
        logger.error(f"Invalid input: {error}")
        return EXIT_INPUT_ERROR


def run() -> None:
    """Console-script entry point."""
    raise SystemExit(main())
