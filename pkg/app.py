"""Command-line front end: `tworay <command> --config <path> [--out <dir>] [--seed <int>]`."""

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from components.counterexample import run_counterexample
from components.green_suite import run_green_suite
from components.heat_demo import run_heat_demo
from components.normality_suite import run_normality_suite
from components.point_spectrum import run_point_spectrum
from components.resolvent_sweep import run_resolvent_sweep
from services.boundary_theory import sign_convention
from utils.data_processing import SuiteResult, build_report, export_data_to_json, export_table_to_csv
from utils.errors import ConfigInvalid, TwoRayError
from utils.scenario import COMMANDS, Scenario, load_scenario

logger = logging.getLogger("tworay")

# --- CONFIGURATION ---
LOG_LEVEL = os.getenv("TWORAY_LOG_LEVEL", "WARNING")
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2

RUNNERS: Dict[str, Callable[[Scenario], SuiteResult]] = {
    "verify-green": run_green_suite,
    "check-normality": run_normality_suite,
    "probe-point-spectrum": run_point_spectrum,
    "resolvent-sweep": run_resolvent_sweep,
    "counterexample": run_counterexample,
    "heat-demo": run_heat_demo,
}

CATALOG = {
    "verify-green": ("Theorem 2.3", "boundary maps are surjective and satisfy the abstract Green identity"),
    "check-normality": ("Theorem 2.5", "normal extensions are exactly the kernel-restricted unitary couplings"),
    "probe-point-spectrum": ("Theorem 3.1", "the point spectrum of a normal extension is empty"),
    "resolvent-sweep": ("Theorem 3.2", "the resolvent exists off the imaginary axis and blows up towards it"),
    "counterexample": ("Theorem 3.2", "every point of the imaginary axis lies in the continuous spectrum"),
    "heat-demo": ("Example 3.3", "the sign-flipping heat operator has continuous spectrum equal to the imaginary axis"),
}


def list_commands() -> str:
    return "\n".join(f"{command} → {CATALOG[command][0]}: {CATALOG[command][1]}" for command in COMMANDS)


def write_outputs(scenario: Scenario, suite: SuiteResult) -> Path:
    """Write one CSV per table and report.json into the scenario output directory."""
    out = scenario.output_dir
    out.mkdir(parents=True, exist_ok=True)
    table_files = {}
    for name, frame in sorted(suite.tables.items()):
        filename = f"{name}.csv"
        export_table_to_csv(frame, out / filename)
        table_files[name] = filename
    report = build_report(scenario.name, scenario.command, scenario.seed, sign_convention(), suite, table_files)
    return export_data_to_json(report, out / "report.json")


def run_scenario(scenario: Scenario) -> int:
    """Run the scenario's command, write its report and return the exit status."""
    try:
        suite = RUNNERS[scenario.command](scenario)
    except ConfigInvalid:
        raise
    except TwoRayError as e:
        logger.error("%s failed: %s", scenario.command, e)
        suite = SuiteResult()
        suite.check("execution", False, detail=f"{type(e).__name__}: {e}")
    path = write_outputs(scenario, suite)
    logger.info("report written to %s", path)
    return EXIT_PASS if suite.all_passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tworay", description=__doc__)
    parser.add_argument("command", choices=list(COMMANDS) + ["list-commands"])
    parser.add_argument("--config", type=Path, help="scenario document (JSON)")
    parser.add_argument("--out", type=Path, default=None, help="output directory (overrides the scenario)")
    parser.add_argument("--seed", type=int, default=None, help="random seed (overrides the scenario)")
    parser.add_argument("--log-level", default=LOG_LEVEL, help="logging level (default from TWORAY_LOG_LEVEL)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format=LOG_FORMAT)

    if args.command == "list-commands":
        print(list_commands())
        return EXIT_PASS
    if args.config is None:
        print(f"error: {args.command} requires --config", file=sys.stderr)
        return EXIT_CONFIG

    try:
        scenario = load_scenario(args.config, args.seed, args.out)
        if scenario.command != args.command:
            raise ConfigInvalid(f"scenario is for {scenario.command!r}, not {args.command!r}")
        status = run_scenario(scenario)
    except ConfigInvalid as e:
        logger.error("invalid configuration: %s", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    print(f"{scenario.command}: {'PASS' if status == EXIT_PASS else 'FAIL'} ({scenario.output_dir / 'report.json'})")
    return status


if __name__ == "__main__":
    sys.exit(main())
