#!/usr/bin/env python3
"""
Klein-Gordon scattering lab

Pseudospectral experiments on the 1D nonlinear Klein-Gordon equation:
scattering, the nonrelativistic NLS limit, ground-state thresholds,
stability, virial monitors and symmetry/identity batteries.

    python main.py scattering --config scenarios/scattering.cfg --out results/
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from src.cli import EXIT_ERROR, Experiment, dispatch, parse_config, print_summary
from src.config import get_settings
from src.exceptions import ConfigError
from src.logging_config import configure_logging


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(description="Nonlinear Klein-Gordon scattering lab")
    sub = p.add_subparsers(dest="cmd", required=True)
    for experiment in Experiment:
        sp = sub.add_parser(experiment.value, help=f"run the {experiment.value} experiment")
        sp.add_argument("--config", type=str, default=None, help="scenario file (key = value lines)")
        sp.add_argument("--out", type=str, default=None, help="output directory (created if missing)")
        sp.add_argument(
            "--override",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="replace one scenario key; repeatable",
        )
        sp.add_argument("--quiet", action="store_true", help="suppress the summary table")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    configure_logging(settings.log_level, settings.log_json)

    try:
        text = Path(args.config).read_text(encoding="utf-8") if args.config else ""
        config = parse_config(text, overrides=args.override, experiment=args.cmd)
    except (ConfigError, OSError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_ERROR

    result = dispatch(config, out_dir=args.out)
    if not args.quiet:
        print_summary(result)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
