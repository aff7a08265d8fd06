#!/usr/bin/env python3
"""
Command-line front end for the STIRAP toolkit.

Usage:
  python system/stirap_cli.py simulate (--config PATH | --preset NAME) [--out-dir DIR] [--tol TOL]
  python system/stirap_cli.py scan     (--config PATH | --preset NAME) [--out-dir DIR] [--workers N]
  python system/stirap_cli.py analyze  {profile,linewidth-scaling,transition-time} RESULT_CSV
  python system/stirap_cli.py preset   list | show NAME

Exit codes: 0 ok, 2 config error, 3 integration fault, 4 analysis error.
Standard output carries written file paths and key=value lines; logs go to stderr.
"""

import argparse
import logging
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).parent.parent))

from metrics import ANALYSES, AnalysisError, format_summary, run_analysis
from propagation import PropagationError
from protocols import run_protocol
from sweeps import ScanSpec, scan_variants
from system.config import ConfigError, RunConfig, list_presets, load_config, load_preset, set_path
from system.export import write_run

logger = logging.getLogger("stirap_cli")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PROPAGATION = 3
EXIT_ANALYSIS = 4


def _load(args: argparse.Namespace) -> RunConfig:
    cfg = load_preset(args.preset) if args.preset else load_config(args.config)
    if getattr(args, "tol", None) is not None:
        if not args.tol > 0:
            raise ConfigError(f"--tol must be > 0, got {args.tol}")
        cfg = set_path(cfg, "integrator.rel_tol", args.tol)
        cfg = set_path(cfg, "integrator.abs_tol", args.tol * 1e-2)
    return cfg


def _out_dir(args: argparse.Namespace, cfg: RunConfig) -> str:
    return args.out_dir if args.out_dir else cfg.output["dir"]


# ---------------- subcommands ----------------

def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _load(args)
    report = run_protocol(cfg)
    logger.info("%s: P_target=%.6f max_P2=%.3e", report.name, report.transfer_efficiency, report.max_transient_p2)
    for path in write_run(cfg, report, _out_dir(args, cfg)):
        print(path)
    return EXIT_OK


def cmd_scan(args: argparse.Namespace) -> int:
    cfg = _load(args)
    spec = ScanSpec.from_config(cfg)
    logger.info("scanning %s over %s", spec.observable, "x".join(str(n) for n in spec.shape))
    results = scan_variants(spec, workers=args.workers, progress=True)
    out = pathlib.Path(_out_dir(args, cfg))
    prefix = cfg.output["prefix"]
    for name, result in results.items():
        suffix = f"_{name}" if name else ""
        print(result.to_csv(str(out / f"{prefix}_scan{suffix}.csv")))
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    summary = run_analysis(args.analysis, args.result, args.epsilon)
    print(format_summary(summary))
    return EXIT_OK


def cmd_preset(args: argparse.Namespace) -> int:
    if args.action == "list":
        for name in list_presets():
            print(name)
        return EXIT_OK
    if not args.name:
        raise ConfigError("preset show needs a preset name")
    print(load_preset(args.name).to_json())
    return EXIT_OK


# ---------------- argument parsing ----------------

def _add_source(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", help="path to a JSON run config")
    src.add_argument("--preset", help="name of a shipped preset (see 'preset list')")
    p.add_argument("--out-dir", default=None, help="output directory (default: output.dir of the config)")
    p.add_argument("--tol", type=float, default=None, help="integrator relative tolerance override")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stirap_cli",
        description="Simulate, scan and analyze stimulated Raman adiabatic passage.",
    )
    parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run one protocol; write timeseries CSV and report JSON")
    _add_source(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("scan", help="evaluate the scan block of a config; write grid CSVs")
    _add_source(p)
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: scan.workers, then $STIRAP_WORKERS, then 1)")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("analyze", help="fit a result CSV and print key=value lines")
    p.add_argument("analysis", choices=sorted(ANALYSES))
    p.add_argument("result", help="CSV written by simulate or scan")
    p.add_argument("--epsilon", type=float, default=None, help="population threshold for transition-time")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("preset", help="list or show shipped presets")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?", default=None)
    p.set_defaults(func=cmd_preset)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s [%(levelname)s] %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except ConfigError as e:
        logger.error("config error: %s", e)
        return EXIT_CONFIG
    except PropagationError as e:
        logger.error("integration failed: %s", e)
        return EXIT_PROPAGATION
    except AnalysisError as e:
        logger.error("analysis failed: %s", e)
        return EXIT_ANALYSIS
    except ValueError as e:
        logger.error("invalid configuration: %s", e)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
