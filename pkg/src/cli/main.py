"""Argument parsing and dispatch for the lpdpl command line."""

import argparse
import sys
from typing import List, Optional

import structlog

from src.cli import commands
from src.cli.run_config import RunConfig, build_run_config, load_run_config_file
from src.errors import LpdplError
from src.evaluation import SCHEMES
from src.evaluation.folds import SCHEME_ALIASES
from src.utils.logging_config import configure_logging

logger = structlog.get_logger()

HANDLERS = {
    "train": commands.cmd_train,
    "eval": commands.cmd_eval,
    "classify": commands.cmd_classify,
    "sweep": commands.cmd_sweep,
    "inspect": commands.cmd_inspect,
    "dictsize": commands.cmd_dictsize,
}

HP_FLAGS = ("m", "lambda1", "lambda2", "lambda3", "gamma", "rho")


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration; flags override it")
    common.add_argument("--manifest", help="corpus manifest JSON")
    common.add_argument("--out", help="output directory")
    common.add_argument("--seed", type=int, help="initialization and fold seed")
    common.add_argument("--workers", type=int, help="max concurrent folds or classes")
    common.add_argument(
        "--scheme",
        choices=sorted(set(SCHEMES) | set(SCHEME_ALIASES)),
        help="validation scheme",
    )
    common.add_argument("--folds", type=int, help="folds for conventional cross-validation")
    common.add_argument("--m", type=int, help="atoms per class dictionary")
    common.add_argument("--lambda1", type=float, help="discrimination weight")
    common.add_argument("--lambda2", type=float, help="label term weight")
    common.add_argument("--lambda3", type=float, help="relaxation weight")
    common.add_argument("--gamma", type=float, help="ridge jitter")
    common.add_argument("--rho", type=float, help="ADMM penalty")
    common.add_argument("--iters", type=int, help="outer training iterations")
    common.add_argument(
        "--compat-eq7",
        action="store_true",
        default=None,
        help="use the A-update without lambda2 on W^T W",
    )
    common.add_argument("--adaptive-rho", action="store_true", default=None,
                        help="residual-balancing ADMM penalty")
    common.add_argument("--baseline", choices=["lpdpl", "dpl"], help="dpl drops the label term")
    common.add_argument("--features", choices=["hog", "pixels"], help="feature kind override")
    common.add_argument("--plot", action="store_true", default=None, help="also write PNG plots")
    common.add_argument("--log-level", default=None, help="log level (default from settings)")
    common.add_argument("--log-format", choices=["json", "text"], default=None)
    return common


def build_parser() -> argparse.ArgumentParser:
    """Parser with one sub-command per operation."""
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="lpdpl",
        description="Handwritten character recognition with labeled dictionary pairs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("train", parents=[common], help="train on a whole corpus")
    sub.add_parser("eval", parents=[common], help="cross-validate and write reports")

    classify = sub.add_parser("classify", parents=[common], help="label image files")
    classify.add_argument("--model", required=True, help="model file")
    classify.add_argument("images", nargs="+", help="image files")

    sweep = sub.add_parser("sweep", parents=[common], help="accuracy over a parameter grid")
    sweep.add_argument(
        "--grid",
        action="append",
        help="param=lo:hi:steps[:log|:lin]; repeat for a 2-D grid",
    )

    inspect = sub.add_parser("inspect", parents=[common], help="describe a model file")
    inspect.add_argument("--model", required=True, help="model file")

    dictsize = sub.add_parser("dictsize", parents=[common], help="accuracy against m")
    dictsize.add_argument("--m-values", type=int, nargs="+", help="dictionary sizes")
    dictsize.add_argument("--compare-dpl", action="store_true", default=None,
                          help="also evaluate the dpl baseline")
    return parser


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    """RunConfig from an optional --config file overlaid with the given flags."""
    file_values = load_run_config_file(args.config) if args.config else {}
    file_values["command"] = args.command

    overrides = {
        "manifest": args.manifest,
        "out": args.out,
        "seed": args.seed,
        "workers": args.workers,
        "scheme": args.scheme,
        "folds": args.folds,
        "baseline": args.baseline,
        "features": args.features,
        "plot": args.plot,
        "grid": getattr(args, "grid", None),
        "model": getattr(args, "model", None),
        "images": getattr(args, "images", None),
        "m_values": getattr(args, "m_values", None),
        "compare_dpl": getattr(args, "compare_dpl", None),
    }
    hp_overrides = {name: getattr(args, name) for name in HP_FLAGS}
    hp_overrides["outer_iters"] = args.iters
    hp_overrides["compat_eq7"] = args.compat_eq7
    hp_overrides["adaptive_rho"] = args.adaptive_rho
    return build_run_config(file_values, overrides, hp_overrides)


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level, args.log_format)

    try:
        cfg = run_config_from_args(args)
        logger.info("command_start", command=cfg.command, seed=cfg.seed)
        HANDLERS[cfg.command](cfg)
    except (LpdplError, ValueError, OSError) as e:
        logger.error("command_failed", command=args.command, error=str(e))
        print(f"lpdpl {args.command}: error: {e}", file=sys.stderr)
        return 1

    logger.info("command_complete", command=cfg.command)
    return 0


