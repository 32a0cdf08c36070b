"""Command line front end: ``slitwalk run | presets | validate``."""

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import List, Optional, TextIO

from . import __version__
from .config import parse_config
from .errors import CONFIG_ERROR_TUPLE, WalkError
from .experiments import FORMATS, PRESETS, ExperimentConfig, preset, run
from .misc import config_text_from_file, config_texts_from_folder_iter
from .output import write_outputs


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slitwalk",
        description="Coined quantum walks on the 2-D lattice through single and double slits.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="Print progress; repeat for debug logging."
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    r = verbs.add_parser("run", help="Run an experiment and write its outputs.")
    source = r.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", metavar="NAME", help="Named preset (see `slitwalk presets`).")
    source.add_argument("--config", metavar="PATH", help="Experiment config file.")
    r.add_argument("--out", metavar="DIR", help="Output directory.")
    r.add_argument("--format", choices=FORMATS, help="Output file format.")
    r.add_argument(
        "--filter-nonzero",
        action="store_true",
        default=None,
        help="Only write rows with probability above --eps.",
    )
    r.add_argument("--eps", type=float, help="Cutoff used by --filter-nonzero.")
    r.add_argument("--threshold", type=float, help="Relative threshold for screen maxima.")

    verbs.add_parser("presets", help="List the named presets.")

    v = verbs.add_parser("validate", help="Parse config files without running them.")
    v.add_argument("path", help="A config file, or a folder of *.cfg files.")
    return parser


def _configure_logging(verbosity: int) -> None:
    if verbosity <= 0:
        return
    level = logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    """The config named by ``--preset``/``--config`` with output flags applied."""
    if args.preset is not None:
        config = preset(args.preset)
    else:
        config = parse_config(config_text_from_file(args.config))

    overrides = {}
    if args.out is not None:
        overrides["directory"] = args.out
    if args.format is not None:
        overrides["formats"] = (args.format,)
    if args.filter_nonzero is not None:
        overrides["filter_nonzero"] = args.filter_nonzero
    if args.eps is not None:
        overrides["eps"] = args.eps
    if args.threshold is not None:
        overrides["threshold"] = args.threshold
    if overrides:
        config = replace(config, outputs=replace(config.outputs, **overrides))
    return config


def cmd_run(args: argparse.Namespace, out: TextIO) -> int:
    config = load_config(args)
    if args.verbose:
        out.write(f"Running {config.name} ({config.coin}, {config.steps} steps)\n")
    result = run(config)
    manifest = write_outputs(result)
    if args.verbose:
        for name, digest in manifest.files:
            out.write(f"    {manifest.directory / name}  {digest[:12]}\n")
    if result.extrema is not None:
        out.write(f"{config.name}: {len(result.extrema.maxima)} maxima, ")
        out.write(f"{len(result.extrema.minima)} minima\n")
    if result.transmitted_fraction is not None:
        out.write(f"{config.name}: transmitted fraction {result.transmitted_fraction:.6f}\n")
    return 0


def cmd_presets(args: argparse.Namespace, out: TextIO) -> int:
    width = max(len(name) for name in PRESETS)
    for name, (description, _) in PRESETS.items():
        out.write(f"{name.ljust(width)}  {description}\n")
    return 0


def cmd_validate(args: argparse.Namespace, out: TextIO) -> int:
    path = Path(args.path)
    if path.is_dir():
        if args.verbose:
            out.write(f"Validating all config files in: {path}\n")
        count = 0
        for fpath, text in config_texts_from_folder_iter(path):
            try:
                parse_config(text)
            except CONFIG_ERROR_TUPLE as e:
                print(f"{fpath}: {e}", file=sys.stderr)
                raise
            if args.verbose:
                out.write(f"    ok: {fpath}\n")
            count += 1
        out.write(f"{count} config file(s) valid\n")
    else:
        config = parse_config(config_text_from_file(path))
        out.write(f"{path}: valid ({config.name})\n")
    return 0


COMMANDS = {"run": cmd_run, "presets": cmd_presets, "validate": cmd_validate}


def main(argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
    """
    Args:
        argv: arguments, defaulting to ``sys.argv[1:]``.
        out: stream for normal output (defaults to sys.stdout).

    Returns:
        0 on success, 1 for configuration errors, 2 for failures while
        running or writing.
    """
    args = build_parser().parse_args(argv)
    out = out or sys.stdout
    _configure_logging(args.verbose)

    try:
        return COMMANDS[args.verb](args, out)
    except CONFIG_ERROR_TUPLE as e:
        print(f"slitwalk: config error: {e}", file=sys.stderr)
        return 1
    except WalkError as e:
        print(f"slitwalk: error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"slitwalk: could not read config: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
