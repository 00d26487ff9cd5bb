"""Command-line interface.

Subcommands::

    vesiseg segment IMG...    full pipeline (threshold, label, measure, render)
    vesiseg threshold IMG...  pick tau and write the binary image only
    vesiseg areas IMG...      label an image that is already black and white
    vesiseg stats IMG...      mean brightness and standard deviation

Each processed file prints one JSON line on stdout. Exit codes: 0 success,
2 bad arguments, 3 decode error, 4 degenerate histogram, 5 output I/O error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .imagefile import DecodeError, read_image
from .labeling import BACKEND
from .pipeline import (
    OUTPUTS,
    OutputError,
    PipelineConfig,
    as_gray,
    check_unique_stems,
    run_batch,
    segment,
    write_outputs,
)
from .raster import global_stats
from .threshold import DegenerateHistogramError, ThresholdConfig

log = logging.getLogger("vesiseg")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DECODE = 3
EXIT_DEGENERATE = 4
EXIT_OUTPUT = 5


class UsageError(ValueError):
    pass


def _add_threshold_args(p: argparse.ArgumentParser):
    g = p.add_argument_group("threshold")
    g.add_argument("--mode", choices=("manual", "shannon", "tsallis"),
                   help="threshold selection (default: shannon, or manual when --tau is given)")
    g.add_argument("--tau", type=int, help="manual clip level in [0, 255]; implies --mode manual")
    g.add_argument("--tsallis", action="store_true", help="shorthand for --mode tsallis")
    g.add_argument("--q", type=float, default=None,
                   help="Tsallis entropic index, > 0 and != 1 (default 0.8)")
    g.add_argument("--invert", action="store_true",
                   help="swap black and white after thresholding (foreground must be black)")
    g.add_argument("--smooth", type=int, default=0, metavar="N",
                   help="apply the 3x3 binary median filter N times")


def _add_output_args(p: argparse.ArgumentParser, choices=OUTPUTS):
    p.add_argument("--out", type=Path, default=Path("."), metavar="DIR",
                   help="output directory (created if missing)")
    p.add_argument("--emit", action="append", choices=choices,
                   help="output to write; repeatable (default: all)")
    p.add_argument("--format", dest="image_format", choices=("png", "pgm"), default="png",
                   help="image output format")
    p.add_argument("--jobs", type=int, default=1, help="files processed concurrently")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vesiseg",
        description="Segment grey-tone images into labeled super-pixels and measure their areas.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("segment", help="full pipeline")
    p.add_argument("inputs", nargs="+", type=Path)
    _add_threshold_args(p)
    p.add_argument("--connectivity", type=int, choices=(4, 8), default=4)
    _add_output_args(p)

    p = sub.add_parser("threshold", help="select tau and write the binary image")
    p.add_argument("inputs", nargs="+", type=Path)
    _add_threshold_args(p)
    p.add_argument("--out", type=Path, default=Path("."), metavar="DIR")
    p.add_argument("--format", dest="image_format", choices=("png", "pgm"), default="png")

    p = sub.add_parser("areas", help="label an already black-and-white image")
    p.add_argument("inputs", nargs="+", type=Path)
    p.add_argument("--invert", action="store_true")
    p.add_argument("--smooth", type=int, default=0, metavar="N")
    p.add_argument("--connectivity", type=int, choices=(4, 8), default=4)
    _add_output_args(p, choices=("labels", "edges", "areas", "summary"))

    p = sub.add_parser("stats", help="report mean brightness and standard deviation")
    p.add_argument("inputs", nargs="+", type=Path)
    return parser


def _threshold_config(args) -> ThresholdConfig:
    mode = args.mode
    if args.tsallis:
        if mode not in (None, "tsallis"):
            raise UsageError("--tsallis conflicts with --mode " + mode)
        mode = "tsallis"
    if args.tau is not None:
        if mode not in (None, "manual"):
            raise UsageError(f"--tau conflicts with --mode {mode}")
        mode = "manual"
    mode = mode or "shannon"
    if mode == "manual" and args.tau is None:
        raise UsageError("--mode manual needs --tau")
    q = args.q
    if mode == "tsallis" and q is None:
        q = 0.8
    try:
        return ThresholdConfig(mode=mode, tau=args.tau, q=q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _pipeline_config(args, outputs) -> PipelineConfig:
    threshold = _threshold_config(args) if hasattr(args, "mode") else ThresholdConfig()
    try:
        return PipelineConfig(
            inputs=tuple(args.inputs),
            threshold=threshold,
            invert=args.invert,
            smooth_passes=args.smooth,
            connectivity=getattr(args, "connectivity", 4),
            outputs=frozenset(outputs),
            out_dir=args.out,
            image_format=args.image_format,
            jobs=getattr(args, "jobs", 1),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(record: dict):
    print(json.dumps(record), flush=True)


def cmd_segment(args) -> int:
    config = _pipeline_config(args, args.emit or OUTPUTS)
    for summary in run_batch(config):
        _emit(summary.to_dict())
    return EXIT_OK


def cmd_areas(args) -> int:
    config = _pipeline_config(args, args.emit or ("labels", "edges", "areas", "summary"))
    for summary in run_batch(config, binary_input=True):
        _emit(summary.to_dict())
    return EXIT_OK


def cmd_threshold(args) -> int:
    config = _pipeline_config(args, {"binary"})
    check_unique_stems(config.inputs)
    for path in config.inputs:
        result = segment(read_image(path), config)
        summary = result.summary(str(path), config.threshold.mode)
        write_outputs(result, summary, path.stem, config)
        _emit({"input": str(path), "tau": result.tau, "mode": config.threshold.mode})
    return EXIT_OK


def cmd_stats(args) -> int:
    for path in args.inputs:
        gray = as_gray(read_image(path))
        stats = global_stats(gray)
        _emit({
            "input": str(path),
            "width": gray.width,
            "height": gray.height,
            "mean_brightness": stats.mean,
            "std_brightness": stats.std_dev,
        })
    return EXIT_OK


COMMANDS = {
    "segment": cmd_segment,
    "threshold": cmd_threshold,
    "areas": cmd_areas,
    "stats": cmd_stats,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="vesiseg: %(levelname)s: %(message)s",
    )
    log.debug("labeling kernel: %s", BACKEND)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with 2
    except DecodeError as exc:
        log.error("%s", exc)
        return EXIT_DECODE
    except DegenerateHistogramError as exc:
        log.error("%s", exc)
        return EXIT_DEGENERATE
    except OutputError as exc:
        log.error("%s", exc)
        return EXIT_OUTPUT
    except ValueError as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
