"""End-to-end segmentation: decode, threshold, label, measure, render, write."""
from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from .imagefile import DecodeError, read_image, write_png, write_pnm
from .labeling import AreaTable, LabelMap, label_components, measure_areas
from .raster import GlobalStats, GrayImage, RgbImage, global_stats, to_gray
from .render import EdgeImage, median_smooth, render_labels, sobel_edges, tones_collide
from .threshold import (
    BinaryImage,
    ThresholdConfig,
    binarize,
    histogram,
    invert,
    select_threshold,
)

__all__ = [
    "OUTPUTS",
    "OutputError",
    "PipelineConfig",
    "RunSummary",
    "SegmentationResult",
    "areas_csv",
    "as_gray",
    "check_unique_stems",
    "output_paths",
    "run_batch",
    "run_pipeline",
    "segment",
    "segment_binary",
    "summary_json",
    "write_outputs",
]

OUTPUTS = ("binary", "labels", "edges", "areas", "summary")
IMAGE_FORMATS = ("png", "pgm")

# order of keys in the summary JSON object
SUMMARY_KEYS = (
    "input",
    "tau",
    "mode",
    "n_components",
    "area_min",
    "area_max",
    "area_mean",
    "mean_brightness",
    "std_brightness",
    "tone_collision",
    "ms",
)


class OutputError(OSError):
    """Writing a result file failed."""


@dataclass(frozen=True)
class PipelineConfig:
    inputs: tuple[Path, ...] = ()
    threshold: ThresholdConfig = field(default_factory=ThresholdConfig)
    invert: bool = False
    smooth_passes: int = 0
    connectivity: int = 4
    outputs: frozenset[str] = frozenset(OUTPUTS)
    out_dir: Path = Path(".")
    image_format: str = "png"
    jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(Path(p) for p in self.inputs))
        object.__setattr__(self, "out_dir", Path(self.out_dir))
        object.__setattr__(self, "outputs", frozenset(self.outputs))
        if not self.outputs:
            raise ValueError("select at least one output")
        unknown = self.outputs - set(OUTPUTS)
        if unknown:
            raise ValueError(f"unknown outputs {sorted(unknown)}; choose from {OUTPUTS}")
        if self.smooth_passes < 0:
            raise ValueError(f"smooth passes must be >= 0, got {self.smooth_passes}")
        if self.connectivity not in (4, 8):
            raise ValueError(f"connectivity must be 4 or 8, got {self.connectivity}")
        if self.image_format not in IMAGE_FORMATS:
            raise ValueError(f"image format must be one of {IMAGE_FORMATS}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs}")


@dataclass
class RunSummary:
    input: str
    tau: int | None
    mode: str
    n_components: int
    area_min: int | None
    area_max: int | None
    area_mean: float | None
    mean_brightness: float
    std_brightness: float
    tone_collision: bool
    ms: float = 0.0

    def to_dict(self) -> dict:
        d = asdict(self)
        return {k: d[k] for k in SUMMARY_KEYS}


@dataclass
class SegmentationResult:
    gray: GrayImage
    stats: GlobalStats
    tau: int | None
    binary: BinaryImage
    labels: LabelMap
    areas: AreaTable
    rendered: GrayImage
    edges: EdgeImage

    def summary(self, name: str, mode: str) -> RunSummary:
        return RunSummary(
            input=name,
            tau=self.tau,
            mode=mode,
            n_components=self.labels.component_count,
            area_min=self.areas.min_area,
            area_max=self.areas.max_area,
            area_mean=self.areas.mean_area,
            mean_brightness=self.stats.mean,
            std_brightness=self.stats.std_dev,
            tone_collision=tones_collide(self.labels.component_count),
        )


def as_gray(img: RgbImage | GrayImage) -> GrayImage:
    return to_gray(img) if isinstance(img, RgbImage) else img


def _finish(gray, stats, tau, binary, config) -> SegmentationResult:
    binary = median_smooth(binary, config.smooth_passes)
    labels = label_components(binary, connectivity=config.connectivity)
    rendered = render_labels(labels)
    return SegmentationResult(
        gray=gray,
        stats=stats,
        tau=tau,
        binary=binary,
        labels=labels,
        areas=measure_areas(labels),
        rendered=rendered,
        edges=sobel_edges(rendered),
    )


def segment(img: RgbImage | GrayImage, config: PipelineConfig) -> SegmentationResult:
    """Run every in-memory stage on one decoded image.

    Raises :class:`~vesiseg.threshold.DegenerateHistogramError` when an
    automatic threshold is requested on an image with a single grey level.
    """
    gray = as_gray(img)
    tau = select_threshold(histogram(gray), config.threshold)
    binary = binarize(gray, tau)
    if config.invert:
        binary = invert(binary)
    return _finish(gray, global_stats(gray), tau, binary, config)


def segment_binary(img: RgbImage | GrayImage, config: PipelineConfig) -> SegmentationResult:
    """Label an image that is already black and white (no thresholding)."""
    gray = as_gray(img)
    try:
        binary = BinaryImage(gray.data)
    except ValueError:
        raise DecodeError("input is not a black-and-white (0/255) image") from None
    if config.invert:
        binary = invert(binary)
    return _finish(gray, global_stats(gray), None, binary, config)


def areas_csv(table: AreaTable) -> str:
    return "label,area\n" + "".join(f"{k},{a}\n" for k, a in table.entries)


def summary_json(summary: RunSummary) -> str:
    return json.dumps(summary.to_dict(), indent=2) + "\n"


def output_paths(stem: str, config: PipelineConfig) -> dict[str, Path]:
    ext = "." + config.image_format
    names = {
        "binary": f"{stem}_binary{ext}",
        "labels": f"{stem}_labels{ext}",
        "edges": f"{stem}_edges{ext}",
        "areas": f"{stem}_areas.csv",
        "summary": f"{stem}_summary.json",
    }
    return {k: config.out_dir / names[k] for k in OUTPUTS if k in config.outputs}


def _write_image(img: GrayImage, path: Path, fmt: str):
    if fmt == "pgm":
        write_pnm(img, path)
    else:
        write_png(img, path)


def write_outputs(
    result: SegmentationResult, summary: RunSummary, stem: str, config: PipelineConfig
) -> list[Path]:
    """Write the selected outputs; the summary is written last."""
    paths = output_paths(stem, config)
    images = {"binary": result.binary, "labels": result.rendered, "edges": result.edges}
    try:
        config.out_dir.mkdir(parents=True, exist_ok=True)
        for key, path in paths.items():
            if key in images:
                _write_image(images[key], path, config.image_format)
            elif key == "areas":
                path.write_text(areas_csv(result.areas), encoding="ascii", newline="\n")
            elif key == "summary":
                path.write_text(summary_json(summary), encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OutputError(f"cannot write output in {config.out_dir}: {exc}") from exc
    return list(paths.values())


def run_pipeline(
    path, config: PipelineConfig, *, binary_input: bool = False
) -> RunSummary:
    """Process one file end to end and write its outputs.

    ``ms`` in the returned summary covers decoding through writing the
    non-summary outputs. It is the only field that varies between runs.
    """
    path = Path(path)
    start = time.perf_counter()
    img = read_image(path)
    if binary_input:
        try:
            result = segment_binary(img, config)
        except DecodeError as exc:
            raise DecodeError(f"{path}: {exc}") from None
        mode = "binary"
    else:
        result = segment(img, config)
        mode = config.threshold.mode
    summary = result.summary(str(path), mode)
    deferred = config.outputs - {"summary"}
    if deferred:
        write_outputs(result, summary, path.stem, replace(config, outputs=deferred))
    summary.ms = round((time.perf_counter() - start) * 1000.0, 3)
    if "summary" in config.outputs:
        write_outputs(result, summary, path.stem, replace(config, outputs={"summary"}))
    return summary


def check_unique_stems(paths) -> None:
    seen = {}
    for p in paths:
        stem = Path(p).stem
        if stem in seen:
            raise ValueError(f"inputs {seen[stem]} and {p} would write the same output files")
        seen[stem] = p


def run_batch(config: PipelineConfig, *, binary_input: bool = False) -> list[RunSummary]:
    """Run :func:`run_pipeline` on every input; results keep input order."""
    check_unique_stems(config.inputs)
    if config.jobs == 1 or len(config.inputs) < 2:
        return [run_pipeline(p, config, binary_input=binary_input) for p in config.inputs]
    with ThreadPoolExecutor(max_workers=config.jobs) as pool:
        futures = [
            pool.submit(run_pipeline, p, config, binary_input=binary_input)
            for p in config.inputs
        ]
        return [f.result() for f in futures]
