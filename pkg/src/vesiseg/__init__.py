"""Threshold-and-label segmentation of grey-tone images into super-pixels.

Typical use::

    from vesiseg import read_image, to_gray, histogram, auto_threshold_shannon
    from vesiseg import binarize, label_components, measure_areas

    gray = to_gray(read_image("rock.png"))
    tau = auto_threshold_shannon(histogram(gray))
    labels = label_components(binarize(gray, tau))
    areas = measure_areas(labels)
"""
from .imagefile import DecodeError, read_image, write_png, write_pnm
from .labeling import BACKEND, AreaTable, LabelMap, label_components, measure_areas
from .pipeline import PipelineConfig, RunSummary, run_batch, run_pipeline, segment
from .raster import GlobalStats, GrayImage, RgbImage, global_stats, to_gray
from .render import EdgeImage, median_smooth, render_labels, sobel_edges
from .threshold import (
    BinaryImage,
    DegenerateHistogramError,
    Histogram,
    ThresholdConfig,
    auto_threshold_shannon,
    auto_threshold_tsallis,
    binarize,
    histogram,
    invert,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AreaTable",
    "BinaryImage",
    "DecodeError",
    "DegenerateHistogramError",
    "EdgeImage",
    "GlobalStats",
    "GrayImage",
    "Histogram",
    "LabelMap",
    "PipelineConfig",
    "RgbImage",
    "RunSummary",
    "ThresholdConfig",
    "auto_threshold_shannon",
    "auto_threshold_tsallis",
    "binarize",
    "global_stats",
    "histogram",
    "invert",
    "label_components",
    "measure_areas",
    "median_smooth",
    "read_image",
    "render_labels",
    "run_batch",
    "run_pipeline",
    "segment",
    "sobel_edges",
    "to_gray",
    "write_png",
    "write_pnm",
]
