"""Grey-tone label maps, Sobel edge maps and binary median smoothing."""
from __future__ import annotations

import numpy as np

from .labeling import LabelMap
from .raster import GrayImage
from .threshold import BinaryImage

__all__ = [
    "EdgeImage",
    "MAX_DISTINCT_TONES",
    "label_tones",
    "render_labels",
    "tones_collide",
    "sobel_edges",
    "median_smooth",
]

# tones 1..254 stay clear of the white background
MAX_DISTINCT_TONES = 254


class EdgeImage(GrayImage):
    """Sobel gradient magnitude, clamped to [0, 255]."""


def tones_collide(n: int) -> bool:
    return n > MAX_DISTINCT_TONES


def label_tones(n: int) -> np.ndarray:
    """Lookup table ``tone[k]`` for labels ``0..n``; ``tone[0] == 255``."""
    k = np.arange(n + 1, dtype=np.int64)
    if tones_collide(n):
        tones = 255 * (k % MAX_DISTINCT_TONES + 1) // (MAX_DISTINCT_TONES + 1)
    else:
        tones = 255 * k // (n + 1)
    tones[0] = 255
    return tones.astype(np.uint8)


def render_labels(labels: LabelMap) -> GrayImage:
    """Paint component ``k`` of ``n`` with tone ``255 * k // (n + 1)``.

    Low labels come out dark, the background stays white. Beyond 254
    components the tones wrap around and some components share a tone;
    :func:`tones_collide` reports when that happens.
    """
    return GrayImage(label_tones(labels.component_count)[labels.data])


def sobel_edges(img: GrayImage) -> EdgeImage:
    """3x3 Sobel magnitude ``round(hypot(gx, gy))`` clamped to 255.

    Borders replicate the outermost row/column.
    """
    p = np.pad(img.data.astype(np.int32), 1, mode="edge")
    top, mid, bot = p[:-2], p[1:-1], p[2:]
    # horizontal kernel rows (-1,0,1), (-2,0,2), (-1,0,1)
    gx = (
        (top[:, 2:] - top[:, :-2])
        + 2 * (mid[:, 2:] - mid[:, :-2])
        + (bot[:, 2:] - bot[:, :-2])
    )
    left, centre, right = p[:, :-2], p[:, 1:-1], p[:, 2:]
    gy = (
        (left[2:] - left[:-2])
        + 2 * (centre[2:] - centre[:-2])
        + (right[2:] - right[:-2])
    )
    mag = np.rint(np.sqrt((gx * gx + gy * gy).astype(np.float64)))
    return EdgeImage(np.minimum(mag, 255).astype(np.uint8))


def median_smooth(img: BinaryImage, passes: int = 1) -> BinaryImage:
    """Replace each pixel by the majority of its 3x3 neighbourhood.

    On a two-valued image the 9-sample median is the majority value. Borders
    replicate. ``passes`` applies the filter repeatedly (0 returns ``img``).
    """
    if passes < 0:
        raise ValueError(f"passes must be >= 0, got {passes}")
    data = img.data
    h, w = data.shape
    for _ in range(passes):
        black = np.pad((data == 0).astype(np.uint8), 1, mode="edge")
        votes = sum(
            black[dy : dy + h, dx : dx + w] for dy in range(3) for dx in range(3)
        )
        data = np.where(votes >= 5, 0, 255).astype(np.uint8)
    return img if passes == 0 else BinaryImage(data)
