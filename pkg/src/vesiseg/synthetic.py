"""Reproducible synthetic inputs for tests, demos and benchmarks."""
from __future__ import annotations

import numpy as np

from .raster import GrayImage
from .threshold import BinaryImage, Histogram


def disk_mask(radius: int) -> np.ndarray:
    """Pixels whose centre lies within ``radius`` of the central pixel."""
    r = np.arange(-radius, radius + 1)
    return r[:, None] ** 2 + r[None, :] ** 2 <= radius * radius


def honeycomb(
    size: int = 240, cells: int = 6, radius: int = 15, fg: int = 0, bg: int = 255
) -> GrayImage:
    """``cells x cells`` grid of identical disks centred in square cells.

    With the defaults the disks are black on white, 10 px apart at the
    closest point, so no two touch.
    """
    pitch = size // cells
    if 2 * radius + 1 >= pitch:
        raise ValueError("disks would touch; reduce radius or cells")
    img = np.full((size, size), bg, dtype=np.uint8)
    mask = disk_mask(radius)
    for row in range(cells):
        for col in range(cells):
            cy = row * pitch + pitch // 2
            cx = col * pitch + pitch // 2
            view = img[cy - radius : cy + radius + 1, cx - radius : cx + radius + 1]
            view[mask] = fg
    return GrayImage(img)


def random_binary(shape=(64, 64), p_black: float = 0.5, rng=None) -> BinaryImage:
    rng = np.random.default_rng(rng)
    return BinaryImage(np.where(rng.random(shape) < p_black, 0, 255).astype(np.uint8))


def two_mode_histogram(
    means=(60, 180), sigma: float = 10.0, peak: float = 10_000.0
) -> Histogram:
    """Sum of equal-mass discretized Gaussian modes, rounded to integer counts."""
    v = np.arange(256)
    density = sum(np.exp(-((v - m) ** 2) / (2.0 * sigma**2)) for m in means)
    return Histogram(np.rint(peak * density).astype(np.int64))


def vesicular(size: int = 240, n_holes: int = 60, rng=None) -> GrayImage:
    """Bright noisy matrix pitted with dark disks of random radius."""
    rng = np.random.default_rng(rng)
    img = rng.normal(190.0, 18.0, (size, size))
    yy, xx = np.mgrid[0:size, 0:size]
    for _ in range(n_holes):
        cy, cx = rng.integers(0, size, 2)
        r = rng.integers(3, 14)
        img[(yy - cy) ** 2 + (xx - cx) ** 2 <= r * r] = rng.normal(55.0, 12.0)
    return GrayImage(np.clip(np.rint(img), 0, 255).astype(np.uint8))
