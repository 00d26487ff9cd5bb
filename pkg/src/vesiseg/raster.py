"""Image value types, grey-tone conversion and whole-image statistics.

Pixel data is stored row-major as numpy arrays of shape ``(height, width)``
(``(height, width, 3)`` for colour), so the pixel in column ``i`` and row
``j`` (1-based, counted from the upper-left corner) lives at
``data[j - 1, i - 1]``. Everything written to disk uses 0-based coordinates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RgbImage",
    "GrayImage",
    "GlobalStats",
    "to_gray",
    "global_stats",
]


def _frozen_uint8(data, ndim: int, name: str) -> np.ndarray:
    arr = np.asarray(data)
    if arr.ndim != ndim:
        raise ValueError(f"{name} expects a {ndim}-d array, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be at least 1x1, got shape {arr.shape}")
    if arr.dtype != np.uint8:
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise ValueError(f"{name} values must lie in [0, 255]")
        if np.issubdtype(arr.dtype, np.floating) and not np.all(arr == np.floor(arr)):
            raise ValueError(f"{name} values must be integers")
        arr = arr.astype(np.uint8)
    else:
        arr = arr.copy()
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class RgbImage:
    """Three-channel 8-bit image, ``data.shape == (height, width, 3)``."""

    data: np.ndarray

    def __post_init__(self):
        arr = _frozen_uint8(self.data, 3, "RgbImage")
        if arr.shape[2] != 3:
            raise ValueError(f"RgbImage needs 3 channels, got {arr.shape[2]}")
        object.__setattr__(self, "data", arr)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    def __eq__(self, other):
        return isinstance(other, RgbImage) and np.array_equal(self.data, other.data)


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Single-channel 8-bit brightness map, ``data.shape == (height, width)``."""

    data: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "data", _frozen_uint8(self.data, 2, "GrayImage"))

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    def __eq__(self, other):
        return type(other) is type(self) and np.array_equal(self.data, other.data)


@dataclass(frozen=True)
class GlobalStats:
    mean: float
    std_dev: float


def to_gray(img: RgbImage) -> GrayImage:
    """Unweighted channel mean, truncated: ``(R + G + B) // 3``."""
    total = img.data.sum(axis=2, dtype=np.uint16)
    return GrayImage(total // 3)


def global_stats(img: GrayImage) -> GlobalStats:
    """Mean brightness and population standard deviation of the whole image.

    The moments are accumulated from the 256-bin histogram in exact integer
    arithmetic, so the only rounding is the final division and square root.
    """
    counts = np.bincount(img.data.ravel(), minlength=256)
    values = range(256)
    n = int(img.data.size)
    s1 = sum(v * int(c) for v, c in zip(values, counts))
    s2 = sum(v * v * int(c) for v, c in zip(values, counts))
    # n^2 * variance, exact
    scaled_var = n * s2 - s1 * s1
    mean = s1 / n
    std = math.sqrt(scaled_var) / n if scaled_var else 0.0
    return GlobalStats(mean=mean, std_dev=std)
