"""Connected-component labeling of black pixels and area measurement.

The scan kernel comes from the compiled extension ``vesiseg._ccl`` when it
was built, otherwise from the pure-Python ``vesiseg._ccl_py``. Setting the
environment variable ``VESISEG_PURE_PYTHON=1`` before import forces the
fallback. Both kernels return identical label maps.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from . import _ccl_py
from .threshold import BinaryImage

try:
    if os.environ.get("VESISEG_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _ccl as _compiled
except ImportError:
    _compiled = None

BACKENDS = {"python": _ccl_py.label_scan}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled.label_scan

#: Name of the kernel used when ``backend`` is not given.
BACKEND = "compiled" if _compiled is not None else "python"

__all__ = [
    "BACKEND",
    "BACKENDS",
    "LabelMap",
    "AreaTable",
    "label_components",
    "measure_areas",
]


@dataclass(frozen=True, eq=False)
class LabelMap:
    """Per-pixel labels (0 = background) with ``component_count`` components."""

    data: np.ndarray
    component_count: int

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data, dtype=np.int32)
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    def __eq__(self, other):
        return (
            isinstance(other, LabelMap)
            and self.component_count == other.component_count
            and np.array_equal(self.data, other.data)
        )


@dataclass(frozen=True)
class AreaTable:
    entries: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    @property
    def n_components(self) -> int:
        return len(self.entries)

    @property
    def areas(self) -> list[int]:
        return [area for _, area in self.entries]

    @property
    def total_area(self) -> int:
        return sum(self.areas)

    @property
    def min_area(self) -> int | None:
        return min(self.areas) if self.entries else None

    @property
    def max_area(self) -> int | None:
        return max(self.areas) if self.entries else None

    @property
    def mean_area(self) -> float | None:
        return self.total_area / len(self.entries) if self.entries else None


def label_components(
    img: BinaryImage, connectivity: int = 4, backend: str | None = None
) -> LabelMap:
    """Label the black super-pixels of ``img`` in raster order.

    Parameters
    ----------
    img : BinaryImage
        Black (0) pixels are foreground; white (255) pixels get label 0.
    connectivity : {4, 8}
        4 joins horizontal/vertical neighbours only. 8 also joins diagonal
        contacts and is an extension; 4 is the reference behaviour.
    backend : {"compiled", "python"}, optional
        Kernel to use; defaults to :data:`BACKEND`.

    Returns
    -------
    LabelMap
        Labels ``1..n`` numbered by the first raster-order pixel of each
        component (left to right, top to bottom).
    """
    try:
        scan = BACKENDS[backend or BACKEND]
    except KeyError:
        raise ValueError(
            f"unknown or unavailable backend {backend!r}; have {sorted(BACKENDS)}"
        ) from None
    labels, n = scan(np.ascontiguousarray(img.data, dtype=np.uint8), connectivity)
    return LabelMap(labels, n)


def measure_areas(labels: LabelMap) -> AreaTable:
    counts = np.bincount(labels.data.ravel(), minlength=labels.component_count + 1)
    return AreaTable(
        tuple((k, int(counts[k])) for k in range(1, labels.component_count + 1))
    )
