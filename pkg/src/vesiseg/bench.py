"""Compare the compiled and pure-Python labeling kernels.

Run with ``python -m vesiseg.bench [--sizes 64 240 512] [--repeat 5]``.
Reports the best-of-``repeat`` time for labeling a random binary image
(black fraction 0.5, the worst case for merges) with each available
kernel, plus the end-to-end in-memory pipeline on a 240x240 texture.
"""
from __future__ import annotations

import argparse
import timeit

from . import labeling
from .labeling import BACKENDS, label_components
from .pipeline import PipelineConfig, segment
from .synthetic import random_binary, vesicular


def bench_labeling(sizes, repeat: int = 5, connectivity: int = 4) -> list[dict]:
    rows = []
    for size in sizes:
        img = random_binary((size, size), 0.5, rng=size)
        row = {"size": size}
        for name in sorted(BACKENDS):
            timer = timeit.Timer(lambda: label_components(img, connectivity, name))
            number = 1 if name == "python" and size > 256 else 3
            row[name] = min(timer.repeat(repeat, number)) / number * 1000.0
        rows.append(row)
    return rows


def bench_pipeline(repeat: int = 5) -> dict:
    gray = vesicular(size=240, rng=0)
    out = {}
    for name in sorted(BACKENDS):
        saved = labeling.BACKEND
        labeling.BACKEND = name
        try:
            config = PipelineConfig(smooth_passes=1)
            timer = timeit.Timer(lambda: segment(gray, config))
            out[name] = min(timer.repeat(repeat, 3)) / 3 * 1000.0
        finally:
            labeling.BACKEND = saved
    return out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[64, 240, 512])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--connectivity", type=int, choices=(4, 8), default=4)
    args = parser.parse_args(argv)

    names = sorted(BACKENDS)
    if "compiled" not in BACKENDS:
        print("note: compiled kernel not built; only the pure-Python kernel is timed")
    print(f"labeling, {args.connectivity}-connectivity, ms (best of {args.repeat})")
    print("size".rjust(6) + "".join(n.rjust(12) for n in names) + "   speedup")
    for row in bench_labeling(args.sizes, args.repeat, args.connectivity):
        line = f"{row['size']:>6}" + "".join(f"{row[n]:12.3f}" for n in names)
        if len(names) == 2:
            line += f"   {row['python'] / row['compiled']:6.1f}x"
        print(line)
    print("\nin-memory pipeline at 240x240 (grey, auto tau, smooth x1, label, render), ms")
    for name, ms in bench_pipeline(args.repeat).items():
        print(f"{name:>10}  {ms:8.3f}")


if __name__ == "__main__":
    main()
