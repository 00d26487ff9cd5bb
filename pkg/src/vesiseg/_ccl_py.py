"""Pure-Python two-pass labeling kernel.

First pass: scan rows top to bottom, pixels left to right. A foreground
(zero) pixel looks at its already-visited neighbours (above and left; plus
the two upper diagonals for 8-connectivity). No labeled neighbour issues a
fresh provisional label; otherwise the pixel takes the smallest neighbour
label and every other neighbour label is merged into it in a union-find
forest where the smaller root always absorbs the larger.

Second pass: because parents never exceed their children, a single
ascending sweep maps each provisional label to its final label, numbered
1..n in order of each component's first raster occurrence.
"""
from __future__ import annotations

import numpy as np


def _find(parent: list, x: int) -> int:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def _union(parent: list, a: int, b: int) -> None:
    ra = _find(parent, a)
    rb = _find(parent, b)
    if ra < rb:
        parent[rb] = ra
    elif rb < ra:
        parent[ra] = rb


def label_scan(img: np.ndarray, connectivity: int = 4):
    """Label the zero-valued pixels of a 2-d uint8 array; return ``(labels, n)``."""
    if connectivity not in (4, 8):
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")
    h, w = img.shape
    fg = (np.ascontiguousarray(img) == 0).ravel().tolist()
    lab = [0] * (h * w)
    parent = [0]
    eight = connectivity == 8

    for y in range(h):
        row = y * w
        for x in range(w):
            idx = row + x
            if not fg[idx]:
                continue
            a = lab[idx - w] if y else 0
            l = lab[idx - 1] if x else 0
            neighbours = [a, l]
            if eight and y:
                if x:
                    neighbours.append(lab[idx - w - 1])
                if x + 1 < w:
                    neighbours.append(lab[idx - w + 1])
            labeled = [v for v in neighbours if v]
            if not labeled:
                k = len(parent)
                parent.append(k)
            else:
                k = min(labeled)
                for v in labeled:
                    if v != k:
                        _union(parent, k, v)
            lab[idx] = k

    final = [0] * len(parent)
    n = 0
    for k in range(1, len(parent)):
        p = parent[k]
        if p == k:
            n += 1
            final[k] = n
        else:
            final[k] = final[p]
    out = np.array([final[v] for v in lab], dtype=np.int32).reshape(h, w)
    return out, n
