"""Reading and writing 8-bit PNG and PNM (P2/P3/P5/P6) images.

PNG goes through Pillow; PNM is parsed here so that plain (ASCII) variants,
truncation and 16-bit files are handled uniformly.
"""
from __future__ import annotations

import re
import struct
from pathlib import Path

import numpy as np
from PIL import Image

from .raster import GrayImage, RgbImage

__all__ = ["DecodeError", "MAX_PIXELS", "read_image", "write_png", "write_pnm"]

#: Refuse images larger than this many pixels.
MAX_PIXELS = 1 << 28

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"
_PNM_TOKEN = re.compile(rb"\s*(?:#[^\n\r]*[\n\r]\s*)*(\S+)")


class DecodeError(ValueError):
    """The file could not be decoded as a supported 8-bit image."""


def read_image(path) -> RgbImage | GrayImage:
    """Decode ``path`` into an :class:`RgbImage` or :class:`GrayImage`.

    Greyscale files (PGM, grey PNG) load as ``GrayImage``. An alpha channel
    is dropped without compositing. Palette PNGs are expanded to RGB.
    16-bit samples are rejected.
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise DecodeError(f"{path}: cannot read ({exc.strerror or exc})") from exc
    if raw.startswith(PNG_SIGNATURE):
        return _read_png(raw, path)
    if raw[:1] == b"P" and raw[1:2] in (b"2", b"3", b"5", b"6"):
        return _read_pnm(raw, path)
    raise DecodeError(f"{path}: unsupported image format (expected PNG or PNM P2/P3/P5/P6)")


def _read_png(raw: bytes, path: Path):
    if len(raw) < 33 or raw[12:16] != b"IHDR":
        raise DecodeError(f"{path}: truncated PNG header")
    width, height, depth = struct.unpack(">IIB", raw[16:25])
    if depth > 8:
        raise DecodeError(f"{path}: {depth}-bit PNG samples are not supported")
    _check_size(width, height, path)
    try:
        with Image.open(path) as im:
            im.load()
            mode = im.mode
            if mode == "P":
                im = im.convert("RGBA" if "transparency" in im.info else "RGB")
                mode = im.mode
            if mode in ("1", "L", "LA"):
                return GrayImage(np.asarray(im.convert("L")))
            if mode in ("RGB", "RGBA"):
                return RgbImage(np.asarray(im.convert("RGB")))
    except (OSError, SyntaxError, Image.DecompressionBombError) as exc:
        raise DecodeError(f"{path}: corrupt PNG ({exc})") from exc
    raise DecodeError(f"{path}: unsupported PNG mode {mode}")


def _check_size(width: int, height: int, path: Path):
    if width < 1 or height < 1:
        raise DecodeError(f"{path}: empty image ({width}x{height})")
    if width * height > MAX_PIXELS:
        raise DecodeError(f"{path}: {width}x{height} exceeds {MAX_PIXELS} pixels")


def _read_pnm(raw: bytes, path: Path):
    magic = raw[:2]
    channels = 3 if magic in (b"P3", b"P6") else 1
    pos = 2
    header = []
    for _ in range(3):
        m = _PNM_TOKEN.match(raw, pos)
        if m is None:
            raise DecodeError(f"{path}: truncated PNM header")
        header.append(m.group(1))
        pos = m.end()
    try:
        width, height, maxval = (int(t) for t in header)
    except ValueError:
        raise DecodeError(f"{path}: malformed PNM header {header!r}") from None
    _check_size(width, height, path)
    if not 0 < maxval < 65536:
        raise DecodeError(f"{path}: invalid maxval {maxval}")
    if maxval > 255:
        raise DecodeError(f"{path}: 16-bit PNM samples are not supported")
    count = width * height * channels

    if magic in (b"P5", b"P6"):
        # exactly one whitespace byte separates the header from the raster
        start = pos + 1
        body = raw[start : start + count]
        if len(body) < count:
            raise DecodeError(f"{path}: truncated raster ({len(body)} of {count} bytes)")
        values = np.frombuffer(body, dtype=np.uint8)
    else:
        tokens = raw[pos:].split()
        if len(tokens) < count:
            raise DecodeError(f"{path}: truncated raster ({len(tokens)} of {count} samples)")
        try:
            values = np.array([int(t) for t in tokens[:count]], dtype=np.int64)
        except ValueError:
            raise DecodeError(f"{path}: non-numeric sample in plain PNM") from None
    if values.max(initial=0) > maxval:
        raise DecodeError(f"{path}: sample exceeds maxval {maxval}")
    if maxval != 255:
        values = (values.astype(np.int64) * 255 + maxval // 2) // maxval
    values = values.astype(np.uint8)
    if channels == 3:
        return RgbImage(values.reshape(height, width, 3))
    return GrayImage(values.reshape(height, width))


def write_png(img: GrayImage, path) -> Path:
    path = Path(path)
    # fixed encoder settings and no metadata keep the bytes reproducible
    arr = np.ascontiguousarray(img.data, dtype=np.uint8)
    Image.fromarray(arr).save(path, format="PNG", optimize=False)
    return path


def write_pnm(img: RgbImage | GrayImage, path, plain: bool = False) -> Path:
    """Write P5/P6 (or P2/P3 with ``plain=True``)."""
    path = Path(path)
    data = np.asarray(img.data)
    rgb = data.ndim == 3
    magic = {(False, False): "P5", (True, False): "P6", (False, True): "P2", (True, True): "P3"}[
        (rgb, plain)
    ]
    header = f"{magic}\n{img.width} {img.height}\n255\n".encode("ascii")
    if plain:
        rows = data.reshape(img.height, -1)
        body = "".join(" ".join(map(str, r)) + "\n" for r in rows.tolist()).encode("ascii")
    else:
        body = data.tobytes()
    path.write_bytes(header + body)
    return path
