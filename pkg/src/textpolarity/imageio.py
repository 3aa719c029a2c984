"""Grayscale image containers and Netpbm (PGM/PPM) input/output.

PGM P2/P5 is the primary format and is handled without third-party
codecs. PPM P3/P6 and PNG color inputs are reduced to gray with BT.601
luma weights. PNG decoding needs Pillow and is only attempted when the
file starts with the PNG signature.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass

import numpy as np

from .errors import FormatError, UnsupportedFormatError

LEVELS = 256
MAX_LEVEL = LEVELS - 1

_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"
_WHITESPACE = b" \t\n\r\x0b\x0c"
_COMMENT = re.compile(rb"#[^\n]*")


def _as_pixel_array(pixels) -> np.ndarray:
    arr = np.asarray(pixels)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D pixel grid, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("image must be at least 1x1")
    if arr.dtype != np.uint8:
        if arr.size and (arr.min() < 0 or arr.max() > MAX_LEVEL):
            raise ValueError(f"pixel values must lie in [0, {MAX_LEVEL}]")
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise ValueError("pixel values must be integers")
        arr = arr.astype(np.uint8)
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Immutable 8-bit gray image; ``pixels`` has shape (height, width)."""

    pixels: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "pixels", _as_pixel_array(self.pixels))

    @classmethod
    def from_flat(cls, width: int, height: int, values) -> "GrayImage":
        """Build an image from a row-major sequence of gray values."""
        flat = np.asarray(values)
        if flat.size != width * height:
            raise ValueError(
                f"{flat.size} values do not fill a {width}x{height} image")
        return cls(flat.reshape(height, width))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def levels(self) -> int:
        return LEVELS

    def flat(self) -> list[int]:
        """Row-major pixel values as plain ints."""
        return self.pixels.ravel().tolist()

    def inverted(self) -> "GrayImage":
        return GrayImage(MAX_LEVEL - self.pixels)

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    __hash__ = None


class BinaryImage(GrayImage):
    """Gray image restricted to the two values 0 and 255."""

    def __post_init__(self):
        super().__post_init__()
        if not np.all((self.pixels == 0) | (self.pixels == MAX_LEVEL)):
            raise ValueError("binary image pixels must be 0 or 255")


def rgb_to_gray(r: int, g: int, b: int) -> int:
    """BT.601 luma, rounded half up, in integer arithmetic."""
    return min(MAX_LEVEL, (299 * r + 587 * g + 114 * b + 500) // 1000)


def rgb_array_to_gray(rgb: np.ndarray) -> np.ndarray:
    """Vectorized :func:`rgb_to_gray` over an (..., 3) array."""
    rgb = np.asarray(rgb, dtype=np.int64)
    y = (299 * rgb[..., 0] + 587 * rgb[..., 1] + 114 * rgb[..., 2] + 500) // 1000
    return np.minimum(y, MAX_LEVEL).astype(np.uint8)


def rescale_to_8bit(values: np.ndarray, maxval: int) -> np.ndarray:
    """Map [0, maxval] linearly onto [0, 255] with round-half-up."""
    if maxval == MAX_LEVEL:
        return values.astype(np.uint8)
    v = values.astype(np.int64)
    return ((2 * v * MAX_LEVEL + maxval) // (2 * maxval)).astype(np.uint8)


class _Tokenizer:
    """Whitespace/comment aware header scanner for Netpbm files."""

    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    def _skip(self):
        data = self.data
        while self.pos < len(data):
            c = data[self.pos:self.pos + 1]
            if c == b"#":
                end = data.find(b"\n", self.pos)
                self.pos = len(data) if end < 0 else end + 1
            elif c in _WHITESPACE:
                self.pos += 1
            else:
                break

    def int_token(self, what: str) -> int:
        self._skip()
        start = self.pos
        data = self.data
        while self.pos < len(data) and data[self.pos:self.pos + 1].isdigit():
            self.pos += 1
        if self.pos == start:
            if start >= len(data):
                raise FormatError(f"unexpected end of file reading {what}", start)
            raise FormatError(f"expected an integer for {what}", start)
        return int(data[start:self.pos])


def _parse_ascii_raster(data: bytes, pos: int, n: int) -> np.ndarray:
    body = _COMMENT.sub(b" ", data[pos:])
    tokens = body.split()
    if len(tokens) < n:
        raise FormatError(
            f"truncated raster: expected {n} samples, found {len(tokens)}", len(data))
    tokens = tokens[:n]
    bad = next((k for k, t in enumerate(tokens) if not t.isdigit()), None)
    if bad is not None:
        offset = data.find(tokens[bad], pos)
        raise FormatError(f"sample {bad} is not a non-negative integer", offset)
    return np.array(tokens, dtype=np.int64)


def _parse_netpbm(data: bytes) -> GrayImage:
    if len(data) < 2:
        raise FormatError("file too short for a Netpbm header", 0)
    magic = data[:2]
    if magic not in (b"P2", b"P5", b"P3", b"P6"):
        raise FormatError(f"unsupported magic number {magic!r}", 0)
    tok = _Tokenizer(data, 2)
    width = tok.int_token("width")
    height = tok.int_token("height")
    maxval_pos = tok.pos
    maxval = tok.int_token("maxval")
    if width < 1 or height < 1:
        raise FormatError("image dimensions must be positive", maxval_pos)
    if maxval < 1:
        raise FormatError("maxval must be positive", maxval_pos)
    if maxval > 65535:
        raise UnsupportedFormatError(f"maxval {maxval} exceeds 65535", maxval_pos)

    channels = 3 if magic in (b"P3", b"P6") else 1
    n = width * height * channels

    if magic in (b"P5", b"P6"):
        if tok.pos >= len(data) or data[tok.pos:tok.pos + 1] not in _WHITESPACE:
            raise FormatError("missing whitespace after maxval", tok.pos)
        start = tok.pos + 1
        itemsize = 1 if maxval < 256 else 2
        need = n * itemsize
        payload = data[start:start + need]
        if len(payload) < need:
            raise FormatError(
                f"truncated raster: expected {need} bytes, found {len(payload)}",
                start + len(payload))
        dtype = np.uint8 if itemsize == 1 else np.dtype(">u2")
        values = np.frombuffer(payload, dtype=dtype).astype(np.int64)
    else:
        values = _parse_ascii_raster(data, tok.pos, n)

    if values.size and values.max() > maxval:
        bad = int(np.argmax(values > maxval))
        raise FormatError(f"sample {bad} exceeds maxval {maxval}", None)

    values = rescale_to_8bit(values, maxval)
    if channels == 3:
        gray = rgb_array_to_gray(values.reshape(height, width, 3))
        return GrayImage(gray)
    return GrayImage(values.reshape(height, width))


def _read_png(path) -> GrayImage:
    try:
        from PIL import Image
    except ImportError as exc:  # pragma: no cover - depends on environment
        raise UnsupportedFormatError("PNG input requires Pillow") from exc
    with Image.open(path) as im:
        if im.mode in ("L", "1"):
            return GrayImage(np.asarray(im.convert("L")))
        if im.mode in ("I;16", "I;16B", "I"):
            arr = np.asarray(im, dtype=np.int64)
            return GrayImage(rescale_to_8bit(arr, 65535))
        return GrayImage(rgb_array_to_gray(np.asarray(im.convert("RGB"))))


def read_gray(path) -> GrayImage:
    """Read a PGM (P2/P5), PPM (P3/P6) or PNG file as a gray image.

    Raises OSError for missing/unreadable files and FormatError for bad
    content.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    if data.startswith(_PNG_SIGNATURE):
        return _read_png(path)
    return _parse_netpbm(data)


def encode_pgm(image: GrayImage) -> bytes:
    header = f"P5\n{image.width} {image.height}\n{MAX_LEVEL}\n".encode("ascii")
    return header + image.pixels.tobytes()


def write_gray(image: GrayImage, path) -> None:
    """Write ``image`` as a binary PGM with maxval 255."""
    data = encode_pgm(image)
    with open(os.fspath(path), "wb") as fh:
        fh.write(data)


def write_binary(image: BinaryImage, path) -> None:
    write_gray(image, path)
