"""Grayscale rasters, binary edge maps, PGM serialization, and exact
Euclidean distance machinery shared by the rest of the package.

Conventions used everywhere: coordinates are ``(x, y)`` with ``x`` the
column and ``y`` the row, origin at the top-left.  Edge rasters
interchange as PGM with edge pixels written as 255 on a 0 background and
re-binarized at threshold 128 on load.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.ndimage import distance_transform_edt

__all__ = [
    "GrayImage",
    "EdgeMap",
    "DistanceField",
    "PgmFormatError",
    "load_pgm",
    "save_pgm",
    "edge_map_from_image",
    "image_from_edge_map",
    "distance_transform",
    "euclidean_distance",
]


class PgmFormatError(ValueError):
    """Raised when PGM bytes cannot be decoded."""


@dataclass(frozen=True)
class GrayImage:
    """An 8-bit grayscale raster. ``pixels`` is a read-only (height, width)
    uint8 array."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"image must be 2-D and non-empty, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if np.any(arr < 0) or np.any(arr > 255):
                raise ValueError("intensities must lie in 0..255")
            arr = arr.astype(np.uint8)
        else:
            arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(
            np.array_equal(self.pixels, other.pixels)
        )

    def __hash__(self):
        return hash((self.pixels.shape, self.pixels.tobytes()))


@dataclass(frozen=True)
class EdgeMap:
    """A binary edge map: a set of in-bounds ``(x, y)`` pixel coordinates
    on a width x height canvas."""

    width: int
    height: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"bad canvas {self.width}x{self.height}")
        pts = frozenset((int(x), int(y)) for (x, y) in self.edges)
        for (x, y) in pts:
            if not (0 <= x < self.width and 0 <= y < self.height):
                raise ValueError(
                    f"edge pixel ({x}, {y}) outside {self.width}x{self.height} canvas"
                )
        object.__setattr__(self, "edges", pts)

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, pixel) -> bool:
        return tuple(pixel) in self.edges

    @classmethod
    def from_array(cls, mask: np.ndarray) -> "EdgeMap":
        """Build from a boolean (height, width) array; True marks an edge."""
        mask = np.asarray(mask, dtype=bool)
        ys, xs = np.nonzero(mask)
        return cls(mask.shape[1], mask.shape[0], frozenset(zip(xs.tolist(), ys.tolist())))

    def to_array(self) -> np.ndarray:
        mask = np.zeros((self.height, self.width), dtype=bool)
        for (x, y) in self.edges:
            mask[y, x] = True
        return mask


@dataclass(frozen=True)
class DistanceField:
    """Per-pixel exact Euclidean distance to the nearest edge pixel of a
    source map. Zero exactly at the source edge pixels."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64).copy()
        if arr.ndim != 2:
            raise ValueError("distance field must be 2-D")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def height(self) -> int:
        return self.values.shape[0]

    def at(self, x: int, y: int) -> float:
        return float(self.values[y, x])


def _tokenize_header(data: bytes, count: int, start: int):
    """Yield `count` whitespace-separated header tokens starting at byte
    `start`, skipping '#' comments.  Returns (tokens, offset past last token)."""
    tokens = []
    i = start
    n = len(data)
    while len(tokens) < count:
        while i < n and data[i : i + 1].isspace():
            i += 1
        if i < n and data[i] == ord("#"):
            while i < n and data[i] != ord("\n"):
                i += 1
            continue
        if i >= n:
            raise PgmFormatError(
                f"truncated header: expected {count} fields, got {len(tokens)} "
                f"(offset {i})"
            )
        j = i
        while j < n and not data[j : j + 1].isspace():
            j += 1
        tokens.append((data[i:j], i))
        i = j
    return tokens, i


def load_pgm(data: bytes) -> GrayImage:
    """Decode P2 (ASCII) or P5 (binary) PGM bytes with maxval 255.

    '#' comments are permitted anywhere in the header. Raises
    :class:`PgmFormatError` naming the offending field and byte offset.
    """
    if not isinstance(data, (bytes, bytearray)):
        raise TypeError("load_pgm expects bytes")
    data = bytes(data)
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise PgmFormatError(f"bad magic {magic!r} at offset 0 (expected P2 or P5)")
    fields, pos = _tokenize_header(data, 3, 2)
    names = ("width", "height", "maxval")
    values = []
    for (tok, off), name in zip(fields, names):
        try:
            values.append(int(tok))
        except ValueError:
            raise PgmFormatError(f"field '{name}' at offset {off}: {tok!r} is not an integer")
    width, height, maxval = values
    if width < 1 or height < 1:
        raise PgmFormatError(f"bad dimensions {width}x{height} (field 'width'/'height')")
    if maxval != 255:
        raise PgmFormatError(f"field 'maxval' at offset {fields[2][1]}: must be 255, got {maxval}")

    npix = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates maxval from the raster
        if pos >= len(data) or not data[pos : pos + 1].isspace():
            raise PgmFormatError(f"missing whitespace after maxval at offset {pos}")
        pos += 1
        payload = data[pos : pos + npix]
        if len(payload) < npix:
            raise PgmFormatError(
                f"truncated pixel data at offset {pos}: expected {npix} bytes, got {len(payload)}"
            )
        trailing = data[pos + npix :]
        if trailing.strip():
            raise PgmFormatError(f"trailing data after raster at offset {pos + npix}")
        arr = np.frombuffer(payload, dtype=np.uint8).reshape(height, width)
        return GrayImage(arr)

    samples, pos = _tokenize_header(data, npix, pos)
    vals = []
    for tok, off in samples:
        try:
            v = int(tok)
        except ValueError:
            raise PgmFormatError(f"pixel sample at offset {off}: {tok!r} is not an integer")
        if not (0 <= v <= 255):
            raise PgmFormatError(f"pixel sample at offset {off}: {v} outside 0..255")
        vals.append(v)
    rest = data[pos:]
    if rest.strip():
        raise PgmFormatError(f"trailing data after raster at offset {pos}")
    arr = np.array(vals, dtype=np.uint8).reshape(height, width)
    return GrayImage(arr)


def save_pgm(img: GrayImage, binary: bool = True) -> bytes:
    """Encode an image as P5 (binary) or P2 (ASCII) bytes; reloads identically."""
    header = f"{'P5' if binary else 'P2'}\n{img.width} {img.height}\n255\n".encode("ascii")
    if binary:
        return header + img.pixels.tobytes()
    lines = b"\n".join(
        b" ".join(b"%d" % v for v in row) for row in img.pixels.tolist()
    )
    return header + lines + b"\n"


def edge_map_from_image(img: GrayImage, threshold: int = 128) -> EdgeMap:
    """Binarize an image: pixels with intensity >= threshold become edges."""
    return EdgeMap.from_array(img.pixels >= threshold)


def image_from_edge_map(edge_map: EdgeMap) -> GrayImage:
    """Render an edge map as a raster with edges at 255 on a 0 background."""
    return GrayImage(edge_map.to_array().astype(np.uint8) * 255)


def distance_transform(edge_map: EdgeMap) -> DistanceField:
    """Exact Euclidean distance to the nearest edge pixel, for every pixel.

    The map must contain at least one edge pixel, otherwise the distance is
    undefined and a ValueError is raised.
    """
    if len(edge_map.edges) == 0:
        raise ValueError("no edge pixels: distance transform is undefined on an empty map")
    non_edge = ~edge_map.to_array()
    return DistanceField(distance_transform_edt(non_edge))


def euclidean_distance(a, b) -> float:
    """Euclidean distance between two (x, y) coordinates."""
    return math.hypot(a[0] - b[0], a[1] - b[1])
