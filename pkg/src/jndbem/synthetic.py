"""Synthetic grayscale scenes with exact ground-truth edge maps, plus
controlled degradations of edge maps for validating the measures.

Ground truth lives on the object side of each boundary: a pixel covered by
some primitive is a ground-truth edge pixel exactly when one of its
in-bounds 4-neighbors ends up with a different final intensity.  All
randomized degradations draw from a seeded PCG64 generator
(``numpy.random.default_rng``), so any output is reproducible from
``(kind, seed)`` on every platform.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

import numpy as np

from .raster import EdgeMap, GrayImage

__all__ = [
    "Rect",
    "Circle",
    "Line",
    "SceneSpec",
    "Translate",
    "Jitter",
    "Drop",
    "AddSpurious",
    "Dilate",
    "Degradation",
    "render",
    "degrade",
    "default_scene",
    "shapes_scene",
    "BUILTIN_SCENES",
]


@dataclass(frozen=True)
class Rect:
    """Filled axis-aligned rectangle: top-left (x, y), size w x h."""

    x: int
    y: int
    w: int
    h: int
    intensity: int


@dataclass(frozen=True)
class Circle:
    """Filled disk: pixels with (px-cx)^2 + (py-cy)^2 <= r^2."""

    cx: int
    cy: int
    r: int
    intensity: int


@dataclass(frozen=True)
class Line:
    """One-pixel-wide Bresenham segment between two endpoints."""

    x0: int
    y0: int
    x1: int
    y1: int
    intensity: int


Primitive = Union[Rect, Circle, Line]


@dataclass(frozen=True)
class SceneSpec:
    """A canvas plus an ordered list of primitives painted over a uniform
    background (painter's order: later primitives win)."""

    width: int
    height: int
    background: int
    primitives: tuple

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"bad canvas {self.width}x{self.height}")
        if not (0 <= self.background <= 255):
            raise ValueError(f"background {self.background} outside 0..255")
        object.__setattr__(self, "primitives", tuple(self.primitives))

    @classmethod
    def from_json(cls, text: str) -> "SceneSpec":
        doc = json.loads(text)
        try:
            prims = []
            for i, p in enumerate(doc.get("primitives", [])):
                kind = p["kind"]
                if kind == "rect":
                    prims.append(Rect(p["x"], p["y"], p["w"], p["h"], p["intensity"]))
                elif kind == "circle":
                    prims.append(Circle(p["cx"], p["cy"], p["r"], p["intensity"]))
                elif kind == "line":
                    prims.append(Line(p["x0"], p["y0"], p["x1"], p["y1"], p["intensity"]))
                else:
                    raise ValueError(f"primitive {i}: unknown kind '{kind}'")
            return cls(doc["width"], doc["height"], doc["background"], tuple(prims))
        except KeyError as exc:
            raise ValueError(f"scene spec missing field {exc}") from exc

    def to_json(self) -> str:
        prims = []
        for p in self.primitives:
            if isinstance(p, Rect):
                prims.append({"kind": "rect", "x": p.x, "y": p.y, "w": p.w, "h": p.h,
                              "intensity": p.intensity})
            elif isinstance(p, Circle):
                prims.append({"kind": "circle", "cx": p.cx, "cy": p.cy, "r": p.r,
                              "intensity": p.intensity})
            else:
                prims.append({"kind": "line", "x0": p.x0, "y0": p.y0, "x1": p.x1,
                              "y1": p.y1, "intensity": p.intensity})
        return json.dumps(
            {"width": self.width, "height": self.height,
             "background": self.background, "primitives": prims},
            indent=2, sort_keys=True,
        )


def _bresenham(x0, y0, x1, y1):
    """Integer line rasterization covering all octants."""
    pts = []
    dx = abs(x1 - x0)
    dy = -abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    x, y = x0, y0
    while True:
        pts.append((x, y))
        if x == x1 and y == y1:
            break
        e2 = 2 * err
        if e2 >= dy:
            err += dy
            x += sx
        if e2 <= dx:
            err += dx
            y += sy
    return pts


def _primitive_pixels(p: Primitive, width: int, height: int):
    """Pixel set of a primitive; raises if the primitive leaves the canvas."""
    if isinstance(p, Rect):
        if p.w < 1 or p.h < 1:
            raise ValueError(f"rectangle must have positive size, got {p.w}x{p.h}")
        if p.x < 0 or p.y < 0 or p.x + p.w > width or p.y + p.h > height:
            raise ValueError(f"rectangle {p} outside {width}x{height} canvas")
        return [(x, y) for y in range(p.y, p.y + p.h) for x in range(p.x, p.x + p.w)]
    if isinstance(p, Circle):
        if p.r < 0:
            raise ValueError(f"circle radius must be >= 0, got {p.r}")
        if p.cx - p.r < 0 or p.cy - p.r < 0 or p.cx + p.r >= width or p.cy + p.r >= height:
            raise ValueError(f"circle {p} outside {width}x{height} canvas")
        r2 = p.r * p.r
        return [
            (x, y)
            for y in range(p.cy - p.r, p.cy + p.r + 1)
            for x in range(p.cx - p.r, p.cx + p.r + 1)
            if (x - p.cx) ** 2 + (y - p.cy) ** 2 <= r2
        ]
    if isinstance(p, Line):
        for (x, y) in ((p.x0, p.y0), (p.x1, p.y1)):
            if not (0 <= x < width and 0 <= y < height):
                raise ValueError(f"line endpoint ({x}, {y}) outside {width}x{height} canvas")
        return _bresenham(p.x0, p.y0, p.x1, p.y1)
    raise TypeError(f"not a primitive: {p!r}")


def render(spec: SceneSpec):
    """Rasterize the scene.

    Returns ``(image, ground_truth)`` where the ground truth contains each
    primitive-covered pixel that has an in-bounds 4-neighbor of different
    final intensity.
    """
    canvas = np.full((spec.height, spec.width), spec.background, dtype=np.uint8)
    covered = np.zeros((spec.height, spec.width), dtype=bool)
    for prim in spec.primitives:
        if not (0 <= prim.intensity <= 255):
            raise ValueError(f"intensity {prim.intensity} outside 0..255")
        for (x, y) in _primitive_pixels(prim, spec.width, spec.height):
            canvas[y, x] = prim.intensity
            covered[y, x] = True

    differs = np.zeros((spec.height, spec.width), dtype=bool)
    vert = canvas[:-1, :] != canvas[1:, :]
    differs[:-1, :] |= vert
    differs[1:, :] |= vert
    horiz = canvas[:, :-1] != canvas[:, 1:]
    differs[:, :-1] |= horiz
    differs[:, 1:] |= horiz
    return GrayImage(canvas), EdgeMap.from_array(covered & differs)


@dataclass(frozen=True)
class Translate:
    dx: int
    dy: int


@dataclass(frozen=True)
class Jitter:
    """Move each pixel by an independent uniform offset within Chebyshev
    radius ``max_r``; collisions merge, pixels leaving the canvas are lost."""

    max_r: int
    seed: int

    def __post_init__(self):
        if self.max_r < 0:
            raise ValueError("max_r must be >= 0")


@dataclass(frozen=True)
class Drop:
    """Remove each pixel independently with probability ``rate``."""

    rate: float
    seed: int

    def __post_init__(self):
        if not (0.0 <= self.rate <= 1.0):
            raise ValueError(f"rate {self.rate} outside [0, 1]")


@dataclass(frozen=True)
class AddSpurious:
    """Insert up to ``count`` uniformly random non-edge pixels (clamped to
    the number of available non-edge positions)."""

    count: int
    seed: int

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("count must be >= 0")


@dataclass(frozen=True)
class Dilate:
    """Add every pixel within Euclidean ``radius`` of an existing edge."""

    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be >= 0")


Degradation = Union[Translate, Jitter, Drop, AddSpurious, Dilate]


def degrade(edge_map: EdgeMap, d: Degradation) -> EdgeMap:
    """Apply a controlled degradation; deterministic given the seed."""
    w, h = edge_map.width, edge_map.height
    pixels = sorted(edge_map.edges, key=lambda p: (p[1], p[0]))

    if isinstance(d, Translate):
        moved = {
            (x + d.dx, y + d.dy)
            for (x, y) in pixels
            if 0 <= x + d.dx < w and 0 <= y + d.dy < h
        }
        return EdgeMap(w, h, frozenset(moved))

    if isinstance(d, Jitter):
        rng = np.random.default_rng(d.seed)
        moved = set()
        for (x, y) in pixels:
            dx = int(rng.integers(-d.max_r, d.max_r + 1))
            dy = int(rng.integers(-d.max_r, d.max_r + 1))
            nx, ny = x + dx, y + dy
            if 0 <= nx < w and 0 <= ny < h:
                moved.add((nx, ny))
        return EdgeMap(w, h, frozenset(moved))

    if isinstance(d, Drop):
        rng = np.random.default_rng(d.seed)
        kept = {p for p in pixels if rng.random() >= d.rate}
        return EdgeMap(w, h, frozenset(kept))

    if isinstance(d, AddSpurious):
        rng = np.random.default_rng(d.seed)
        occupied = edge_map.edges
        available = [
            (x, y) for y in range(h) for x in range(w) if (x, y) not in occupied
        ]
        take = min(d.count, len(available))
        chosen = rng.choice(len(available), size=take, replace=False) if take else []
        return EdgeMap(w, h, occupied | {available[int(i)] for i in chosen})

    if isinstance(d, Dilate):
        r = int(np.floor(d.radius))
        r2 = d.radius * d.radius
        offsets = [
            (dx, dy)
            for dy in range(-r, r + 1)
            for dx in range(-r, r + 1)
            if dx * dx + dy * dy <= r2
        ]
        grown = set()
        for (x, y) in pixels:
            for dx, dy in offsets:
                nx, ny = x + dx, y + dy
                if 0 <= nx < w and 0 <= ny < h:
                    grown.add((nx, ny))
        return EdgeMap(w, h, frozenset(grown))

    raise TypeError(f"not a degradation: {d!r}")


def default_scene() -> SceneSpec:
    """The built-in default: three interior vertical strokes.

    Vertical-only boundaries, at least 19 px apart horizontally and at
    least 15 px from every canvas border, guarantee that horizontally
    translating the ground truth moves every edge pixel away from all the
    others: each pixel then matches its own translate at exactly the
    translation distance, which makes the scene a clean probe for the
    measures' distance response.
    """
    strokes = tuple(
        Line(x, 15, x, 104, intensity=224) for x in (30, 60, 90)
    )
    return SceneSpec(width=120, height=120, background=32, primitives=strokes)


def shapes_scene() -> SceneSpec:
    """A simple shapes chart (rectangle, disk, diagonal stroke) for
    exercising the detectors on corners, curves, and slanted boundaries."""
    return SceneSpec(
        width=128,
        height=128,
        background=40,
        primitives=(
            Rect(18, 16, 48, 38, intensity=210),
            Circle(90, 86, 22, intensity=120),
            Line(14, 96, 58, 116, intensity=255),
        ),
    )


BUILTIN_SCENES = {
    "default": default_scene,
    "shapes": shapes_scene,
}
