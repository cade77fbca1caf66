"""Classical edge detectors producing candidate edge maps for benchmarks.

All detectors are deterministic for a fixed config.  Borders are handled by
edge replication throughout; border rows/columns are therefore best
excluded when asserting on output thinness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .raster import EdgeMap, GrayImage

__all__ = [
    "DetectorConfig",
    "DETECTOR_KINDS",
    "gaussian_blur",
    "gradient",
    "detect",
]

DETECTOR_KINDS = ("sobel", "prewitt", "log", "canny")

_SOBEL_X = np.array([[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]], dtype=np.float64)
_SOBEL_Y = np.array([[-1, -2, -1], [0, 0, 0], [1, 2, 1]], dtype=np.float64)
_PREWITT_X = np.array([[-1, 0, 1], [-1, 0, 1], [-1, 0, 1]], dtype=np.float64)
_PREWITT_Y = np.array([[-1, -1, -1], [0, 0, 0], [1, 1, 1]], dtype=np.float64)
_LAPLACIAN = np.array([[0, 1, 0], [1, -4, 1], [0, 1, 0]], dtype=np.float64)


@dataclass(frozen=True)
class DetectorConfig:
    """Parameters for the four detectors; only the fields relevant to
    ``kind`` are consulted.

    ``threshold`` (sobel/prewitt) and the ``low``/``high`` hysteresis pair
    (canny) are fractions of the maximum gradient magnitude in (0, 1];
    ``zero_crossing_threshold`` (log) is in intensity units.
    """

    kind: str
    sigma: float = 1.4
    threshold: float = 0.5
    zero_crossing_threshold: float = 6.0
    low: float = 0.1
    high: float = 0.3

    def __post_init__(self):
        if self.kind not in DETECTOR_KINDS:
            raise ValueError(f"unknown detector '{self.kind}' (expected one of {DETECTOR_KINDS})")
        if not self.sigma > 0:
            raise ValueError("sigma must be > 0")
        if not (0.0 < self.threshold <= 1.0):
            raise ValueError("threshold must lie in (0, 1]")
        if not (0.0 < self.low <= 1.0 and 0.0 < self.high <= 1.0):
            raise ValueError("hysteresis fractions must lie in (0, 1]")
        if self.kind == "canny" and not self.low < self.high:
            raise ValueError(f"canny requires low < high, got {self.low} >= {self.high}")


def _gaussian_kernel_1d(sigma: float) -> np.ndarray:
    radius = int(math.ceil(3.0 * sigma))
    xs = np.arange(-radius, radius + 1, dtype=np.float64)
    k = np.exp(-(xs * xs) / (2.0 * sigma * sigma))
    return k / k.sum()


def gaussian_blur(img: GrayImage, sigma: float) -> GrayImage:
    """Separable Gaussian blur (kernel radius ceil(3*sigma), replicated
    borders), rounded back to 0..255."""
    if not sigma > 0:
        raise ValueError("sigma must be > 0")
    k = _gaussian_kernel_1d(sigma)
    out = img.pixels.astype(np.float64)
    out = ndimage.correlate1d(out, k, axis=0, mode="nearest")
    out = ndimage.correlate1d(out, k, axis=1, mode="nearest")
    return GrayImage(np.clip(np.rint(out), 0, 255).astype(np.uint8))


def gradient(img: GrayImage, kind: str = "sobel"):
    """3x3 first-derivative response with replicated borders.

    Returns float arrays ``(gx, gy, magnitude)`` with x increasing to the
    right and y downward.
    """
    if kind == "sobel":
        kx, ky = _SOBEL_X, _SOBEL_Y
    elif kind == "prewitt":
        kx, ky = _PREWITT_X, _PREWITT_Y
    else:
        raise ValueError(f"unknown gradient kind '{kind}'")
    if img.width < 3 or img.height < 3:
        raise ValueError(f"image must be at least 3x3, got {img.width}x{img.height}")
    f = img.pixels.astype(np.float64)
    gx = ndimage.correlate(f, kx, mode="nearest")
    gy = ndimage.correlate(f, ky, mode="nearest")
    return gx, gy, np.hypot(gx, gy)


def _threshold_magnitude(mag: np.ndarray, fraction: float) -> np.ndarray:
    peak = mag.max()
    if peak == 0.0:
        return np.zeros_like(mag, dtype=bool)
    return mag >= fraction * peak


def _nms(mag: np.ndarray, gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
    """Thin gradient ridges: keep a pixel only if it is a maximum along its
    quantized gradient direction (4 bins).  Equal-magnitude plateaus keep
    their first pixel, so two-wide ridges thin to one."""
    angle = np.mod(np.degrees(np.arctan2(gy, gx)), 180.0)
    bins = np.zeros(angle.shape, dtype=np.uint8)
    bins[(angle >= 22.5) & (angle < 67.5)] = 1    # 45 deg
    bins[(angle >= 67.5) & (angle < 112.5)] = 2   # 90 deg
    bins[(angle >= 112.5) & (angle < 157.5)] = 3  # 135 deg

    p = np.pad(mag, 1, mode="edge")
    c = p[1:-1, 1:-1]
    # (prev, next) neighbors along each direction; strict > on prev,
    # >= on next breaks plateau ties deterministically
    neighbors = {
        0: (p[1:-1, :-2], p[1:-1, 2:]),    # horizontal gradient: left/right
        1: (p[:-2, :-2], p[2:, 2:]),       # 45 deg: up-left/down-right
        2: (p[:-2, 1:-1], p[2:, 1:-1]),    # vertical gradient: up/down
        3: (p[:-2, 2:], p[2:, :-2]),       # 135 deg: up-right/down-left
    }
    keep = np.zeros(mag.shape, dtype=bool)
    for b, (prev, nxt) in neighbors.items():
        keep |= (bins == b) & (c > prev) & (c >= nxt)
    return keep & (mag > 0)


def detect(img: GrayImage, cfg: DetectorConfig) -> EdgeMap:
    """Run the configured detector and return a binary edge map."""
    if cfg.kind in ("sobel", "prewitt"):
        _, _, mag = gradient(img, cfg.kind)
        return EdgeMap.from_array(_threshold_magnitude(mag, cfg.threshold))

    if cfg.kind == "log":
        blurred = gaussian_blur(img, cfg.sigma)
        lap = ndimage.correlate(blurred.pixels.astype(np.float64), _LAPLACIAN, mode="nearest")
        edges = np.zeros(lap.shape, dtype=bool)
        # a sign change against any 4-neighbor with a large enough swing
        # marks both sides of the crossing
        vert = ((lap[:-1, :] * lap[1:, :]) < 0) & (
            np.abs(lap[:-1, :] - lap[1:, :]) > cfg.zero_crossing_threshold
        )
        edges[:-1, :] |= vert
        edges[1:, :] |= vert
        horiz = ((lap[:, :-1] * lap[:, 1:]) < 0) & (
            np.abs(lap[:, :-1] - lap[:, 1:]) > cfg.zero_crossing_threshold
        )
        edges[:, :-1] |= horiz
        edges[:, 1:] |= horiz
        return EdgeMap.from_array(edges)

    # canny: blur, gradient, thin, double threshold, hysteresis flood
    blurred = gaussian_blur(img, cfg.sigma)
    gx, gy, mag = gradient(blurred, "sobel")
    thin = _nms(mag, gx, gy)
    peak = mag.max()
    if peak == 0.0:
        return EdgeMap.from_array(np.zeros(mag.shape, dtype=bool))
    strong = thin & (mag >= cfg.high * peak)
    weak = thin & (mag >= cfg.low * peak)
    edges = ndimage.binary_dilation(
        strong, structure=np.ones((3, 3), dtype=bool), iterations=-1, mask=weak
    )
    return EdgeMap.from_array(edges)
