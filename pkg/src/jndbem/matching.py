"""One-to-one matching of a candidate edge map against ground truth.

The partition runs in three phases: coincident pixels are eliminated first,
then each remaining ground-truth pixel (visited in raster order) greedily
claims the nearest still-free candidate pixel within a bounded search
radius, and whatever candidate pixels remain unclaimed are spurious.
Matched pairs are split at the perceptual threshold: displacements below it
count as correct detections, displacements at or above it are misplaced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .raster import EdgeMap

__all__ = ["MatchConfig", "MatchPair", "MatchPartition", "partition"]

DEFAULT_JND = 2.0
DEFAULT_MAX_DEPTH = 9.0


@dataclass(frozen=True)
class MatchConfig:
    """Matching parameters: perceptual displacement threshold and the
    search-depth bound, both in pixels."""

    jnd: float = DEFAULT_JND
    max_depth: float = DEFAULT_MAX_DEPTH

    def __post_init__(self):
        if not self.jnd > 0:
            raise ValueError(f"jnd must be > 0, got {self.jnd}")
        if not self.max_depth > 0:
            raise ValueError(f"max_depth must be > 0, got {self.max_depth}")
        if self.jnd > self.max_depth:
            raise ValueError(f"jnd ({self.jnd}) must not exceed max_depth ({self.max_depth})")


@dataclass(frozen=True)
class MatchPair:
    """A matched (ground truth, candidate) pixel pair with its Euclidean
    distance; coincident pixels never appear as pairs, so 0 < distance."""

    gt_pixel: tuple
    candidate_pixel: tuple
    distance: float


@dataclass(frozen=True)
class MatchPartition:
    """Four-way classification of two edge maps.

    ``correct`` holds coincident pixels; ``under_jnd`` and ``misplaced``
    hold one-to-one pairs below / at-or-above the threshold; ``missed``
    are unmatched ground-truth pixels and ``spurious`` unmatched candidate
    pixels.  The ground-truth sides partition G_t and the candidate sides
    partition D_c.
    """

    correct: frozenset
    under_jnd: tuple
    misplaced: tuple
    missed: frozenset
    spurious: frozenset

    def counts(self) -> dict:
        return {
            "correct": len(self.correct),
            "under_jnd": len(self.under_jnd),
            "misplaced": len(self.misplaced),
            "missed": len(self.missed),
            "spurious": len(self.spurious),
        }


@lru_cache(maxsize=None)
def _search_offsets(max_depth: float):
    """(dy, dx) offsets with 0 < dx^2+dy^2 <= max_depth^2, sorted by squared
    distance then candidate raster order, so the first free hit is the match."""
    r = int(math.floor(max_depth))
    d2max = max_depth * max_depth
    offs = [
        (dy * dy + dx * dx, dy, dx)
        for dy in range(-r, r + 1)
        for dx in range(-r, r + 1)
        if 0 < dy * dy + dx * dx <= d2max
    ]
    offs.sort()
    return tuple(offs)


def partition(gt: EdgeMap, dc: EdgeMap, cfg: MatchConfig = MatchConfig()) -> MatchPartition:
    """Partition candidate map ``dc`` against ground truth ``gt``.

    Both maps must share dimensions.  Empty maps are legal: everything then
    lands in ``missed`` / ``spurious``.  The result is deterministic: ground
    truth pixels are visited row-major, and ties at equal minimum distance
    go to the candidate pixel that comes first in raster order.
    """
    if (gt.width, gt.height) != (dc.width, dc.height):
        raise ValueError(
            f"dimension mismatch: ground truth {gt.width}x{gt.height} "
            f"vs candidate {dc.width}x{dc.height}"
        )

    correct = gt.edges & dc.edges
    remaining_gt = sorted(gt.edges - correct, key=lambda p: (p[1], p[0]))

    free = np.zeros((gt.height, gt.width), dtype=bool)
    for (x, y) in dc.edges - correct:
        free[y, x] = True

    under, misplaced, missed = [], [], []
    w, h = gt.width, gt.height
    offsets = _search_offsets(cfg.max_depth)
    for (gx, gy) in remaining_gt:
        hit = None
        for d2, dy, dx in offsets:
            cx, cy = gx + dx, gy + dy
            if 0 <= cx < w and 0 <= cy < h and free[cy, cx]:
                hit = (d2, cx, cy)
                break
        if hit is None:
            missed.append((gx, gy))
            continue
        d2, cx, cy = hit
        free[cy, cx] = False
        pair = MatchPair((gx, gy), (cx, cy), math.sqrt(d2))
        if pair.distance < cfg.jnd:
            under.append(pair)
        else:
            misplaced.append(pair)

    ys, xs = np.nonzero(free)
    spurious = frozenset(zip(xs.tolist(), ys.tolist()))
    return MatchPartition(
        correct=frozenset(correct),
        under_jnd=tuple(under),
        misplaced=tuple(misplaced),
        missed=frozenset(missed),
        spurious=spurious,
    )
