"""Edge map quality scores and the statistics used to compare them with
human opinion.

Two measures are built in.  The perceptual score runs the one-to-one
partition and treats sub-threshold displacements as correct detections;
misplaced pairs contribute a distance-weighted term 1/(1 + alpha*d^2) and
the total is normalized by the larger cardinality, so spurious pixels and
holes both pull the score down.  The classical figure of merit sums the
same weight over every detected pixel using its nearest-ground-truth
distance, with no matching and no perceptual clamp; the gap between the
two on slightly displaced maps is the point of the comparison.

Third-party measures plug in through the same ``(gt, dc) -> Score``
signature; see :func:`register_measure`.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import rankdata

from .matching import MatchConfig, partition
from .raster import EdgeMap, distance_transform

__all__ = [
    "MeasureParams",
    "Score",
    "MosTable",
    "jndbem",
    "pratt_fom",
    "normalize_mos",
    "pearson",
    "spearman",
    "register_measure",
    "get_measure",
    "MEASURES",
]

DEFAULT_ALPHA = 1.0 / 9.0


@dataclass(frozen=True)
class MeasureParams:
    """Scoring parameters: the false-edge penalty ``alpha`` and the
    matching configuration."""

    alpha: float = DEFAULT_ALPHA
    match: MatchConfig = field(default_factory=MatchConfig)

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")


@dataclass(frozen=True)
class Score:
    """A [0, 1] score with its per-class breakdown."""

    value: float
    breakdown: dict

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        if not (0.0 <= self.value <= 1.0):
            raise ValueError(f"score {self.value} outside [0, 1]")


def _degenerate(gt: EdgeMap, dc: EdgeMap):
    """Empty-map limits: both empty is a vacuous perfect match, exactly one
    empty is total failure."""
    n_gt, n_dc = len(gt), len(dc)
    if n_gt == 0 and n_dc == 0:
        return Score(1.0, {"gt_pixels": 0, "detected_pixels": 0})
    if n_gt == 0 or n_dc == 0:
        return Score(0.0, {"gt_pixels": n_gt, "detected_pixels": n_dc})
    return None


def jndbem(gt: EdgeMap, dc: EdgeMap, params: MeasureParams = MeasureParams()) -> Score:
    """Perceptual edge map score in [0, 1]; 1 means a perfect match.

    Coincident and sub-threshold pairs count 1 each, misplaced pairs count
    1/(1 + alpha*d^2), holes count 0, and the sum is divided by
    max(|G_t|, |D_c|) so spurious pixels dilute the score.
    """
    if (gt.width, gt.height) != (dc.width, dc.height):
        raise ValueError("ground truth and candidate maps must share dimensions")
    degenerate = _degenerate(gt, dc)
    if degenerate is not None:
        return degenerate
    part = partition(gt, dc, params.match)
    weighted = sum(1.0 / (1.0 + params.alpha * p.distance * p.distance) for p in part.misplaced)
    value = (len(part.correct) + len(part.under_jnd) + weighted) / max(len(gt), len(dc))
    breakdown = part.counts()
    breakdown["weighted_sum"] = weighted
    breakdown["gt_pixels"] = len(gt)
    breakdown["detected_pixels"] = len(dc)
    return Score(value, breakdown)


def pratt_fom(gt: EdgeMap, dc: EdgeMap, alpha: float = DEFAULT_ALPHA) -> Score:
    """Classical distance-weighted figure of merit.

    Sums 1/(1 + alpha*d^2) over the detected pixels, with d the distance to
    the nearest ground-truth pixel, normalized by max(|G_t|, |D_c|).  No
    one-to-one matching: many detected pixels may lean on the same
    ground-truth pixel.
    """
    if (gt.width, gt.height) != (dc.width, dc.height):
        raise ValueError("ground truth and candidate maps must share dimensions")
    degenerate = _degenerate(gt, dc)
    if degenerate is not None:
        return degenerate
    dist = distance_transform(gt).values
    total = 0.0
    for (x, y) in sorted(dc.edges, key=lambda p: (p[1], p[0])):
        d = float(dist[y, x])
        total += 1.0 / (1.0 + alpha * d * d)
    value = total / max(len(gt), len(dc))
    return Score(
        value,
        {"gt_pixels": len(gt), "detected_pixels": len(dc), "weighted_sum": total},
    )


# Uniform extension point: name -> callable(gt, dc, params) -> Score.
MEASURES = {}


def register_measure(name: str, fn) -> None:
    """Register a third-party measure under ``name``.

    The callable receives ``(gt, dc, params)`` and must return a
    :class:`Score`.
    """
    MEASURES[name] = fn


def get_measure(name: str):
    try:
        return MEASURES[name]
    except KeyError:
        raise ValueError(f"unknown measure '{name}' (available: {', '.join(sorted(MEASURES))})")


register_measure("jndbem", lambda gt, dc, params: jndbem(gt, dc, params))
register_measure("fom", lambda gt, dc, params: pratt_fom(gt, dc, params.alpha))


@dataclass(frozen=True)
class MosTable:
    """Opinion ratings: rows of (edge map id, rating in [1, 10])."""

    rows: tuple

    def __post_init__(self):
        rows = tuple((str(i), float(r)) for (i, r) in self.rows)
        for i, r in rows:
            if not (1.0 <= r <= 10.0):
                raise ValueError(f"rating {r} for '{i}' outside 1..10")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_csv(cls, text: str) -> "MosTable":
        """Parse CSV with header ``id,rating``."""
        reader = csv.DictReader(io.StringIO(text))
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["id", "rating"]:
            raise ValueError(f"MOS CSV must have header 'id,rating', got {reader.fieldnames}")
        return cls(tuple((row["id"], float(row["rating"])) for row in reader))

    def ids(self):
        return sorted({i for i, _ in self.rows})

    def for_id(self, map_id: str) -> "MosTable":
        rows = tuple(r for r in self.rows if r[0] == map_id)
        if not rows:
            raise ValueError(f"no MOS rows for id '{map_id}'")
        return MosTable(rows)


def normalize_mos(table: MosTable) -> float:
    """Mean opinion score mapped affinely onto [0, 1]: mean of (r - 1) / 9."""
    if not table.rows:
        raise ValueError("cannot normalize an empty MOS table")
    return float(np.mean([(r - 1.0) / 9.0 for _, r in table.rows]))


def _as_columns(xs, ys):
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1 or len(x) != len(y):
        raise ValueError("inputs must be equal-length 1-D sequences")
    if len(x) < 2:
        raise ValueError("need at least 2 points")
    return x, y


def pearson(xs, ys) -> float:
    """Product-moment correlation in [-1, 1]."""
    x, y = _as_columns(xs, ys)
    dx = x - x.mean()
    dy = y - y.mean()
    sx = float(np.sqrt(np.sum(dx * dx)))
    sy = float(np.sqrt(np.sum(dy * dy)))
    if sx == 0.0 or sy == 0.0:
        raise ValueError("undefined correlation: zero variance input")
    return float(np.clip(np.sum(dx * dy) / (sx * sy), -1.0, 1.0))


def spearman(xs, ys) -> float:
    """Rank-order correlation: Pearson correlation of average ranks."""
    x, y = _as_columns(xs, ys)
    return pearson(rankdata(x, method="average"), rankdata(y, method="average"))
