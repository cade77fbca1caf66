"""Constant-stimulus forced-choice pipeline for measuring the smallest
perceivable pixel displacement.

A trial shows a reference line flanked by a constant stimulus at 10 px on
one side and a comparison stimulus at 5..15 px (10 excluded, so there is
never a tie) on the other; the subject picks the side that looks closer.
Analysis pools the two sides into a proportion-chosen curve per comparison
distance, and the threshold is read off the curve as half the gap between
the 25% and 75% choice points.

Schedules serialize to JSON and response logs to JSONL; both formats are
the contract with the browser trial runner.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

__all__ = [
    "STANDARD_DISTANCE",
    "COMPARISON_DISTANCES",
    "SIDES",
    "TrialSpec",
    "TrialSchedule",
    "ResponseRecord",
    "CurvePoint",
    "PsychometricCurve",
    "JndEstimate",
    "build_schedule",
    "analyze",
    "isotonic_proportions",
    "estimate_jnd",
    "simulate_observer",
    "perfect_observer",
    "sigma_for_jnd",
    "opposite_side",
    "schedule_to_json",
    "schedule_from_json",
    "responses_to_jsonl",
    "responses_from_jsonl",
]

STANDARD_DISTANCE = 10
COMPARISON_DISTANCES = (5, 6, 7, 8, 9, 11, 12, 13, 14, 15)
SIDES = ("left", "right")


def opposite_side(side: str) -> str:
    return "right" if side == "left" else "left"


@dataclass(frozen=True)
class TrialSpec:
    """One trial: the comparison stimulus sits at ``comparison_distance``
    px on ``comparison_side``; the constant stimulus occupies the opposite
    side at the standard distance."""

    trial_id: int
    comparison_distance: int
    comparison_side: str

    def __post_init__(self):
        if self.comparison_distance not in COMPARISON_DISTANCES:
            raise ValueError(
                f"comparison distance {self.comparison_distance} not in "
                f"{COMPARISON_DISTANCES} (the standard distance never appears)"
            )
        if self.comparison_side not in SIDES:
            raise ValueError(f"bad side {self.comparison_side!r}")


@dataclass(frozen=True)
class TrialSchedule:
    trials_per_condition: int
    seed: int
    trials: tuple

    def __post_init__(self):
        object.__setattr__(self, "trials", tuple(self.trials))
        ids = [t.trial_id for t in self.trials]
        if len(set(ids)) != len(ids):
            raise ValueError("trial ids must be unique")

    def __len__(self):
        return len(self.trials)

    def by_id(self) -> dict:
        return {t.trial_id: t for t in self.trials}


@dataclass(frozen=True)
class ResponseRecord:
    trial_id: int
    chosen_side: str
    timestamp_ms: int = 0

    def __post_init__(self):
        if self.chosen_side not in SIDES:
            raise ValueError(f"bad side {self.chosen_side!r}")


@dataclass(frozen=True)
class CurvePoint:
    distance: int
    n_trials: int
    chose_comparison: int

    @property
    def proportion(self) -> float:
        return self.chose_comparison / self.n_trials


@dataclass(frozen=True)
class PsychometricCurve:
    """Proportion of trials on which the comparison stimulus was chosen as
    closer, per comparison distance (sides pooled).  ``by_side`` keeps the
    unpooled tallies around for bias diagnosis."""

    points: tuple
    by_side: dict

    def __post_init__(self):
        object.__setattr__(
            self, "points", tuple(sorted(self.points, key=lambda p: p.distance))
        )

    def distances(self):
        return [p.distance for p in self.points]

    def proportions(self):
        return [p.proportion for p in self.points]


@dataclass(frozen=True)
class JndEstimate:
    """Threshold readout: ``m`` and ``l`` are the distances chosen 75% and
    25% of the time; the just-noticeable difference is half their gap."""

    l: float
    m: float
    jnd: float

    def __post_init__(self):
        if not self.jnd > 0:
            raise ValueError(f"degenerate estimate: L={self.l}, M={self.m}")


def build_schedule(trials_per_condition: int = 10, seed: int = 0) -> TrialSchedule:
    """Balanced constant-stimulus design: every (distance, side) condition
    appears exactly ``trials_per_condition`` times, in seeded shuffled order."""
    if trials_per_condition < 1:
        raise ValueError("trials_per_condition must be >= 1")
    conditions = [
        (d, s) for d in COMPARISON_DISTANCES for s in SIDES
    ] * trials_per_condition
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(conditions))
    trials = tuple(
        TrialSpec(trial_id=i, comparison_distance=conditions[k][0], comparison_side=conditions[k][1])
        for i, k in enumerate(order.tolist())
    )
    return TrialSchedule(trials_per_condition=trials_per_condition, seed=seed, trials=trials)


def analyze(schedule: TrialSchedule, records) -> PsychometricCurve:
    """Tally a response log into the proportion-chosen curve.

    Every record must reference a scheduled trial, at most once; every
    comparison distance needs at least one response.
    """
    trials = schedule.by_id()
    seen = set()
    pooled = {d: [0, 0] for d in COMPARISON_DISTANCES}  # [chosen, n]
    sided = {s: {d: [0, 0] for d in COMPARISON_DISTANCES} for s in SIDES}
    for rec in records:
        trial = trials.get(rec.trial_id)
        if trial is None:
            raise ValueError(f"unknown trial_id {rec.trial_id}")
        if rec.trial_id in seen:
            raise ValueError(f"duplicate response for trial {rec.trial_id}")
        seen.add(rec.trial_id)
        chose = rec.chosen_side == trial.comparison_side
        d = trial.comparison_distance
        pooled[d][1] += 1
        sided[trial.comparison_side][d][1] += 1
        if chose:
            pooled[d][0] += 1
            sided[trial.comparison_side][d][0] += 1
    for d, (_, n) in pooled.items():
        if n == 0:
            raise ValueError(f"distance with zero responses: {d}")
    points = tuple(
        CurvePoint(distance=d, n_trials=n, chose_comparison=c)
        for d, (c, n) in pooled.items()
    )
    by_side = {
        s: {d: (c, n) for d, (c, n) in tallies.items()}
        for s, tallies in sided.items()
    }
    return PsychometricCurve(points=points, by_side=by_side)


def _pav_non_increasing(values, weights):
    """Pool-adjacent-violators fit, constrained non-increasing.  Leaves an
    already monotone curve untouched."""
    vals, wts, runs = [], [], []
    for v, w in zip(values, weights):
        vals.append(float(v))
        wts.append(float(w))
        runs.append(1)
        while len(vals) > 1 and vals[-2] < vals[-1]:
            v2, w2, r2 = vals.pop(), wts.pop(), runs.pop()
            vals[-1] = (vals[-1] * wts[-1] + v2 * w2) / (wts[-1] + w2)
            wts[-1] += w2
            runs[-1] += r2
    out = []
    for v, r in zip(vals, runs):
        out.extend([v] * r)
    return out


def isotonic_proportions(curve: PsychometricCurve):
    """The curve's proportions after non-increasing isotonic cleanup,
    aligned with ``curve.distances()``."""
    return _pav_non_increasing(curve.proportions(), [p.n_trials for p in curve.points])


def _crossing(distances, proportions, threshold: float) -> float:
    """Where a non-increasing piecewise-linear curve passes ``threshold``.

    Exact hits (including flat segments at the threshold) resolve to the
    midpoint of the hit run; otherwise the bracketing segment is linearly
    interpolated.
    """
    hits = [d for d, p in zip(distances, proportions) if p == threshold]
    if hits:
        return (hits[0] + hits[-1]) / 2.0
    for i in range(len(distances) - 1):
        hi, lo = proportions[i], proportions[i + 1]
        if hi > threshold > lo:
            frac = (hi - threshold) / (hi - lo)
            return distances[i] + frac * (distances[i + 1] - distances[i])
    raise ValueError(f"curve does not bracket threshold {threshold}")


def estimate_jnd(curve: PsychometricCurve) -> JndEstimate:
    """Read the threshold off the (cleaned) curve: M at the 75% point,
    L at the 25% point, JND = (L - M) / 2."""
    ds = curve.distances()
    cleaned = isotonic_proportions(curve)
    m = _crossing(ds, cleaned, 0.75)
    l = _crossing(ds, cleaned, 0.25)
    return JndEstimate(l=l, m=m, jnd=(l - m) / 2.0)


def simulate_observer(schedule: TrialSchedule, sigma: float, lapse: float = 0.0,
                      seed: int = 0):
    """Synthetic subject for testing the pipeline end to end.

    Each trial compares two noisy distance percepts, so the probability of
    calling the comparison closer is ``lapse/2 + (1-lapse) *
    Phi((10 - x) / (sigma*sqrt(2)))`` with ``x`` the comparison distance.
    Fully reproducible per seed.
    """
    if not sigma > 0:
        raise ValueError("sigma must be > 0")
    if not (0.0 <= lapse < 0.5):
        raise ValueError("lapse must lie in [0, 0.5)")
    rng = np.random.default_rng(seed)
    scale = sigma * math.sqrt(2.0)
    records = []
    for i, trial in enumerate(schedule.trials):
        p = lapse / 2.0 + (1.0 - lapse) * norm.cdf(
            (STANDARD_DISTANCE - trial.comparison_distance) / scale
        )
        chose_comparison = rng.random() < p
        side = trial.comparison_side if chose_comparison else opposite_side(trial.comparison_side)
        records.append(ResponseRecord(trial.trial_id, side, timestamp_ms=1500 * i))
    return records


def perfect_observer(schedule: TrialSchedule):
    """An error-free subject: always picks the side of the truly closer
    stimulus (the design excludes ties, so the choice is always defined)."""
    records = []
    for i, trial in enumerate(schedule.trials):
        comparison_closer = trial.comparison_distance < STANDARD_DISTANCE
        side = trial.comparison_side if comparison_closer else opposite_side(trial.comparison_side)
        records.append(ResponseRecord(trial.trial_id, side, timestamp_ms=1500 * i))
    return records


def sigma_for_jnd(target_jnd: float = 2.0, lapse: float = 0.0) -> float:
    """Observer noise whose model puts the 75%/25% choice points at
    ``standard -/+ target_jnd``, i.e. whose true threshold is ``target_jnd``."""
    if not target_jnd > 0:
        raise ValueError("target_jnd must be > 0")
    q = (0.75 - lapse / 2.0) / (1.0 - lapse)
    return target_jnd / (math.sqrt(2.0) * float(norm.ppf(q)))


def schedule_to_json(schedule: TrialSchedule) -> str:
    doc = {
        "meta": {
            "standard": STANDARD_DISTANCE,
            "trials_per_condition": schedule.trials_per_condition,
            "seed": schedule.seed,
        },
        "trials": [
            {
                "trial_id": t.trial_id,
                "comparison_distance": t.comparison_distance,
                "comparison_side": t.comparison_side,
            }
            for t in schedule.trials
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def schedule_from_json(text: str) -> TrialSchedule:
    doc = json.loads(text)
    try:
        meta = doc["meta"]
        trials = tuple(
            TrialSpec(t["trial_id"], t["comparison_distance"], t["comparison_side"])
            for t in doc["trials"]
        )
        return TrialSchedule(
            trials_per_condition=meta["trials_per_condition"],
            seed=meta["seed"],
            trials=trials,
        )
    except KeyError as exc:
        raise ValueError(f"schedule JSON missing field {exc}") from exc


def responses_to_jsonl(records) -> str:
    lines = [
        json.dumps(
            {"trial_id": r.trial_id, "chosen_side": r.chosen_side,
             "timestamp_ms": r.timestamp_ms},
            sort_keys=True,
        )
        for r in records
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def responses_from_jsonl(text: str):
    """Parse a JSONL response log; leading metadata objects (lines carrying
    a ``meta`` key and no ``trial_id``) are skipped."""
    records = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValueError(f"response log line {lineno}: invalid JSON ({exc})") from exc
        if "meta" in obj and "trial_id" not in obj:
            continue
        try:
            records.append(
                ResponseRecord(
                    trial_id=int(obj["trial_id"]),
                    chosen_side=obj["chosen_side"],
                    timestamp_ms=int(obj.get("timestamp_ms", 0)),
                )
            )
        except KeyError as exc:
            raise ValueError(f"response log line {lineno}: missing field {exc}") from exc
    return records
