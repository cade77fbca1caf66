"""Perceptual edge map quality evaluation.

Scores binary edge maps against ground truth with a measure that ignores
displacements too small for a human to notice, ships the classical
distance-weighted figure of merit for comparison, and includes the
supporting cast: classical edge detectors, synthetic scenes with exact
ground truth, and a forced-choice psychophysics pipeline for calibrating
the perceptual threshold itself.
"""

from .raster import (
    GrayImage,
    EdgeMap,
    DistanceField,
    PgmFormatError,
    load_pgm,
    save_pgm,
    edge_map_from_image,
    image_from_edge_map,
    distance_transform,
    euclidean_distance,
)
from .matching import MatchConfig, MatchPair, MatchPartition, partition
from .measures import (
    MeasureParams,
    Score,
    MosTable,
    jndbem,
    pratt_fom,
    normalize_mos,
    pearson,
    spearman,
    register_measure,
    get_measure,
)
from .detectors import DetectorConfig, DETECTOR_KINDS, gaussian_blur, gradient, detect
from .synthetic import (
    SceneSpec,
    Rect,
    Circle,
    Line,
    Translate,
    Jitter,
    Drop,
    AddSpurious,
    Dilate,
    render,
    degrade,
    default_scene,
    shapes_scene,
)
from .psychometrics import (
    TrialSpec,
    TrialSchedule,
    ResponseRecord,
    PsychometricCurve,
    JndEstimate,
    build_schedule,
    analyze,
    estimate_jnd,
    simulate_observer,
    perfect_observer,
    sigma_for_jnd,
)

__version__ = "0.1.0"
