"""Distance between feature vectors and standard retrieval measures."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from . import _kernels
from .errors import DimensionMismatchError, InputError, UndefinedMeasureError


def _as_values(vector) -> np.ndarray:
    """Accept a FeatureVector, array, or sequence; return a float64 array."""
    values = getattr(vector, "values", vector)
    return np.ascontiguousarray(values, dtype=np.float64)


def euclidean_distance(a, b) -> float:
    """Euclidean distance between two equal-length feature vectors."""
    va, vb = _as_values(a), _as_values(b)
    if va.ndim != 1 or vb.ndim != 1:
        raise InputError("euclidean_distance expects 1-D vectors")
    if va.size != vb.size:
        raise DimensionMismatchError(
            f"cannot compare vectors of length {va.size} and {vb.size}"
        )
    return float(np.sqrt(_kernels.sq_dists_to(va[np.newaxis, :], vb)[0]))


@dataclass(frozen=True)
class ConfusionCounts:
    """Counts behind the retrieval measures for one query.

    ``false_alarms`` are irrelevant images that were retrieved and
    ``correct_diagnoses`` are irrelevant images that were correctly left
    out, so fallout is the false-positive rate.
    """

    retrieved_relevant: int
    retrieved_total: int
    relevant_total: int
    false_alarms: int = 0
    correct_diagnoses: int = 0

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise InputError(f"{f.name} must be a non-negative integer, got {value!r}")
        if self.retrieved_relevant > self.retrieved_total:
            raise InputError(
                f"retrieved_relevant ({self.retrieved_relevant}) exceeds "
                f"retrieved_total ({self.retrieved_total})"
            )
        if self.retrieved_relevant > self.relevant_total:
            raise InputError(
                f"retrieved_relevant ({self.retrieved_relevant}) exceeds "
                f"relevant_total ({self.relevant_total})"
            )


def recall(counts: ConfusionCounts) -> float:
    """Retrieved relevant images over all relevant images."""
    if counts.relevant_total == 0:
        raise UndefinedMeasureError("recall undefined: no relevant images for this query")
    return counts.retrieved_relevant / counts.relevant_total


def precision(counts: ConfusionCounts) -> float:
    """Retrieved relevant images over all retrieved images."""
    if counts.retrieved_total == 0:
        raise UndefinedMeasureError("precision undefined: nothing was retrieved")
    return counts.retrieved_relevant / counts.retrieved_total


def fallout(counts: ConfusionCounts) -> float:
    """False alarms over all irrelevant images (false-positive rate)."""
    denominator = counts.false_alarms + counts.correct_diagnoses
    if denominator == 0:
        raise UndefinedMeasureError("fallout undefined: no irrelevant images for this query")
    return counts.false_alarms / denominator


@dataclass
class EvaluationReport:
    """Measures for one run; fields are None when undefined for the run."""

    recall: float | None = None
    precision: float | None = None
    fallout: float | None = None
    accuracy: float | None = None

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if value is None:
                continue
            if not math.isfinite(value) or not 0.0 <= value <= 1.0:
                raise InputError(f"{f.name} must lie in [0, 1], got {value!r}")
