"""Query-by-example ranking and labeling of unlabeled index entries."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConfigurationError, DimensionMismatchError, InputError
from .features import extract_features
from .metrics import _as_values
from .mknn import ClassifierConfig, TrainSample, classify_mknn, validate_samples
from .store import ORIGIN_MKNN, ImageIndex, IndexEntry


@dataclass(frozen=True)
class RankedResult:
    """One retrieval hit; results are sorted by distance, ties by id."""

    id: str
    distance: float
    label: str | None = None


@dataclass(frozen=True)
class LabelAssignment:
    """A label given to a formerly-unlabeled entry, with vote confidence."""

    id: str
    assigned_label: str
    confidence: float


def _entry_matrix(index: ImageIndex) -> np.ndarray:
    return np.ascontiguousarray(np.stack([e.vector for e in index.entries]))


def rank_by_vector(index: ImageIndex, vector, top_n: int = 10) -> list[RankedResult]:
    """Rank index entries by Euclidean distance to a feature vector."""
    if not index.entries:
        raise InputError("index is empty")
    if not isinstance(top_n, int) or isinstance(top_n, bool) or top_n < 1:
        raise InputError(f"top_n must be a positive integer, got {top_n!r}")
    values = _as_values(vector)
    if values.size != index.params.vector_length:
        raise DimensionMismatchError(
            f"query vector has length {values.size}, "
            f"index vectors {index.params.vector_length}"
        )
    sq = _kernels.sq_dists_to(_entry_matrix(index), values)
    # Entries are sorted by id, so a stable sort breaks distance ties by id.
    order = np.argsort(sq, kind="stable")[:top_n]
    return [
        RankedResult(index.entries[i].id, float(np.sqrt(sq[i])), index.entries[i].label)
        for i in order
    ]


def query_by_example(index: ImageIndex, query_image, top_n: int = 10) -> list[RankedResult]:
    """Rank index entries by similarity to an example image.

    ``query_image`` may be a file path or a decoded pixel array; its
    features are extracted with the index's own parameters.
    """
    feature = extract_features(query_image, index.params)
    return rank_by_vector(index, feature, top_n)


def label_unlabeled(
    index: ImageIndex, config: ClassifierConfig | None = None
) -> tuple[list[LabelAssignment], ImageIndex]:
    """Assign labels to every unlabeled entry using the labeled ones.

    The labeled entries are validated (h nearest neighbors each) and then
    vote on each unlabeled entry.  Returns the assignments (in id order)
    and a new index in which formerly-unlabeled entries carry the
    assigned label marked with origin ``mknn`` and labeled entries carry
    their computed validity.  Original labels are never changed.  With no
    unlabeled entries this is a no-op returning the index unchanged.
    """
    config = config or ClassifierConfig()
    labeled = index.labeled()
    unlabeled = index.unlabeled()
    if not unlabeled:
        return [], index
    h = config.validity_neighbors
    minimum = max(h + 1, config.k)
    if len(labeled) < minimum:
        raise ConfigurationError(
            f"labeling with k={config.k}, h={h} needs at least {minimum} labeled "
            f"entries; index has {len(labeled)}"
        )
    train = [TrainSample(e.id, e.vector, e.label) for e in labeled]
    validated = validate_samples(train, h)
    validity_by_id = {s.id: s.validity for s in validated}
    entries = [
        IndexEntry(e.id, e.vector, e.label, validity_by_id[e.id], e.origin)
        for e in labeled
    ]
    assignments = []
    for entry in unlabeled:
        outcome = classify_mknn(validated, entry.vector, config)
        assignments.append(
            LabelAssignment(entry.id, outcome.predicted_label, outcome.confidence)
        )
        entries.append(
            IndexEntry(entry.id, entry.vector, outcome.predicted_label, None, ORIGIN_MKNN)
        )
    return assignments, ImageIndex(index.params, entries, index.version)
