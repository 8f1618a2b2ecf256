"""Nearest-neighbor classifiers: validity-weighted voting and a plain baseline.

The modified classifier (MKNN) scores every train sample once with a
*validity*: the fraction of its ``h`` nearest fellow train samples that
carry the same label.  At query time the ``k`` nearest samples vote with
weight ``validity / (distance + 0.5)``, so samples that disagree with
their own neighborhood (mislabeled or isolated points) lose influence,
while samples deep inside their class keep nearly the full distance
weight.  ``classify_knn`` is the baseline: an unweighted majority vote
over the same ``k`` neighbors.

Tie handling is deterministic throughout: neighbors at equal distance are
taken in ascending sample-id order, and tied vote totals go to the
lexicographically smallest label.  Reordering the train list therefore
never changes a validity or a prediction.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .errors import (
    ConfigurationError,
    DimensionMismatchError,
    InputError,
    StateError,
)
from .metrics import _as_values

DEFAULT_WEIGHT_OFFSET = 0.5


@dataclass(frozen=True)
class ClassifierConfig:
    """Neighbor counts: k voters at query time, h for validity (default k)."""

    k: int = 5
    h: int | None = None
    weight_offset: float = DEFAULT_WEIGHT_OFFSET

    def __post_init__(self):
        if not isinstance(self.k, int) or isinstance(self.k, bool) or self.k < 1:
            raise InputError(f"k must be a positive integer, got {self.k!r}")
        if self.h is not None and (
            not isinstance(self.h, int) or isinstance(self.h, bool) or self.h < 1
        ):
            raise InputError(f"h must be a positive integer or None, got {self.h!r}")
        if not self.weight_offset > 0:
            raise InputError(f"weight_offset must be positive, got {self.weight_offset!r}")

    @property
    def validity_neighbors(self) -> int:
        return self.k if self.h is None else self.h


@dataclass(eq=False)
class TrainSample:
    """One labeled vector; validity is filled in by validate_samples."""

    id: str
    vector: np.ndarray
    label: str
    validity: float | None = None

    def __post_init__(self):
        self.vector = np.ascontiguousarray(self.vector, dtype=np.float64)
        if self.vector.ndim != 1:
            raise InputError(f"sample {self.id!r}: vector must be 1-D")


@dataclass(frozen=True)
class NeighborVote:
    """One neighbor's contribution to a classification.

    ``validity`` is None for plain majority votes, where every neighbor
    contributes weight 1 regardless of distance.
    """

    sample_id: str
    label: str
    distance: float
    weight: float
    validity: float | None = None


@dataclass
class Classification:
    """Outcome of one query: the winning label plus the evidence behind it."""

    predicted_label: str
    votes: list[NeighborVote]
    per_class_totals: dict[str, float]
    confidence: float


def vote_weight(validity, distance, offset: float = DEFAULT_WEIGHT_OFFSET):
    """Voting weight of a neighbor: validity / (distance + offset).

    Works elementwise on arrays.  At distance 0 the weight is exactly
    2 * validity for the default offset, and it decreases strictly as the
    distance grows.
    """
    return validity / (distance + offset)


def _check_samples(samples: list[TrainSample]) -> None:
    if not samples:
        raise InputError("train set is empty")
    seen = set()
    for sample in samples:
        if not sample.label:
            raise InputError(f"sample {sample.id!r} has no label")
        if sample.id in seen:
            raise InputError(f"duplicate sample id {sample.id!r}")
        seen.add(sample.id)


def _stack_vectors(samples: list[TrainSample]) -> np.ndarray:
    lengths = {s.vector.size for s in samples}
    if len(lengths) > 1:
        raise DimensionMismatchError(
            f"train vectors have mixed lengths {sorted(lengths)}"
        )
    return np.ascontiguousarray(np.stack([s.vector for s in samples]))


def _id_ranks(samples: list[TrainSample]) -> np.ndarray:
    """Rank of each sample's id in ascending order, for tie-breaking."""
    order = sorted(range(len(samples)), key=lambda i: samples[i].id)
    ranks = np.empty(len(samples), dtype=np.int64)
    for rank, i in enumerate(order):
        ranks[i] = rank
    return ranks


def validate_samples(train, h: int) -> list[TrainSample]:
    """Return a copy of the train set with validity scores filled in.

    A sample's validity is the fraction of its ``h`` nearest *other*
    train samples (Euclidean distance, distance ties by ascending id)
    that share its label; the sample itself never counts as its own
    neighbor.  The input list is not modified.
    """
    samples = list(train)
    if not isinstance(h, int) or isinstance(h, bool) or h < 1:
        raise ConfigurationError(f"h must be a positive integer, got {h!r}")
    _check_samples(samples)
    n = len(samples)
    if n <= h:
        raise ConfigurationError(
            f"validity with h={h} needs at least {h + 1} train samples, got {n}"
        )
    matrix = _stack_vectors(samples)
    sq = _kernels.pairwise_sq_dists(matrix)
    ranks = _id_ranks(samples)
    labels = np.array([s.label for s in samples])
    validated = []
    for i in range(n):
        order = np.lexsort((ranks, sq[i]))
        neighbors = order[order != i][:h]
        same = labels[neighbors] == labels[i]
        validated.append(replace(samples[i], validity=float(same.sum()) / h))
    return validated


def _nearest(samples, query, k: int, caller: str):
    """Indices of the k nearest samples plus their distances to the query."""
    query_values = _as_values(query)
    if query_values.ndim != 1:
        raise InputError(f"{caller}: query must be a 1-D vector")
    matrix = _stack_vectors(samples)
    if matrix.shape[1] != query_values.size:
        raise DimensionMismatchError(
            f"query has length {query_values.size}, train vectors {matrix.shape[1]}"
        )
    sq = _kernels.sq_dists_to(matrix, query_values)
    order = np.lexsort((_id_ranks(samples), sq))[:k]
    return order, np.sqrt(sq[order])


def _tally(votes: list[NeighborVote]) -> Classification:
    totals: dict[str, float] = {}
    for vote in votes:
        totals[vote.label] = totals.get(vote.label, 0.0) + vote.weight
    best = max(totals.values())
    winner = min(label for label, total in totals.items() if total == best)
    grand_total = sum(totals.values())
    if grand_total > 0.0:
        confidence = totals[winner] / grand_total
    else:
        # Every vote weighed zero (all validities 0); nothing separates
        # the candidate classes.
        confidence = 1.0 / len(totals)
    return Classification(winner, votes, totals, confidence)


def classify_mknn(train, query, config: ClassifierConfig | None = None) -> Classification:
    """Classify a query by validity-weighted votes of its k nearest samples.

    Requires a train set that went through validate_samples; the class
    whose summed weights ``validity / (distance + offset)`` are largest
    wins.
    """
    config = config or ClassifierConfig()
    samples = list(train)
    _check_samples(samples)
    missing = [s.id for s in samples if s.validity is None]
    if missing:
        raise StateError(
            f"{len(missing)} train samples have no validity score "
            f"(first: {missing[0]!r}); run validate_samples first"
        )
    if config.k > len(samples):
        raise ConfigurationError(
            f"k={config.k} exceeds the train set size {len(samples)}"
        )
    order, distances = _nearest(samples, query, config.k, "classify_mknn")
    votes = []
    for i, distance in zip(order, distances):
        sample = samples[i]
        weight = vote_weight(sample.validity, float(distance), config.weight_offset)
        votes.append(
            NeighborVote(sample.id, sample.label, float(distance), weight, sample.validity)
        )
    return _tally(votes)


def classify_knn(train, query, k: int) -> Classification:
    """Classify a query by unweighted majority vote of its k nearest samples."""
    samples = list(train)
    _check_samples(samples)
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ConfigurationError(f"k must be a positive integer, got {k!r}")
    if k > len(samples):
        raise ConfigurationError(f"k={k} exceeds the train set size {len(samples)}")
    order, distances = _nearest(samples, query, k, "classify_knn")
    votes = [
        NeighborVote(samples[i].id, samples[i].label, float(distance), 1.0)
        for i, distance in zip(order, distances)
    ]
    return _tally(votes)
