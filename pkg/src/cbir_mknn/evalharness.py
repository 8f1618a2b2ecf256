"""Benchmark harness: classifier comparison on synthetic data and
retrieval evaluation over a labeled index.

The synthetic benchmark draws Gaussian clusters, splits them 70/30 into
train and test, and flips a fraction of the *train* labels.  Noisy labels
are the regime where validity weighting should help: a flipped sample
disagrees with its neighborhood, gets a low validity, and loses voting
power.  All randomness comes from the package's seedable generator
(``rng.Lcg64``), so reports are bit-for-bit reproducible from the spec.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import _kernels
from .errors import InputError, UndefinedMeasureError
from .metrics import ConfusionCounts, EvaluationReport, fallout, precision, recall
from .mknn import ClassifierConfig, TrainSample, classify_knn, classify_mknn, validate_samples
from .rng import Lcg64
from .store import ImageIndex

TRAIN_FRACTION = 0.7


@dataclass(frozen=True)
class ClusterSpec:
    """One isotropic Gaussian cluster: center, spread, label, point count."""

    center: tuple[float, ...]
    spread: float
    label: str
    count: int


@dataclass(frozen=True)
class SyntheticSpec:
    """A reproducible synthetic dataset: clusters, train label noise, seed."""

    clusters: tuple[ClusterSpec, ...]
    label_noise: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not self.clusters:
            raise InputError("spec needs at least one cluster")
        dims = {len(c.center) for c in self.clusters}
        if len(dims) > 1:
            raise InputError(f"cluster centers have mixed dimensions {sorted(dims)}")
        for c in self.clusters:
            if c.count < 1:
                raise InputError(f"cluster {c.label!r}: count must be >= 1, got {c.count}")
            if not c.spread > 0:
                raise InputError(f"cluster {c.label!r}: spread must be > 0, got {c.spread}")
            if not c.label:
                raise InputError("cluster labels must be non-empty")
        if not 0.0 <= self.label_noise < 1.0:
            raise InputError(f"label_noise must lie in [0, 1), got {self.label_noise}")
        if self.label_noise > 0 and len({c.label for c in self.clusters}) < 2:
            raise InputError("label noise needs at least two classes to flip between")


def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def generate_synthetic(spec: SyntheticSpec) -> tuple[list[TrainSample], list[TrainSample]]:
    """Draw the dataset described by a spec; deterministic given its seed.

    Points are generated cluster by cluster, pooled, shuffled, and split
    70/30 (train size rounded half-up).  Label noise then flips exactly
    ``round(noise * train_size)`` train labels, each to a different class
    chosen uniformly.  Test labels always keep the generating cluster's
    label.
    """
    rng = Lcg64(spec.seed)
    samples: list[TrainSample] = []
    for cluster in spec.clusters:
        for _ in range(cluster.count):
            point = np.array(
                [c + cluster.spread * rng.normal() for c in cluster.center],
                dtype=np.float64,
            )
            samples.append(TrainSample(f"s{len(samples):05d}", point, cluster.label))
    rng.shuffle(samples)
    n_train = _round_half_up(TRAIN_FRACTION * len(samples))
    train, test = samples[:n_train], samples[n_train:]
    n_flip = _round_half_up(spec.label_noise * len(train))
    if n_flip:
        class_labels = sorted({c.label for c in spec.clusters})
        positions = list(range(len(train)))
        rng.shuffle(positions)
        for pos in positions[:n_flip]:
            others = [lbl for lbl in class_labels if lbl != train[pos].label]
            train[pos] = replace(train[pos], label=others[rng.below(len(others))])
    return train, test


@dataclass(frozen=True)
class SeedResult:
    seed: int
    knn_accuracy: float
    mknn_accuracy: float


@dataclass(frozen=True)
class ComparisonReport:
    """Mean and per-seed accuracies of the two classifiers."""

    knn_accuracy: float
    mknn_accuracy: float
    per_seed: tuple[SeedResult, ...]
    seeds: int
    k: int
    h: int

    @property
    def mknn_win_or_tie_fraction(self) -> float:
        wins = sum(1 for r in self.per_seed if r.mknn_accuracy >= r.knn_accuracy)
        return wins / len(self.per_seed)


def compare_classifiers(
    spec: SyntheticSpec,
    config: ClassifierConfig | None = None,
    n_seeds: int = 1,
) -> ComparisonReport:
    """Score both classifiers on identical splits for seeds seed..seed+n-1.

    For every seed the same generated train/test split feeds both the
    plain majority-vote classifier and the validity-weighted one;
    accuracy is the fraction of test points whose predicted label matches
    the generating cluster's.
    """
    config = config or ClassifierConfig()
    if n_seeds < 1:
        raise InputError(f"n_seeds must be at least 1, got {n_seeds}")
    results = []
    for offset in range(n_seeds):
        seeded = replace(spec, seed=spec.seed + offset)
        train, test = generate_synthetic(seeded)
        if not test:
            raise InputError("spec produces an empty test split")
        validated = validate_samples(train, config.validity_neighbors)
        knn_hits = 0
        mknn_hits = 0
        for sample in test:
            if classify_knn(train, sample.vector, config.k).predicted_label == sample.label:
                knn_hits += 1
            if classify_mknn(validated, sample.vector, config).predicted_label == sample.label:
                mknn_hits += 1
        results.append(
            SeedResult(seeded.seed, knn_hits / len(test), mknn_hits / len(test))
        )
    return ComparisonReport(
        knn_accuracy=sum(r.knn_accuracy for r in results) / len(results),
        mknn_accuracy=sum(r.mknn_accuracy for r in results) / len(results),
        per_seed=tuple(results),
        seeds=n_seeds,
        k=config.k,
        h=config.validity_neighbors,
    )


def default_benchmark_spec(seed: int = 1) -> SyntheticSpec:
    """Two 2-D Gaussian clusters four spreads apart with 15% label noise.

    286 points total, so the 70/30 split yields 200 train and 86 test
    points.  Intended to be run with k = h = 7 over many seeds.
    """
    return SyntheticSpec(
        clusters=(
            ClusterSpec(center=(0.0, 0.0), spread=1.0, label="a", count=143),
            ClusterSpec(center=(4.0, 0.0), spread=1.0, label="b", count=143),
        ),
        label_noise=0.15,
        seed=seed,
    )


def load_spec_file(path) -> SyntheticSpec:
    """Read a SyntheticSpec from a JSON file.

    Schema: ``{"clusters": [{"center": [...], "spread": s, "label": str,
    "count": n}, ...], "label_noise": f, "seed": n}``; ``label_noise``
    and ``seed`` default to 0.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputError(f"spec file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc
    try:
        clusters = tuple(
            ClusterSpec(
                center=tuple(float(x) for x in c["center"]),
                spread=float(c["spread"]),
                label=str(c["label"]),
                count=int(c["count"]),
            )
            for c in data["clusters"]
        )
        return SyntheticSpec(
            clusters=clusters,
            label_noise=float(data.get("label_noise", 0.0)),
            seed=int(data.get("seed", 0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed spec ({exc!r})") from exc


@dataclass(frozen=True)
class QueryMeasures:
    """Per-query measures; a field is None when its denominator is zero."""

    query_id: str
    recall: float | None
    precision: float | None
    fallout: float | None


@dataclass(frozen=True)
class RetrievalReport:
    """Per-query measures plus macro averages over the defined ones."""

    per_query: tuple[QueryMeasures, ...]
    macro: EvaluationReport
    queries: int
    skipped: int


def _defined(measure, counts: ConfusionCounts) -> float | None:
    try:
        return measure(counts)
    except UndefinedMeasureError:
        return None


def evaluate_retrieval(
    index: ImageIndex,
    query_ids: list[str] | None = None,
    top_n: int = 10,
) -> RetrievalReport:
    """Leave-one-out retrieval measures with same-label relevance.

    Every query image is ranked against all other entries; an entry is
    relevant iff it shares the query's label, and the query itself is
    excluded from both the retrieved and the relevant sets.  Macro
    averages are taken per measure over the queries where that measure is
    defined; a query with all three measures undefined counts as skipped.
    """
    entries = index.entries
    unlabeled = [e.id for e in entries if e.label is None]
    if unlabeled:
        raise InputError(
            f"evaluation needs a label for every entry; {len(unlabeled)} entries "
            f"are unlabeled (first: {unlabeled[0]!r})"
        )
    if not isinstance(top_n, int) or isinstance(top_n, bool) or top_n < 1:
        raise InputError(f"top_n must be a positive integer, got {top_n!r}")
    if query_ids is None:
        query_ids = [e.id for e in entries]
    position = {e.id: i for i, e in enumerate(entries)}
    for query_id in query_ids:
        if query_id not in position:
            raise InputError(f"query id not in index: {query_id!r}")
    matrix = np.ascontiguousarray(np.stack([e.vector for e in entries]))
    labels = np.array([e.label for e in entries])
    n = len(entries)
    per_query = []
    for query_id in query_ids:
        i = position[query_id]
        sq = _kernels.sq_dists_to(matrix, matrix[i])
        others = np.flatnonzero(np.arange(n) != i)
        # Entries (and hence `others`) are in id order; stable sort keeps
        # that order for distance ties.
        retrieved = others[np.argsort(sq[others], kind="stable")][:top_n]
        relevant_total = int((labels[others] == labels[i]).sum())
        retrieved_relevant = int((labels[retrieved] == labels[i]).sum())
        false_alarms = len(retrieved) - retrieved_relevant
        irrelevant_total = (n - 1) - relevant_total
        counts = ConfusionCounts(
            retrieved_relevant=retrieved_relevant,
            retrieved_total=len(retrieved),
            relevant_total=relevant_total,
            false_alarms=false_alarms,
            correct_diagnoses=irrelevant_total - false_alarms,
        )
        per_query.append(
            QueryMeasures(
                query_id,
                _defined(recall, counts),
                _defined(precision, counts),
                _defined(fallout, counts),
            )
        )
    macro = {}
    for name in ("recall", "precision", "fallout"):
        defined = [getattr(q, name) for q in per_query if getattr(q, name) is not None]
        macro[name] = sum(defined) / len(defined) if defined else None
    skipped = sum(
        1 for q in per_query if q.recall is None and q.precision is None and q.fallout is None
    )
    return RetrievalReport(
        per_query=tuple(per_query),
        macro=EvaluationReport(**macro),
        queries=len(query_ids),
        skipped=skipped,
    )
