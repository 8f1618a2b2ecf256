"""Content-based image retrieval with validity-weighted nearest-neighbor
classification.

Images are summarized as per-channel RGB intensity histograms; similarity
is Euclidean distance between histogram vectors.  Classification weights
each neighbor's vote by how well it agrees with its own neighborhood
(its validity), which damps the influence of mislabeled or outlying
training points.
"""

from .errors import (
    CbirError,
    ConfigurationError,
    DecodeError,
    DimensionMismatchError,
    IndexDimensionError,
    IndexFormatError,
    IndexVersionError,
    InputError,
    LabelMapError,
    StateError,
    UndefinedMeasureError,
)
from .evalharness import (
    ClusterSpec,
    ComparisonReport,
    QueryMeasures,
    RetrievalReport,
    SeedResult,
    SyntheticSpec,
    compare_classifiers,
    default_benchmark_spec,
    evaluate_retrieval,
    generate_synthetic,
    load_spec_file,
)
from .features import (
    ExtractionParams,
    FeatureVector,
    decode_image,
    extract_features,
    split_channels,
)
from .metrics import (
    ConfusionCounts,
    EvaluationReport,
    euclidean_distance,
    fallout,
    precision,
    recall,
)
from .mknn import (
    Classification,
    ClassifierConfig,
    NeighborVote,
    TrainSample,
    classify_knn,
    classify_mknn,
    validate_samples,
    vote_weight,
)
from .retrieval import LabelAssignment, RankedResult, label_unlabeled, query_by_example, rank_by_vector
from .rng import Lcg64
from .store import (
    ImageIndex,
    IndexEntry,
    SkippedFile,
    build_index,
    load_index,
    read_label_map,
    save_index,
)

__version__ = "0.1.0"

__all__ = [
    "CbirError",
    "Classification",
    "ClassifierConfig",
    "ClusterSpec",
    "ComparisonReport",
    "ConfigurationError",
    "ConfusionCounts",
    "DecodeError",
    "DimensionMismatchError",
    "EvaluationReport",
    "ExtractionParams",
    "FeatureVector",
    "ImageIndex",
    "IndexDimensionError",
    "IndexEntry",
    "IndexFormatError",
    "IndexVersionError",
    "InputError",
    "LabelAssignment",
    "LabelMapError",
    "Lcg64",
    "NeighborVote",
    "QueryMeasures",
    "RankedResult",
    "RetrievalReport",
    "SeedResult",
    "SkippedFile",
    "StateError",
    "SyntheticSpec",
    "TrainSample",
    "UndefinedMeasureError",
    "build_index",
    "classify_knn",
    "classify_mknn",
    "compare_classifiers",
    "decode_image",
    "default_benchmark_spec",
    "euclidean_distance",
    "evaluate_retrieval",
    "extract_features",
    "fallout",
    "generate_synthetic",
    "label_unlabeled",
    "load_index",
    "load_spec_file",
    "precision",
    "query_by_example",
    "rank_by_vector",
    "read_label_map",
    "recall",
    "save_index",
    "split_channels",
    "validate_samples",
    "vote_weight",
]
