"""Shared test helpers: random dataset generation and conversions."""

import numpy as np

from cbir_mknn import Lcg64, TrainSample

LABEL_ALPHABET = "abcdefghij"


def random_dataset(rng: Lcg64, max_samples=30, max_dim=4, max_classes=3, min_samples=6):
    """A random labeled train set plus one query vector.

    Sizes are drawn uniformly: min_samples..max_samples points, 1..max_dim
    dimensions, 1..max_classes classes.  Coordinates are uniform in
    [0, 1), so exact distance ties between distinct points do not occur.
    """
    n = min_samples + rng.below(max_samples - min_samples + 1)
    dim = 1 + rng.below(max_dim)
    labels = [LABEL_ALPHABET[i] for i in range(1 + rng.below(max_classes))]
    samples = [
        TrainSample(
            f"s{i:03d}",
            np.array([rng.uniform() for _ in range(dim)]),
            labels[rng.below(len(labels))],
        )
        for i in range(n)
    ]
    query = np.array([rng.uniform() for _ in range(dim)])
    return samples, query


def as_oracle(samples):
    """TrainSample list -> the (id, vector, label) tuples the oracle takes."""
    return [(s.id, [float(v) for v in s.vector], s.label) for s in samples]


# Hand-computed confusion fixtures.  Each row is (counts kwargs, expected
# recall, expected precision, expected fallout); the expectations are the
# exact fractions worked out by hand from the definitions
#   recall    = retrieved_relevant / relevant_total
#   precision = retrieved_relevant / retrieved_total
#   fallout   = false_alarms / (false_alarms + correct_diagnoses)
CONFUSION_FIXTURES = [
    # perfect retrieval of a 10-member class
    (dict(retrieved_relevant=10, retrieved_total=10, relevant_total=10,
          false_alarms=0, correct_diagnoses=90), 1.0, 1.0, 0.0),
    # the half-recall / quarter-precision substitution case
    (dict(retrieved_relevant=1, retrieved_total=4, relevant_total=2,
          false_alarms=3, correct_diagnoses=5), 1 / 2, 1 / 4, 3 / 8),
    # 5 of 10 retrieved share the class
    (dict(retrieved_relevant=5, retrieved_total=10, relevant_total=5,
          false_alarms=5, correct_diagnoses=2), 1.0, 1 / 2, 5 / 7),
    # nothing relevant retrieved at all
    (dict(retrieved_relevant=0, retrieved_total=10, relevant_total=4,
          false_alarms=10, correct_diagnoses=0), 0.0, 0.0, 1.0),
    (dict(retrieved_relevant=3, retrieved_total=4, relevant_total=6,
          false_alarms=1, correct_diagnoses=7), 1 / 2, 3 / 4, 1 / 8),
    (dict(retrieved_relevant=2, retrieved_total=3, relevant_total=8,
          false_alarms=1, correct_diagnoses=9), 1 / 4, 2 / 3, 1 / 10),
    (dict(retrieved_relevant=7, retrieved_total=7, relevant_total=7,
          false_alarms=0, correct_diagnoses=1), 1.0, 1.0, 0.0),
    (dict(retrieved_relevant=1, retrieved_total=1, relevant_total=9,
          false_alarms=0, correct_diagnoses=11), 1 / 9, 1.0, 0.0),
    (dict(retrieved_relevant=4, retrieved_total=9, relevant_total=4,
          false_alarms=5, correct_diagnoses=15), 1.0, 4 / 9, 1 / 4),
    (dict(retrieved_relevant=0, retrieved_total=5, relevant_total=1,
          false_alarms=5, correct_diagnoses=3), 0.0, 0.0, 5 / 8),
    (dict(retrieved_relevant=6, retrieved_total=8, relevant_total=12,
          false_alarms=2, correct_diagnoses=6), 1 / 2, 3 / 4, 1 / 4),
    (dict(retrieved_relevant=9, retrieved_total=10, relevant_total=20,
          false_alarms=1, correct_diagnoses=29), 9 / 20, 9 / 10, 1 / 30),
]
