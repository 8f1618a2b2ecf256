"""Shared fixtures: a small image corpus and a synthetic two-cluster index.

The corpus is 12 images of 3 color classes (4 each, three PNG and one
JPEG per class), generated deterministically from the package's own
seedable generator.  Images are 16x16 so every histogram value is a
count over 256 pixels; those are exactly representable in the index
file's 9-significant-digit fields, which the round-trip tests rely on.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pytest
from PIL import Image

from cbir_mknn import ExtractionParams, ImageIndex, IndexEntry, Lcg64, build_index

CLASS_COLORS = {
    "blue": (40, 40, 200),
    "green": (40, 200, 40),
    "red": (200, 40, 40),
}
IMAGE_SIDE = 16
IMAGES_PER_CLASS = 4


@dataclass(frozen=True)
class Corpus:
    root: Path
    images: Path
    labels_full: Path
    labels_partial: Path
    truth: dict
    unlabeled: tuple


def _write_image(rng: Lcg64, base, path: Path) -> None:
    pixels = np.empty((IMAGE_SIDE, IMAGE_SIDE, 3), dtype=np.uint8)
    for y in range(IMAGE_SIDE):
        for x in range(IMAGE_SIDE):
            for c in range(3):
                noise = int(round(12.0 * rng.normal()))
                pixels[y, x, c] = min(255, max(0, base[c] + noise))
    Image.fromarray(pixels).save(path, quality=95)


@pytest.fixture(scope="session")
def corpus(tmp_path_factory) -> Corpus:
    root = tmp_path_factory.mktemp("corpus")
    images = root / "images"
    images.mkdir()
    rng = Lcg64(2024)
    truth = {}
    for name, base in CLASS_COLORS.items():
        for i in range(IMAGES_PER_CLASS):
            ext = "jpg" if i == IMAGES_PER_CLASS - 1 else "png"
            filename = f"{name}_{i}.{ext}"
            _write_image(rng, base, images / filename)
            truth[filename] = name
    unlabeled = ("green_3.jpg", "red_3.jpg")
    labels_full = root / "labels_full.tsv"
    labels_full.write_text(
        "# generated fixture labels\n"
        + "".join(f"{f}\t{lbl}\n" for f, lbl in sorted(truth.items())),
        encoding="utf-8",
    )
    labels_partial = root / "labels_partial.tsv"
    labels_partial.write_text(
        "".join(f"{f}\t{lbl}\n" for f, lbl in sorted(truth.items()) if f not in unlabeled),
        encoding="utf-8",
    )
    return Corpus(root, images, labels_full, labels_partial, truth, unlabeled)


@pytest.fixture(scope="session")
def full_index(corpus) -> ImageIndex:
    index, skipped = build_index(corpus.images, corpus.labels_full)
    assert skipped == []
    return index


@pytest.fixture(scope="session")
def partial_index(corpus) -> ImageIndex:
    index, skipped = build_index(corpus.images, corpus.labels_partial)
    assert skipped == []
    return index


@pytest.fixture
def corrupt_corpus(tmp_path, corpus) -> Path:
    """A directory with three good images and one undecodable file."""
    target = tmp_path / "images"
    target.mkdir()
    for filename in ("blue_0.png", "green_0.png", "red_0.png"):
        target.joinpath(filename).write_bytes((corpus.images / filename).read_bytes())
    (target / "broken.png").write_text("this is not an image\n", encoding="utf-8")
    return target


@dataclass(frozen=True)
class TwoCluster:
    index: ImageIndex
    truth: dict


def _cluster_vector(rng: Lcg64, center: float) -> np.ndarray:
    return np.array([center + 0.02 * rng.normal() for _ in range(6)])


@pytest.fixture(scope="session")
def two_cluster() -> TwoCluster:
    """Two tight, well-separated clusters: 20 labeled + 10 unlabeled each."""
    rng = Lcg64(7)
    entries = []
    truth = {}
    for label, center in (("alpha", 0.2), ("beta", 0.8)):
        for i in range(20):
            entries.append(IndexEntry(f"{label}-{i:02d}", _cluster_vector(rng, center), label))
        for i in range(10):
            entry_id = f"u-{label}-{i:02d}"
            entries.append(IndexEntry(entry_id, _cluster_vector(rng, center)))
            truth[entry_id] = label
    index = ImageIndex(ExtractionParams(bins_per_channel=2), entries)
    return TwoCluster(index, truth)
