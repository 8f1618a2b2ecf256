"""RGB channel separation and per-channel histogram features.

An image is summarized by one normalized intensity histogram per color
channel, concatenated red-green-blue.  The histograms are normalized per
channel (each segment sums to 1) so that no channel dominates distances,
and they carry no spatial information, which makes the vector independent
of image resolution and pixel order.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from . import _kernels
from .errors import DecodeError, InputError

MIN_BINS = 2
MAX_BINS = 256


@dataclass(frozen=True)
class ExtractionParams:
    """Extraction settings; channels are always red, green, blue."""

    bins_per_channel: int = 16

    def __post_init__(self):
        b = self.bins_per_channel
        if not isinstance(b, int) or isinstance(b, bool) or not MIN_BINS <= b <= MAX_BINS:
            raise InputError(
                f"bins_per_channel must be an integer in [{MIN_BINS}, {MAX_BINS}], got {b!r}"
            )

    @property
    def vector_length(self) -> int:
        return 3 * self.bins_per_channel


@dataclass(eq=False)
class FeatureVector:
    """Concatenated per-channel histograms of one image."""

    values: np.ndarray
    params: ExtractionParams

    def __post_init__(self):
        self.values = np.ascontiguousarray(self.values, dtype=np.float64)
        if self.values.shape != (self.params.vector_length,):
            raise InputError(
                f"feature vector has {self.values.size} values, "
                f"expected {self.params.vector_length}"
            )

    def __eq__(self, other):
        if not isinstance(other, FeatureVector):
            return NotImplemented
        return self.params == other.params and np.array_equal(self.values, other.values)

    def channel(self, index: int) -> np.ndarray:
        """Histogram segment for one channel (0=red, 1=green, 2=blue)."""
        b = self.params.bins_per_channel
        return self.values[index * b:(index + 1) * b]


def decode_image(path) -> np.ndarray:
    """Decode an image file into an (H, W, 3) uint8 RGB array.

    Grayscale is replicated into all three channels and alpha is dropped,
    so any raster Pillow can read becomes plain 8-bit RGB.  Raises
    DecodeError naming the file when decoding fails or the result has no
    pixels.  PNG and JPEG are always available; other Pillow-supported
    formats work but are not part of the contract.
    """
    path = Path(path)
    try:
        with Image.open(path) as img:
            pixels = np.asarray(img.convert("RGB"), dtype=np.uint8)
    except FileNotFoundError:
        raise DecodeError(f"{path}: file not found") from None
    except (UnidentifiedImageError, OSError, ValueError, SyntaxError) as exc:
        raise DecodeError(f"{path}: {exc}") from exc
    if pixels.size == 0:
        raise DecodeError(f"{path}: image has no pixels")
    return pixels


def split_channels(image) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split a decoded raster into red, green and blue planes.

    Accepts an (H, W, 3) or (H, W, 4) 8-bit array (alpha is ignored), or
    a 2-D grayscale array whose values are used for all three planes.
    """
    arr = np.asarray(image)
    if arr.size == 0:
        raise DecodeError("image has no pixels")
    if arr.ndim == 2:
        plane = arr.astype(np.uint8)
        return plane, plane, plane
    if arr.ndim == 3 and arr.shape[2] in (3, 4):
        rgb = arr.astype(np.uint8)
        return rgb[:, :, 0], rgb[:, :, 1], rgb[:, :, 2]
    raise DecodeError(f"unsupported pixel layout with shape {arr.shape}")


def extract_features(image, params: ExtractionParams | None = None) -> FeatureVector:
    """Histogram each channel of an image and normalize to sum to 1.

    ``image`` may be a file path or an already-decoded pixel array.  An
    intensity ``v`` in [0, 255] lands in bin ``floor(v * bins / 256)``,
    so bins cover the intensity range evenly and 255 always falls in the
    last bin.
    """
    params = params or ExtractionParams()
    if isinstance(image, (str, Path)):
        image = decode_image(image)
    red, green, blue = split_channels(image)
    total = red.size
    bins = params.bins_per_channel
    segments = []
    for plane in (red, green, blue):
        intensities = np.ascontiguousarray(plane, dtype=np.int64).ravel()
        counts = _kernels.hist_counts(intensities, bins)
        segments.append(counts / total)
    return FeatureVector(np.concatenate(segments), params)
