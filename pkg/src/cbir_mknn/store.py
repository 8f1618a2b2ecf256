"""Persistent image index: a versioned, diff-able tab-separated text file.

File layout (UTF-8, LF line endings, trailing newline required):

    line 1:   cbir-hist-index<TAB>1<TAB><bins_per_channel>
    line 2+:  <id><TAB><label><TAB><origin><TAB><validity><TAB><v1>...<TAB><v3B>

``label``, ``origin`` and ``validity`` hold ``-`` when absent.  ``origin``
records where a label came from: ``user`` for labels supplied through a
label map, ``mknn`` for labels assigned by propagation.  Validity and the
3B feature values are decimal with 9 significant digits.  Entries are
sorted by id, so building the same corpus with the same parameters twice
produces byte-identical files.

Label maps are text files with one ``relative-path<TAB>label`` per line;
blank lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    DecodeError,
    IndexDimensionError,
    IndexFormatError,
    IndexVersionError,
    InputError,
    LabelMapError,
)
from .features import ExtractionParams, decode_image, extract_features

FORMAT_NAME = "cbir-hist-index"
FORMAT_VERSION = 1

ORIGIN_USER = "user"
ORIGIN_MKNN = "mknn"

_ABSENT = "-"


def _check_field_text(kind: str, value: str) -> None:
    if not value or value == _ABSENT or "\t" in value or "\n" in value:
        raise InputError(f"invalid {kind} {value!r}: must be non-empty, not {_ABSENT!r}, "
                         "and contain no tabs or newlines")


@dataclass(eq=False)
class IndexEntry:
    """One indexed image: id, feature vector, optional label and validity."""

    id: str
    vector: np.ndarray
    label: str | None = None
    validity: float | None = None
    origin: str | None = None

    def __post_init__(self):
        _check_field_text("entry id", self.id)
        self.vector = np.ascontiguousarray(self.vector, dtype=np.float64)
        if self.vector.ndim != 1:
            raise InputError(f"entry {self.id!r}: vector must be 1-D")
        if not np.all(np.isfinite(self.vector)):
            raise InputError(f"entry {self.id!r}: vector has non-finite values")
        if self.label is None:
            if self.validity is not None:
                raise InputError(f"entry {self.id!r}: validity present without a label")
            if self.origin is not None:
                raise InputError(f"entry {self.id!r}: origin present without a label")
        else:
            _check_field_text("label", self.label)
            if self.origin is None:
                self.origin = ORIGIN_USER
            if self.origin not in (ORIGIN_USER, ORIGIN_MKNN):
                raise InputError(f"entry {self.id!r}: unknown label origin {self.origin!r}")
        if self.validity is not None and not 0.0 <= self.validity <= 1.0:
            raise InputError(f"entry {self.id!r}: validity {self.validity!r} outside [0, 1]")

    def __eq__(self, other):
        if not isinstance(other, IndexEntry):
            return NotImplemented
        return (
            self.id == other.id
            and self.label == other.label
            and self.validity == other.validity
            and self.origin == other.origin
            and np.array_equal(self.vector, other.vector)
        )


@dataclass(eq=False)
class ImageIndex:
    """Immutable-by-convention collection of entries plus their parameters.

    Entries are kept sorted by id; ids are unique and every vector length
    matches ``3 * params.bins_per_channel``.
    """

    params: ExtractionParams
    entries: list[IndexEntry]
    version: int = FORMAT_VERSION
    _by_id: dict[str, IndexEntry] = field(init=False, repr=False)

    def __post_init__(self):
        self.entries = sorted(self.entries, key=lambda e: e.id)
        expected = self.params.vector_length
        by_id: dict[str, IndexEntry] = {}
        for entry in self.entries:
            if entry.id in by_id:
                raise InputError(f"duplicate entry id {entry.id!r}")
            if entry.vector.size != expected:
                raise IndexDimensionError(
                    f"entry {entry.id!r} has {entry.vector.size} feature values, "
                    f"expected {expected}"
                )
            by_id[entry.id] = entry
        self._by_id = by_id

    def __eq__(self, other):
        if not isinstance(other, ImageIndex):
            return NotImplemented
        return (
            self.version == other.version
            and self.params == other.params
            and self.entries == other.entries
        )

    def __len__(self) -> int:
        return len(self.entries)

    def entry(self, entry_id: str) -> IndexEntry:
        try:
            return self._by_id[entry_id]
        except KeyError:
            raise InputError(f"no entry with id {entry_id!r}") from None

    def labeled(self) -> list[IndexEntry]:
        return [e for e in self.entries if e.label is not None]

    def unlabeled(self) -> list[IndexEntry]:
        return [e for e in self.entries if e.label is None]


@dataclass(frozen=True)
class SkippedFile:
    """A file that could not be indexed, with the reason."""

    path: str
    reason: str


def read_label_map(path) -> dict[str, str]:
    """Parse a label-map file into {relative path: label}."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputError(f"label map not found: {path}") from None
    except UnicodeDecodeError as exc:
        raise LabelMapError(f"{path}: not UTF-8 text ({exc})") from exc
    labels: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = raw.rstrip("\n").split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise LabelMapError(
                f"{path}:{lineno}: expected 'relative-path<TAB>label', got {raw!r}"
            )
        rel, label = parts[0].strip(), parts[1].strip()
        if rel in labels:
            raise LabelMapError(f"{path}:{lineno}: duplicate path {rel!r}")
        labels[rel] = label
    return labels


def build_index(
    image_dir,
    label_map=None,
    params: ExtractionParams | None = None,
) -> tuple[ImageIndex, list[SkippedFile]]:
    """Index every decodable image under a directory.

    Files are scanned recursively in sorted order; ids are their paths
    relative to ``image_dir`` (posix separators).  A file that fails to
    decode is skipped and reported, never fatal.  ``label_map`` may be a
    path to a label-map file or an already-parsed dict.
    """
    params = params or ExtractionParams()
    root = Path(image_dir)
    if not root.is_dir():
        raise InputError(f"image directory not found: {root}")
    if label_map is None:
        labels: dict[str, str] = {}
    elif isinstance(label_map, dict):
        labels = dict(label_map)
    else:
        labels = read_label_map(label_map)
    entries: list[IndexEntry] = []
    skipped: list[SkippedFile] = []
    for file in sorted(p for p in root.rglob("*") if p.is_file()):
        rel = file.relative_to(root).as_posix()
        try:
            feature = extract_features(decode_image(file), params)
        except DecodeError as exc:
            skipped.append(SkippedFile(rel, str(exc)))
            continue
        label = labels.get(rel)
        entries.append(IndexEntry(rel, feature.values, label))
    if not entries:
        raise InputError(f"no decodable images under {root}")
    return ImageIndex(params, entries), skipped


def _format_number(value: float) -> str:
    return format(value, ".9g")


def save_index(index: ImageIndex, path) -> None:
    """Write an index to disk in the documented text format."""
    lines = [f"{FORMAT_NAME}\t{index.version}\t{index.params.bins_per_channel}"]
    for entry in index.entries:
        fields = [
            entry.id,
            entry.label if entry.label is not None else _ABSENT,
            entry.origin if entry.origin is not None else _ABSENT,
            _format_number(entry.validity) if entry.validity is not None else _ABSENT,
        ]
        fields.extend(_format_number(v) for v in entry.vector)
        lines.append("\t".join(fields))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_index(path) -> ImageIndex:
    """Read an index written by save_index, checking format and dimensions."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputError(f"index file not found: {path}") from None
    except UnicodeDecodeError as exc:
        raise IndexFormatError(f"{path}: not UTF-8 text ({exc})") from exc
    if not text:
        raise IndexFormatError(f"{path}: empty file")
    if not text.endswith("\n"):
        raise IndexFormatError(f"{path}: truncated file (no final newline)")
    lines = text[:-1].split("\n")
    header = lines[0].split("\t")
    if len(header) != 3 or header[0] != FORMAT_NAME:
        raise IndexFormatError(f"{path}: not a {FORMAT_NAME} file")
    try:
        version = int(header[1])
    except ValueError:
        raise IndexFormatError(f"{path}: malformed version field {header[1]!r}") from None
    if version != FORMAT_VERSION:
        raise IndexVersionError(
            f"{path}: format version {version} not supported (expected {FORMAT_VERSION})"
        )
    try:
        params = ExtractionParams(int(header[2]))
    except (ValueError, InputError):
        raise IndexFormatError(
            f"{path}: malformed bins_per_channel field {header[2]!r}"
        ) from None
    expected = params.vector_length
    entries: list[IndexEntry] = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split("\t")
        if len(parts) < 4:
            raise IndexFormatError(f"{path}:{lineno}: truncated record")
        entry_id = parts[0]
        if len(parts) - 4 != expected:
            raise IndexDimensionError(
                f"{path}: entry {entry_id!r} has {len(parts) - 4} feature values, "
                f"expected {expected}"
            )
        label = None if parts[1] == _ABSENT else parts[1]
        origin = None if parts[2] == _ABSENT else parts[2]
        try:
            validity = None if parts[3] == _ABSENT else float(parts[3])
            vector = np.array([float(v) for v in parts[4:]], dtype=np.float64)
        except ValueError:
            raise IndexFormatError(f"{path}:{lineno}: malformed numeric field") from None
        try:
            entries.append(IndexEntry(entry_id, vector, label, validity, origin))
        except InputError as exc:
            raise IndexFormatError(f"{path}:{lineno}: {exc}") from None
    try:
        return ImageIndex(params, entries, version)
    except InputError as exc:
        raise IndexFormatError(f"{path}: {exc}") from None
