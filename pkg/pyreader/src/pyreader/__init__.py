"""Minimal dataset reader for training pipelines.

Iterates an exported manifest (JSONL) and loads MELF feature matrices,
yielding (phonemes, joint_tags, features) examples in manifest order.
Stdlib only, read-only, and it does not re-implement any augmentation:
everything it knows about the data comes from the two file formats.

MELF layout, little-endian: magic "MELF", version u32 = 1, n_frames u32,
n_bins u32, then n_frames * n_bins float32, frame-major.
"""
from __future__ import annotations

import json
import math
import struct
import sys
from array import array
from dataclasses import dataclass, field
from pathlib import Path

__version__ = "0.1.0"

_HEADER = struct.Struct("<4sIII")
_MAGIC = b"MELF"
_VERSION = 1

FILTERS = ("all", "original", "augmented")


class ReaderError(Exception):
    pass


class BadMagic(ReaderError):
    pass


class UnsupportedVersion(ReaderError):
    pass


class TruncatedPayload(ReaderError):
    pass


class NonFiniteValue(ReaderError):
    pass


class ManifestParse(ReaderError):
    pass


class MissingFile(ReaderError):
    pass


class Matrix:
    """A frames x bins float32 matrix backed by a flat stdlib array."""

    __slots__ = ("n_frames", "n_bins", "data")

    def __init__(self, n_frames: int, n_bins: int, data: array):
        self.n_frames = n_frames
        self.n_bins = n_bins
        self.data = data

    def row(self, i: int) -> array:
        if not (0 <= i < self.n_frames):
            raise IndexError(i)
        return self.data[i * self.n_bins:(i + 1) * self.n_bins]

    def tobytes(self) -> bytes:
        """Payload bytes, always little-endian float32."""
        if sys.byteorder == "little":
            return self.data.tobytes()
        swapped = array("f", self.data)
        swapped.byteswap()
        return swapped.tobytes()

    def __repr__(self):
        return f"Matrix({self.n_frames}x{self.n_bins})"


def read_melf(path) -> Matrix:
    """Decode one MELF file, validating header, length and finiteness."""
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise TruncatedPayload(f"{path}: {len(data)} bytes, header needs 16")
    magic, version, n_frames, n_bins = _HEADER.unpack_from(data)
    if magic != _MAGIC:
        raise BadMagic(f"{path}: bad magic {magic!r}")
    if version != _VERSION:
        raise UnsupportedVersion(f"{path}: version {version}")
    expected = _HEADER.size + 4 * n_frames * n_bins
    if len(data) != expected:
        raise TruncatedPayload(
            f"{path}: payload is {len(data) - _HEADER.size} bytes, "
            f"header implies {expected - _HEADER.size}")
    values = array("f")
    values.frombytes(data[_HEADER.size:])
    if sys.byteorder == "big":
        values.byteswap()
    for v in values:
        if not math.isfinite(v):
            raise NonFiniteValue(f"{path}: NaN or Inf in payload")
    return Matrix(n_frames, n_bins, values)


@dataclass
class Example:
    """One dataset row; the feature matrix loads on first access."""

    id: str
    origin: str
    tokens: list[str]
    phonemes: list[str]
    joint_tags: list[int]
    features_path: Path
    row: int
    _features: Matrix | None = field(default=None, repr=False)

    @property
    def features(self) -> Matrix:
        if self._features is None:
            try:
                self._features = read_melf(self.features_path)
            except ReaderError as exc:
                raise type(exc)(f"row {self.row}: {exc}") from None
        return self._features

    @property
    def is_original(self) -> bool:
        return self.origin == "original"


def iterate(manifest_path, filter: str = "all"):
    """Yield validated Examples in manifest order.

    `filter` keeps all rows, only "original" rows (identity pass-through,
    all-zero tags) or only "augmented" rows. Feature matrices are loaded
    lazily; every error names the manifest row it came from.
    """
    if filter not in FILTERS:
        raise ValueError(f"filter must be one of {FILTERS}, got {filter!r}")
    manifest_path = Path(manifest_path)
    if not manifest_path.exists():
        raise MissingFile(str(manifest_path))
    base = manifest_path.parent

    with open(manifest_path, encoding="utf-8") as fh:
        for row_no, line in enumerate(fh):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ManifestParse(f"row {row_no}: {exc}") from None
            try:
                ex = Example(
                    id=row["id"],
                    origin=row["origin"],
                    tokens=list(row["tokens"]),
                    phonemes=list(row["phonemes"]),
                    joint_tags=list(row["joint_tags"]),
                    features_path=base / row["features"],
                    row=row_no,
                )
            except (KeyError, TypeError) as exc:
                raise ManifestParse(f"row {row_no}: missing field {exc}") from None
            if ex.origin not in ("original", "augmented"):
                raise ManifestParse(
                    f"row {row_no}: unknown origin {ex.origin!r}")
            if len(ex.joint_tags) != len(ex.phonemes):
                raise ManifestParse(
                    f"row {row_no}: {len(ex.joint_tags)} tags for "
                    f"{len(ex.phonemes)} phonemes")
            if any(t not in (0, 1) for t in ex.joint_tags):
                raise ManifestParse(f"row {row_no}: tags must be 0 or 1")
            if not ex.features_path.exists():
                raise MissingFile(f"row {row_no}: {ex.features_path}")
            if filter != "all" and ex.origin != filter:
                continue
            yield ex
