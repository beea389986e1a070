"""Acoustic feature matrix I/O (MELF format) and segment concatenation.

MELF layout, little-endian:

    bytes 0-3    magic "MELF"
    bytes 4-7    version, u32, currently 1
    bytes 8-11   n_frames, u32
    bytes 12-15  n_bins, u32
    then         n_frames * n_bins IEEE-754 float32, row-major (frame-major)

The format carries no frame shift; that lives in the corpus manifest
(default 12.5 ms). Decoding is lossless: write(read(s)) reproduces s
byte for byte.
"""
from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import (
    BadMagic,
    BinMismatch,
    FeatureError,
    IoFailure,
    NonFiniteValue,
    RangeOutOfBounds,
    TruncatedPayload,
    UnsupportedVersion,
)

MAGIC = b"MELF"
VERSION = 1
HEADER = struct.Struct("<4sIII")
DEFAULT_FRAME_SHIFT_MS = 12.5


class FeatureMatrix:
    """frames x mel-bins float32 matrix with a fixed frame shift.

    Takes ownership of the array and marks it read-only: matrices are
    immutable after construction, concatenation is a pure function, and
    parallel readers are safe.
    """

    __slots__ = ("values", "frame_shift_ms")

    def __init__(self, values, frame_shift_ms: float = DEFAULT_FRAME_SHIFT_MS):
        arr = np.asarray(values, dtype=np.float32)
        if arr.ndim != 2:
            raise FeatureError(f"expected a 2-D matrix, got shape {arr.shape}")
        if arr.shape[1] < 1:
            raise FeatureError("a feature matrix needs at least one bin")
        if arr.size and not np.isfinite(arr).all():
            raise NonFiniteValue("matrix contains NaN or Inf")
        arr.flags.writeable = False
        self.values = arr
        self.frame_shift_ms = frame_shift_ms

    @property
    def n_frames(self) -> int:
        return self.values.shape[0]

    @property
    def n_bins(self) -> int:
        return self.values.shape[1]

    def __repr__(self):
        return (f"FeatureMatrix({self.n_frames}x{self.n_bins}, "
                f"shift={self.frame_shift_ms}ms)")


def read_features(source, frame_shift_ms: float = DEFAULT_FRAME_SHIFT_MS) -> FeatureMatrix:
    """Decode a MELF byte-stream (or path) losslessly."""
    if isinstance(source, (str, Path)):
        with open(source, "rb") as fh:
            data = fh.read()
    elif hasattr(source, "read"):
        data = source.read()
    else:
        data = bytes(source)

    if len(data) < HEADER.size:
        raise TruncatedPayload(
            f"file is {len(data)} bytes, header needs {HEADER.size}")
    magic, version, n_frames, n_bins = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise BadMagic(f"bad magic {magic!r}")
    if version != VERSION:
        raise UnsupportedVersion(f"version {version}, expected {VERSION}")
    if n_bins < 1:
        raise FeatureError("header declares 0 bins")
    expected = HEADER.size + 4 * n_frames * n_bins
    if len(data) != expected:
        raise TruncatedPayload(
            f"payload is {len(data) - HEADER.size} bytes, header implies "
            f"{expected - HEADER.size}")
    arr = np.frombuffer(data, dtype="<f4", offset=HEADER.size)
    return FeatureMatrix(arr.reshape(n_frames, n_bins), frame_shift_ms)


def write_features(m: FeatureMatrix, sink) -> int:
    """Encode to MELF; returns the byte count (16 + 4 * frames * bins)."""
    header = HEADER.pack(MAGIC, VERSION, m.n_frames, m.n_bins)
    payload = np.ascontiguousarray(m.values, dtype="<f4").tobytes()
    try:
        if isinstance(sink, (str, Path)):
            with open(sink, "wb") as fh:
                fh.write(header)
                fh.write(payload)
        else:
            sink.write(header)
            sink.write(payload)
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    return len(header) + len(payload)


def concat_segments(segments) -> FeatureMatrix:
    """Concatenate `(matrix, (start, end))` frame ranges, rows verbatim.

    No interpolation or crossfade happens at the joints; joint artifacts are
    the conditioning tags' job, not the signal's. Empty ranges are allowed.
    """
    segments = list(segments)
    if not segments:
        raise FeatureError("nothing to concatenate")
    n_bins = segments[0][0].n_bins
    shift = segments[0][0].frame_shift_ms
    parts = []
    for m, (start, end) in segments:
        if m.n_bins != n_bins:
            raise BinMismatch(f"{m.n_bins} bins vs {n_bins}")
        if m.frame_shift_ms != shift:
            raise BinMismatch(
                f"frame shift {m.frame_shift_ms} ms vs {shift} ms")
        if not (0 <= start <= end <= m.n_frames):
            raise RangeOutOfBounds(
                f"frame range [{start}, {end}) outside [0, {m.n_frames})")
        parts.append(m.values[start:end])
    return FeatureMatrix(np.concatenate(parts, axis=0), shift)
