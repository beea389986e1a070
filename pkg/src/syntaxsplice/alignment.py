"""Phoneme-to-frame forced alignments and word-range resolution.

The TSV input format is one row per phoneme:

    phoneme<TAB>word_index<TAB>frame_start<TAB>frame_end

Lines starting with "#" are comments (the conventional header
"#phoneme\tword\tstart\tend" is one of them). Frame ranges are half-open
feature-frame indices. The total frame count comes from the paired feature
file, not from the TSV.

Silence assignment: frames between two phonemes belong to the preceding
word's span (gap-to-the-left), so pauses stay at their original prosodic
positions and splice joints land at word onsets. Leading silence
[0, first phoneme start) belongs to no word; splicing keeps it with the
host utterance.
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    FrameCountMismatch,
    MalformedRow,
    NonMonotonic,
    OverlappingFrames,
    RangeOutOfBounds,
    WordIndexGap,
)


@dataclass(frozen=True)
class AlignmentEntry:
    phoneme: str
    word_index: int
    frame_start: int
    frame_end: int


class Alignment:
    """Validated, immutable phoneme alignment for one utterance."""

    __slots__ = ("entries", "total_frames", "word_count",
                 "_word_phoneme_start", "_word_first_frame")

    def __init__(self, entries, total_frames: int):
        entries = tuple(entries)
        if not entries:
            raise MalformedRow("alignment has no phoneme entries")
        _validate(entries)
        if entries[-1].frame_end > total_frames:
            raise FrameCountMismatch(
                f"alignment ends at frame {entries[-1].frame_end} but the "
                f"feature file has only {total_frames} frames")
        self.entries = entries
        self.total_frames = total_frames
        self.word_count = entries[-1].word_index + 1
        # first phoneme index and first frame of each word, for O(1) spans
        starts = [0] * self.word_count
        frames = [0] * self.word_count
        seen = -1
        for p, e in enumerate(entries):
            if e.word_index != seen:
                starts[e.word_index] = p
                frames[e.word_index] = e.frame_start
                seen = e.word_index
        self._word_phoneme_start = starts
        self._word_first_frame = frames

    @property
    def phoneme_count(self) -> int:
        return len(self.entries)

    def phonemes(self) -> list[str]:
        return [e.phoneme for e in self.entries]


def _validate(entries):
    prev = None
    for e in entries:
        if e.frame_end <= e.frame_start or e.frame_start < 0:
            raise MalformedRow(
                f"phoneme {e.phoneme!r}: bad frame range "
                f"[{e.frame_start}, {e.frame_end})")
        if e.word_index < 0:
            raise MalformedRow(f"phoneme {e.phoneme!r}: negative word index")
        if prev is not None:
            if e.frame_start < prev.frame_start or e.word_index < prev.word_index:
                raise NonMonotonic(
                    f"entry {e.phoneme!r} goes backwards after {prev.phoneme!r}")
            if e.frame_start < prev.frame_end:
                raise OverlappingFrames(
                    f"[{e.frame_start}, {e.frame_end}) overlaps "
                    f"[{prev.frame_start}, {prev.frame_end})")
            if e.word_index > prev.word_index + 1:
                raise WordIndexGap(
                    f"word index jumps {prev.word_index} -> {e.word_index}")
        elif e.word_index != 0:
            raise WordIndexGap(f"first phoneme has word index {e.word_index}")
        prev = e


def load_alignment(source, total_frames: int | None = None) -> Alignment:
    """Parse and validate an alignment TSV.

    `source` is a binary or text stream, or a path. When `total_frames` is
    omitted, the last phoneme's frame_end is used (i.e. no trailing silence).
    """
    if isinstance(source, (str, Path)):
        with open(source, "rb") as fh:
            return load_alignment(fh, total_frames)
    data = source.read() if hasattr(source, "read") else source
    if isinstance(data, bytes):
        data = data.decode("utf-8")

    entries = []
    for lineno, line in enumerate(io.StringIO(data), start=1):
        line = line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise MalformedRow(
                f"line {lineno}: expected 4 tab-separated fields, "
                f"got {len(parts)}")
        phoneme = parts[0].strip()
        if not phoneme:
            raise MalformedRow(f"line {lineno}: empty phoneme")
        try:
            word_index, frame_start, frame_end = (
                int(parts[1]), int(parts[2]), int(parts[3]))
        except ValueError as exc:
            raise MalformedRow(f"line {lineno}: {exc}") from None
        entries.append(AlignmentEntry(phoneme, word_index, frame_start, frame_end))

    if total_frames is None:
        total_frames = entries[-1].frame_end if entries else 0
    return Alignment(entries, total_frames)


def _check_word_range(a: Alignment, w0: int, w1: int):
    if not (0 <= w0 < w1 <= a.word_count):
        raise RangeOutOfBounds(
            f"word range [{w0}, {w1}) outside [0, {a.word_count})")


def word_frame_span(a: Alignment, words: tuple[int, int]) -> tuple[int, int]:
    """Frame span covered by the half-open word range.

    The span starts at the first phoneme of the first word and ends at the
    next word's first phoneme (gap-to-the-left); the final word absorbs
    trailing silence up to total_frames.
    """
    w0, w1 = words
    _check_word_range(a, w0, w1)
    f0 = a._word_first_frame[w0]
    f1 = a.total_frames if w1 == a.word_count else a._word_first_frame[w1]
    return (f0, f1)


def word_phoneme_span(a: Alignment, words: tuple[int, int]) -> tuple[int, int]:
    """Phoneme-index span of the half-open word range."""
    w0, w1 = words
    _check_word_range(a, w0, w1)
    p0 = a._word_phoneme_start[w0]
    p1 = a.phoneme_count if w1 == a.word_count else a._word_phoneme_start[w1]
    return (p0, p1)
