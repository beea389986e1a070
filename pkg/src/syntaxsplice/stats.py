"""Diagnostics over exported datasets: constituent-length distributions.

Two histograms are kept -- lengths of inserted donor spans and of removed
host spans -- since either can be the interesting one when checking that
substitutions stay short.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import MissingProvenance


@dataclass
class LengthHistogram:
    kind: str
    counts: dict[int, int] = field(default_factory=dict)
    total: int = 0

    def add(self, length: int):
        self.counts[length] = self.counts.get(length, 0) + 1
        self.total += 1

    def mass(self, lengths) -> float:
        """Fraction of observations whose length is in `lengths`."""
        if self.total == 0:
            return 0.0
        return sum(self.counts.get(n, 0) for n in lengths) / self.total

    def merge(self, other: "LengthHistogram"):
        for k, v in other.counts.items():
            self.counts[k] = self.counts.get(k, 0) + v
        self.total += other.total


def constituent_length_histograms(rows):
    """Fold manifest rows into (inserted, removed) word-length histograms.

    `rows` is an iterable of output-manifest dicts. Identity (original)
    rows are skipped; augmented rows without provenance spans are an error.
    """
    inserted = LengthHistogram("inserted")
    removed = LengthHistogram("removed")
    for i, row in enumerate(rows):
        if row.get("origin") == "original":
            continue
        prov = row.get("provenance")
        if not prov or "host_span" not in prov or "donor_span" not in prov:
            raise MissingProvenance(f"augmented row {i} has no provenance spans")
        a, b = prov["host_span"]
        ad, bd = prov["donor_span"]
        inserted.add(bd - ad)
        removed.add(b - a)
    return inserted, removed


def render_report(histogram: LengthHistogram, format: str = "tsv") -> bytes:
    """Serialize one histogram, keys sorted, stable across runs."""
    if format == "tsv":
        return "".join(
            f"{k}\t{histogram.counts[k]}\n" for k in sorted(histogram.counts)
        ).encode("utf-8")
    if format == "json":
        payload = {str(k): histogram.counts[k] for k in sorted(histogram.counts)}
        return json.dumps(payload, separators=(",", ":")).encode("utf-8")
    raise ValueError(f"unknown format {format!r}")
