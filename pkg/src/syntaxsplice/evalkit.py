"""Word/phoneme error-rate arithmetic for robustness reporting.

Rates follow the usual convention: (substitutions + insertions + deletions)
divided by the reference length, with unit costs and no transposition.
Corpus scores pool the error counts over all utterances rather than
averaging per-utterance rates.
"""
from __future__ import annotations

import io
from dataclasses import dataclass

from .errors import EmptyReference, MalformedRow, MissingBaselineKey, ZeroBaseline


@dataclass
class ErrorRateReport:
    substitutions: int = 0
    insertions: int = 0
    deletions: int = 0
    reference_length: int = 0

    @property
    def errors(self) -> int:
        return self.substitutions + self.insertions + self.deletions

    @property
    def rate(self) -> float:
        return self.errors / self.reference_length

    def pool(self, other: "ErrorRateReport"):
        self.substitutions += other.substitutions
        self.insertions += other.insertions
        self.deletions += other.deletions
        self.reference_length += other.reference_length

    def to_dict(self):
        return {
            "substitutions": self.substitutions,
            "insertions": self.insertions,
            "deletions": self.deletions,
            "reference_length": self.reference_length,
            "rate": self.rate,
        }


def edit_rate(reference, hypothesis) -> ErrorRateReport:
    """Minimal-edit alignment of hypothesis against reference.

    Works on any token sequences: words for WER, phonemes for PER. Among
    cost-minimal alignments, ties break substitution-first then deletion,
    so reports are deterministic.
    """
    ref = list(reference)
    hyp = list(hypothesis)
    if not ref:
        raise EmptyReference("reference must contain at least one token")

    n, m = len(ref), len(hyp)
    # cost[i][j] = edit distance between ref[:i] and hyp[:j]
    cost = [list(range(m + 1))]
    for i in range(1, n + 1):
        row = [i] + [0] * m
        prev = cost[i - 1]
        ri = ref[i - 1]
        for j in range(1, m + 1):
            row[j] = min(prev[j - 1] + (ri != hyp[j - 1]),
                         prev[j] + 1,
                         row[j - 1] + 1)
        cost.append(row)

    subs = ins = dels = 0
    i, j = n, m
    while i > 0 or j > 0:
        here = cost[i][j]
        if i > 0 and j > 0 and cost[i - 1][j - 1] == here and ref[i - 1] == hyp[j - 1]:
            i, j = i - 1, j - 1
        elif i > 0 and j > 0 and cost[i - 1][j - 1] + 1 == here:
            subs += 1
            i, j = i - 1, j - 1
        elif i > 0 and cost[i - 1][j] + 1 == here:
            dels += 1
            i -= 1
        else:
            ins += 1
            j -= 1
    return ErrorRateReport(subs, ins, dels, n)


def relative_rates(system_rates: dict, baseline_key) -> dict:
    """Divide every rate by the baseline's; the baseline maps to 1.0."""
    if baseline_key not in system_rates:
        raise MissingBaselineKey(repr(baseline_key))
    base = system_rates[baseline_key]
    if base == 0:
        raise ZeroBaseline("baseline rate is zero")
    return {name: rate / base for name, rate in system_rates.items()}


def score_pairs_tsv(source) -> tuple[ErrorRateReport, int]:
    """Score a TSV of `utterance_id<TAB>reference<TAB>hypothesis` rows.

    Tokens within reference/hypothesis are space-separated. Returns the
    pooled report and the number of utterances scored.
    """
    if hasattr(source, "read"):
        data = source.read()
    else:
        with open(source, "rb") as fh:
            data = fh.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")

    pooled = ErrorRateReport()
    n = 0
    for lineno, line in enumerate(io.StringIO(data), start=1):
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise MalformedRow(
                f"line {lineno}: expected 3 tab-separated fields, got {len(parts)}")
        _, ref_text, hyp_text = parts
        pooled.pool(edit_rate(ref_text.split(), hyp_text.split()))
        n += 1
    if n == 0:
        raise EmptyReference("no utterances to score")
    return pooled, n
