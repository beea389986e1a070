"""Corpus ingestion, pair enumeration, seeded sampling, and dataset export.

Input manifest: JSONL, one utterance per line with keys
id / tokens / tree / alignment / features (+ optional frame_shift_ms,
default 12.5). File paths are resolved relative to the manifest.

Output manifest: JSONL rows with keys id / origin / tokens / phonemes /
joint_tags / features / provenance, where originals are re-emitted with
all-zero tags (the identity transform) and provenance null.

Sampling is uniform over the universe of valid (host constituent, donor
constituent) tuples -- not over record pairs -- so it does not bias toward
short sentences. Draws use a Philox counter-based generator, which is
deterministic across platforms for a given seed.
"""
from __future__ import annotations

import json
from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .alignment import Alignment, load_alignment
from .errors import (
    AlignmentInconsistent,
    ExhaustedUniverse,
    FrameCountMismatch,
    IoFailure,
    ManifestParse,
    MissingFile,
    TokenTreeMismatch,
)
from .features import (
    DEFAULT_FRAME_SHIFT_MS,
    FeatureMatrix,
    read_features,
    write_features,
)
from .splice import AugmentedExample, build_augmented, substitute_text
from .treebank import (
    Constituent,
    ConstituentPolicy,
    DEFAULT_POLICY,
    ParseTree,
    enumerate_constituents,
    leaf_tokens,
    parse_bracketed,
)


class UtteranceRecord:
    """One corpus utterance: tokens, parse, alignment, features."""

    __slots__ = ("id", "tokens", "tree", "alignment", "features_ref",
                 "duration_frames", "frame_shift_ms", "_features")

    def __init__(self, id: str, tokens, tree: ParseTree, alignment: Alignment,
                 features=None, features_ref=None,
                 frame_shift_ms: float = DEFAULT_FRAME_SHIFT_MS):
        tokens = list(tokens)
        if leaf_tokens(tree) != tokens:
            raise TokenTreeMismatch(
                f"record {id!r}: tree leaves {leaf_tokens(tree)} != tokens {tokens}")
        if alignment.word_count != len(tokens):
            raise AlignmentInconsistent(
                f"record {id!r}: alignment covers {alignment.word_count} "
                f"words, {len(tokens)} tokens")
        if features is not None and features.n_frames != alignment.total_frames:
            raise FrameCountMismatch(
                f"record {id!r}: {features.n_frames} feature frames, "
                f"alignment says {alignment.total_frames}")
        self.id = id
        self.tokens = tokens
        self.tree = tree
        self.alignment = alignment
        self.features_ref = Path(features_ref) if features_ref else None
        self.duration_frames = alignment.total_frames
        self.frame_shift_ms = frame_shift_ms
        self._features = features

    def features(self) -> FeatureMatrix:
        if self._features is None:
            self._features = read_features(self.features_ref, self.frame_shift_ms)
        return self._features

    def phonemes(self) -> list[str]:
        return self.alignment.phonemes()


class Corpus:
    """Immutable record store plus a label-keyed constituent index."""

    def __init__(self, records, policy: ConstituentPolicy = DEFAULT_POLICY):
        self.records: dict[str, UtteranceRecord] = {}
        self.policy = policy
        self.constituents: dict[str, list[Constituent]] = {}
        self.label_index: dict[str, list[tuple[str, Constituent]]] = {}
        for rec in records:
            if rec.id in self.records:
                raise ManifestParse(f"duplicate record id {rec.id!r}")
            self.records[rec.id] = rec
            consts = enumerate_constituents(rec.tree, policy)
            self.constituents[rec.id] = consts
            for c in consts:
                key = policy.label_key(c.label)
                self.label_index.setdefault(key, []).append((rec.id, c))
        self._universe = None

    def __len__(self):
        return len(self.records)

    def universe(self) -> "_PairUniverse":
        if self._universe is None:
            self._universe = _PairUniverse(self.label_index)
        return self._universe


@dataclass(frozen=True)
class SampleSpec:
    """How many augmented examples to draw and how.

    mode="exhaustive" ignores target_count and yields every valid tuple;
    mode="random" draws tuples uniformly (with replacement unless dedupe
    rejects repeats of a token sequence). The same (corpus, spec) always
    yields the same sequence.
    """

    target_count: int = 0
    seed: int = 0
    policy: ConstituentPolicy = field(default_factory=ConstituentPolicy)
    dedupe: bool = False
    mode: str = "random"

    def __post_init__(self):
        if self.target_count < 0:
            raise ValueError("target_count must be >= 0")
        if self.mode not in ("random", "exhaustive"):
            raise ValueError(f"unknown mode {self.mode!r}")


def load_corpus(manifest, policy: ConstituentPolicy = DEFAULT_POLICY) -> Corpus:
    """Load and cross-validate a JSONL manifest.

    Every referenced feature file is decoded up front so frame counts and
    finiteness are checked at load time; matrices stay cached on the records.
    """
    if hasattr(manifest, "read"):
        lines = manifest.read()
        if isinstance(lines, bytes):
            lines = lines.decode("utf-8")
        base = Path.cwd()
    else:
        path = Path(manifest)
        if not path.exists():
            raise MissingFile(str(path))
        lines = path.read_text(encoding="utf-8")
        base = path.parent

    records = []
    for lineno, line in enumerate(lines.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            row = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ManifestParse(f"line {lineno}: {exc}") from None
        try:
            rec_id = row["id"]
            tokens = row["tokens"]
            tree_text = row["tree"]
            alignment_path = base / row["alignment"]
            features_path = base / row["features"]
        except (KeyError, TypeError) as exc:
            raise ManifestParse(f"line {lineno}: missing field {exc}") from None
        shift = row.get("frame_shift_ms", DEFAULT_FRAME_SHIFT_MS)

        for p in (alignment_path, features_path):
            if not p.exists():
                raise MissingFile(f"line {lineno}: {p}")
        try:
            tree = parse_bracketed(tree_text)
        except Exception as exc:
            raise ManifestParse(f"line {lineno}: bad tree: {exc}") from exc
        feats = read_features(features_path, shift)
        align = load_alignment(alignment_path, total_frames=feats.n_frames)
        records.append(UtteranceRecord(
            rec_id, tokens, tree, align,
            features=feats, features_ref=features_path, frame_shift_ms=shift))
    return Corpus(records, policy)


def enumerate_pairs(corpus: Corpus, policy: ConstituentPolicy | None = None):
    """Exhaustively yield (host_id, c_m, donor_id, c_n) for every
    label-matched tuple across two distinct records.

    Order is deterministic: host ids sorted, host constituents in document
    order, then donor ids sorted, donor constituents in document order.
    """
    if policy is None or policy == corpus.policy:
        policy = corpus.policy
        consts = corpus.constituents
    else:
        consts = {rid: enumerate_constituents(rec.tree, policy)
                  for rid, rec in corpus.records.items()}
    ids = sorted(corpus.records)
    by_label = {
        rid: _group_by_label(consts[rid], policy) for rid in ids
    }
    for host_id in ids:
        for c_m in consts[host_id]:
            key = policy.label_key(c_m.label)
            for donor_id in ids:
                if donor_id == host_id:
                    continue
                for c_n in by_label[donor_id].get(key, ()):
                    yield (host_id, c_m, donor_id, c_n)


def _group_by_label(constituents, policy):
    out: dict[str, list[Constituent]] = {}
    for c in constituents:
        out.setdefault(policy.label_key(c.label), []).append(c)
    return out


class _PairUniverse:
    """Flat integer indexing over all valid cross-record tuples.

    Within one label the entry list is grouped by record, so the donors
    valid for a host entry are everything outside its record's contiguous
    block; a flat index maps to a tuple with two bisects and no tuple
    materialization.
    """

    def __init__(self, label_index):
        self.labels = sorted(label_index)
        self.entries = {}
        self.entry_pref = {}
        self.blocks = {}
        label_sizes = []
        for label in self.labels:
            entries = label_index[label]
            n = len(entries)
            # contiguous [start, end) block of each entry's record
            blocks = [None] * n
            i = 0
            while i < n:
                j = i
                while j < n and entries[j][0] == entries[i][0]:
                    j += 1
                for k in range(i, j):
                    blocks[k] = (i, j)
                i = j
            pref = [0]
            for k in range(n):
                s, e = blocks[k]
                pref.append(pref[-1] + n - (e - s))
            self.entries[label] = entries
            self.entry_pref[label] = pref
            self.blocks[label] = blocks
            label_sizes.append(pref[-1])
        self.label_base = [0]
        for s in label_sizes:
            self.label_base.append(self.label_base[-1] + s)
        self.size = self.label_base[-1]

    def tuple_at(self, k: int):
        if not (0 <= k < self.size):
            raise IndexError(k)
        li = bisect_right(self.label_base, k) - 1
        label = self.labels[li]
        local = k - self.label_base[li]
        pref = self.entry_pref[label]
        i = bisect_right(pref, local) - 1
        off = local - pref[i]
        s, e = self.blocks[label][i]
        j = off if off < s else off + (e - s)
        host_id, c_m = self.entries[label][i]
        donor_id, c_n = self.entries[label][j]
        return (host_id, c_m, donor_id, c_n)


def _accepted_tuples(corpus: Corpus, spec: SampleSpec):
    """The deterministic accepted-tuple stream shared by both modes.

    Dedupe decisions only need token sequences, which are cheap to compute,
    so this stream stays single-threaded while the feature splicing can be
    farmed out.
    """
    seen = None
    if spec.dedupe:
        seen = {tuple(rec.tokens) for rec in corpus.records.values()}

    def admit(host_id, c_m, donor_id, c_n) -> bool:
        if seen is None:
            return True
        toks = tuple(substitute_text(
            corpus.records[host_id].tokens, c_m,
            corpus.records[donor_id].tokens, c_n))
        if toks in seen:
            return False
        seen.add(toks)
        return True

    if spec.mode == "exhaustive":
        for host_id, c_m, donor_id, c_n in enumerate_pairs(corpus, spec.policy):
            if admit(host_id, c_m, donor_id, c_n):
                yield (host_id, c_m, donor_id, c_n)
        return

    # random mode
    if spec.target_count == 0:
        return
    if spec.policy != corpus.policy:
        universe = Corpus(corpus.records.values(), spec.policy).universe()
    else:
        universe = corpus.universe()
    if universe.size == 0:
        raise ExhaustedUniverse("no label-matched tuples in this corpus")
    rng = np.random.Generator(np.random.Philox(spec.seed))
    budget = universe.size * 10
    accepted = rejections = 0
    while accepted < spec.target_count:
        k = int(rng.integers(universe.size))
        tup = universe.tuple_at(k)
        if admit(*tup):
            accepted += 1
            yield tup
        else:
            rejections += 1
            if rejections > budget:
                raise ExhaustedUniverse(
                    f"{rejections} rejections for {accepted} accepted "
                    f"examples (universe size {universe.size})")


def sample_augmented(corpus: Corpus, spec: SampleSpec, workers: int = 1):
    """Stream AugmentedExamples as the SampleSpec directs.

    The accepted sequence is fixed by the seed stream regardless of
    `workers`; extra workers only parallelize the feature splicing, and
    results are merged back in draw order.
    """
    tuples = _accepted_tuples(corpus, spec)

    def build(tup):
        host_id, c_m, donor_id, c_n = tup
        return build_augmented(
            corpus.records[host_id], c_m, corpus.records[donor_id], c_n,
            policy=spec.policy)

    if workers <= 1:
        for tup in tuples:
            yield build(tup)
        return

    with ThreadPoolExecutor(max_workers=workers) as pool:
        while True:
            chunk = []
            for tup in tuples:
                chunk.append(tup)
                if len(chunk) >= workers * 16:
                    break
            if not chunk:
                break
            yield from pool.map(build, chunk)


@dataclass
class ExportReport:
    n_original: int
    n_augmented: int
    total_frames: int

    def to_dict(self):
        return {"n_original": self.n_original,
                "n_augmented": self.n_augmented,
                "total_frames": self.total_frames}


def _validate_example(ex: AugmentedExample, corpus: Corpus):
    if len(ex.joint_tags) != len(ex.phonemes):
        raise ValueError("tag/phoneme length mismatch")
    if sum(ex.joint_tags) > 2:
        raise ValueError("more than two joint tags")
    host = corpus.records.get(ex.provenance.host_id)
    donor = corpus.records.get(ex.provenance.donor_id)
    if host is not None and donor is not None:
        a, b = ex.provenance.host_span
        ad, bd = ex.provenance.donor_span
        expect = len(host.tokens) - (b - a) + (bd - ad)
        if len(ex.tokens) != expect:
            raise ValueError(
                f"token count {len(ex.tokens)} != expected {expect}")


def export_dataset(corpus: Corpus, augmented, out_dir) -> ExportReport:
    """Write a training-ready dataset: manifest.jsonl + features/*.melf.

    Originals are re-emitted first with all-zero joint tags so downstream
    training always sees untransformed samples; augmented rows follow in
    draw order with provenance.
    """
    out = Path(out_dir)
    feat_dir = out / "features"
    try:
        feat_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoFailure(str(exc)) from exc

    n_original = n_augmented = total_frames = 0
    try:
        with open(out / "manifest.jsonl", "w", encoding="utf-8") as mf:
            for rec in corpus.records.values():
                rel = f"features/{rec.id}.melf"
                write_features(rec.features(), out / rel)
                phonemes = rec.phonemes()
                row = {
                    "id": rec.id,
                    "origin": "original",
                    "tokens": rec.tokens,
                    "phonemes": phonemes,
                    "joint_tags": [0] * len(phonemes),
                    "features": rel,
                    "provenance": None,
                }
                mf.write(json.dumps(row, separators=(",", ":")) + "\n")
                n_original += 1
                total_frames += rec.features().n_frames

            for i, ex in enumerate(augmented):
                _validate_example(ex, corpus)
                ex_id = f"aug_{i:06d}"
                rel = f"features/{ex_id}.melf"
                write_features(ex.features, out / rel)
                row = {
                    "id": ex_id,
                    "origin": "augmented",
                    "tokens": ex.tokens,
                    "phonemes": ex.phonemes,
                    "joint_tags": ex.joint_tags,
                    "features": rel,
                    "provenance": {
                        "host": ex.provenance.host_id,
                        "donor": ex.provenance.donor_id,
                        "host_span": list(ex.provenance.host_span),
                        "donor_span": list(ex.provenance.donor_span),
                        "label": ex.provenance.label,
                    },
                }
                mf.write(json.dumps(row, separators=(",", ":")) + "\n")
                n_augmented += 1
                total_frames += ex.features.n_frames
    except OSError as exc:
        raise IoFailure(str(exc)) from exc

    return ExportReport(n_original, n_augmented, total_frames)
