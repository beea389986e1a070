"""Shared fixtures: the two-utterance toy pair and on-disk corpora.

The toy pair is frozen: host "He never lied" (45 frames, leading silence
[0,3)), donor "She shook her head" (40 frames, leading silence [0,2)).
Word onsets are chosen so the VP splice works out to host[0,25) ++
donor[8,40) = 57 frames.
"""
from __future__ import annotations

import json

import numpy as np
import pytest

from syntaxsplice import (
    FeatureMatrix,
    UtteranceRecord,
    load_alignment,
    parse_bracketed,
    write_features,
)

HOST_TREE = "(S (NP (PRP He)) (ADVP (RB never)) (VP (VBD lied)))"
DONOR_TREE = "(S (NP (PRP She)) (VP (VBD shook) (NP (PRP$ her) (NN head))))"

HOST_ALIGNMENT_TSV = """\
#phoneme\tword\tstart\tend
HH\t0\t3\t6
IY\t0\t6\t10
N\t1\t10\t13
EH\t1\t13\t16
V\t1\t16\t20
ER\t1\t20\t25
L\t2\t25\t30
AY\t2\t30\t36
D\t2\t36\t40
"""
HOST_TOTAL_FRAMES = 45

DONOR_ALIGNMENT_TSV = """\
SH\t0\t2\t5
IY\t0\t5\t8
SH\t1\t8\t11
UH\t1\t11\t14
K\t1\t14\t16
HH\t2\t16\t22
ER\t2\t22\t30
HH\t3\t30\t33
EH\t3\t33\t36
D\t3\t36\t38
"""
DONOR_TOTAL_FRAMES = 40

N_BINS = 80


def random_matrix(n_frames, n_bins=N_BINS, seed=0):
    rng = np.random.Generator(np.random.Philox(seed))
    return FeatureMatrix(rng.random((n_frames, n_bins)).astype(np.float32))


def make_host_record():
    return UtteranceRecord(
        "u_host",
        ["He", "never", "lied"],
        parse_bracketed(HOST_TREE),
        load_alignment(HOST_ALIGNMENT_TSV.encode(), total_frames=HOST_TOTAL_FRAMES),
        features=random_matrix(HOST_TOTAL_FRAMES, seed=101),
    )


def make_donor_record():
    return UtteranceRecord(
        "u_donor",
        ["She", "shook", "her", "head"],
        parse_bracketed(DONOR_TREE),
        load_alignment(DONOR_ALIGNMENT_TSV.encode(), total_frames=DONOR_TOTAL_FRAMES),
        features=random_matrix(DONOR_TOTAL_FRAMES, seed=202),
    )


@pytest.fixture
def host_record():
    return make_host_record()


@pytest.fixture
def donor_record():
    return make_donor_record()


def write_toy_corpus(root):
    """Materialize the toy pair as manifest + TSV + MELF files."""
    root.mkdir(parents=True, exist_ok=True)
    rows = []
    for rec_id, tokens, tree, tsv, total, seed in (
        ("u_host", ["He", "never", "lied"],
         HOST_TREE, HOST_ALIGNMENT_TSV, HOST_TOTAL_FRAMES, 101),
        ("u_donor", ["She", "shook", "her", "head"],
         DONOR_TREE, DONOR_ALIGNMENT_TSV, DONOR_TOTAL_FRAMES, 202),
    ):
        (root / f"{rec_id}.tsv").write_text(tsv, encoding="utf-8")
        write_features(random_matrix(total, seed=seed), root / f"{rec_id}.melf")
        rows.append({
            "id": rec_id,
            "tokens": tokens,
            "tree": tree,
            "alignment": f"{rec_id}.tsv",
            "features": f"{rec_id}.melf",
            "frame_shift_ms": 12.5,
        })
    manifest = root / "manifest.jsonl"
    with open(manifest, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row) + "\n")
    return manifest


@pytest.fixture
def toy_corpus_dir(tmp_path):
    return write_toy_corpus(tmp_path / "toycorpus")
