#!/usr/bin/env python3
"""The on-disk pipeline: manifest -> corpus -> sampler -> export -> stats.

Writes a tiny corpus to a temp directory, draws a deterministic random
sample of augmented examples, exports a training-ready dataset (originals
re-emitted with all-zero tags plus augmented rows with provenance), and
folds the export into constituent-length histograms.

Run: python demos/03_corpus_pipeline.py
"""
import json
import tempfile
from pathlib import Path

import numpy as np

from syntaxsplice import (
    FeatureMatrix,
    SampleSpec,
    constituent_length_histograms,
    export_dataset,
    load_corpus,
    render_report,
    sample_augmented,
    write_features,
)

UTTERANCES = [
    ("u0", "(S (NP (DT the) (NN dog)) (VP (VBD slept)))"),
    ("u1", "(S (NP (PRP she)) (VP (VBD heard) (NP (DT the) (NN river))))"),
    ("u2", "(S (NP (DT a) (NN voice)) (VP (VBD called) (ADVP (RB twice))))"),
    ("u3", "(S (NP (PRP he)) (VP (VBD followed) (NP (DT the) (NN road))))"),
]

rng = np.random.default_rng(42)
root = Path(tempfile.mkdtemp(prefix="syntaxsplice_demo_"))
print("working in", root)

with open(root / "manifest.jsonl", "w") as mf:
    for rec_id, tree in UTTERANCES:
        tokens = [t.rstrip(")") for t in tree.split() if not t.startswith("(")]
        frame = 0
        lines = []
        for w in range(len(tokens)):
            for p in range(int(rng.integers(2, 5))):
                dur = int(rng.integers(3, 8))
                lines.append(f"ph{w}{p}\t{w}\t{frame}\t{frame + dur}")
                frame += dur
        (root / f"{rec_id}.tsv").write_text("\n".join(lines) + "\n")
        write_features(
            FeatureMatrix(rng.random((frame, 80)).astype(np.float32)),
            root / f"{rec_id}.melf")
        mf.write(json.dumps({
            "id": rec_id, "tokens": tokens, "tree": tree,
            "alignment": f"{rec_id}.tsv", "features": f"{rec_id}.melf",
            "frame_shift_ms": 12.5,
        }) + "\n")

corpus = load_corpus(root / "manifest.jsonl")
print(f"loaded {len(corpus)} records, "
      f"{corpus.universe().size} valid substitution tuples")

spec = SampleSpec(target_count=12, seed=7, dedupe=True, mode="random")
out = root / "export"
report = export_dataset(corpus, sample_augmented(corpus, spec), out)
print(f"export: {report.n_original} originals + {report.n_augmented} "
      f"augmented rows, {report.total_frames} total frames")

rows = [json.loads(l) for l in (out / "manifest.jsonl").read_text().splitlines()]
for row in rows[:6]:
    mark = "" if row["origin"] == "original" else \
        f"  <- {row['provenance']['label']} from {row['provenance']['donor']}"
    print(f"  {row['id']:10s} {' '.join(row['tokens']):45s}{mark}")

inserted, removed = constituent_length_histograms(rows)
print("\ninserted-length histogram (words -> count):")
print(render_report(inserted, "tsv").decode(), end="")
print("removed-length histogram:")
print(render_report(removed, "tsv").decode(), end="")
