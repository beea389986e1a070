#!/usr/bin/env python3
"""Build one augmented example end to end from two in-memory utterances.

The donor's VP replaces the host's VP; feature frames are concatenated
verbatim following the alignments, and the phoneme that starts right after
the audio joint gets the conditioning tag.

Run: python demos/02_splice_one_pair.py
"""
import numpy as np

from syntaxsplice import (
    FeatureMatrix,
    UtteranceRecord,
    build_augmented,
    find_matches,
    load_alignment,
    parse_bracketed,
)

rng = np.random.default_rng(0)

# host: "He never lied", 45 frames of 80-bin features,
# leading silence [0,3), trailing silence [40,45)
host = UtteranceRecord(
    "host",
    ["He", "never", "lied"],
    parse_bracketed("(S (NP (PRP He)) (ADVP (RB never)) (VP (VBD lied)))"),
    load_alignment(
        b"HH\t0\t3\t6\nIY\t0\t6\t10\n"
        b"N\t1\t10\t13\nEH\t1\t13\t16\nV\t1\t16\t20\nER\t1\t20\t25\n"
        b"L\t2\t25\t30\nAY\t2\t30\t36\nD\t2\t36\t40\n",
        total_frames=45),
    features=FeatureMatrix(rng.random((45, 80)).astype(np.float32)),
)

# donor: "She shook her head", 40 frames
donor = UtteranceRecord(
    "donor",
    ["She", "shook", "her", "head"],
    parse_bracketed(
        "(S (NP (PRP She)) (VP (VBD shook) (NP (PRP$ her) (NN head))))"),
    load_alignment(
        b"SH\t0\t2\t5\nIY\t0\t5\t8\n"
        b"SH\t1\t8\t11\nUH\t1\t11\t14\nK\t1\t14\t16\n"
        b"HH\t2\t16\t22\nER\t2\t22\t30\n"
        b"HH\t3\t30\t33\nEH\t3\t33\t36\nD\t3\t36\t38\n",
        total_frames=40),
    features=FeatureMatrix(rng.random((40, 80)).astype(np.float32)),
)

c_m, c_n = next((m, n) for m, n in find_matches(host.tree, donor.tree)
                if m.label == "VP")
ex = build_augmented(host, c_m, donor, c_n)

print("host tokens:  ", host.tokens)
print("donor tokens: ", donor.tokens)
print("augmented:    ", ex.tokens)
print()
print("phonemes:     ", " ".join(ex.phonemes))
print("joint tags:   ", " ".join(f"{t} " for t in ex.joint_tags))
print()
print(f"frames: host prefix 25 + donor insert 32 = {ex.features.n_frames}")
print(f"provenance: {ex.provenance}")

# splicing a record with itself is the identity transform: zero tags,
# bit-identical audio
same = build_augmented(host, c_m, host, c_m)
assert same.features.values.tobytes() == host.features().values.tobytes()
assert sum(same.joint_tags) == 0
print("\nself-substitution reproduces the host bit-for-bit with zero tags")
