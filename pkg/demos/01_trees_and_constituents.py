#!/usr/bin/env python3
"""Parse bracketed constituency trees and enumerate substitutable spans.

Run: python demos/01_trees_and_constituents.py
"""
from syntaxsplice import (
    ConstituentPolicy,
    enumerate_constituents,
    find_matches,
    leaf_tokens,
    parse_bracketed,
)

FIRST = "(S (NP (PRP He)) (ADVP (RB never)) (VP (VBD lied)))"
SECOND = "(S (NP (PRP She)) (VP (VBD shook) (NP (PRP$ her) (NN head))))"

t1 = parse_bracketed(FIRST)
t2 = parse_bracketed(SECOND)

print("utterance 1 tokens:", leaf_tokens(t1))
print("utterance 2 tokens:", leaf_tokens(t2))
print()

# Every non-full-span node is a candidate substitution site by default,
# pre-terminals (POS tags over single words) included.
print("utterance 1 constituents (default policy):")
for c in enumerate_constituents(t1):
    print(f"  {c.label:5s} words [{c.start},{c.end})  path={c.path}")
print()

# Policies narrow the candidate set: span width, label allowlist, and
# optional normalization of functional suffixes like NP-SBJ -> NP.
wide = ConstituentPolicy(min_words=2)
print("utterance 2 constituents of 2+ words:")
for c in enumerate_constituents(t2, wide):
    print(f"  {c.label:5s} words [{c.start},{c.end})")
print()

# Substitution sites pair up by matching label.
print("label-matched pairs (host = utterance 1):")
for c_m, c_n in find_matches(t1, t2):
    print(f"  {c_m.label}: host [{c_m.start},{c_m.end}) <- "
          f"donor [{c_n.start},{c_n.end})")
