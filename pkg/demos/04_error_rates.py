#!/usr/bin/env python3
"""Score transcription hypotheses: pooled WER/PER and baseline-relative rates.

Run: python demos/04_error_rates.py
"""
from syntaxsplice import ErrorRateReport, edit_rate, relative_rates

PAIRS = [
    ("he never lied", "he never lied"),
    ("she shook her head", "she shook her hand"),
    ("the quiet garden", "the garden"),
    ("a voice called twice", "a voice called twice again"),
]

pooled = ErrorRateReport()
for ref, hyp in PAIRS:
    r = edit_rate(ref.split(), hyp.split())
    pooled.pool(r)
    print(f"  ref: {ref!r:32s} hyp: {hyp!r:34s} "
          f"S={r.substitutions} I={r.insertions} D={r.deletions} "
          f"rate={r.rate:.3f}")

print(f"\npooled over {len(PAIRS)} utterances: "
      f"S={pooled.substitutions} I={pooled.insertions} D={pooled.deletions} "
      f"N={pooled.reference_length}  WER={pooled.rate:.3f}")

# systems are usually compared relative to a named baseline
wers = {"baseline_5h": pooled.rate, "augmented_5h": pooled.rate / 4,
        "augmented_10h": pooled.rate / 3}
print("\nrelative to baseline_5h:")
for name, rel in relative_rates(wers, "baseline_5h").items():
    print(f"  {name:14s} {rel:.2f}")
