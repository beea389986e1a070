"""syntaxsplice: TTS corpus augmentation by constituency subtree substitution.

New (text, phoneme, feature) training examples are assembled from pairs of
existing utterances by swapping label-matched parse constituents and
splicing the aligned feature frames, with per-phoneme tags marking the
audio joints.
"""

from .alignment import Alignment, load_alignment, word_frame_span, word_phoneme_span
from .corpus import (
    Corpus,
    ExportReport,
    SampleSpec,
    UtteranceRecord,
    enumerate_pairs,
    export_dataset,
    load_corpus,
    sample_augmented,
)
from .evalkit import ErrorRateReport, edit_rate, relative_rates, score_pairs_tsv
from .features import (
    FeatureMatrix,
    concat_segments,
    read_features,
    write_features,
)
from .splice import (
    AugmentedExample,
    Provenance,
    build_augmented,
    find_matches,
    substitute_text,
)
from .stats import LengthHistogram, constituent_length_histograms, render_report
from .treebank import (
    Constituent,
    ConstituentPolicy,
    ParseTree,
    enumerate_constituents,
    leaf_tokens,
    parse_bracketed,
)

__version__ = "0.1.0"

__all__ = [
    "Alignment",
    "AugmentedExample",
    "Constituent",
    "ConstituentPolicy",
    "Corpus",
    "ErrorRateReport",
    "ExportReport",
    "FeatureMatrix",
    "LengthHistogram",
    "ParseTree",
    "Provenance",
    "SampleSpec",
    "UtteranceRecord",
    "build_augmented",
    "concat_segments",
    "constituent_length_histograms",
    "edit_rate",
    "enumerate_constituents",
    "enumerate_pairs",
    "export_dataset",
    "find_matches",
    "leaf_tokens",
    "load_alignment",
    "load_corpus",
    "parse_bracketed",
    "read_features",
    "relative_rates",
    "render_report",
    "sample_augmented",
    "score_pairs_tsv",
    "substitute_text",
    "word_frame_span",
    "word_phoneme_span",
    "write_features",
]
