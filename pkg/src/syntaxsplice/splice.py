"""The core augmentation operator.

One augmented example is built from exactly two originals (host + donor) by
one label-matched constituent substitution: the host's word span is replaced
by the donor's, the corresponding feature frames are concatenated verbatim
following the alignments, and the phonemes that start right after an audio
joint get a binary conditioning tag. At most two joints can occur, so at
most two tags are set.

Everything here is a pure function over immutable records, so generation is
embarrassingly parallel across (host, donor, constituent) choices.
"""
from __future__ import annotations

from dataclasses import dataclass

from .alignment import word_frame_span, word_phoneme_span
from .errors import (
    AlignmentInconsistent,
    BinMismatch,
    LabelMismatch,
    SpanOutOfBounds,
)
from .features import FeatureMatrix, concat_segments
from .treebank import (
    Constituent,
    ConstituentPolicy,
    DEFAULT_POLICY,
    ParseTree,
    enumerate_constituents,
)


@dataclass(frozen=True)
class Provenance:
    host_id: str
    donor_id: str
    host_span: tuple[int, int]
    donor_span: tuple[int, int]
    label: str


@dataclass
class AugmentedExample:
    tokens: list[str]
    phonemes: list[str]
    joint_tags: list[int]
    features: FeatureMatrix
    provenance: Provenance

    @property
    def is_identity(self) -> bool:
        return sum(self.joint_tags) == 0


def find_matches(
    tree_i: ParseTree,
    tree_j: ParseTree,
    policy: ConstituentPolicy = DEFAULT_POLICY,
) -> list[tuple[Constituent, Constituent]]:
    """All ordered (host constituent, donor constituent) pairs whose labels
    match under the policy. Host-side document order first, donor order
    second."""
    donors_by_label: dict[str, list[Constituent]] = {}
    for c in enumerate_constituents(tree_j, policy):
        donors_by_label.setdefault(policy.label_key(c.label), []).append(c)
    pairs = []
    for c_m in enumerate_constituents(tree_i, policy):
        for c_n in donors_by_label.get(policy.label_key(c_m.label), ()):
            pairs.append((c_m, c_n))
    return pairs


def substitute_text(host_tokens, c_m: Constituent, donor_tokens, c_n: Constituent) -> list[str]:
    """host[0,a) ++ donor[a_d,b_d) ++ host[b,end)."""
    if not (0 <= c_m.start < c_m.end <= len(host_tokens)):
        raise SpanOutOfBounds(
            f"host span [{c_m.start}, {c_m.end}) outside "
            f"[0, {len(host_tokens)})")
    if not (0 <= c_n.start < c_n.end <= len(donor_tokens)):
        raise SpanOutOfBounds(
            f"donor span [{c_n.start}, {c_n.end}) outside "
            f"[0, {len(donor_tokens)})")
    return (list(host_tokens[:c_m.start])
            + list(donor_tokens[c_n.start:c_n.end])
            + list(host_tokens[c_m.end:]))


def build_augmented(host, c_m: Constituent, donor, c_n: Constituent,
                    policy: ConstituentPolicy | None = None) -> AugmentedExample:
    """Splice donor's constituent into host: text, phonemes, features, tags.

    `host` and `donor` are UtteranceRecords (anything with id, tokens,
    alignment and a features() method). Label equality is checked raw, or
    under `policy.label_key` when a policy is given.

    Frame layout: host [0, start of word a) -- which keeps the host's
    leading silence even when a = 0 -- then donor's word span, then host
    [start of word b, total). A tag goes on the first inserted phoneme iff
    any host frames precede it, and on the first suffix phoneme iff a suffix
    exists. Substituting a record's own constituent for itself reproduces
    contiguous host audio, so that case carries no tags at all.
    """
    key = policy.label_key if policy is not None else (lambda s: s)
    if key(c_m.label) != key(c_n.label):
        raise LabelMismatch(f"{c_m.label!r} vs {c_n.label!r}")
    host_feats = host.features()
    donor_feats = donor.features()
    if host_feats.n_bins != donor_feats.n_bins:
        raise BinMismatch(
            f"host has {host_feats.n_bins} bins, donor {donor_feats.n_bins}")
    for rec in (host, donor):
        if rec.alignment.word_count != len(rec.tokens):
            raise AlignmentInconsistent(
                f"record {rec.id!r}: alignment covers "
                f"{rec.alignment.word_count} words, {len(rec.tokens)} tokens")

    a, b = c_m.start, c_m.end
    tokens = substitute_text(host.tokens, c_m, donor.tokens, c_n)

    host_al, donor_al = host.alignment, donor.alignment
    f_a = word_frame_span(host_al, (a, b))[0]
    d0, d1 = word_frame_span(donor_al, (c_n.start, c_n.end))
    has_suffix = b < host_al.word_count
    f_b = word_frame_span(host_al, (b, host_al.word_count))[0] if has_suffix else None

    segments = [(host_feats, (0, f_a)), (donor_feats, (d0, d1))]
    if has_suffix:
        segments.append((host_feats, (f_b, host_feats.n_frames)))
    features = concat_segments(segments)

    p_a = word_phoneme_span(host_al, (a, b))[0]
    dp0, dp1 = word_phoneme_span(donor_al, (c_n.start, c_n.end))
    host_ph = host_al.phonemes()
    donor_ph = donor_al.phonemes()
    prefix_ph = host_ph[:p_a]
    insert_ph = donor_ph[dp0:dp1]
    suffix_ph = host_ph[word_phoneme_span(host_al, (b, host_al.word_count))[0]:] \
        if has_suffix else []
    phonemes = prefix_ph + insert_ph + suffix_ph

    joint_tags = [0] * len(phonemes)
    identity = host.id == donor.id and c_m.span == c_n.span
    if not identity:
        if f_a > 0:
            joint_tags[len(prefix_ph)] = 1
        if suffix_ph:
            joint_tags[len(prefix_ph) + len(insert_ph)] = 1

    return AugmentedExample(
        tokens=tokens,
        phonemes=phonemes,
        joint_tags=joint_tags,
        features=features,
        provenance=Provenance(
            host_id=host.id,
            donor_id=donor.id,
            host_span=c_m.span,
            donor_span=c_n.span,
            label=key(c_m.label),
        ),
    )
