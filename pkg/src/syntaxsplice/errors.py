"""Exception types shared across the toolkit.

Every error raised on bad input derives from SyntaxspliceError so callers
(and the CLI) can catch one base class.
"""


class SyntaxspliceError(Exception):
    pass


# --- bracketed tree parsing ---

class TreebankError(SyntaxspliceError):
    pass


class UnbalancedBrackets(TreebankError):
    pass


class EmptyLabel(TreebankError):
    pass


class EmptyTree(TreebankError):
    pass


class TrailingGarbage(TreebankError):
    pass


class MalformedTree(TreebankError):
    """Node shape not representable: mixed token/subtree children or a
    multi-token leaf."""


# --- alignments ---

class AlignmentError(SyntaxspliceError):
    pass


class MalformedRow(AlignmentError):
    pass


class OverlappingFrames(AlignmentError):
    pass


class WordIndexGap(AlignmentError):
    pass


class NonMonotonic(AlignmentError):
    pass


class RangeOutOfBounds(SyntaxspliceError):
    """A word, phoneme or frame range fell outside its container."""


# --- feature matrices ---

class FeatureError(SyntaxspliceError):
    pass


class BadMagic(FeatureError):
    pass


class UnsupportedVersion(FeatureError):
    pass


class TruncatedPayload(FeatureError):
    """File length does not match the header (short or overlong payload)."""


class NonFiniteValue(FeatureError):
    pass


class BinMismatch(FeatureError):
    pass


class IoFailure(FeatureError):
    pass


# --- splicing ---

class SpliceError(SyntaxspliceError):
    pass


class LabelMismatch(SpliceError):
    pass


class SpanOutOfBounds(SpliceError):
    pass


class AlignmentInconsistent(SpliceError):
    """Alignment word count disagrees with the token sequence."""


# --- corpus / sampling ---

class CorpusError(SyntaxspliceError):
    pass


class ManifestParse(CorpusError):
    pass


class MissingFile(CorpusError):
    pass


class TokenTreeMismatch(CorpusError):
    pass


class FrameCountMismatch(CorpusError):
    pass


class ExhaustedUniverse(CorpusError):
    """Random sampling could not reach the target after the rejection budget."""


# --- stats / scoring ---

class MissingProvenance(SyntaxspliceError):
    pass


class EmptyReference(SyntaxspliceError):
    pass


class ZeroBaseline(SyntaxspliceError):
    pass


class MissingBaselineKey(SyntaxspliceError):
    pass
