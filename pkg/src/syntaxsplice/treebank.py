"""Bracketed constituency trees: parsing, traversal, constituent enumeration.

Trees are immutable after construction, so they can be shared freely across
parallel workers.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    EmptyLabel,
    EmptyTree,
    MalformedTree,
    TrailingGarbage,
    UnbalancedBrackets,
)


class Node:
    """One tree node: internal (label + children) or a pre-terminal leaf
    (POS label + token)."""

    __slots__ = ("label", "children", "token")

    def __init__(self, label, children=(), token=None):
        self.label = label
        self.children = tuple(children)
        self.token = token

    @property
    def is_leaf(self) -> bool:
        return self.token is not None

    def __eq__(self, other):
        if not isinstance(other, Node):
            return NotImplemented
        return (self.label == other.label and self.token == other.token
                and self.children == other.children)

    def __hash__(self):
        return hash((self.label, self.token, self.children))

    def __repr__(self):
        return f"Node({self.to_bracketed()!r})"

    def to_bracketed(self) -> str:
        if self.is_leaf:
            return f"({self.label} {self.token})"
        return "({} {})".format(
            self.label, " ".join(c.to_bracketed() for c in self.children))


class ParseTree:
    """A rooted constituency parse over a token sequence."""

    __slots__ = ("root",)

    def __init__(self, root: Node):
        self.root = root

    def __eq__(self, other):
        if not isinstance(other, ParseTree):
            return NotImplemented
        return self.root == other.root

    def __hash__(self):
        return hash(self.root)

    def __repr__(self):
        return f"ParseTree({self.to_bracketed()!r})"

    def to_bracketed(self) -> str:
        return self.root.to_bracketed()

    def node_at(self, path) -> Node:
        """Resolve a sequence of child indices starting at the root."""
        node = self.root
        for i in path:
            node = node.children[i]
        return node


@dataclass(frozen=True)
class Constituent:
    """A labeled node covering the half-open word span [start, end)."""

    label: str
    start: int
    end: int
    path: tuple[int, ...]

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)

    @property
    def width(self) -> int:
        return self.end - self.start


def _normalize_label(label: str) -> str:
    """Strip functional suffixes: "NP-SBJ" / "NP=2" -> "NP".

    Labels that start with "-" ("-NONE-", "-LRB-") are left alone.
    """
    if label.startswith("-"):
        return label
    for sep in "-=":
        cut = label.find(sep, 1)
        if cut != -1:
            label = label[:cut]
    return label


@dataclass(frozen=True)
class ConstituentPolicy:
    """Filters controlling which tree nodes count as substitutable."""

    include_preterminals: bool = True
    exclude_full_span: bool = True
    min_words: int = 1
    max_words: int | None = None
    label_allowlist: frozenset[str] | None = None
    normalize_labels: bool = False

    def label_key(self, label: str) -> str:
        """The string under which this label matches other labels."""
        return _normalize_label(label) if self.normalize_labels else label

    def admits(self, constituent: Constituent, token_count: int) -> bool:
        width = constituent.width
        if width < self.min_words:
            return False
        if self.max_words is not None and width > self.max_words:
            return False
        if self.exclude_full_span and width == token_count:
            return False
        if (self.label_allowlist is not None
                and self.label_key(constituent.label) not in self.label_allowlist):
            return False
        return True


DEFAULT_POLICY = ConstituentPolicy()


def parse_bracketed(text: str) -> ParseTree:
    """Parse one bracketed s-expression tree.

    An outer wrapping pair of parentheses with an empty label (PTB style
    "( (S ...))") is tolerated and stripped.
    """
    toks = text.replace("(", " ( ").replace(")", " ) ").split()
    if not toks:
        raise EmptyTree("no tokens in input")
    if toks[0] != "(":
        raise UnbalancedBrackets(f"expected '(' at start, got {toks[0]!r}")

    root, pos = _parse_node(toks, 0, top=True)
    if pos != len(toks):
        raise TrailingGarbage(
            f"content after root close: {' '.join(toks[pos:pos + 5])!r}")
    return ParseTree(root)


def _parse_node(toks, pos, top=False):
    # caller guarantees toks[pos] == "("
    pos += 1
    if pos >= len(toks):
        raise UnbalancedBrackets("input ended after '('")
    if toks[pos] in ("(", ")"):
        # node with no label: tolerated only as the outermost wrapper
        label = ""
    else:
        label = toks[pos]
        pos += 1

    children = []
    words = []
    while pos < len(toks) and toks[pos] != ")":
        if toks[pos] == "(":
            child, pos = _parse_node(toks, pos)
            children.append(child)
        else:
            words.append(toks[pos])
            pos += 1
    if pos >= len(toks):
        raise UnbalancedBrackets(f"unclosed node ({label} ...")
    pos += 1  # consume ")"

    if label == "":
        if top and len(children) == 1 and not words:
            return children[0], pos
        raise EmptyLabel("node with no label")
    if children and words:
        raise MalformedTree(
            f"node ({label} ...) mixes bare tokens with subtrees")
    if not children:
        if not words:
            raise EmptyTree(f"node ({label}) covers no tokens")
        if len(words) > 1:
            raise MalformedTree(
                f"pre-terminal ({label} ...) has {len(words)} tokens")
        return Node(label, token=words[0]), pos
    return Node(label, children=children), pos


def leaf_tokens(tree: ParseTree) -> list[str]:
    """In-order token sequence of the tree."""
    out = []
    _collect_tokens(tree.root, out)
    return out


def _collect_tokens(node, out):
    if node.is_leaf:
        out.append(node.token)
    else:
        for child in node.children:
            _collect_tokens(child, out)


def enumerate_constituents(
    tree: ParseTree, policy: ConstituentPolicy = DEFAULT_POLICY
) -> list[Constituent]:
    """All nodes admitted by the policy, in document order.

    Document order is a pre-order walk, i.e. spans sorted by
    (start ascending, end descending). Unary chains yield one constituent
    per node even though their spans coincide.
    """
    all_nodes: list[Constituent] = []
    token_count = _walk_spans(tree.root, 0, (), all_nodes)
    out = []
    for c in all_nodes:
        is_leaf = tree.node_at(c.path).is_leaf
        if is_leaf and not policy.include_preterminals:
            continue
        if policy.admits(c, token_count):
            out.append(c)
    return out


def _walk_spans(node, start, path, out):
    """Record a Constituent for every node; return the index one past the
    node's last token."""
    if node.is_leaf:
        out.append(Constituent(node.label, start, start + 1, path))
        return start + 1
    # reserve the parent's slot before the children to keep document order
    slot = len(out)
    out.append(None)
    end = start
    for i, child in enumerate(node.children):
        end = _walk_spans(child, end, path + (i,), out)
    out[slot] = Constituent(node.label, start, end, path)
    return end
