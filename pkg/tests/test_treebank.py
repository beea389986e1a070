import numpy as np
import pytest

from syntaxsplice import (
    ConstituentPolicy,
    enumerate_constituents,
    leaf_tokens,
    parse_bracketed,
)
from syntaxsplice.errors import (
    EmptyLabel,
    EmptyTree,
    MalformedTree,
    TrailingGarbage,
    UnbalancedBrackets,
)
from syntaxsplice.treebank import _normalize_label

from conftest import DONOR_TREE, HOST_TREE
from oracles import naive_spans


def test_parse_host_tree_shape():
    tree = parse_bracketed(HOST_TREE)
    assert tree.root.label == "S"
    assert len(tree.root.children) == 3
    assert leaf_tokens(tree) == ["He", "never", "lied"]


def test_parse_single_preterminal():
    tree = parse_bracketed("(NN head)")
    assert tree.root.is_leaf
    assert leaf_tokens(tree) == ["head"]


def test_parse_unbalanced():
    with pytest.raises(UnbalancedBrackets):
        parse_bracketed("(S (NP (PRP He)) (VP (VBD lied))")


def test_parse_trailing_garbage():
    with pytest.raises(TrailingGarbage):
        parse_bracketed("(NN head) (NN tail)")
    with pytest.raises(TrailingGarbage):
        parse_bracketed("(NN head))")


def test_parse_empty_inputs():
    with pytest.raises(EmptyTree):
        parse_bracketed("")
    with pytest.raises(EmptyTree):
        parse_bracketed("(NP)")


def test_parse_empty_label():
    with pytest.raises(EmptyLabel):
        parse_bracketed("(S (NP ( (PRP x))) (VP (VBD y)))")
    with pytest.raises(EmptyLabel):
        parse_bracketed("()")


def test_parse_outer_wrapper_stripped():
    tree = parse_bracketed(f"( {HOST_TREE} )")
    assert tree == parse_bracketed(HOST_TREE)
    # a wrapper around two roots is not a wrapper
    with pytest.raises(EmptyLabel):
        parse_bracketed("( (NN a) (NN b) )")


def test_parse_malformed_shapes():
    with pytest.raises(MalformedTree):
        parse_bracketed("(NP (DT the) dog)")
    with pytest.raises(MalformedTree):
        parse_bracketed("(NP two words)")


def test_roundtrip_serialization():
    for text in (HOST_TREE, DONOR_TREE, "(NN head)"):
        tree = parse_bracketed(text)
        assert parse_bracketed(tree.to_bracketed()) == tree
        assert tree.to_bracketed() == text


def test_leaf_tokens_donor_and_spliced():
    assert leaf_tokens(parse_bracketed(DONOR_TREE)) == ["She", "shook", "her", "head"]
    spliced = ("(S (NP (PRP He)) (ADVP (RB never)) "
               "(VP (VBD shook) (NP (PRP$ her) (NN head))))")
    assert leaf_tokens(parse_bracketed(spliced)) == [
        "He", "never", "shook", "her", "head"]


def test_enumerate_default_policy_host():
    got = [(c.label, c.span) for c in
           enumerate_constituents(parse_bracketed(HOST_TREE))]
    assert got == [
        ("NP", (0, 1)), ("PRP", (0, 1)),
        ("ADVP", (1, 2)), ("RB", (1, 2)),
        ("VP", (2, 3)), ("VBD", (2, 3)),
    ]


def test_enumerate_min_words_donor():
    got = [(c.label, c.span) for c in enumerate_constituents(
        parse_bracketed(DONOR_TREE), ConstituentPolicy(min_words=2))]
    assert got == [("VP", (1, 4)), ("NP", (2, 4))]


def test_enumerate_single_node_excluded():
    assert enumerate_constituents(parse_bracketed("(NN head)")) == []


def test_enumerate_full_span_includes_unary_chain_over_root():
    # every node spanning all tokens is excluded, not just the root
    tree = parse_bracketed("(S (VP (VBD lied)))")
    assert enumerate_constituents(tree) == []
    got = enumerate_constituents(tree, ConstituentPolicy(exclude_full_span=False))
    assert [(c.label, c.span) for c in got] == [
        ("S", (0, 1)), ("VP", (0, 1)), ("VBD", (0, 1))]


def test_enumerate_excluding_preterminals():
    got = enumerate_constituents(
        parse_bracketed(DONOR_TREE), ConstituentPolicy(include_preterminals=False))
    assert [(c.label, c.span) for c in got] == [
        ("NP", (0, 1)), ("VP", (1, 4)), ("NP", (2, 4))]


def test_enumerate_allowlist_and_normalization():
    tree = parse_bracketed("(S (NP-SBJ (PRP He)) (VP (VBD lied)))")
    plain = enumerate_constituents(tree, ConstituentPolicy(
        label_allowlist=frozenset({"NP"})))
    assert plain == []  # "NP-SBJ" != "NP" without normalization
    normalized = enumerate_constituents(tree, ConstituentPolicy(
        label_allowlist=frozenset({"NP"}), normalize_labels=True))
    assert [(c.label, c.span) for c in normalized] == [("NP-SBJ", (0, 1))]


def test_label_normalization_rules():
    assert _normalize_label("NP-SBJ") == "NP"
    assert _normalize_label("NP-SBJ-1") == "NP"
    assert _normalize_label("NP=2") == "NP"
    assert _normalize_label("-NONE-") == "-NONE-"
    assert _normalize_label("PRP$") == "PRP$"


def test_node_path_resolves_to_span():
    tree = parse_bracketed(DONOR_TREE)
    for c in enumerate_constituents(tree):
        node = tree.node_at(c.path)
        assert node.label == c.label
        flat = []
        stack = [node]
        while stack:
            cur = stack.pop()
            if cur.is_leaf:
                flat.append(cur.token)
            else:
                stack.extend(reversed(cur.children))
        assert flat == leaf_tokens(tree)[c.start:c.end]


def test_enumeration_matches_naive_oracle_on_random_trees():
    from corpusgen import _bracketed, _sentence

    rng = np.random.Generator(np.random.Philox(11))
    for _ in range(60):
        text = _bracketed(_sentence(rng))
        tree = parse_bracketed(text)
        n = len(leaf_tokens(tree))
        expected = [
            (label, start, end)
            for label, start, end, _ in naive_spans(text)
            if (end - start) < n
        ]
        got = [(c.label, c.start, c.end) for c in enumerate_constituents(tree)]
        assert got == expected
        # document order: start ascending, end descending on ties
        for prev, cur in zip(got, got[1:]):
            assert (prev[1], -prev[2]) <= (cur[1], -cur[2])


def test_every_token_covered_by_a_preterminal():
    from corpusgen import _bracketed, _sentence

    rng = np.random.Generator(np.random.Philox(12))
    for _ in range(30):
        tree = parse_bracketed(_bracketed(_sentence(rng)))
        n = len(leaf_tokens(tree))
        leaves = [c for c in enumerate_constituents(tree)
                  if tree.node_at(c.path).is_leaf]
        covered = sorted(c.start for c in leaves)
        if n > 1:  # with one token the full-span exclusion removes the leaf
            assert covered == list(range(n))


def test_width_bounds_respected():
    tree = parse_bracketed(DONOR_TREE)
    for min_w, max_w in ((1, 1), (2, 3), (1, None), (3, None)):
        for c in enumerate_constituents(
                tree, ConstituentPolicy(min_words=min_w, max_words=max_w)):
            assert c.width >= min_w
            if max_w is not None:
                assert c.width <= max_w
