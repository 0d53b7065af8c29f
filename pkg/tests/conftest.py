"""Shared fixtures and brute-force helpers for the test suite."""

import itertools
import random

import pytest

from covparse import (
    COVINGTON,
    NL_COVINGTON,
    GoldTree,
    Sentence,
    Token,
    Transition,
    TransitionSystem,
    initial_configuration,
    is_terminal,
)

# Five-token example: node 1 heads 2, 3 and 5, node 5 heads 4, node 1 is the
# sentence root. Unlabeled, so traces render without label suffixes.
EXAMPLE_HEADS = {1: (0, ""), 2: (1, ""), 3: (1, ""), 4: (5, ""), 5: (1, "")}


@pytest.fixture
def example_tree():
    return GoldTree(5, EXAMPLE_HEADS)


@pytest.fixture
def cov_system():
    return TransitionSystem(COVINGTON, ("",))


@pytest.fixture
def nl_system():
    return TransitionSystem(NL_COVINGTON, ("",))


def make_sentence(tag_word_pairs, heads=None, labels=None):
    """Build a Sentence from (pos, form) pairs plus optional gold columns."""
    tokens = []
    for i, (pos, form) in enumerate(tag_word_pairs):
        head = heads[i] if heads is not None else None
        label = labels[i] if labels is not None else None
        tokens.append(Token(i + 1, form, "", pos, pos, "", head, label))
    return Sentence(tokens)


def all_gold_trees(n, label="dep", root_label="ROOT"):
    """Every gold tree over nodes 0..n, by filtering all parent assignments."""
    choices = [[h for h in range(0, n + 1) if h != v] for v in range(1, n + 1)]
    trees = []
    for parents in itertools.product(*choices):
        head = {
            v: (parents[v - 1], root_label if parents[v - 1] == 0 else label)
            for v in range(1, n + 1)
        }
        try:
            trees.append(GoldTree(n, head))
        except ValueError:
            continue
    return trees


def random_legal_walk(system, n, rng):
    """A random complete legal transition sequence and its final configuration."""
    c = initial_configuration(n)
    seq = []
    while not is_terminal(c):
        kind, k = rng.choice(system.legal_candidates(c))
        if k is None:
            t = Transition(kind)
        else:
            t = Transition(kind, k, rng.choice(system.label_set))
        c = system.apply(c, t)
        seq.append(t)
    return seq, c


def walk_rng(seed):
    return random.Random(seed)
