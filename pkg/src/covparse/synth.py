"""Synthetic treebanks: a corpus with Zipf-distributed arc lengths for
sequence-length statistics, and a tiny template grammar whose attachments a
linear model can learn. Both are deterministic per seed; `python -m
covparse.synth` regenerates the bundled data files.
"""

from __future__ import annotations

import argparse
import random
from bisect import bisect_left
from itertools import accumulate
from pathlib import Path

from .conll import CorpusDocument, write_conllx
from .core import DEFAULT_ROOT_LABEL, ROOT, Sentence, Token
from .oracle import GoldTree

ZIPF_ALPHA = 1.5
ZIPF_SEED = 20124
TOY_TRAIN_SEED = 7
TOY_HELDOUT_SEED = 8

_zipf_tables = {}


def _sample_arc_length(rng, max_len, alpha=ZIPF_ALPHA):
    key = (max_len, alpha)
    table = _zipf_tables.get(key)
    if table is None:
        table = list(accumulate(length ** -alpha for length in range(1, max_len + 1)))
        _zipf_tables[key] = table
    return bisect_left(table, rng.random() * table[-1]) + 1


def zipf_gold_tree(n, rng, labels=("dep",), root_label=DEFAULT_ROOT_LABEL):
    """A random tree whose arc lengths follow a Zipf(1.5) prior.

    Nodes pick a head at a sampled distance in a random direction; proposals
    that leave the sentence or would close a cycle are re-drawn a few times,
    after which the node stays headless and ends up attached to the root.
    """
    if n < 1:
        raise ValueError(f"need at least one node, got n={n}")
    parent = {}

    def reaches(start, goal):
        node = start
        while node is not None:
            if node == goal:
                return True
            node = parent.get(node)
        return False

    order = list(range(1, n + 1))
    rng.shuffle(order)
    for v in order:
        if n == 1:
            break
        for _attempt in range(30):
            length = _sample_arc_length(rng, n - 1)
            h = v + length if rng.random() < 0.5 else v - length
            if not 1 <= h <= n:
                continue
            if reaches(h, v):
                continue
            parent[v] = h
            break
    head = {}
    for v in range(1, n + 1):
        h = parent.get(v, ROOT)
        head[v] = (h, root_label if h == ROOT else rng.choice(labels))
    return GoldTree(n, head)


_ZIPF_TAGS = ("NN", "VB", "DT", "JJ", "IN", "RB")
_ZIPF_LABELS = ("mod", "arg", "det", "cc")


def zipf_corpus(n_sentences=200, seed=ZIPF_SEED, min_len=5, max_len=40):
    """A corpus of random sentences with Zipf-length attachments."""
    rng = random.Random(seed)
    sentences = []
    for _ in range(n_sentences):
        n = rng.randint(min_len, max_len)
        tree = zipf_gold_tree(n, rng, _ZIPF_LABELS)
        tokens = []
        for v in range(1, n + 1):
            tag = rng.choice(_ZIPF_TAGS)
            tokens.append(
                Token(v, f"w{v}", "", tag, tag, "", tree.head(v), tree.label(v))
            )
        sentences.append(Sentence(tokens))
    return CorpusDocument(sentences, "synthetic-zipf")


_DETS = ("the", "a")
_ADJS = ("big", "red", "old", "small")
_NOUNS = ("dog", "cat", "bird", "man", "house", "car")
_VERBS = ("sees", "likes", "finds", "chases")
_ADVS = ("quickly", "often", "today")
_PREPS = ("in", "near", "with")


def toy_corpus(n_sentences, seed=TOY_TRAIN_SEED, root_label=DEFAULT_ROOT_LABEL):
    """Template sentences whose attachments follow the POS pattern exactly,
    so a sparse linear model can fit them."""
    rng = random.Random(seed)
    sentences = []
    for _ in range(n_sentences):
        words = []  # [form, pos, head, label]

        def noun_phrase():
            det_idx = len(words)
            words.append([rng.choice(_DETS), "DT", None, "det"])
            adj_idxs = []
            for _ in range(rng.choice((0, 0, 1, 2))):
                adj_idxs.append(len(words))
                words.append([rng.choice(_ADJS), "JJ", None, "amod"])
            noun_pos = len(words) + 1
            words.append([rng.choice(_NOUNS), "NN", None, None])
            words[det_idx][2] = noun_pos
            for idx in adj_idxs:
                words[idx][2] = noun_pos
            return noun_pos

        subj = noun_phrase()
        verb = len(words) + 1
        words.append([rng.choice(_VERBS), "VB", ROOT, root_label])
        obj = noun_phrase()
        words[subj - 1][2] = verb
        words[subj - 1][3] = "nsubj"
        words[obj - 1][2] = verb
        words[obj - 1][3] = "dobj"
        if rng.random() < 0.5:
            prep = len(words) + 1
            words.append([rng.choice(_PREPS), "IN", obj, "prep"])
            inner = noun_phrase()
            words[inner - 1][2] = prep
            words[inner - 1][3] = "pobj"
        if rng.random() < 0.4:
            words.append([rng.choice(_ADVS), "RB", verb, "advmod"])
        words.append([".", "PU", verb, "punct"])
        tokens = [
            Token(i + 1, form, "", pos, pos, "", head, label)
            for i, (form, pos, head, label) in enumerate(words)
        ]
        sentences.append(Sentence(tokens))
    return CorpusDocument(sentences, "synthetic-toy")


def write_corpus(doc, path):
    with open(path, "w", encoding="utf-8") as out:
        write_conllx(doc, [s.gold_arcset() for s in doc.sentences], out)


def main(argv=None):
    parser = argparse.ArgumentParser(description="regenerate the bundled corpora")
    parser.add_argument(
        "--out-dir",
        default=str(Path(__file__).parent / "data"),
        help="directory for the generated .conllx files",
    )
    args = parser.parse_args(argv)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_corpus(zipf_corpus(), out_dir / "zipf200.conllx")
    write_corpus(toy_corpus(50, TOY_TRAIN_SEED), out_dir / "toy_train.conllx")
    write_corpus(toy_corpus(10, TOY_HELDOUT_SEED), out_dir / "toy_heldout.conllx")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
