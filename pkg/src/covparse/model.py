"""Feature templates and a sparse linear scorer with averaged-perceptron
training.

Transitions are scored jointly with their label: each (kind, label) pair
owns a weight row. The depth k enters through a bucketed feature instead of
the class inventory, so depths unseen in training still score sensibly.
Feature ids are stable 64-bit hashes of template strings; the hash seed is
recorded in the model file so scores reproduce across runs and platforms.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .core import (
    DEFAULT_ROOT_LABEL,
    LEFT_ARC,
    NO_ARC,
    RIGHT_ARC,
    SHIFT,
    Transition,
    attach_root,
    initial_configuration,
    is_terminal,
)
from .oracle import oracle_step
from .systems import COVINGTON, SYSTEM_NAMES, TransitionSystem

DEFAULT_HASH_SEED = 1

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK = (1 << 64) - 1

_END_MARKER = "<end>"


@lru_cache(maxsize=1 << 20)
def feature_id(template, seed=DEFAULT_HASH_SEED):
    """Stable 64-bit FNV-1a id for a feature template instantiation."""
    h = (_FNV_OFFSET ^ (seed & _MASK)) & _MASK
    for byte in template.encode("utf-8"):
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK
    return h


def _bucket(value):
    if value <= 5:
        return str(value)
    if value <= 10:
        return "6:10"
    return ">10"


def _token_feats(prefix, tok):
    return (
        f"{prefix}.form={tok.form}",
        f"{prefix}.pos={tok.pos}",
        f"{prefix}.fp={tok.form}|{tok.pos}",
    )


def transition_templates(sentence, c, t):
    """Raw template strings for one transition in one configuration.

    Arc transitions look at the head and dependent of the arc they would
    build plus its bucketed length and depth; NoArc looks at the focus
    pair; Shift looks at the first buffer word and the next tag.
    """
    if is_terminal(c):
        raise ValueError("terminal configuration has no features")
    jtok = sentence.token(c.buffer[0])
    if t.kind == SHIFT:
        nxt = sentence.token(c.buffer[1]).pos if len(c.buffer) > 1 else _END_MARKER
        out = [f"sh:{f}" for f in _token_feats("b0", jtok)]
        out.append(f"sh:b1.pos={nxt}")
        return out
    if t.kind == NO_ARC:
        if not c.lambda1:
            raise ValueError("NoArc needs a non-empty lambda1")
        itok = sentence.token(c.lambda1[-1])
        out = [f"na:{f}" for f in _token_feats("l1", itok) + _token_feats("b0", jtok)]
        out.append(f"na:pos2={itok.pos}|{jtok.pos}")
        return out
    if t.k is None or not 1 <= t.k <= len(c.lambda1):
        raise ValueError(f"arc depth {t.k} does not address lambda1")
    itok = sentence.token(c.lambda1[-t.k])
    head_tok, dep_tok = (jtok, itok) if t.kind == LEFT_ARC else (itok, jtok)
    out = [f"arc:{f}" for f in _token_feats("h", head_tok) + _token_feats("d", dep_tok)]
    out.append(f"arc:pos2={head_tok.pos}|{dep_tok.pos}")
    sign = "+" if head_tok.id < dep_tok.id else "-"
    out.append(f"arc:dist={sign}{_bucket(abs(head_tok.id - dep_tok.id))}")
    out.append(f"arc:k={_bucket(t.k)}")
    return out


def featurize(sentence, c, t, hash_seed=DEFAULT_HASH_SEED):
    """Sparse hashed feature counts for scoring transition t in c."""
    fv = {}
    for template in transition_templates(sentence, c, t):
        fid = feature_id(template, hash_seed)
        fv[fid] = fv.get(fid, 0) + 1
    return fv


def class_id(t):
    """The weight-row key of a transition: its kind, plus the label for arcs."""
    if t.is_arc:
        return f"{t.kind}:{t.label}"
    return t.kind


def class_ids(system_name, label_set):
    out = [SHIFT]
    if system_name == COVINGTON:
        out.append(NO_ARC)
    for kind in (LEFT_ARC, RIGHT_ARC):
        out.extend(f"{kind}:{label}" for label in label_set)
    return out


class Model:
    """Per-class sparse weight rows. Inference uses the averaged weights."""

    FORMAT_VERSION = "1"

    def __init__(self, system_name, label_set, hash_seed=DEFAULT_HASH_SEED, weights=None):
        if system_name not in SYSTEM_NAMES:
            raise ValueError(f"unknown system {system_name!r}")
        self.system_name = system_name
        self.label_set = tuple(label_set)
        if not self.label_set:
            raise ValueError("label_set must not be empty")
        self.hash_seed = hash_seed
        self._valid = frozenset(class_ids(system_name, self.label_set))
        self.weights = weights if weights is not None else {}
        unknown = set(self.weights) - self._valid
        if unknown:
            raise ValueError(f"weights for classes outside the system: {sorted(unknown)}")

    def score(self, fv, t):
        """Dot product of fv with the weight row of t's class.

        Transitions of a class the model does not know score minus infinity
        and are therefore never selected.
        """
        cid = class_id(t)
        if cid not in self._valid:
            return float("-inf")
        row = self.weights.get(cid)
        if not row:
            return 0.0
        return sum(count * row.get(fid, 0.0) for fid, count in fv.items())

    def save(self, out):
        out.write(f"version\t{self.FORMAT_VERSION}\n")
        out.write(f"system\t{self.system_name}\n")
        out.write(f"hash-seed\t{self.hash_seed}\n")
        out.write("labels\t" + "\t".join(self.label_set) + "\n")
        for cid in sorted(self.weights):
            row = self.weights[cid]
            for fid in sorted(row):
                if row[fid] != 0.0:
                    out.write(f"{cid}\t{fid}\t{row[fid]!r}\n")

    @classmethod
    def load(cls, stream):
        header = {}
        lines = iter(stream)
        try:
            for key in ("version", "system", "hash-seed", "labels"):
                fields = next(lines).rstrip("\n").split("\t")
                if fields[0] != key:
                    raise ValueError(f"expected header line {key!r}, got {fields[0]!r}")
                header[key] = fields[1:]
        except StopIteration:
            raise ValueError("truncated model header") from None
        if header["version"] != [cls.FORMAT_VERSION]:
            raise ValueError(f"unsupported model version {header['version']}")
        model = cls(header["system"][0], header["labels"], int(header["hash-seed"][0]))
        weights = {}
        for line in lines:
            line = line.rstrip("\n")
            if not line:
                continue
            cid, fid, value = line.split("\t")
            weights.setdefault(cid, {})[int(fid)] = float(value)
        unknown = set(weights) - model._valid
        if unknown:
            raise ValueError(f"weights for classes outside the system: {sorted(unknown)}")
        model.weights = weights
        return model


def _argmax(system, sentence, c, table, hash_seed):
    # Ties resolve to the earliest candidate in canonical order because the
    # comparison is strict and legal_candidates enumerates in that order.
    best = None
    best_score = None
    for kind, k in system.legal_candidates(c):
        if k is None:
            candidates = [(Transition(kind), kind)]
            fv = featurize(sentence, c, candidates[0][0], hash_seed)
        else:
            fv = featurize(sentence, c, Transition(kind, k, system.label_set[0]), hash_seed)
            candidates = [
                (Transition(kind, k, label), f"{kind}:{label}")
                for label in system.label_set
            ]
        for t, cid in candidates:
            row = table.get(cid)
            s = 0.0
            if row:
                s = sum(count * row.get(fid, 0.0) for fid, count in fv.items())
            if best_score is None or s > best_score:
                best, best_score = t, s
    return best


def greedy_parse(model, system, sentence, root_label=DEFAULT_ROOT_LABEL):
    """Parse greedily with the model; returns the root-attached arc set.

    Shift is legal in every non-terminal configuration, so the loop always
    reaches the terminal state and the result is a well-formed tree no
    matter how the model scores.
    """
    if model.system_name != system.name:
        raise ValueError(
            f"model was trained for {model.system_name}, not {system.name}"
        )
    n = len(sentence)
    c = initial_configuration(n)
    while not is_terminal(c):
        t = _argmax(system, sentence, c, model.weights, model.hash_seed)
        system._apply_unchecked(c, t)
    return attach_root(c.arcs, n, root_label)


def train(corpus, system, epochs, seed, hash_seed=DEFAULT_HASH_SEED, on_epoch=None):
    """Averaged-perceptron training along the static-oracle paths.

    corpus is a list of (Sentence, GoldTree) pairs. At every oracle
    configuration the current raw weights pick a transition; when it differs
    from the oracle's, the gold features are rewarded and the predicted ones
    penalized. Shuffling per epoch is driven by seed, so equal seeds give
    bit-identical models. on_epoch, when given, receives (epoch, mistakes).
    """
    if epochs < 1:
        raise ValueError(f"epochs must be >= 1, got {epochs}")
    corpus = list(corpus)
    if not corpus:
        raise ValueError("training corpus is empty")
    for sentence, gold in corpus:
        if len(sentence) != gold.n:
            raise ValueError(
                f"sentence of length {len(sentence)} paired with tree of size {gold.n}"
            )
    rng = random.Random(seed)
    raw = {}
    totals = {}
    stamps = {}
    q = 0
    order = list(range(len(corpus)))
    for epoch in range(1, epochs + 1):
        rng.shuffle(order)
        mistakes = 0
        for idx in order:
            sentence, gold = corpus[idx]
            c = initial_configuration(len(sentence))
            while not is_terminal(c):
                q += 1
                t_gold = oracle_step(system, c, gold)
                t_pred = _argmax(system, sentence, c, raw, hash_seed)
                if t_pred != t_gold:
                    mistakes += 1
                    _update(raw, totals, stamps, q, class_id(t_gold),
                            featurize(sentence, c, t_gold, hash_seed), +1)
                    _update(raw, totals, stamps, q, class_id(t_pred),
                            featurize(sentence, c, t_pred, hash_seed), -1)
                system._apply_unchecked(c, t_gold)
        if on_epoch is not None:
            on_epoch(epoch, mistakes)
    averaged = _finalize(raw, totals, stamps, q)
    return Model(system.name, system.label_set, hash_seed, weights=averaged)


def _update(raw, totals, stamps, q, cid, fv, sign):
    row = raw.setdefault(cid, {})
    trow = totals.setdefault(cid, {})
    srow = stamps.setdefault(cid, {})
    for fid, count in fv.items():
        w = row.get(fid, 0.0)
        trow[fid] = trow.get(fid, 0.0) + w * (q - srow.get(fid, 0))
        srow[fid] = q
        row[fid] = w + sign * count


def _finalize(raw, totals, stamps, q):
    averaged = {}
    for cid, row in raw.items():
        trow = totals[cid]
        srow = stamps[cid]
        arow = {}
        for fid, w in row.items():
            total = trow.get(fid, 0.0) + w * (q - srow.get(fid, 0))
            avg = total / q if q else 0.0
            if avg != 0.0:
                arow[fid] = avg
        if arow:
            averaged[cid] = arow
    return averaged


def corpus_uas(model, system, corpus, root_label=DEFAULT_ROOT_LABEL):
    """Unlabeled attachment score of the model over (Sentence, GoldTree) pairs."""
    correct = total = 0
    for sentence, gold in corpus:
        arcs = greedy_parse(model, system, sentence, root_label)
        for v in range(1, gold.n + 1):
            total += 1
            if arcs.head_of(v)[0] == gold.head(v):
                correct += 1
    return correct / total if total else 0.0
