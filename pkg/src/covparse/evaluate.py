"""Attachment scores, canonical sequence-length statistics, projectivity."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass

from .core import ROOT
from .oracle import oracle_sequence
from .systems import COVINGTON, NL_COVINGTON, TransitionSystem

INCLUDE = "include"
EXCLUDE = "exclude"
PUNCT_POLICIES = (INCLUDE, EXCLUDE)


@dataclass(frozen=True)
class ScoreReport:
    uas: float
    las: float
    tokens_scored: int
    tokens_excluded: int


def is_punctuation(form):
    """True when the form consists entirely of Unicode punctuation."""
    return bool(form) and all(unicodedata.category(ch).startswith("P") for ch in form)


def score(gold, predicted, punct_policy=INCLUDE, punct_pos=None):
    """UAS/LAS of predicted arc sets against the gold annotation in gold.

    gold is a CorpusDocument whose tokens carry gold heads; predicted is one
    root-attached ArcSet per sentence. Under the exclude policy, punctuation
    tokens leave both numerator and denominator; punct_pos switches the
    detection from the all-punctuation-form rule to a POS-tag blacklist.
    """
    if punct_policy not in PUNCT_POLICIES:
        raise ValueError(f"punct_policy must be one of {PUNCT_POLICIES}")
    if len(predicted) != len(gold.sentences):
        raise ValueError(
            f"{len(predicted)} predictions for {len(gold.sentences)} sentences"
        )
    scored = excluded = head_ok = both_ok = 0
    for s_idx, (sentence, arcs) in enumerate(zip(gold.sentences, predicted)):
        for tok in sentence:
            if tok.gold_head is None:
                raise ValueError(
                    f"sentence {s_idx + 1}: token {tok.id} has no gold head"
                )
            entry = arcs.head_of(tok.id)
            if entry is None:
                raise ValueError(
                    f"sentence {s_idx + 1}: prediction leaves token {tok.id} unattached"
                )
            if punct_policy == EXCLUDE and _is_excluded(tok, punct_pos):
                excluded += 1
                continue
            scored += 1
            head, label = entry
            if head == tok.gold_head:
                head_ok += 1
                if label == (tok.gold_label or ""):
                    both_ok += 1
    uas = head_ok / scored if scored else 0.0
    las = both_ok / scored if scored else 0.0
    return ScoreReport(uas, las, scored, excluded)


def _is_excluded(tok, punct_pos):
    if punct_pos:
        return tok.pos in punct_pos or tok.cpos in punct_pos
    return is_punctuation(tok.form)


@dataclass(frozen=True)
class TransitionStats:
    per_sentence: list  # (classic_len, non_local_len) per sentence
    avg_cov: float
    avg_nl: float

    @property
    def reduction(self):
        return 1.0 - self.avg_nl / self.avg_cov if self.avg_cov else 0.0


def transition_stats(trees):
    """Canonical sequence lengths per sentence under both systems.

    The non-local length never exceeds the classic one; the gap is exactly
    the sum of (k - 1) over the non-local arc transitions.
    """
    trees = list(trees)
    if not trees:
        raise ValueError("empty corpus")
    labels = sorted(
        {t.label(v) for t in trees for v in range(1, t.n + 1) if t.head(v) != ROOT}
    ) or ["dep"]
    cov = TransitionSystem(COVINGTON, labels)
    nl = TransitionSystem(NL_COVINGTON, labels)
    pairs = []
    for tree in trees:
        pairs.append((len(oracle_sequence(cov, tree)), len(oracle_sequence(nl, tree))))
    avg_cov = sum(c for c, _ in pairs) / len(pairs)
    avg_nl = sum(n for _, n in pairs) / len(pairs)
    return TransitionStats(pairs, avg_cov, avg_nl)


def is_projective(tree):
    """True iff no two arcs cross, counting the implicit root arcs at 0.

    Two arcs cross when exactly one endpoint of one lies strictly inside the
    other's span and the second endpoint lies strictly outside.
    """
    spans = []
    for v in range(1, tree.n + 1):
        h = tree.head(v)
        spans.append((min(h, v), max(h, v)))
    for a in range(len(spans)):
        lo1, hi1 = spans[a]
        for b in range(a + 1, len(spans)):
            lo2, hi2 = spans[b]
            if lo1 < lo2 < hi1 < hi2 or lo2 < lo1 < hi2 < hi1:
                return False
    return True
