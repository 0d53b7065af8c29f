"""Value types shared by every stage of the parsing pipeline.

Node ids are sentence positions starting at 1. Position 0 belongs to the
artificial root, which never enters a parser configuration: headless nodes
are attached to it after parsing, see attach_root.
"""

from __future__ import annotations

from dataclasses import dataclass

ROOT = 0
DEFAULT_ROOT_LABEL = "ROOT"

# Transition kinds, named by their trace mnemonics.
SHIFT = "SH"
NO_ARC = "NA"
LEFT_ARC = "LA"
RIGHT_ARC = "RA"

TRANSITION_KINDS = (SHIFT, NO_ARC, LEFT_ARC, RIGHT_ARC)


@dataclass(frozen=True)
class Token:
    """A single treebank word with its (optional) gold attachment."""

    id: int
    form: str
    lemma: str = ""
    cpos: str = ""
    pos: str = ""
    feats: str = ""
    gold_head: int | None = None
    gold_label: str | None = None

    def __post_init__(self):
        if self.id < 1:
            raise ValueError(f"token id must be positive, got {self.id}")
        if self.gold_head is not None and self.gold_head < 0:
            raise ValueError(f"token {self.id}: head must be >= 0, got {self.gold_head}")
        if self.gold_head == self.id:
            raise ValueError(f"token {self.id} cannot be its own head")


class Sentence:
    """An ordered, contiguously numbered list of tokens.

    When every token carries a gold head, the heads must form a forest over
    0..n rooted at position 0 (no cycles, at most one head per node).
    """

    def __init__(self, tokens):
        tokens = list(tokens)
        for k, tok in enumerate(tokens):
            if tok.id != k + 1:
                raise ValueError(
                    f"token ids must run 1..n: position {k + 1} holds id {tok.id}"
                )
        self.tokens = tokens
        if tokens and all(t.gold_head is not None for t in tokens):
            _check_head_forest([t.gold_head for t in tokens])

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __eq__(self, other):
        return isinstance(other, Sentence) and self.tokens == other.tokens

    def __repr__(self):
        return f"Sentence({' '.join(t.form for t in self.tokens)!r})"

    def token(self, node):
        """The token at 1-based position `node`."""
        if node < 1:
            raise IndexError(f"node ids are 1-based, got {node}")
        return self.tokens[node - 1]

    def gold_arcset(self):
        """The gold arcs, including the root attachments at position 0."""
        arcs = ArcSet()
        for tok in self.tokens:
            if tok.gold_head is None:
                raise ValueError(f"token {tok.id} has no gold head")
            arcs.add(Arc(tok.gold_head, tok.id, tok.gold_label or ""))
        return arcs


def _check_head_forest(heads):
    n = len(heads)
    for v, h in enumerate(heads, start=1):
        if h > n:
            raise ValueError(f"token {v}: head {h} is outside the sentence")
    for v in range(1, n + 1):
        seen = set()
        node = v
        while node != ROOT:
            if node in seen:
                raise ValueError(f"gold heads contain a cycle through token {node}")
            seen.add(node)
            node = heads[node - 1]


@dataclass(frozen=True, order=True)
class Arc:
    """A labeled dependency from a head to its dependent."""

    head: int
    dependent: int
    label: str = ""

    def __post_init__(self):
        if self.dependent < 1:
            raise ValueError(f"dependent must be a word position, got {self.dependent}")
        if self.head < 0:
            raise ValueError(f"head must be >= 0, got {self.head}")
        if self.head == self.dependent:
            raise ValueError(f"self-loop arc at node {self.head}")


class ArcSet:
    """A set of arcs kept single-headed and acyclic at all times."""

    __slots__ = ("_by_dependent",)

    def __init__(self, arcs=()):
        self._by_dependent = {}
        for arc in arcs:
            self.add(arc)

    def add(self, arc):
        if arc.dependent in self._by_dependent:
            raise ValueError(f"node {arc.dependent} already has a head")
        if self.has_path(arc.dependent, arc.head):
            raise ValueError(f"arc {arc.head}->{arc.dependent} would close a cycle")
        self._by_dependent[arc.dependent] = arc

    def has_head(self, dependent):
        return dependent in self._by_dependent

    def head_of(self, dependent):
        """The (head, label) pair of `dependent`, or None if unattached."""
        arc = self._by_dependent.get(dependent)
        return (arc.head, arc.label) if arc is not None else None

    def has_path(self, source, target):
        """True when a (possibly empty) chain of arcs leads source -> target.

        Single-headedness means the only way into `target` is down its
        unique ancestor chain, so walking that chain upward suffices.
        """
        node = target
        while True:
            if node == source:
                return True
            arc = self._by_dependent.get(node)
            if arc is None:
                return False
            node = arc.head

    def arcs(self):
        return set(self._by_dependent.values())

    def copy(self):
        out = ArcSet()
        out._by_dependent = dict(self._by_dependent)
        return out

    def __len__(self):
        return len(self._by_dependent)

    def __iter__(self):
        return iter(self._by_dependent.values())

    def __contains__(self, arc):
        return self._by_dependent.get(arc.dependent) == arc

    def __eq__(self, other):
        return isinstance(other, ArcSet) and self._by_dependent == other._by_dependent

    def __repr__(self):
        inner = ", ".join(
            f"{a.head}->{a.dependent}" for a in sorted(self._by_dependent.values())
        )
        return f"ArcSet({{{inner}}})"


def would_violate_single_head(arcs, dependent):
    """True iff `dependent` already has a head in `arcs`."""
    return arcs.has_head(dependent)


def would_create_cycle(arcs, head, dependent):
    """True iff adding head->dependent would close a directed cycle."""
    return arcs.has_path(dependent, head)


def attach_root(arcs, n, root_label=DEFAULT_ROOT_LABEL):
    """A copy of `arcs` where every headless node 1..n hangs off the root."""
    out = arcs.copy()
    for v in range(1, n + 1):
        if not out.has_head(v):
            out.add(Arc(ROOT, v, root_label))
    return out


@dataclass(frozen=True)
class Transition:
    """One parser action. Arc actions carry a depth k and a label.

    k counts from the right end of lambda1: k=1 addresses the classic left
    focus word.
    """

    kind: str
    k: int | None = None
    label: str | None = None

    def __post_init__(self):
        if self.kind not in TRANSITION_KINDS:
            raise ValueError(f"unknown transition kind {self.kind!r}")
        if self.is_arc:
            if self.k is None or self.k < 1:
                raise ValueError(f"{self.kind} needs a depth k >= 1, got {self.k}")
            if self.label is None:
                raise ValueError(f"{self.kind} needs a label")
        elif self.k is not None or self.label is not None:
            raise ValueError(f"{self.kind} takes neither k nor label")

    @property
    def is_arc(self):
        return self.kind in (LEFT_ARC, RIGHT_ARC)

    @classmethod
    def shift(cls):
        return cls(SHIFT)

    @classmethod
    def no_arc(cls):
        return cls(NO_ARC)

    @classmethod
    def left_arc(cls, k, label=""):
        return cls(LEFT_ARC, k, label)

    @classmethod
    def right_arc(cls, k, label=""):
        return cls(RIGHT_ARC, k, label)


@dataclass(eq=True)
class Configuration:
    """Parser state: two lists of processed words, the buffer, and the arcs.

    The rightmost word of lambda1 and the first buffer word form the focus
    pair of the classic transition set.
    """

    lambda1: list
    lambda2: list
    buffer: list
    arcs: ArcSet

    def clone(self):
        return Configuration(
            list(self.lambda1), list(self.lambda2), list(self.buffer), self.arcs.copy()
        )


def initial_configuration(n):
    """The start state for a sentence of length n: everything in the buffer."""
    if n < 0:
        raise ValueError(f"sentence length must be >= 0, got {n}")
    return Configuration([], [], list(range(1, n + 1)), ArcSet())


def is_terminal(c):
    """A configuration is terminal once the buffer is exhausted."""
    return not c.buffer
