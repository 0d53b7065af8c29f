"""The two transition systems over shared Covington-style configurations.

The classic system ("covington") builds arcs only between the focus pair
and uses NoArc to skip a candidate. The non-local system ("nl-covington")
parameterizes the arc transitions with a depth k so they can reach any word
of lambda1 directly, which makes NoArc redundant and is therefore dropped.
The classic system is implemented as the non-local one with k pinned to 1
plus NoArc, so the two share a single code path.
"""

from __future__ import annotations

import re

from .core import (
    LEFT_ARC,
    NO_ARC,
    RIGHT_ARC,
    SHIFT,
    Arc,
    Transition,
    initial_configuration,
    is_terminal,
)

COVINGTON = "covington"
NL_COVINGTON = "nl-covington"
SYSTEM_NAMES = (COVINGTON, NL_COVINGTON)


class IllegalTransition(ValueError):
    """A transition whose preconditions do not hold in its configuration."""

    def __init__(self, reason, transition, configuration, index=None):
        super().__init__(reason)
        self.reason = reason
        self.transition = transition
        self.configuration = configuration
        self.index = index

    def __str__(self):
        at = f" at index {self.index}" if self.index is not None else ""
        return f"illegal transition {self.transition}{at}: {self.reason}"


class TransitionSystem:
    """Enumerates, validates and applies transitions for one system."""

    def __init__(self, name, label_set):
        if name not in SYSTEM_NAMES:
            raise ValueError(f"unknown system {name!r}, expected one of {SYSTEM_NAMES}")
        labels = tuple(label_set)
        if not labels:
            raise ValueError("label_set must not be empty")
        if len(set(labels)) != len(labels):
            raise ValueError("label_set contains duplicates")
        self.name = name
        self.label_set = labels
        self._labels = frozenset(labels)

    def __repr__(self):
        return f"TransitionSystem({self.name!r}, {len(self.label_set)} labels)"

    @property
    def non_local(self):
        return self.name == NL_COVINGTON

    def legal_candidates(self, c):
        """Legal unlabeled skeletons as (kind, k) pairs, in canonical order.

        Canonical order is Shift, NoArc, then LeftArc by ascending k, then
        RightArc by ascending k; k is None for Shift and NoArc. Greedy
        tie-breaking relies on this order.
        """
        if is_terminal(c):
            raise ValueError("terminal configuration admits no transitions")
        out = [(SHIFT, None)]
        if not self.non_local and c.lambda1:
            out.append((NO_ARC, None))
        max_k = len(c.lambda1) if self.non_local else min(1, len(c.lambda1))
        arcs = c.arcs
        j = c.buffer[0]
        for k in range(1, max_k + 1):
            i = c.lambda1[-k]
            if not arcs.has_head(i) and not arcs.has_path(i, j):
                out.append((LEFT_ARC, k))
        if not arcs.has_head(j):
            for k in range(1, max_k + 1):
                if not arcs.has_path(j, c.lambda1[-k]):
                    out.append((RIGHT_ARC, k))
        return out

    def legal_transitions(self, c):
        """All legal transitions, with arc skeletons expanded over the labels."""
        out = []
        for kind, k in self.legal_candidates(c):
            if k is None:
                out.append(Transition(kind))
            else:
                out.extend(Transition(kind, k, label) for label in self.label_set)
        return out

    def is_legal(self, c, t):
        return self._illegal_reason(c, t) is None

    def _illegal_reason(self, c, t):
        if is_terminal(c):
            return "configuration is terminal"
        if t.kind == SHIFT:
            return None
        if t.kind == NO_ARC:
            if self.non_local:
                return "NoArc is not part of the non-local system"
            if not c.lambda1:
                return "lambda1 is empty"
            return None
        if t.label not in self._labels:
            return f"unknown label {t.label!r}"
        if not self.non_local and t.k != 1:
            return f"arc depth is fixed to 1 in the {self.name} system"
        if t.k > len(c.lambda1):
            return f"k={t.k} exceeds |lambda1|={len(c.lambda1)}"
        i = c.lambda1[-t.k]
        j = c.buffer[0]
        if t.kind == LEFT_ARC:
            if c.arcs.has_head(i):
                return f"node {i} already has a head"
            if c.arcs.has_path(i, j):
                return f"arc {j}->{i} would close a cycle"
        else:
            if c.arcs.has_head(j):
                return f"node {j} already has a head"
            if c.arcs.has_path(j, i):
                return f"arc {i}->{j} would close a cycle"
        return None

    def _require_legal(self, c, t):
        reason = self._illegal_reason(c, t)
        if reason is not None:
            raise IllegalTransition(reason, t, c)

    @staticmethod
    def _apply_unchecked(c, t):
        # Mutates c; the caller has already established legality.
        if t.kind == SHIFT:
            j = c.buffer.pop(0)
            c.lambda1 += c.lambda2
            c.lambda1.append(j)
            c.lambda2 = []
        elif t.kind == NO_ARC:
            c.lambda2.insert(0, c.lambda1.pop())
        else:
            i = c.lambda1[-t.k]
            j = c.buffer[0]
            if t.kind == LEFT_ARC:
                c.arcs.add(Arc(j, i, t.label))
            else:
                c.arcs.add(Arc(i, j, t.label))
            moved = c.lambda1[-t.k:]
            del c.lambda1[-t.k:]
            c.lambda2[:0] = moved

    def apply(self, c, t):
        """The configuration after t. The input configuration is not touched."""
        self._require_legal(c, t)
        out = c.clone()
        self._apply_unchecked(out, t)
        return out

    def run_sequence(self, n, seq):
        """Fold apply over seq from the initial configuration for length n.

        Raises IllegalTransition, carrying the offending index and a snapshot
        of the configuration, as soon as a transition is not legal.
        """
        c = initial_configuration(n)
        for index, t in enumerate(seq):
            reason = self._illegal_reason(c, t)
            if reason is not None:
                raise IllegalTransition(reason, t, c.clone(), index=index)
            self._apply_unchecked(c, t)
        return c


def format_transition(t, system=None):
    """Render a transition as SH / NA / LA(k):label text.

    Classic traces drop the "(1)" depth since k never varies there; pass the
    system (or its name) to get that behavior. Empty labels are omitted
    together with their colon.
    """
    if not t.is_arc:
        return t.kind
    name = getattr(system, "name", system)
    out = t.kind if name == COVINGTON else f"{t.kind}({t.k})"
    if t.label:
        out += f":{t.label}"
    return out


_TRANSITION_RE = re.compile(r"^(SH|NA|LA|RA)(?:\((\d+)\))?(?::(.*))?$", re.DOTALL)


def parse_transition(text):
    """Inverse of format_transition; a missing depth is read as k=1."""
    m = _TRANSITION_RE.match(text.strip())
    if m is None:
        raise ValueError(f"cannot parse transition {text!r}")
    kind, k, label = m.groups()
    if kind in (SHIFT, NO_ARC):
        if k is not None or label is not None:
            raise ValueError(f"{kind} takes neither k nor label: {text!r}")
        return Transition(kind)
    return Transition(kind, int(k) if k else 1, label if label is not None else "")
