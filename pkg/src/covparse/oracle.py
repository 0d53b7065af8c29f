"""Static oracles, canonical trace generation, and the sequence mapping
between the classic and the non-local system.

The non-local oracle always builds the shortest pending gold arc that
touches the first buffer word, and Shifts when no such arc is left. The
classic oracle is its unrolling: a depth-k arc becomes k-1 NoArc steps
followed by the depth-1 arc, so the two oracles are mutually checkable via
expand_to_covington.
"""

from __future__ import annotations

import heapq
import random
from bisect import bisect_left
from collections import deque

from .core import (
    DEFAULT_ROOT_LABEL,
    LEFT_ARC,
    NO_ARC,
    RIGHT_ARC,
    ROOT,
    SHIFT,
    Arc,
    Transition,
    initial_configuration,
    is_terminal,
)
from .systems import NL_COVINGTON, format_transition


class GoldTree:
    """A gold dependency tree: every node 1..n has exactly one head in 0..n,
    and every node reaches the root."""

    def __init__(self, n, head):
        if n < 0:
            raise ValueError(f"length must be >= 0, got {n}")
        if set(head) != set(range(1, n + 1)):
            raise ValueError("head map must cover exactly the nodes 1..n")
        self.n = n
        self._head = {v: head[v] for v in range(1, n + 1)}
        self._deps = {v: [] for v in range(0, n + 1)}
        for v in range(1, n + 1):
            h, _label = self._head[v]
            if not 0 <= h <= n:
                raise ValueError(f"node {v}: head {h} is out of range")
            if h == v:
                raise ValueError(f"node {v} cannot be its own head")
            self._deps[h].append(v)
        for v in range(1, n + 1):
            seen = set()
            node = v
            while node != ROOT:
                if node in seen:
                    raise ValueError(f"gold heads contain a cycle through node {node}")
                seen.add(node)
                node = self._head[node][0]

    @classmethod
    def from_sentence(cls, sentence):
        head = {}
        for tok in sentence:
            if tok.gold_head is None:
                raise ValueError(f"token {tok.id} has no gold head")
            head[tok.id] = (tok.gold_head, tok.gold_label or "")
        return cls(len(sentence), head)

    def head(self, v):
        return self._head[v][0]

    def label(self, v):
        return self._head[v][1]

    def dependents(self, v):
        return self._deps[v]

    def arcs(self):
        """All gold arcs, root attachments included."""
        return {Arc(h, v, label) for v, (h, label) in self._head.items()}

    def non_root_arcs(self):
        return {Arc(h, v, label) for v, (h, label) in self._head.items() if h != ROOT}

    def __eq__(self, other):
        return isinstance(other, GoldTree) and self._head == other._head

    def __repr__(self):
        return f"GoldTree(n={self.n})"


def _depth_of(lam1, node):
    # lambda1 is strictly increasing, so the depth from its right end can be
    # found by bisection. None when the node is not in lambda1.
    idx = bisect_left(lam1, node)
    if idx < len(lam1) and lam1[idx] == node:
        return len(lam1) - idx
    return None


def _require_consistent(c, gold):
    for arc in c.arcs:
        if (
            arc.head == ROOT
            or gold.head(arc.dependent) != arc.head
            or gold.label(arc.dependent) != arc.label
        ):
            raise ValueError(f"configuration arc {arc} is not a gold arc")


def _nl_step(c, gold):
    if is_terminal(c):
        raise ValueError("terminal configuration has no oracle transition")
    j = c.buffer[0]
    lam1 = c.lambda1
    best_dist = None
    best = None
    h = gold.head(j)
    if h != ROOT and not c.arcs.has_head(j):
        k = _depth_of(lam1, h)
        if k is not None:
            best_dist = j - h
            best = (RIGHT_ARC, k, gold.label(j))
    for d in gold.dependents(j):
        # Equal distances cannot occur: the common endpoint would have to be
        # both head and dependent of j, which a tree rules out.
        if d > j or c.arcs.has_head(d):
            continue
        k = _depth_of(lam1, d)
        if k is None:
            continue
        dist = j - d
        if best_dist is None or dist < best_dist:
            best_dist = dist
            best = (LEFT_ARC, k, gold.label(d))
    if best is None:
        return Transition(SHIFT)
    return Transition(*best)


def _cov_step(c, gold):
    t = _nl_step(c, gold)
    if t.is_arc and t.k > 1:
        return Transition(NO_ARC)
    return t


def nl_oracle_step(c, gold):
    """The canonical next non-local transition for c against gold.

    Builds the shortest pending gold arc whose far endpoint lies in lambda1
    and whose near endpoint is the first buffer word; Shift when no such arc
    remains. Root attachments are never built by the oracle.
    """
    _require_consistent(c, gold)
    return _nl_step(c, gold)


def cov_oracle_step(c, gold):
    """The canonical next classic transition for c against gold.

    Equals the non-local choice unrolled: the focus-pair arc when that gold
    arc is pending, NoArc while a pending gold arc sits deeper in lambda1,
    Shift otherwise.
    """
    _require_consistent(c, gold)
    return _cov_step(c, gold)


def oracle_step(system, c, gold):
    """Dispatch to the static oracle matching the system."""
    if system.name == NL_COVINGTON:
        return nl_oracle_step(c, gold)
    return cov_oracle_step(c, gold)


def oracle_sequence(system, gold):
    """The full canonical transition sequence for gold under the system."""
    step = _nl_step if system.name == NL_COVINGTON else _cov_step
    c = initial_configuration(gold.n)
    seq = []
    while not is_terminal(c):
        t = step(c, gold)
        # Oracle output is legal by construction; the consistency check is
        # redundant along this path since only gold arcs are ever added.
        system._apply_unchecked(c, t)
        seq.append(t)
    return seq


def expand_to_covington(seq):
    """Unroll a non-local sequence: each depth-k arc becomes k-1 NoArc steps
    plus the same arc at depth 1; Shift passes through unchanged."""
    out = []
    for t in seq:
        if t.kind == NO_ARC:
            raise ValueError("input already contains NoArc; expected a non-local sequence")
        if t.is_arc:
            out.extend(Transition(NO_ARC) for _ in range(t.k - 1))
            out.append(Transition(t.kind, 1, t.label))
        else:
            out.append(t)
    return out


def random_gold_tree(n, seed, labels=("dep",), root_label=DEFAULT_ROOT_LABEL):
    """A uniformly random gold tree over nodes 0..n, deterministic per seed.

    Sampling decodes a random Prufer string, which is uniform over the
    (n+1)^(n-1) labeled trees rooted at node 0. Arc labels are drawn from
    `labels`; root attachments get `root_label`.
    """
    if n < 1:
        raise ValueError(f"need at least one node, got n={n}")
    rng = random.Random(seed)
    parent = _random_tree_parents(n, rng)
    labels = tuple(labels)
    head = {}
    for v in range(1, n + 1):
        h = parent[v]
        head[v] = (h, root_label if h == ROOT else rng.choice(labels))
    return GoldTree(n, head)


def _random_tree_parents(n, rng):
    m = n + 1
    if m == 2:
        edges = [(0, 1)]
    else:
        seq = [rng.randrange(m) for _ in range(m - 2)]
        edges = _prufer_edges(seq, m)
    adjacent = {v: [] for v in range(m)}
    for a, b in edges:
        adjacent[a].append(b)
        adjacent[b].append(a)
    parent = {}
    queue = deque([ROOT])
    seen = {ROOT}
    while queue:
        node = queue.popleft()
        for nxt in adjacent[node]:
            if nxt not in seen:
                seen.add(nxt)
                parent[nxt] = node
                queue.append(nxt)
    return parent


def _prufer_edges(seq, m):
    degree = [1] * m
    for v in seq:
        degree[v] += 1
    leaves = [v for v in range(m) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def oracle_trace(system, gold):
    """Trace rows for the canonical sequence, one row per transition.

    Each row is (step, transition, lambda1, lambda2, buffer, new_arc) with
    the lists rendered after the transition applied; new_arc is "h->d" for
    arc transitions and empty otherwise.
    """
    step_fn = _nl_step if system.name == NL_COVINGTON else _cov_step
    c = initial_configuration(gold.n)
    rows = []
    num = 0
    while not is_terminal(c):
        t = step_fn(c, gold)
        arc_txt = ""
        if t.is_arc:
            i = c.lambda1[-t.k]
            j = c.buffer[0]
            h, d = (j, i) if t.kind == LEFT_ARC else (i, j)
            arc_txt = f"{h}->{d}"
        system._apply_unchecked(c, t)
        num += 1
        rows.append(
            (
                num,
                format_transition(t, system),
                _format_nodes(c.lambda1),
                _format_nodes(c.lambda2),
                _format_nodes(c.buffer),
                arc_txt,
            )
        )
    return rows


def trace_lines(system, gold):
    """oracle_trace rendered as tab-separated lines."""
    return ["\t".join(str(cell) for cell in row) for row in oracle_trace(system, gold)]


def _format_nodes(nodes):
    return "[" + ",".join(map(str, nodes)) + "]"
