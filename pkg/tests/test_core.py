import itertools

import pytest

from covparse import (
    Arc,
    ArcSet,
    Configuration,
    Sentence,
    Token,
    Transition,
    attach_root,
    initial_configuration,
    is_terminal,
    would_create_cycle,
    would_violate_single_head,
)


def arcset(*pairs):
    return ArcSet(Arc(h, d) for h, d in pairs)


class TestInitialConfiguration:
    def test_five_tokens(self):
        c = initial_configuration(5)
        assert c.lambda1 == []
        assert c.lambda2 == []
        assert c.buffer == [1, 2, 3, 4, 5]
        assert len(c.arcs) == 0

    def test_empty_sentence_is_already_terminal(self):
        c = initial_configuration(0)
        assert c.buffer == []
        assert is_terminal(c)

    def test_single_token(self):
        assert initial_configuration(1).buffer == [1]

    def test_negative_length_rejected(self):
        with pytest.raises(ValueError):
            initial_configuration(-1)


class TestIsTerminal:
    def test_empty_buffer(self):
        c = Configuration([1, 2, 3, 4, 5], [], [], ArcSet())
        assert is_terminal(c)

    def test_initial_is_not_terminal(self):
        assert not is_terminal(initial_configuration(5))

    def test_single_buffered_word(self):
        assert not is_terminal(Configuration([], [], [1], ArcSet()))


class TestSingleHead:
    def test_existing_head_detected(self):
        assert would_violate_single_head(arcset((1, 2)), 2)

    def test_other_node_free(self):
        assert not would_violate_single_head(arcset((1, 2)), 3)

    def test_empty_arcs(self):
        assert not would_violate_single_head(ArcSet(), 1)


def closure_would_cycle(arcs, head, dependent):
    """Reference via Floyd-Warshall transitive closure over the arc edges."""
    nodes = {head, dependent}
    for a in arcs:
        nodes.update((a.head, a.dependent))
    nodes = sorted(nodes)
    idx = {v: i for i, v in enumerate(nodes)}
    m = len(nodes)
    reach = [[False] * m for _ in range(m)]
    for a in arcs:
        reach[idx[a.head]][idx[a.dependent]] = True
    for k in range(m):
        for i in range(m):
            if reach[i][k]:
                for j in range(m):
                    if reach[k][j]:
                        reach[i][j] = True
    return reach[idx[dependent]][idx[head]]


class TestWouldCreateCycle:
    def test_chain_closure(self):
        arcs = arcset((1, 2), (2, 3))
        assert would_create_cycle(arcs, 3, 1)
        assert closure_would_cycle(arcs, 3, 1)

    def test_forward_extension_is_fine(self):
        arcs = arcset((1, 2), (2, 3))
        assert not would_create_cycle(arcs, 1, 3)

    def test_empty_arcs(self):
        assert not would_create_cycle(ArcSet(), 4, 7)

    def test_agrees_with_transitive_closure_on_all_small_parent_maps(self):
        # Every single-head acyclic arc set over up to 6 nodes, compared
        # against an independent closure computation on every head choice.
        for n in range(1, 7):
            choices = [[None] + [h for h in range(1, n + 1) if h != v]
                       for v in range(1, n + 1)]
            for parents in itertools.product(*choices):
                try:
                    arcs = ArcSet(
                        Arc(h, v)
                        for v, h in enumerate(parents, start=1)
                        if h is not None
                    )
                except ValueError:
                    continue  # cyclic assignment, not constructible
                for head in range(1, n + 1):
                    for dep in range(1, n + 1):
                        if head == dep:
                            continue
                        assert would_create_cycle(arcs, head, dep) == \
                            closure_would_cycle(arcs, head, dep)


class TestAttachRoot:
    def test_example_tree_gets_single_root_arc(self):
        arcs = arcset((1, 2), (1, 3), (5, 4), (1, 5))
        rooted = attach_root(arcs, 5, "ROOT")
        assert rooted.arcs() - arcs.arcs() == {Arc(0, 1, "ROOT")}

    def test_all_headless(self):
        rooted = attach_root(ArcSet(), 2, "r")
        assert rooted.arcs() == {Arc(0, 1, "r"), Arc(0, 2, "r")}

    def test_fully_covered_unchanged(self):
        arcs = arcset((1, 2), (0, 1))
        assert attach_root(arcs, 2).arcs() == arcs.arcs()

    def test_input_not_mutated(self):
        arcs = ArcSet()
        attach_root(arcs, 3)
        assert len(arcs) == 0


class TestArcSetInvariants:
    def test_second_head_rejected(self):
        arcs = arcset((1, 2))
        with pytest.raises(ValueError, match="already has a head"):
            arcs.add(Arc(3, 2))

    def test_cycle_rejected(self):
        arcs = arcset((1, 2), (2, 3))
        with pytest.raises(ValueError, match="cycle"):
            arcs.add(Arc(3, 1))

    def test_copy_is_independent(self):
        arcs = arcset((1, 2))
        copy = arcs.copy()
        copy.add(Arc(2, 3))
        assert len(arcs) == 1 and len(copy) == 2

    def test_head_of(self):
        arcs = ArcSet([Arc(1, 2, "x")])
        assert arcs.head_of(2) == (1, "x")
        assert arcs.head_of(1) is None


class TestTokenAndSentence:
    def test_token_position_must_be_positive(self):
        with pytest.raises(ValueError):
            Token(0, "a")

    def test_token_self_head_rejected(self):
        with pytest.raises(ValueError):
            Token(3, "a", gold_head=3)

    def test_negative_head_rejected(self):
        with pytest.raises(ValueError):
            Token(1, "a", gold_head=-1)

    def test_sentence_ids_must_be_contiguous(self):
        with pytest.raises(ValueError, match="contiguous|1..n"):
            Sentence([Token(1, "a"), Token(3, "b")])

    def test_sentence_head_cycle_rejected(self):
        with pytest.raises(ValueError, match="cycle"):
            Sentence([Token(1, "a", gold_head=2), Token(2, "b", gold_head=1)])

    def test_sentence_head_out_of_range_rejected(self):
        with pytest.raises(ValueError, match="outside"):
            Sentence([Token(1, "a", gold_head=5)])

    def test_partial_heads_allowed(self):
        s = Sentence([Token(1, "a", gold_head=2), Token(2, "b")])
        assert len(s) == 2

    def test_gold_arcset_includes_root_arcs(self):
        s = Sentence([
            Token(1, "a", gold_head=2, gold_label="det"),
            Token(2, "b", gold_head=0, gold_label="root"),
        ])
        assert s.gold_arcset().arcs() == {Arc(2, 1, "det"), Arc(0, 2, "root")}


class TestArc:
    def test_self_loop_rejected(self):
        with pytest.raises(ValueError):
            Arc(2, 2)

    def test_root_cannot_be_dependent(self):
        with pytest.raises(ValueError):
            Arc(1, 0)


class TestTransitionValue:
    def test_arc_needs_k_and_label(self):
        with pytest.raises(ValueError):
            Transition("LA")
        with pytest.raises(ValueError):
            Transition("RA", k=2)
        with pytest.raises(ValueError):
            Transition("LA", k=0, label="x")

    def test_shift_takes_no_arguments(self):
        with pytest.raises(ValueError):
            Transition("SH", k=1)
        with pytest.raises(ValueError):
            Transition("NA", label="x")

    def test_factories(self):
        assert Transition.shift().kind == "SH"
        assert Transition.left_arc(2, "det") == Transition("LA", 2, "det")
