"""Acceptance suite. Each test checks one criterion at its stated tolerance
and prints a single PASS/FAIL line (run with -s to see them live)."""

import pytest

from covparse import (
    COVINGTON,
    NL_COVINGTON,
    GoldTree,
    Model,
    TransitionSystem,
    attach_root,
    corpus_uas,
    expand_to_covington,
    is_projective,
    oracle_sequence,
    random_gold_tree,
    read_bundled,
    trace_lines,
    train,
    transition_stats,
)
from conftest import EXAMPLE_HEADS, all_gold_trees, random_legal_walk, walk_rng

from test_cli import COV_TRACE, NL_TRACE


def report(name, ok):
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"acceptance criterion failed: {name}"


@pytest.fixture(scope="module")
def systems():
    labels = ["dep"]
    return TransitionSystem(COVINGTON, labels), TransitionSystem(NL_COVINGTON, labels)


@pytest.fixture(scope="module")
def tree_pool():
    """Exhaustive trees for n <= 5 plus 1000 random trees per larger size."""
    pool = []
    for n in range(1, 6):
        trees = all_gold_trees(n)
        assert len(trees) == (n + 1) ** (n - 1)  # 1296 trees at n = 5
        pool.extend(trees)
    for n in (10, 20, 40):
        pool.extend(random_gold_tree(n, seed) for seed in range(1000))
    return pool


def roundtrips(system, tree):
    seq = oracle_sequence(system, tree)
    final = system.run_sequence(tree.n, seq)
    return attach_root(final.arcs, tree.n, "ROOT").arcs() == tree.arcs()


def test_golden_traces(systems):
    cov, nl = systems
    tree = GoldTree(5, EXAMPLE_HEADS)
    unlabeled_cov = TransitionSystem(COVINGTON, ("",))
    unlabeled_nl = TransitionSystem(NL_COVINGTON, ("",))
    got_cov = "\n".join(trace_lines(unlabeled_cov, tree)) + "\n\n"
    got_nl = "\n".join(trace_lines(unlabeled_nl, tree)) + "\n\n"
    ok = (
        got_cov == COV_TRACE
        and got_nl == NL_TRACE
        and len(trace_lines(unlabeled_cov, tree)) == 12
        and len(trace_lines(unlabeled_nl, tree)) == 9
    )
    report("golden traces (12 and 9 transitions, exact rows)", ok)


def test_oracle_round_trip(systems, tree_pool):
    cov, nl = systems
    failures = sum(
        not (roundtrips(cov, tree) and roundtrips(nl, tree)) for tree in tree_pool
    )
    report(f"oracle round-trip on {len(tree_pool)} trees (zero failures)",
           failures == 0)


def test_mapping_equivalence(systems, tree_pool):
    cov, nl = systems
    failures = 0
    for tree in tree_pool:
        nl_seq = oracle_sequence(nl, tree)
        cov_seq = oracle_sequence(cov, tree)
        if expand_to_covington(nl_seq) != cov_seq:
            failures += 1
            continue
        if (
            nl.run_sequence(tree.n, nl_seq).arcs
            != cov.run_sequence(tree.n, cov_seq).arcs
        ):
            failures += 1
    # the mapping must also hold for arbitrary legal sequences, not only
    # the oracle ones
    for seed in range(1000):
        n = 10
        seq, final = random_legal_walk(nl, n, walk_rng(seed))
        expanded = expand_to_covington(seq)
        if cov.run_sequence(n, expanded).arcs != final.arcs:
            failures += 1
    report("mapping equivalence (oracle pool + 1000 random legal sequences)",
           failures == 0)


def test_length_laws(systems, tree_pool):
    cov, nl = systems
    failures = 0
    for tree in tree_pool:
        nl_seq = oracle_sequence(nl, tree)
        cov_seq = oracle_sequence(cov, tree)
        if len(nl_seq) != tree.n + len(tree.non_root_arcs()):
            failures += 1
        if len(cov_seq) - len(nl_seq) != sum(t.k - 1 for t in nl_seq if t.is_arc):
            failures += 1
    report("length laws (n + arcs for the non-local system; gap = sum of k-1)",
           failures == 0)


def test_sequence_reduction_on_bundled_corpus():
    doc = read_bundled("zipf200.conllx")
    trees = [GoldTree.from_sentence(s) for s in doc.sentences]
    stats = transition_stats(trees)
    ok = (
        len(trees) == 200
        and stats.avg_nl < stats.avg_cov
        and all(nl_len <= cov_len for cov_len, nl_len in stats.per_sentence)
        and 0.20 <= stats.reduction <= 0.60
    )
    print(
        f"  bundled corpus: avg_cov={stats.avg_cov:.2f} avg_nl={stats.avg_nl:.2f} "
        f"reduction={stats.reduction * 100:.1f}%"
    )
    report("sequence reduction on the bundled corpus (20..60 percent)", ok)


def star_tree(n):
    heads = {1: (0, "ROOT")}
    heads.update({v: (1, "dep") for v in range(2, n + 1)})
    return GoldTree(n, heads)


def test_worst_case_star_tree(systems):
    cov, nl = systems
    lengths = {}
    for n in (50, 100):
        lengths[n] = (
            len(oracle_sequence(cov, star_tree(n))),
            len(oracle_sequence(nl, star_tree(n))),
        )
    cov50, nl50 = lengths[50]
    cov100, nl100 = lengths[100]
    ratio = cov100 / cov50
    ok = (
        cov50 == 50 + 50 * 49 // 2
        and cov100 == 100 + 100 * 99 // 2
        and 3.5 <= ratio <= 4.0
        and nl50 == 2 * 50 - 1
        and nl100 == 2 * 100 - 1
    )
    print(f"  star tree: cov(50)={cov50} cov(100)={cov100} ratio={ratio:.2f} "
          f"nl(50)={nl50} nl(100)={nl100}")
    report("worst-case star tree (quadratic classic, 2n-1 non-local)", ok)


def test_learning_sanity():
    train_doc = read_bundled("toy_train.conllx")
    held_doc = read_bundled("toy_heldout.conllx")
    train_corpus = [(s, GoldTree.from_sentence(s)) for s in train_doc.sentences]
    held_corpus = [(s, GoldTree.from_sentence(s)) for s in held_doc.sentences]
    labels = sorted(
        {g.label(v) for _, g in train_corpus for v in range(1, g.n + 1) if g.head(v) != 0}
    )
    system = TransitionSystem(NL_COVINGTON, labels)
    model = train(train_corpus, system, epochs=10, seed=1)
    train_uas = corpus_uas(model, system, train_corpus)
    held_uas = corpus_uas(model, system, held_corpus)
    baseline = corpus_uas(Model(system.name, system.label_set), system, held_corpus)
    print(
        f"  learning: 50 train sentences, train UAS={train_uas * 100:.2f}, "
        f"held-out {held_uas * 100:.2f} vs untrained {baseline * 100:.2f}"
    )
    ok = len(train_corpus) == 50 and len(held_corpus) == 10
    ok = ok and train_uas >= 0.95 and held_uas > baseline
    report("learning sanity (train UAS >= 95, positive held-out gain)", ok)


NONPROJECTIVE_TREES = [
    # two crossing pairs of arcs around a central root
    {1: (3, "a"), 2: (4, "a"), 3: (0, "ROOT"), 4: (3, "a")},
    # crossing induced between 3->1 and 2->4
    {1: (3, "a"), 2: (0, "ROOT"), 3: (2, "a"), 4: (2, "a")},
    # interleaved chains over six nodes
    {1: (4, "a"), 2: (5, "a"), 3: (6, "a"), 4: (0, "ROOT"), 5: (4, "a"), 6: (5, "a")},
    # crossing that involves the implicit root arc
    {1: (3, "a"), 2: (0, "ROOT"), 3: (2, "a")},
    # long hub arcs over gaps plus a nested crossing
    {1: (0, "ROOT"), 2: (5, "a"), 3: (1, "a"), 4: (6, "a"), 5: (3, "a"), 6: (3, "a"), 7: (1, "a")},
]


def test_non_projective_round_trip(systems):
    cov, nl = systems
    failures = 0
    for heads in NONPROJECTIVE_TREES:
        tree = GoldTree(len(heads), heads)
        if is_projective(tree):
            failures += 1
        labels = sorted({lab for _, lab in heads.values() if lab != "ROOT"})
        cov_t = TransitionSystem(COVINGTON, labels)
        nl_t = TransitionSystem(NL_COVINGTON, labels)
        if not (roundtrips(cov_t, tree) and roundtrips(nl_t, tree)):
            failures += 1
    report(
        f"non-projective reconstruction on {len(NONPROJECTIVE_TREES)} crossing trees",
        failures == 0,
    )
