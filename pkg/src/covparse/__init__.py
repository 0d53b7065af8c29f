"""Non-projective transition-based dependency parsing toolkit.

Two transition systems over the same configurations: the classic Covington
one, which builds arcs only between the focus pair and skips with NoArc,
and a non-local variant whose arc transitions reach any word of the left
context directly. Ships static oracles for both, the sequence mapping
between them, an averaged-perceptron greedy parser, CoNLL-X/U reading and
writing, and attachment-score evaluation.
"""

from .conll import (
    ConllError,
    CorpusDocument,
    read_bundled,
    read_conllx,
    read_conllx_file,
    write_conllx,
)
from .core import (
    DEFAULT_ROOT_LABEL,
    LEFT_ARC,
    NO_ARC,
    RIGHT_ARC,
    ROOT,
    SHIFT,
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
from .evaluate import (
    EXCLUDE,
    INCLUDE,
    ScoreReport,
    TransitionStats,
    is_projective,
    is_punctuation,
    score,
    transition_stats,
)
from .model import (
    DEFAULT_HASH_SEED,
    Model,
    corpus_uas,
    featurize,
    greedy_parse,
    train,
)
from .oracle import (
    GoldTree,
    cov_oracle_step,
    expand_to_covington,
    nl_oracle_step,
    oracle_sequence,
    oracle_step,
    oracle_trace,
    random_gold_tree,
    trace_lines,
)
from .systems import (
    COVINGTON,
    NL_COVINGTON,
    SYSTEM_NAMES,
    IllegalTransition,
    TransitionSystem,
    format_transition,
    parse_transition,
)

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "ArcSet",
    "COVINGTON",
    "Configuration",
    "ConllError",
    "CorpusDocument",
    "DEFAULT_HASH_SEED",
    "DEFAULT_ROOT_LABEL",
    "EXCLUDE",
    "GoldTree",
    "INCLUDE",
    "IllegalTransition",
    "LEFT_ARC",
    "Model",
    "NL_COVINGTON",
    "NO_ARC",
    "RIGHT_ARC",
    "ROOT",
    "SHIFT",
    "ScoreReport",
    "Sentence",
    "SYSTEM_NAMES",
    "Token",
    "Transition",
    "TransitionStats",
    "TransitionSystem",
    "attach_root",
    "corpus_uas",
    "cov_oracle_step",
    "expand_to_covington",
    "featurize",
    "format_transition",
    "greedy_parse",
    "initial_configuration",
    "is_projective",
    "is_punctuation",
    "is_terminal",
    "nl_oracle_step",
    "oracle_sequence",
    "oracle_step",
    "oracle_trace",
    "parse_transition",
    "random_gold_tree",
    "read_bundled",
    "read_conllx",
    "read_conllx_file",
    "score",
    "trace_lines",
    "train",
    "transition_stats",
    "would_create_cycle",
    "would_violate_single_head",
    "write_conllx",
]
