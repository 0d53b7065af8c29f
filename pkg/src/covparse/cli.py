"""Command line front end: train, parse, eval, stats, oracle-trace.

Data goes to standard output, diagnostics to standard error. Exit codes:
0 success, 1 internal error, 2 usage or data error.
"""

from __future__ import annotations

import argparse
import os
import sys
import traceback

from .conll import ConllError, read_conllx, write_conllx
from .core import DEFAULT_ROOT_LABEL, ROOT
from .evaluate import EXCLUDE, INCLUDE, score, transition_stats
from .model import Model, corpus_uas, greedy_parse, train
from .oracle import GoldTree, trace_lines
from .systems import NL_COVINGTON, SYSTEM_NAMES, TransitionSystem

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_DATA = 2


def _log(message):
    print(message, file=sys.stderr)


def _read_doc(path, args):
    with open(path, "r", encoding="utf-8") as stream:
        return read_conllx(
            stream,
            strict=not args.lenient,
            source_name=os.path.basename(path),
            on_skip=_log,
        )


def _gold_trees(doc):
    trees = []
    for idx, sentence in enumerate(doc.sentences):
        try:
            trees.append(GoldTree.from_sentence(sentence))
        except ValueError as exc:
            raise ValueError(f"{doc.source_name}: sentence {idx + 1}: {exc}") from exc
    return trees


def _corpus_labels(trees):
    labels = sorted(
        {t.label(v) for t in trees for v in range(1, t.n + 1) if t.head(v) != ROOT}
    )
    return labels or ["dep"]


def cmd_train(args):
    doc = _read_doc(args.train, args)
    if not doc.sentences:
        raise ValueError(f"{args.train}: no sentences to train on")
    trees = _gold_trees(doc)
    corpus = list(zip(doc.sentences, trees))
    system = TransitionSystem(args.system, _corpus_labels(trees))
    model = train(
        corpus,
        system,
        args.epochs,
        args.seed,
        on_epoch=lambda epoch, mistakes: _log(f"epoch {epoch}: {mistakes} oracle mismatches"),
    )
    uas = corpus_uas(model, system, corpus, args.root_label)
    _log(f"training UAS: {uas * 100:.2f}")
    with open(args.model, "w", encoding="utf-8") as out:
        model.save(out)
    return EXIT_OK


def cmd_parse(args):
    with open(args.model, "r", encoding="utf-8") as stream:
        model = Model.load(stream)
    if args.system is not None and args.system != model.system_name:
        raise ValueError(
            f"model {args.model} was trained for {model.system_name}, "
            f"but --system says {args.system}"
        )
    system = TransitionSystem(model.system_name, model.label_set)
    doc = _read_doc(args.input, args)
    predicted = [greedy_parse(model, system, s, args.root_label) for s in doc.sentences]
    write_conllx(doc, predicted, sys.stdout)
    return EXIT_OK


def cmd_eval(args):
    gold = _read_doc(args.gold, args)
    pred_doc = _read_doc(args.predicted, args)
    predicted = [s.gold_arcset() for s in pred_doc.sentences]
    policy = EXCLUDE if args.ptsd_compat else args.punct
    punct_pos = set(args.punct_pos.split(",")) if args.punct_pos else None
    report = score(gold, predicted, policy, punct_pos)
    print(f"UAS\t{report.uas * 100:.2f}")
    print(f"LAS\t{report.las * 100:.2f}")
    _log(f"scored {report.tokens_scored} tokens, excluded {report.tokens_excluded}")
    return EXIT_OK


def cmd_stats(args):
    print("dataset\tsentences\tavg_cov\tavg_nl\treduction_pct")
    for path in args.inputs:
        doc = _read_doc(path, args)
        trees = _gold_trees(doc)
        stats = transition_stats(trees)
        print(
            f"{os.path.basename(path)}\t{len(trees)}\t{stats.avg_cov:.2f}"
            f"\t{stats.avg_nl:.2f}\t{stats.reduction * 100:.2f}"
        )
    return EXIT_OK


def cmd_oracle_trace(args):
    doc = _read_doc(args.input, args)
    trees = _gold_trees(doc)
    system = TransitionSystem(args.system, _corpus_labels(trees))
    for tree in trees:
        for line in trace_lines(system, tree):
            print(line)
        print()
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="covparse",
        description="non-projective transition-based dependency parsing toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, system_default=NL_COVINGTON):
        p.add_argument(
            "--system",
            choices=SYSTEM_NAMES,
            default=system_default,
            help="transition system",
        )
        p.add_argument("--root-label", default=DEFAULT_ROOT_LABEL,
                       help="label for root attachments")
        p.add_argument("--lenient", action="store_true",
                       help="skip sentences with ill-formed gold heads instead of failing")

    p = sub.add_parser("train", help="train a model on a gold treebank")
    p.add_argument("train", help="training file (CoNLL-X)")
    p.add_argument("--model", required=True, help="where to write the model")
    p.add_argument("--epochs", type=int, default=10)
    p.add_argument("--seed", type=int, default=1, help="corpus shuffling seed")
    common(p)
    p.set_defaults(run=cmd_train)

    p = sub.add_parser("parse", help="parse a file with a trained model")
    p.add_argument("input", help="input file (CoNLL-X; heads may be absent)")
    p.add_argument("--model", required=True)
    common(p, system_default=None)
    p.set_defaults(run=cmd_parse)

    p = sub.add_parser("eval", help="score a parsed file against gold")
    p.add_argument("gold")
    p.add_argument("predicted")
    p.add_argument("--punct", choices=(INCLUDE, EXCLUDE), default=INCLUDE)
    p.add_argument("--ptsd-compat", action="store_true",
                   help="shorthand for --punct exclude")
    p.add_argument("--punct-pos", default=None,
                   help="comma-separated POS blacklist replacing the form-based rule")
    p.add_argument("--lenient", action="store_true")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("stats", help="canonical sequence lengths per dataset")
    p.add_argument("inputs", nargs="+", help="gold files (CoNLL-X)")
    p.add_argument("--lenient", action="store_true")
    p.set_defaults(run=cmd_stats)

    p = sub.add_parser("oracle-trace", help="print canonical transition traces")
    p.add_argument("input", help="gold file (CoNLL-X)")
    common(p)
    p.set_defaults(run=cmd_oracle_trace)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (ConllError, OSError, ValueError) as exc:
        _log(f"error: {exc}")
        return EXIT_DATA
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
